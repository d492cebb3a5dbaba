#include "entrolab/inequalities.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "entrolab/dynamics.hpp"
#include "entrolab/linalg.hpp"
#include "entrolab/rng.hpp"

namespace entrolab {

namespace {

std::string formatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Matrix ginibre(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return g / std::sqrt(2.0);
}

Matrix psdPower(const Matrix& y, double s, double floorValue = kEigenvalueFloor) {
  MatrixFn fn = MatrixFn::power(s);
  fn.floorValue = floorValue;
  return matrixFunction(y, fn);
}

CheckReport makeReport(double lhs, double rhs) {
  CheckReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tol = 1e-9 * std::max(1.0, rhs);
  r.holds = r.margin >= -r.tol;
  return r;
}

}  // namespace

OperatorPair samplePairAlgebraic(int dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("samplePairAlgebraic: dim must be >= 2");
  Rng rng(seed);

  Matrix g = ginibre(dim, rng);
  Matrix y = g.adjoint() * g;
  const double u = rng.uniformOpen01();
  y *= u / operatorNorm(y);

  Matrix wm = ginibre(dim, rng);
  Matrix k = wm.adjoint() * wm;
  const double v = rng.uniformOpen01();
  k *= v / operatorNorm(k);

  const Matrix sqrtY = psdPower(y, 0.5);
  OperatorPair pair;
  pair.Y = 0.5 * (y + y.adjoint());
  pair.X = sqrtY * k * sqrtY;
  pair.X = 0.5 * (pair.X + pair.X.adjoint()).eval();
  pair.p = pair.X.trace().real();
  pair.provenance = Provenance::Algebraic;
  pair.dim = dim;
  pair.seed = seed;
  return pair;
}

OperatorPair samplePairPhysical(int dimA, int dimLambda, std::uint64_t seed, long dimensionCap) {
  if (dimA < 2 || dimLambda < 2)
    throw std::invalid_argument("samplePairPhysical: dims must be >= 2");
  const long dimAL = static_cast<long>(dimA) * dimLambda;
  const long total = dimAL * dimAL;  // purifier of equal size keeps rho_{A Lambda} full rank
  if (total > dimensionCap)
    throw std::invalid_argument("samplePairPhysical: dimension exceeds the cap");

  Rng rng(seed);
  Vector psi(total);
  for (long i = 0; i < total; ++i) psi[i] = Complex(rng.gaussian(), rng.gaussian());
  psi.normalize();

  // rho_{A Lambda}: trace out the purifier by reshaping.
  Matrix shaped(dimAL, dimAL);
  for (long i = 0; i < total; ++i) shaped(i / dimAL, i % dimAL) = psi[i];
  Matrix rhoAL = shaped * shaped.adjoint();

  // rho_A from rho_{A Lambda}.
  Matrix rhoA = Matrix::Zero(dimA, dimA);
  for (int a1 = 0; a1 < dimA; ++a1)
    for (int a2 = 0; a2 < dimA; ++a2) {
      Complex acc(0, 0);
      for (int l = 0; l < dimLambda; ++l) acc += rhoAL(a1 * dimLambda + l, a2 * dimLambda + l);
      rhoA(a1, a2) = acc;
    }

  const double p = 1.0 / (static_cast<double>(dimLambda) * dimLambda);
  OperatorPair pair;
  pair.X = p * rhoAL;
  pair.Y = std::sqrt(p) * kron(rhoA, Matrix::Identity(dimLambda, dimLambda));
  pair.p = pair.X.trace().real();
  pair.provenance = Provenance::Physical;
  pair.dim = static_cast<int>(dimAL);
  pair.dimA = dimA;
  pair.dimLambda = dimLambda;
  pair.seed = seed;
  return pair;
}

CheckReport checkLemmaAlphaGt1(const OperatorPair& pair, double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("checkLemmaAlphaGt1: alpha must be > 1 (searcher covers alpha < 1)");
  const double lhs = traceNorm(pair.X * psdPower(pair.Y, alpha - 1.0));
  const double rhs = psdPower(pair.Y, alpha).trace().real();
  return makeReport(lhs, rhs);
}

CheckReport checkLemmaTraceConstrained(const OperatorPair& pair, double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("checkLemmaTraceConstrained: alpha must be > 1");
  const double lhs = traceNorm(pair.X * psdPower(pair.Y, alpha - 1.0));
  const double trYa = psdPower(pair.Y, alpha).trace().real();
  const double rhs = pair.p * std::pow(trYa, (alpha - 1.0) / alpha);
  return makeReport(lhs, rhs);
}

CheckReport checkVershyninaLog(const OperatorPair& pair, double prefactor) {
  if (!(pair.p > 0.0 && pair.p < 1.0))
    throw std::invalid_argument("checkVershyninaLog: p must lie in (0, 1)");
  const Matrix logY = matrixFunction(pair.Y, MatrixFn::log());
  const double lhs = traceNorm(commutator(pair.X, logY));
  const double rhs = prefactor * std::min(pair.p * std::log(1.0 / pair.p),
                                          (1.0 - pair.p) * std::log(1.0 / (1.0 - pair.p)));
  return makeReport(lhs, rhs);
}

CheckReport checkVershyninaPower(const OperatorPair& pair, double alpha, double prefactor) {
  if (!(alpha > 1.0)) throw std::invalid_argument("checkVershyninaPower: alpha must be > 1");
  if (!(pair.p > 0.0 && pair.p < 1.0))
    throw std::invalid_argument("checkVershyninaPower: p must lie in (0, 1)");
  const double lhs = traceNorm(commutator(pair.X, psdPower(pair.Y, alpha - 1.0)));
  const double q = 1.0 - pair.p;
  const double rhs = (alpha < 2.0) ? prefactor * q * (1.0 - std::pow(q, alpha - 1.0))
                                   : prefactor * pair.p * std::pow(q, alpha - 1.0);
  return makeReport(lhs, rhs);
}

CounterexampleSearch searchAlphaLt1Counterexample(int dimLo, int dimHi, double alpha,
                                                  int maxSamples, std::uint64_t masterSeed) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("searchAlphaLt1Counterexample: alpha must lie in (0, 1)");
  if (dimLo < 2 || dimHi < dimLo)
    throw std::invalid_argument("searchAlphaLt1Counterexample: bad dimension range");

  CounterexampleSearch out;
  const int span = dimHi - dimLo + 1;
  for (int i = 0; i < maxSamples; ++i) {
    out.samplesTried = i + 1;
    const std::uint64_t seed = deriveSeed(masterSeed, static_cast<std::uint64_t>(i));
    const int dim = dimLo + (i % span);
    const OperatorPair pair = samplePairAlgebraic(dim, seed);

    const double rhs = psdPower(pair.Y, alpha).trace().real();
    const double lhs = traceNorm(pair.X * psdPower(pair.Y, alpha - 1.0));
    if (lhs <= rhs * (1.0 + 1e-9)) continue;

    // Candidate: re-verify at tightened tolerance with compensated summation
    // and confirm the margin is not a flooring artifact.
    const double floors[3] = {1e-10, 1e-12, 1e-14};
    double margins[3];
    for (int f = 0; f < 3; ++f) {
      const double lhsF = traceNormPrecise(pair.X * psdPower(pair.Y, alpha - 1.0, floors[f]));
      margins[f] = (lhsF - rhs) / rhs;
    }
    const double precise = margins[1];
    if (precise <= 1e-12) continue;

    out.found = true;
    out.witnessIndex = static_cast<std::uint64_t>(i);
    out.witnessSeed = seed;
    out.witnessDim = dim;
    out.lhs = lhs;
    out.rhs = rhs;
    out.relViolation = (lhs - rhs) / rhs;
    out.preciseRelViolation = precise;
    out.floorMargins[0] = margins[0];
    out.floorMargins[1] = margins[1];
    out.floorMargins[2] = margins[2];
    out.witness = pair;
    return out;
  }
  return out;
}

namespace {

struct PhysicalShape {
  int dimA;
  int dimLambda;
};

// Pair-dimension cycle for physical sampling; dims stay within [4, 16].
const PhysicalShape kPhysicalShapes[] = {
    {2, 2}, {3, 2}, {2, 3}, {4, 2}, {2, 4}, {4, 3}, {3, 4}, {8, 2}, {2, 8}, {4, 4}, {5, 3},
};

}  // namespace

CampaignResult runInequalityCampaign(const CampaignConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("campaign: samples must be >= 1");
  if (config.dimLo < 2 || config.dimHi < config.dimLo)
    throw std::invalid_argument("campaign: bad dimension range");
  for (double a : config.alphas)
    if (!(a > 1.0)) throw std::invalid_argument("campaign: checker alphas must be > 1");

  const int dimSpan = config.dimHi - config.dimLo + 1;
  const int nShapes = static_cast<int>(std::size(kPhysicalShapes));
  const int rowsPerPair = static_cast<int>(config.alphas.size()) * 3 + 1;

  std::vector<std::vector<CampaignRow>> perSample(config.samples);
  parallelFor(config.samples, config.jobs, [&](int i) {
    const std::uint64_t seed = deriveSeed(config.masterSeed, static_cast<std::uint64_t>(i));
    OperatorPair pair;
    if (config.includePhysical && (i % 2 == 1)) {
      const PhysicalShape shape = kPhysicalShapes[(i / 2) % nShapes];
      pair = samplePairPhysical(shape.dimA, shape.dimLambda, seed);
    } else {
      pair = samplePairAlgebraic(config.dimLo + (i % dimSpan), seed);
    }

    std::vector<CampaignRow>& rows = perSample[i];
    rows.reserve(rowsPerPair);
    auto push = [&](const std::string& checker, double alpha, const CheckReport& rep) {
      CampaignRow row;
      row.checker = checker;
      row.alpha = alpha;
      row.dim = pair.dim;
      row.provenance = pair.provenance;
      row.seed = seed;
      row.lhs = rep.lhs;
      row.rhs = rep.rhs;
      row.margin = rep.margin;
      row.holds = rep.holds;
      rows.push_back(std::move(row));
    };

    // The product and trace-constrained checks hold for any certified
    // ordering and run on both provenances. The commutator (Vershynina
    // lineage) bounds are theorems in the physical frame Tr Y = 1,
    // p = ||X||_1 = dimLambda^-2; raw algebraic pairs sit outside their
    // hypotheses and do violate them, so those two run on physical pairs.
    const bool vershyninaDomain =
        pair.provenance == Provenance::Physical && pair.p > 0.0 && pair.p < 1.0;
    for (double alpha : config.alphas) {
      push("lemma-product", alpha, checkLemmaAlphaGt1(pair, alpha));
      push("lemma-trace-constrained", alpha, checkLemmaTraceConstrained(pair, alpha));
      if (vershyninaDomain) push("vershynina-power", alpha, checkVershyninaPower(pair, alpha));
    }
    if (vershyninaDomain) push("vershynina-log", 1.0, checkVershyninaLog(pair));
  });

  CampaignResult result;
  result.rows.reserve(static_cast<size_t>(config.samples) * rowsPerPair);
  for (auto& rows : perSample)
    for (auto& row : rows) {
      auto it = result.minMargin.find(row.checker);
      if (it == result.minMargin.end() || row.margin < it->second)
        result.minMargin[row.checker] = row.margin;
      ++result.checksRun[row.checker];
      if (!row.holds) ++result.violations;
      result.rows.push_back(std::move(row));
    }
  return result;
}

std::string campaignCsv(const CampaignResult& result) {
  std::ostringstream os;
  os << "checker,alpha,dim,provenance,seed,lhs,rhs,margin,holds\n";
  for (const CampaignRow& row : result.rows) {
    os << row.checker << ',' << formatDouble(row.alpha) << ',' << row.dim << ','
       << (row.provenance == Provenance::Algebraic ? "algebraic" : "physical") << ',' << row.seed
       << ',' << formatDouble(row.lhs) << ',' << formatDouble(row.rhs) << ','
       << formatDouble(row.margin) << ',' << (row.holds ? 1 : 0) << '\n';
  }
  os << "# summary\n";
  for (const auto& [checker, margin] : result.minMargin)
    os << "# min-margin " << checker << " = " << formatDouble(margin) << " over "
       << result.checksRun.at(checker) << " checks\n";
  os << "# violations = " << result.violations << '\n';
  return os.str();
}

}  // namespace entrolab
