#include "entrolab/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "entrolab/rng.hpp"

namespace entrolab {

namespace {

std::string formatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

RealVector clippedSpectrum(RealVector lam) {
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = std::max(lam[i], 0.0);
  return lam;
}

}  // namespace

void validatePureState(const PureState& psi) {
  if (!psi.allFinite()) throw std::invalid_argument("pure state: non-finite amplitudes");
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("pure state: norm deviates from 1 beyond 1e-10");
}

void validateDensityMatrix(const DensityMatrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix: not square");
  if (!rho.allFinite()) throw std::invalid_argument("density matrix: non-finite entries");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("density matrix: not Hermitian within 1e-9");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument("density matrix: trace deviates from 1 beyond 1e-10");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint()),
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix: negative eigenvalue beyond -1e-10");
}

EvolutionEngine::EvolutionEngine(const Matrix& hamiltonian) : eig_(eigh(hamiltonian)) {}

Vector EvolutionEngine::coefficients(const Vector& psi) const {
  if (psi.size() != dim()) throw std::invalid_argument("EvolutionEngine: dimension mismatch");
  return eig_.eigenvectors.adjoint() * psi;
}

Vector EvolutionEngine::stateAt(const Vector& coeffs, double t) const {
  if (coeffs.size() != dim()) throw std::invalid_argument("EvolutionEngine: dimension mismatch");
  Vector phased(coeffs.size());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    phased[i] = coeffs[i] * std::polar(1.0, -eig_.eigenvalues[i] * t);
  return eig_.eigenvectors * phased;
}

Vector EvolutionEngine::evolve(const Vector& psi, double t) const {
  return stateAt(coefficients(psi), t);
}

Matrix EvolutionEngine::evolveDensity(const Matrix& rho, double t) const {
  if (rho.rows() != dim() || rho.cols() != dim())
    throw std::invalid_argument("EvolutionEngine: dimension mismatch");
  Vector phases(dim());
  for (Eigen::Index i = 0; i < dim(); ++i)
    phases[i] = std::polar(1.0, -eig_.eigenvalues[i] * t);
  const Matrix u = eig_.eigenvectors * phases.asDiagonal() * eig_.eigenvectors.adjoint();
  return u * rho * u.adjoint();
}

Vector EvolutionEngine::imaginaryTimeProject(const Vector& psi, double beta) const {
  if (beta < 0) throw std::invalid_argument("imaginaryTimeProject: beta must be >= 0");
  Vector c = coefficients(psi);
  // Subtract the ground energy before exponentiating so large beta stays finite.
  const double e0 = eig_.eigenvalues.minCoeff();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c[i] *= std::exp(-0.5 * beta * (eig_.eigenvalues[i] - e0));
  Vector out = eig_.eigenvectors * c;
  const double n = out.norm();
  if (n == 0.0) throw std::runtime_error("imaginaryTimeProject: projected state vanished");
  return out / n;
}

PureState haarProductState(int nSites, int d0, std::uint64_t seed, long dimensionCap) {
  if (nSites < 1 || d0 < 2) throw std::invalid_argument("haarProductState: bad shape");
  long dim = 1;
  for (int s = 0; s < nSites; ++s) {
    dim *= d0;
    if (dim > dimensionCap)
      throw std::invalid_argument("haarProductState: dimension exceeds the cap");
  }
  Rng rng(seed);
  Vector psi = Vector::Ones(1);
  for (int s = 0; s < nSites; ++s) {
    Vector site(d0);
    for (int k = 0; k < d0; ++k) site[k] = Complex(rng.gaussian(), rng.gaussian());
    site.normalize();
    Vector next(psi.size() * d0);
    for (Eigen::Index i = 0; i < psi.size(); ++i)
      for (int k = 0; k < d0; ++k) next[i * d0 + k] = psi[i] * site[k];
    psi = std::move(next);
  }
  return psi;
}

PureState computationalBasisState(int nSites, long index) {
  long dim = 1;
  for (int s = 0; s < nSites; ++s) dim *= 2;
  if (index < 0 || index >= dim)
    throw std::invalid_argument("computationalBasisState: index out of range");
  Vector psi = Vector::Zero(dim);
  psi[index] = 1.0;
  return psi;
}

PureState buildKmState(const EvolutionEngine& engine, const std::vector<int>& s, double beta) {
  if (beta < 0) throw std::invalid_argument("buildKmState: beta must be >= 0");
  const int nq = static_cast<int>(s.size());
  long dim = 1;
  for (int q = 0; q < nq; ++q) dim *= 2;
  if (dim != engine.dim())
    throw std::invalid_argument("buildKmState: spin string does not match the Hilbert space");
  long index = 0;
  for (int q = 0; q < nq; ++q) {
    if (s[q] != 1 && s[q] != -1)
      throw std::invalid_argument("buildKmState: spin string entries must be +/-1");
    index = index * 2 + (s[q] == 1 ? 1 : 0);  // s_j = +1 <-> occupied <-> |1>
  }
  return engine.imaginaryTimeProject(computationalBasisState(nq, index), beta);
}

PureState buildKmState(const HamiltonianModel& sykModel, const std::vector<int>& s, double beta) {
  EvolutionEngine engine(assembleDense(sykModel));
  return buildKmState(engine, s, beta);
}

RealVector reducedEigenvalues(const PureState& psi, const Bipartition& part, Keep keep) {
  Matrix shaped = stateAsMatrix(psi, part);
  if (keep == Keep::Complement) shaped = shaped.transpose().eval();
  // Schmidt route: reduced eigenvalues are squared singular values across the cut.
  Eigen::VectorXd sv;
  if (std::max(shaped.rows(), shaped.cols()) <= 32) {
    Eigen::JacobiSVD<Matrix> svd(shaped);
    sv = svd.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> svd(shaped);
    sv = svd.singularValues();
  }
  RealVector lam = RealVector::Zero(shaped.rows());
  for (Eigen::Index i = 0; i < sv.size(); ++i) lam[i] = sv[i] * sv[i];
  return lam;
}

RealVector reducedEigenvalues(const DensityMatrix& rho, const Bipartition& part, Keep keep) {
  const Matrix red = partialTrace(rho, part, keep);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (red + red.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DensityMatrix reducedDensityMatrix(const PureState& psi, const Bipartition& part, Keep keep) {
  Matrix shaped = stateAsMatrix(psi, part);
  if (keep == Keep::Complement) shaped = shaped.transpose().eval();
  return shaped * shaped.adjoint();
}

double renyiEntropyFromSpectrum(const RealVector& lambdaRaw, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("renyiEntropy: alpha must be > 0");
  const RealVector lam = clippedSpectrum(lambdaRaw);
  if (std::abs(alpha - 1.0) < 1e-14) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      if (lam[i] > 0.0) s -= lam[i] * std::log(lam[i]);
    return s;
  }
  double tr = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] > 0.0) tr += std::pow(lam[i], alpha);
  return std::log(tr) / (1.0 - alpha);
}

double renyiEntropy(const PureState& psi, const Bipartition& part, double alpha) {
  validatePureState(psi);
  return renyiEntropyFromSpectrum(reducedEigenvalues(psi, part), alpha);
}

double renyiEntropy(const DensityMatrix& rho, const Bipartition& part, double alpha) {
  validateDensityMatrix(rho);
  return renyiEntropyFromSpectrum(reducedEigenvalues(rho, part), alpha);
}

double tsallisEntropyFromSpectrum(const RealVector& lambdaRaw, double q) {
  if (!(q > 0)) throw std::invalid_argument("tsallisEntropy: q must be > 0");
  if (std::abs(q - 1.0) < 1e-14)
    throw std::invalid_argument("tsallisEntropy: q = 1 is excluded");
  const RealVector lam = clippedSpectrum(lambdaRaw);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] > 0.0) tr += std::pow(lam[i], q);
  return (1.0 - tr) / (q - 1.0);
}

double tsallisEntropy(const PureState& psi, const Bipartition& part, double q) {
  validatePureState(psi);
  return tsallisEntropyFromSpectrum(reducedEigenvalues(psi, part), q);
}

double tsallisEntropy(const DensityMatrix& rho, const Bipartition& part, double q) {
  validateDensityMatrix(rho);
  return tsallisEntropyFromSpectrum(reducedEigenvalues(rho, part), q);
}

namespace {

// M on the A factor: rho_A^{alpha-1} (alpha != 1) or log rho_A (alpha == 1),
// plus Tr rho_A^alpha, from one reduced eigendecomposition.
struct RateIngredients {
  Matrix opA;
  double trRhoAlpha = 0.0;
};

RateIngredients rateIngredients(const Matrix& rhoA, double alpha) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rhoA + rhoA.adjoint()));
  RealVector lam = clippedSpectrum(solver.eigenvalues());
  RateIngredients out;
  out.trRhoAlpha = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] > 0.0) out.trRhoAlpha += std::pow(lam[i], alpha);

  RealVector mapped(lam.size());
  if (std::abs(alpha - 1.0) < 1e-14) {
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      mapped[i] = std::log(std::max(lam[i], kEigenvalueFloor));
  } else if (alpha - 1.0 < 0.0) {
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      mapped[i] = std::pow(std::max(lam[i], kEigenvalueFloor), alpha - 1.0);
  } else {
    for (Eigen::Index i = 0; i < lam.size(); ++i) mapped[i] = std::pow(lam[i], alpha - 1.0);
  }
  out.opA = solver.eigenvectors() * mapped.asDiagonal() * solver.eigenvectors().adjoint();
  return out;
}

double rateFromTrace(double imTrace, double trRhoAlpha, double alpha) {
  if (std::abs(alpha - 1.0) < 1e-14) return -2.0 * imTrace;
  return -(2.0 * alpha / (alpha - 1.0)) * imTrace / trRhoAlpha;
}

}  // namespace

double entropyRateAnalytic(const Matrix& hBoundaryDense, const PureState& psi,
                           const Bipartition& part, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("entropyRateAnalytic: alpha must be > 0");
  validatePureState(psi);
  if (hBoundaryDense.size() == 0) return 0.0;
  if (hBoundaryDense.rows() != psi.size())
    throw std::invalid_argument("entropyRateAnalytic: dimension mismatch");

  const RateIngredients ing = rateIngredients(reducedDensityMatrix(psi, part), alpha);
  // Tr(H_b rho (M ⊗ I)) = <(M ⊗ I) psi | H_b psi> for pure rho.
  const Complex z = applyOnA(ing.opA, psi, part).dot(hBoundaryDense * psi);
  return rateFromTrace(z.imag(), ing.trRhoAlpha, alpha);
}

double entropyRateAnalytic(const Matrix& hBoundaryDense, const DensityMatrix& rho,
                           const Bipartition& part, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("entropyRateAnalytic: alpha must be > 0");
  validateDensityMatrix(rho);
  if (hBoundaryDense.size() == 0) return 0.0;
  if (hBoundaryDense.rows() != rho.rows())
    throw std::invalid_argument("entropyRateAnalytic: dimension mismatch");

  const RateIngredients ing = rateIngredients(partialTrace(rho, part, Keep::A), alpha);
  const Matrix mFull = embedOnA(ing.opA, part);
  const Complex z = (hBoundaryDense * rho * mFull).trace();
  return rateFromTrace(z.imag(), ing.trRhoAlpha, alpha);
}

double entropyRateAnalytic(const HamiltonianModel& model, const PureState& psi,
                           const Bipartition& part, double alpha) {
  const HamiltonianModel boundary = extractBoundary(model, part);
  if (boundary.terms.empty()) return 0.0;
  return entropyRateAnalytic(assembleDense(boundary), psi, part, alpha);
}

double entropyRateAnalytic(const HamiltonianModel& model, const DensityMatrix& rho,
                           const Bipartition& part, double alpha) {
  const HamiltonianModel boundary = extractBoundary(model, part);
  if (boundary.terms.empty()) return 0.0;
  return entropyRateAnalytic(assembleDense(boundary), rho, part, alpha);
}

double entropyRateFd(const EvolutionEngine& engine, const PureState& psi0,
                     const Bipartition& part, double alpha, double t, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("entropyRateFd: delta must be > 0");
  const Vector c = engine.coefficients(psi0);
  const double sPlus =
      renyiEntropyFromSpectrum(reducedEigenvalues(engine.stateAt(c, t + delta), part), alpha);
  const double sMinus =
      renyiEntropyFromSpectrum(reducedEigenvalues(engine.stateAt(c, t - delta), part), alpha);
  return (sPlus - sMinus) / (2.0 * delta);
}

void parallelFor(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  const int workers = std::max(1, std::min(jobs, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr firstError;
  std::mutex errorMutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(errorMutex);
          if (!firstError) firstError = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (firstError) std::rethrow_exception(firstError);
}

std::vector<EntropyCurve> runGrowthExperiment(const EnsembleSpec& spec) {
  if (spec.ensembleSize < 1)
    throw std::invalid_argument("runGrowthExperiment: empty ensemble");
  if (spec.times.empty() || spec.alphas.empty())
    throw std::invalid_argument("runGrowthExperiment: empty time grid or alpha list");
  if (!spec.stateSampler)
    throw std::invalid_argument("runGrowthExperiment: state sampler required");
  if (!spec.sharedEngine && !spec.hamiltonianSampler)
    throw std::invalid_argument("runGrowthExperiment: engine or Hamiltonian sampler required");
  spec.part.validate();

  const int nT = static_cast<int>(spec.times.size());
  const int nA = static_cast<int>(spec.alphas.size());
  const int nM = spec.ensembleSize;

  std::vector<std::uint64_t> seeds(nM);
  for (int m = 0; m < nM; ++m) seeds[m] = deriveSeed(spec.masterSeed, m);

  // samples[m] is the (alpha, t) table of member m; reduced in index order.
  std::vector<std::vector<double>> samples(nM, std::vector<double>(nA * nT, 0.0));

  parallelFor(nM, spec.jobs, [&](int m) {
    const EvolutionEngine* engine = spec.sharedEngine;
    std::unique_ptr<EvolutionEngine> owned;
    if (!engine) {
      owned = std::make_unique<EvolutionEngine>(spec.hamiltonianSampler(seeds[m]));
      engine = owned.get();
    }
    const Vector psi0 = spec.stateSampler(seeds[m], *engine);
    validatePureState(psi0);
    const Vector c = engine->coefficients(psi0);
    for (int k = 0; k < nT; ++k) {
      const RealVector lam = reducedEigenvalues(engine->stateAt(c, spec.times[k]), spec.part);
      for (int a = 0; a < nA; ++a)
        samples[m][a * nT + k] = renyiEntropyFromSpectrum(lam, spec.alphas[a]);
    }
  });

  std::vector<EntropyCurve> curves(nA);
  for (int a = 0; a < nA; ++a) {
    EntropyCurve& c = curves[a];
    c.alpha = spec.alphas[a];
    c.times = spec.times;
    c.ensembleSize = nM;
    c.seeds = seeds;
    c.mean.assign(nT, 0.0);
    c.stdErr.assign(nT, 0.0);
    for (int k = 0; k < nT; ++k) {
      double sum = 0.0;
      for (int m = 0; m < nM; ++m) sum += samples[m][a * nT + k];
      const double mean = sum / nM;
      double sq = 0.0;
      for (int m = 0; m < nM; ++m) {
        const double d = samples[m][a * nT + k] - mean;
        sq += d * d;
      }
      c.mean[k] = mean;
      c.stdErr[k] = nM > 1 ? std::sqrt(sq / (nM - 1.0) / nM) : 0.0;
    }
  }
  return curves;
}

std::string curvesCsv(const std::vector<EntropyCurve>& curves) {
  std::ostringstream os;
  os << "alpha,t,mean,stderr,n\n";
  for (const EntropyCurve& c : curves)
    for (size_t k = 0; k < c.times.size(); ++k)
      os << formatDouble(c.alpha) << ',' << formatDouble(c.times[k]) << ','
         << formatDouble(c.mean[k]) << ',' << formatDouble(c.stdErr[k]) << ',' << c.ensembleSize
         << '\n';
  return os.str();
}

LinearFit fitLinearWindow(const std::vector<double>& times, const std::vector<double>& values,
                          double t1, double t2) {
  if (times.size() != values.size())
    throw std::invalid_argument("fitLinearWindow: grid size mismatch");
  if (!(t2 > t1)) throw std::invalid_argument("fitLinearWindow: empty window");
  std::vector<double> xs, ys;
  for (size_t i = 0; i < times.size(); ++i)
    if (times[i] >= t1 - 1e-12 && times[i] <= t2 + 1e-12) {
      xs.push_back(times[i]);
      ys.push_back(values[i]);
    }
  if (xs.size() < 3)
    throw std::invalid_argument("fitLinearWindow: window must contain at least 3 grid points");

  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double res = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double d = ys[i] - (fit.intercept + fit.slope * xs[i]);
    res += d * d;
  }
  fit.residual = std::sqrt(res / n);
  return fit;
}

LinearFit fitLinearWindow(const std::vector<double>& times, const std::vector<double>& values,
                          double t1, double t2, double hbar, int d0) {
  LinearFit fit = fitLinearWindow(times, values, t1, t2);
  fit.vE = fit.slope / (hbar * std::log(static_cast<double>(d0)));
  return fit;
}

std::pair<double, double> defaultFitWindow(const std::vector<double>& times,
                                           const std::vector<double>& values) {
  if (times.size() < 5 || times.size() != values.size())
    throw std::invalid_argument("defaultFitWindow: grid too small");
  const size_t tail = std::max<size_t>(1, times.size() / 10);
  double plateau = 0.0;
  for (size_t i = times.size() - tail; i < times.size(); ++i) plateau += values[i];
  plateau /= static_cast<double>(tail);
  double tSat = times.back();
  for (size_t i = 0; i < times.size(); ++i)
    if (values[i] >= 0.9 * plateau) {
      tSat = times[i];
      break;
    }
  // Flat or instantly-saturated curves give a degenerate window; fall back to
  // the proportional window over the whole grid so a fit stays possible.
  int pointsInside = 0;
  for (double t : times)
    if (t >= 0.2 * tSat && t <= 0.7 * tSat) ++pointsInside;
  if (pointsInside < 3) tSat = times.back();
  return {0.2 * tSat, 0.7 * tSat};
}

}  // namespace entrolab
