// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 2 and 6 encode checks that the underlying mathematics
// does not satisfy as stated; they run faithfully and report FAIL with the
// measured numbers plus a supplementary diagnostic, rather than being
// weakened to pass (see the printed analysis).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "entrolab/analytics.hpp"
#include "entrolab/dynamics.hpp"
#include "entrolab/experiments.hpp"
#include "entrolab/hamiltonian.hpp"
#include "entrolab/inequalities.hpp"
#include "entrolab/output.hpp"
#include "entrolab/rng.hpp"
#include "support/bessel_series_oracle.hpp"

using namespace entrolab;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  bool pass;
};

std::vector<Criterion> results;
int gJobs = 1;
fs::path gOut = "acceptance_out";

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int id, bool pass, const std::string& summary, double seconds) {
  results.push_back({id, pass});
  std::printf("[%s] criterion %2d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, summary.c_str(),
              seconds);
  std::fflush(stdout);
}

void info(const std::string& line) {
  std::printf("       %s\n", line.c_str());
  std::fflush(stdout);
}

std::string readFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunContext makeRun(const fs::path& sub, std::uint64_t seed, int jobs,
                   const std::string& canonical) {
  RunContext run;
  run.outDir = gOut / sub;
  run.masterSeed = seed;
  run.jobs = jobs;
  run.svg = false;
  // The canonical config string is per-criterion, not per-output-directory,
  // so a rerun hashes to the same provenance header.
  run.configCanonical = "acceptance:" + canonical;
  return run;
}

double fitSlope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / sxx;
}

// --------------------------------------------------------------------------

void criterion1() {
  Timer timer;
  FuzzSettings settings;       // 10000 samples, dims 2-16, alphas {1.5, 2, 3, 5}
  settings.searchSamples = 1;  // the search is criterion 2's job
  const RunContext run = makeRun("c1", 101, /*jobs=*/1, "criterion-1");
  const FuzzOutcome out = runFuzzInequalities(settings, run);

  double minMargin = 1e300;
  for (const auto& [checker, margin] : out.campaign.minMargin)
    minMargin = std::min(minMargin, margin);
  const double secs = timer.seconds();
  std::ostringstream os;
  os << "inequality soundness: " << out.campaign.rows.size() << " checks over 10000 pairs, "
     << out.campaign.violations << " violations, min margin " << minMargin;
  const bool timeOk = secs <= 180.0;
  if (!timeOk) os << " [over the 3 min budget]";
  report(1, out.campaign.violations == 0 && timeOk, os.str(), secs);
}

void criterion2() {
  Timer timer;
  // Literal form: alpha = 0.5, dims 3-8, 10000 algebraic samples, floor
  // stability at 1e-10 / 1e-14.
  const CounterexampleSearch search = searchAlphaLt1Counterexample(3, 8, 0.5, 10000, 20240202);
  const double secs = timer.seconds();

  bool pass = false;
  std::ostringstream os;
  if (search.found && search.relViolation > 1e-6 && search.floorMargins[0] > 0 &&
      search.floorMargins[2] > 0) {
    pass = true;
    os << "alpha=0.5 counterexample found at sample " << search.witnessIndex
       << ", relative violation " << search.relViolation;
  } else {
    os << "alpha=0.5 counterexample: exhausted " << search.samplesTried
       << " samples without a violation";
  }
  report(2, pass, os.str(), secs);
  if (!pass) {
    info("analysis: no such pair exists at alpha = 0.5. Every 0 <= X <= Y factors as");
    info("X = Y^{1/2} K Y^{1/2} with ||K|| <= 1, and Hoelder then gives");
    info("||X Y^{a-1}||_1 <= Tr Y^a for every a >= 1/2; violations require a < 1/2.");
    const CounterexampleSearch demo = searchAlphaLt1Counterexample(3, 8, 0.3, 10000, 20240202);
    if (demo.found) {
      std::ostringstream ds;
      ds << "supplementary: at alpha = 0.3 the same search finds a witness (sample "
         << demo.witnessIndex << ", dim " << demo.witnessDim << ", relative violation "
         << demo.relViolation << ", stable under floors 1e-10/1e-12/1e-14)";
      info(ds.str());
    }
  }
}

void criterion3() {
  Timer timer;
  const HamiltonianModel model = buildMfim(6, -1.05, 0.5, 0.8);
  const EvolutionEngine engine(assembleDense(model));
  const Bipartition part = Bipartition::half(6, 2);

  HamiltonianModel fullDense;
  fullDense.lattice = model.lattice;
  {
    Term all;
    all.label = "all";
    all.coefficient = 1.0;
    all.denseOp = assembleDense(model);
    for (int s = 0; s < 6; ++s) all.support.push_back(s);
    all.opNorm = 1.0;
    fullDense.terms.push_back(all);
  }

  double worstRel = 0.0, worstSub = 0.0;
  for (int m = 0; m < 20; ++m) {
    const Vector psi0 = haarProductState(6, 2, deriveSeed(103, m));
    for (double t : {0.3, 0.7, 1.5}) {
      const Vector psit = engine.evolve(psi0, t);
      for (double alpha : {1.0, 2.0, 3.0}) {
        const double analytic = entropyRateAnalytic(model, psit, part, alpha);
        const double fd = entropyRateFd(engine, psi0, part, alpha, t, 1e-4);
        // relative error; 1e-2 scale floor covers rates passing through zero
        // (the FD oracle's own noise sits near 1e-8 absolute)
        const double rel =
            std::abs(analytic - fd) / std::max({std::abs(analytic), std::abs(fd), 1e-2});
        worstRel = std::max(worstRel, rel);
        worstSub = std::max(
            worstSub, std::abs(analytic - entropyRateAnalytic(fullDense, psit, part, alpha)));
      }
    }
  }
  std::ostringstream os;
  os << "rate formula vs central difference: worst relative error " << worstRel
     << " (< 1e-5); H vs H_boundary substitution " << worstSub << " (< 1e-10)";
  report(3, worstRel < 1e-5 && worstSub < 1e-10, os.str(), timer.seconds());
}

GueS2Outcome runCriterion4Pipeline(const fs::path& sub) {
  GueS2Settings settings;  // d=2, V=8, 200 seeds, t in [0, 3]
  return runGueS2(settings, makeRun(sub, 104, gJobs, "criterion-4"));
}

void criterion4() {
  Timer timer;
  const GueS2Outcome out = runCriterion4Pipeline("c4");

  bool within = true;
  const std::vector<double>& mc = out.monteCarlo[0].mean;
  for (size_t i = 0; i < mc.size(); ++i) {
    if (out.analytic[i] > 0.85 * out.plateauFormula) continue;
    const double tol = std::max(0.15, 0.10 * out.analytic[i]);
    if (std::abs(mc[i] - out.analytic[i]) > tol) within = false;
  }
  const double plateauGap = std::abs(out.plateauMc - out.plateauFormula);
  std::ostringstream os;
  os << "GUE closed form: max |MC - S2bar| = " << out.maxAbsDeviation
     << " away from saturation (tol 0.15), plateau gap " << plateauGap << " (<= 0.1)";
  const double secs = timer.seconds();
  const bool timeOk = secs <= 600.0;
  report(4, within && plateauGap <= 0.1 && timeOk, os.str(), secs);
}

void criterion5() {
  Timer timer;
  std::vector<double> norms(50, 0.0);
  parallelFor(50, gJobs, [&](int s) {
    const Matrix h = sampleGue(256, deriveSeed(105, s));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    norms[s] = solver.eigenvalues().cwiseAbs().maxCoeff();
  });
  double mean = 0.0;
  for (double n : norms) mean += n;
  mean /= norms.size();
  std::ostringstream os;
  os << "GUE norm: mean ||H|| over 50 samples at D=256 is " << mean << " (in [1.8, 2.2])";
  report(5, mean >= 1.8 && mean <= 2.2, os.str(), timer.seconds());
}

void criterion6() {
  Timer timer;
  const double tStar = findTStar();
  const double j1 = std::abs(besselJ(1, 2.0 * tStar));
  const bool zeroOk = j1 < 1e-10 && tStar > 1.9 && tStar < 1.93;

  const double target = std::log(2.0) / 8.0;
  std::vector<double> vs, logMax;
  for (int v = 4; v <= 12; v += 2) {
    vs.push_back(v);
    logMax.push_back(std::log(gueMaxSlope(GueCurveParams{2, v}).maxRate));
  }
  const double exponent = fitSlope(vs, logMax);
  const bool regressionOk = std::abs(exponent - target) / target <= 0.2;
  double residual = 0.0;
  {
    double mx = 0, my = 0;
    for (size_t i = 0; i < vs.size(); ++i) mx += vs[i], my += logMax[i];
    mx /= vs.size();
    my /= vs.size();
    const double icpt = my - exponent * mx;
    for (size_t i = 0; i < vs.size(); ++i) {
      const double d = logMax[i] - (icpt + exponent * vs[i]);
      residual += d * d;
    }
    residual = std::sqrt(residual / vs.size());
  }

  std::ostringstream os;
  os << "t* = " << tStar << " with |J1(2t*)| = " << j1 << "; regression over V in {4..12} gives "
     << exponent << " (rms residual " << residual << ") vs (log 2)/8 = " << target << " ("
     << exponent / target << "x)";
  report(6, zeroOk && regressionOk, os.str(), timer.seconds());
  if (!regressionOk) {
    info("analysis: at V <= 12 the |S2'| peak is still far from t* (t_peak = 0.62 at V=4,");
    info("1.06 at V=12), so the desk-scale regression sits above the asymptotic exponent.");
    auto slopeOver = [&](int lo, int hi) {
      std::vector<double> xs, ys;
      for (int v = lo; v <= hi; v += 2) {
        xs.push_back(v);
        ys.push_back(std::log(gueMaxSlope(GueCurveParams{2, v}).maxRate));
      }
      return fitSlope(xs, ys);
    };
    std::ostringstream ds;
    ds << "supplementary: the regression approaches the claimed exponent at larger V: "
       << "V in {16..24} -> " << slopeOver(16, 24) / target << "x, V in {96..104} -> "
       << slopeOver(96, 104) / target << "x of (log 2)/8";
    info(ds.str());
  }
}

MfimGrowthOutcome runCriterion7Pipeline(const fs::path& sub) {
  MfimGrowthSettings settings;  // L=10, g=-1.05, h=0.5, J in {0.2..1.4}, 100 states
  settings.alphas = {1.0, 2.0, 3.0};
  return runMfimGrowth(settings, makeRun(sub, 107, gJobs, "criterion-7"));
}

void criterion7() {
  Timer timer;
  const MfimGrowthOutcome out = runCriterion7Pipeline("c7");
  std::ostringstream os;
  os << "MFIM bound compliance at L=10:";
  for (const MfimJResult& jr : out.perJ)
    os << " J=" << jr.J << " slope/bound=" << jr.s1Fit.slope / jr.bound << ";";
  os << (out.allMonotone ? " alpha-monotone" : " MONOTONICITY VIOLATED");
  os << (out.allCapsHold ? "; S2 caps hold" : "; CAP VIOLATED");
  const double secs = timer.seconds();
  const bool timeOk = secs <= 1800.0;
  report(7, out.allBelowBound && out.allMonotone && out.allCapsHold && timeOk, os.str(), secs);
}

void criterion8() {
  Timer timer;
  SykGrowthSettings settings;  // N=8, beta=0, 20 KM strings
  const SykGrowthOutcome out = runSykGrowth(settings, makeRun("c8", 108, gJobs, "criterion-8"));
  std::ostringstream os;
  os << "SYK census: V(H_boundary) = " << out.boundaryCount << " (expect 68), max |S'_2| = "
     << out.maxRateAlpha2 << " vs k-local bound " << out.kLocalBound.value;
  report(8, out.boundaryCount == 68 && out.belowBound, os.str(), timer.seconds());
}

void criterion9() {
  Timer timer;
  bool identical = true;
  std::vector<std::string> mismatches;

  {
    FuzzSettings settings;
    settings.searchSamples = 1;
    runFuzzInequalities(settings, makeRun("c1_rerun", 101, 1, "criterion-1"));
    if (readFileBytes(gOut / "c1" / "inequality_campaign.csv") !=
        readFileBytes(gOut / "c1_rerun" / "inequality_campaign.csv")) {
      identical = false;
      mismatches.push_back("inequality_campaign.csv");
    }
  }
  {
    runCriterion4Pipeline("c4_rerun");
    for (const char* name : {"gue_s2_mc.csv", "gue_s2_analytic.csv"})
      if (readFileBytes(gOut / "c4" / name) != readFileBytes(gOut / "c4_rerun" / name)) {
        identical = false;
        mismatches.push_back(name);
      }
  }
  {
    const MfimGrowthOutcome rerun = runCriterion7Pipeline("c7_rerun");
    for (const fs::path& path : rerun.curveCsvPaths) {
      if (readFileBytes(gOut / "c7" / path.filename()) != readFileBytes(path)) {
        identical = false;
        mismatches.push_back(path.filename().string());
      }
    }
    if (readFileBytes(gOut / "c7" / "mfim_slopes.csv") !=
        readFileBytes(gOut / "c7_rerun" / "mfim_slopes.csv")) {
      identical = false;
      mismatches.push_back("mfim_slopes.csv");
    }
  }

  std::ostringstream os;
  os << "determinism: reruns of criteria 1, 4, 7 with fixed seeds produce "
     << (identical ? "byte-identical CSVs" : "DIFFERING CSVs:");
  for (const std::string& m : mismatches) os << ' ' << m;
  report(9, identical, os.str(), timer.seconds());
}

void criterion10() {
  Timer timer;
  double worstOracle = 0.0, worstRecurrence = 0.0;
  for (double x = 0.0; x <= 20.0 + 1e-9; x += 0.01) {
    for (int n : {1, 2})
      worstOracle =
          std::max(worstOracle, std::abs(besselJ(n, x) - bessel_oracle::seriesJ(n, x)));
    if (x >= 0.01)
      worstRecurrence =
          std::max(worstRecurrence,
                   std::abs(besselJ(2, x) - (2.0 / x * besselJ(1, x) - detail::besselJ0(x))));
  }
  std::ostringstream os;
  os << "Bessel fidelity: max |impl - series oracle| = " << worstOracle
     << " (<= 1e-12), recurrence residual " << worstRecurrence << " (<= 1e-10)";
  report(10, worstOracle <= 1e-12 && worstRecurrence <= 1e-10, os.str(), timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  gJobs = static_cast<int>(std::thread::hardware_concurrency());
  if (gJobs <= 0) gJobs = 1;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--jobs" && i + 1 < argc) gJobs = std::max(1, std::atoi(argv[++i]));
    else if (arg == "--out" && i + 1 < argc) gOut = argv[++i];
  }
  std::error_code ec;
  fs::remove_all(gOut, ec);
  fs::create_directories(gOut);

  std::printf("entrolab acceptance suite (jobs=%d, out=%s)\n", gJobs, gOut.string().c_str());
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();

  int failures = 0;
  for (const Criterion& c : results)
    if (!c.pass) ++failures;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures;
}
