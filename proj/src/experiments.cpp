#include "entrolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entrolab/analytics.hpp"
#include "entrolab/config.hpp"
#include "entrolab/hamiltonian.hpp"
#include "entrolab/output.hpp"
#include "entrolab/rng.hpp"

namespace entrolab {

namespace {

std::string num(double v) { return formatCsvDouble(v); }

void writeCsvWithProvenance(const std::filesystem::path& path, const RunContext& run,
                            const std::string& body) {
  writeTextFile(path, provenanceHeader(run.configCanonical, run.masterSeed) + body);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / std::max(1, n - 1);
  return out;
}

void writeCurveSvgs(const std::filesystem::path& csvPath, const std::filesystem::path& svgPath,
                    const std::string& title) {
  // Plots are re-read from the emitted CSV; nothing is recomputed here.
  const CsvTable table = readCsv(csvPath);
  const std::vector<double> alpha = table.numericColumn("alpha");
  const std::vector<double> t = table.numericColumn("t");
  const std::vector<double> mean = table.numericColumn("mean");
  std::vector<double> seen;
  std::vector<SvgSeries> series;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (std::find(seen.begin(), seen.end(), alpha[i]) == seen.end()) {
      seen.push_back(alpha[i]);
      series.push_back({"alpha=" + formatCsvDouble(alpha[i]), {}, {}});
    }
    const size_t s = std::find(seen.begin(), seen.end(), alpha[i]) - seen.begin();
    series[s].x.push_back(t[i]);
    series[s].y.push_back(mean[i]);
  }
  writeSvgLineChart(svgPath, title, "t", "S_alpha", series);
}

}  // namespace

// ---------------------------------------------------------------------------

FuzzOutcome runFuzzInequalities(const FuzzSettings& settings, const RunContext& run) {
  if (settings.samples < 1)
    throw ConfigError("fuzz-inequalities: samples must be a positive count");
  if (settings.searchSamples < 1)
    throw ConfigError("fuzz-inequalities: search samples must be a positive count");

  CampaignConfig campaign;
  campaign.samples = settings.samples;
  campaign.dimLo = settings.dimLo;
  campaign.dimHi = settings.dimHi;
  campaign.alphas = settings.alphas;
  campaign.masterSeed = run.masterSeed;
  campaign.jobs = run.jobs;
  campaign.includePhysical = settings.includePhysical;

  FuzzOutcome out;
  out.campaign = runInequalityCampaign(campaign);
  out.checkersAllHold = out.campaign.violations == 0;

  out.search = searchAlphaLt1Counterexample(settings.searchDimLo, settings.searchDimHi,
                                            settings.searchAlpha, settings.searchSamples,
                                            deriveSeed(run.masterSeed, 0x5ea7c4));

  out.campaignCsvPath = run.outDir / "inequality_campaign.csv";
  writeCsvWithProvenance(out.campaignCsvPath, run, campaignCsv(out.campaign));

  std::ostringstream search;
  search << "alpha,found,samples_tried,witness_seed,witness_dim,lhs,rhs,rel_violation,"
            "margin_floor_1e10,margin_floor_1e12,margin_floor_1e14\n";
  search << num(settings.searchAlpha) << ',' << (out.search.found ? 1 : 0) << ','
         << out.search.samplesTried << ',' << out.search.witnessSeed << ','
         << out.search.witnessDim << ',' << num(out.search.lhs) << ',' << num(out.search.rhs)
         << ',' << num(out.search.relViolation) << ',' << num(out.search.floorMargins[0]) << ','
         << num(out.search.floorMargins[1]) << ',' << num(out.search.floorMargins[2]) << '\n';
  writeCsvWithProvenance(run.outDir / "counterexample_search.csv", run, search.str());
  return out;
}

// ---------------------------------------------------------------------------

GueS2Outcome runGueS2(const GueS2Settings& settings, const RunContext& run) {
  if (settings.d < 2 || settings.V < 2 || settings.V % 2 != 0)
    throw ConfigError("gue-s2: need onsite dim >= 2 and even V >= 2");
  if (settings.samples < 1) throw ConfigError("gue-s2: samples must be a positive count");
  long dim = 1;
  for (int s = 0; s < settings.V; ++s) {
    dim *= settings.d;
    if (dim > run.dimensionCap) throw ConfigError("gue-s2: dimension exceeds the cap");
  }

  EnsembleSpec spec;
  spec.times = linspace(0.0, settings.tMax, settings.timeSteps);
  spec.alphas = {2.0};
  spec.part = Bipartition::half(settings.V, settings.d);
  spec.ensembleSize = settings.samples;
  spec.masterSeed = run.masterSeed;
  spec.jobs = run.jobs;
  spec.hamiltonianSampler = [&](std::uint64_t seed) {
    return sampleGue(dim, deriveSeed(seed, 1));
  };
  const int V = settings.V;
  const int d = settings.d;
  spec.stateSampler = [V, d](std::uint64_t seed, const EvolutionEngine&) {
    return haarProductState(V, d, deriveSeed(seed, 2));
  };

  GueS2Outcome out;
  out.monteCarlo = runGrowthExperiment(spec);

  GueCurveParams params{settings.d, settings.V};
  out.analytic.reserve(spec.times.size());
  for (double t : spec.times) out.analytic.push_back(gueS2Bar(t, params));

  const double plateau = (settings.V / 2.0) * std::log(settings.d) - std::log(2.0);
  out.plateauFormula = plateau;

  const std::vector<double>& mc = out.monteCarlo[0].mean;
  double plateauSum = 0.0;
  int plateauCount = 0;
  const double tStar = findTStar();
  for (size_t i = 0; i < spec.times.size(); ++i) {
    const double diff = std::abs(mc[i] - out.analytic[i]);
    if (out.analytic[i] <= 0.85 * plateau) {
      out.maxAbsDeviation = std::max(out.maxAbsDeviation, diff);
      if (out.analytic[i] > 0.1)
        out.maxRelDeviation = std::max(out.maxRelDeviation, diff / out.analytic[i]);
    }
    if (spec.times[i] >= tStar + 0.3) {
      plateauSum += mc[i];
      ++plateauCount;
    }
  }
  out.plateauMc = plateauCount > 0 ? plateauSum / plateauCount : mc.back();

  out.curveCsvPath = run.outDir / "gue_s2_mc.csv";
  writeCsvWithProvenance(out.curveCsvPath, run, curvesCsv(out.monteCarlo));
  out.analyticCsvPath = run.outDir / "gue_s2_analytic.csv";
  writeCsvWithProvenance(out.analyticCsvPath, run, gueCurveCsv(params, spec.times));

  if (run.svg) {
    const CsvTable mcTable = readCsv(out.curveCsvPath);
    const CsvTable anTable = readCsv(out.analyticCsvPath);
    SvgSeries mcSeries{"ensemble mean", mcTable.numericColumn("t"), mcTable.numericColumn("mean")};
    SvgSeries anSeries{"closed form", anTable.numericColumn("t"), anTable.numericColumn("s2bar")};
    writeSvgLineChart(run.outDir / "gue_s2_overlay.svg", "GUE second Renyi entropy", "t", "S_2",
                      {mcSeries, anSeries},
                      SvgHLine{plateau, "saturation"});
  }
  return out;
}

// ---------------------------------------------------------------------------

MfimGrowthOutcome runMfimGrowth(const MfimGrowthSettings& settings, const RunContext& run) {
  if (settings.L < 2) throw ConfigError("mfim-growth: L must be >= 2");
  if (settings.ensembleSize < 1) throw ConfigError("mfim-growth: empty ensemble");
  if (settings.alphas.empty()) throw ConfigError("mfim-growth: alpha list is empty");
  long dim = 1;
  for (int s = 0; s < settings.L; ++s) {
    dim *= 2;
    if (dim > run.dimensionCap) throw ConfigError("mfim-growth: dimension exceeds the cap");
  }

  const bool hasAlpha1 =
      std::any_of(settings.alphas.begin(), settings.alphas.end(),
                  [](double a) { return std::abs(a - 1.0) < 1e-12; });
  const bool hasAlpha2 =
      std::any_of(settings.alphas.begin(), settings.alphas.end(),
                  [](double a) { return std::abs(a - 2.0) < 1e-12; });
  if (!hasAlpha1) throw ConfigError("mfim-growth: alpha list must include 1 for the slope fit");

  MfimGrowthOutcome out;
  out.allBelowBound = true;
  out.allMonotone = true;
  out.allCapsHold = true;

  std::ostringstream slopes;
  slopes << "J,slope,intercept,residual,vE,window_lo,window_hi,bound,ratio\n";

  std::vector<double> sortedAlphas = settings.alphas;
  std::sort(sortedAlphas.begin(), sortedAlphas.end());

  for (size_t ji = 0; ji < settings.jValues.size(); ++ji) {
    const double J = settings.jValues[ji];
    const HamiltonianModel model = buildMfim(settings.L, settings.g, settings.h, J);
    const EvolutionEngine engine(assembleDense(model, run.dimensionCap));

    double tMax = settings.tMaxOverride;
    if (!(tMax > 0)) {
      tMax = (J > 0) ? 10.0 / (2.0 * J * std::log(2.0)) : 10.0;
      tMax = std::clamp(tMax, 10.0, 60.0);
    }

    EnsembleSpec spec;
    spec.times = linspace(0.0, tMax, settings.timeSteps);
    spec.alphas = settings.alphas;
    spec.part = Bipartition::half(settings.L, 2);
    spec.ensembleSize = settings.ensembleSize;
    // Per-J seed offset keeps members independent across the J grid.
    spec.masterSeed = deriveSeed(run.masterSeed, 1000 + ji);
    spec.jobs = run.jobs;
    spec.sharedEngine = &engine;
    const int L = settings.L;
    spec.stateSampler = [L](std::uint64_t seed, const EvolutionEngine&) {
      return haarProductState(L, 2, seed);
    };

    MfimJResult jr;
    jr.J = J;
    jr.curves = runGrowthExperiment(spec);
    jr.bound = boundMfim(1.0, J).value;

    const EntropyCurve* s1 = nullptr;
    const EntropyCurve* s2 = nullptr;
    for (const EntropyCurve& c : jr.curves) {
      if (std::abs(c.alpha - 1.0) < 1e-12) s1 = &c;
      if (std::abs(c.alpha - 2.0) < 1e-12) s2 = &c;
    }

    const auto window = defaultFitWindow(s1->times, s1->mean);
    jr.windowLo = window.first;
    jr.windowHi = window.second;
    jr.s1Fit = fitLinearWindow(s1->times, s1->mean, window.first, window.second,
                               std::abs(J) > 0 ? J : 1.0, 2);
    jr.slopeBelowBound = (J > 0) ? (jr.s1Fit.slope < jr.bound)
                                 : (std::abs(jr.s1Fit.slope) < 1e-8);

    jr.monotoneInAlpha = true;
    for (size_t a = 0; a + 1 < sortedAlphas.size(); ++a) {
      const EntropyCurve* lo = nullptr;
      const EntropyCurve* hi = nullptr;
      for (const EntropyCurve& c : jr.curves) {
        if (std::abs(c.alpha - sortedAlphas[a]) < 1e-12) lo = &c;
        if (std::abs(c.alpha - sortedAlphas[a + 1]) < 1e-12) hi = &c;
      }
      for (size_t k = 0; k < lo->mean.size(); ++k)
        if (hi->mean[k] > lo->mean[k] + 1e-9) jr.monotoneInAlpha = false;
    }

    jr.capHolds = true;
    if (hasAlpha2) {
      for (size_t k = 0; k < s2->mean.size(); ++k)
        if (s2->mean[k] - s2->mean[0] > jr.bound * s2->times[k] + 1e-9) jr.capHolds = false;
    }

    out.allBelowBound = out.allBelowBound && jr.slopeBelowBound;
    out.allMonotone = out.allMonotone && jr.monotoneInAlpha;
    out.allCapsHold = out.allCapsHold && jr.capHolds;

    const std::filesystem::path curvePath =
        run.outDir / ("mfim_curves_J" + formatCsvDouble(J) + ".csv");
    writeCsvWithProvenance(curvePath, run, curvesCsv(jr.curves));
    out.curveCsvPaths.push_back(curvePath);
    writeTextFile(run.outDir / ("mfim_model_J" + formatCsvDouble(J) + ".txt"),
                  exportModel(model));

    slopes << num(J) << ',' << num(jr.s1Fit.slope) << ',' << num(jr.s1Fit.intercept) << ','
           << num(jr.s1Fit.residual) << ',' << num(jr.s1Fit.vE) << ',' << num(jr.windowLo) << ','
           << num(jr.windowHi) << ',' << num(jr.bound) << ','
           << num(jr.bound > 0 ? jr.s1Fit.slope / jr.bound : 0.0) << '\n';

    if (run.svg)
      writeCurveSvgs(curvePath, run.outDir / ("mfim_curves_J" + formatCsvDouble(J) + ".svg"),
                     "MFIM entropy growth, J=" + formatCsvDouble(J));

    out.perJ.push_back(std::move(jr));
  }

  out.slopesCsvPath = run.outDir / "mfim_slopes.csv";
  writeCsvWithProvenance(out.slopesCsvPath, run, slopes.str());

  if (run.svg) {
    const CsvTable table = readCsv(out.slopesCsvPath);
    SvgSeries slopeSeries{"fitted |S'_1|", table.numericColumn("J"),
                          table.numericColumn("slope")};
    SvgSeries boundSeries{"bound 2 J log 2", table.numericColumn("J"),
                          table.numericColumn("bound")};
    writeSvgLineChart(run.outDir / "mfim_slopes.svg", "MFIM growth rate vs coupling", "J",
                      "rate", {slopeSeries, boundSeries});
  }
  return out;
}

// ---------------------------------------------------------------------------

SykGrowthOutcome runSykGrowth(const SykGrowthSettings& settings, const RunContext& run) {
  if (settings.nMajorana % 2 != 0 || settings.nMajorana < 4)
    throw ConfigError("syk-growth: Majorana count must be even and >= 4");
  if (settings.nMajorana > 14)
    throw ConfigError("syk-growth: N <= 14 is the desk-scale cap");
  if (settings.ensembleSize < 1) throw ConfigError("syk-growth: empty ensemble");
  if (settings.beta < 0) throw ConfigError("syk-growth: beta must be >= 0");

  const HamiltonianModel model = buildSykDot(settings.nMajorana, settings.J, run.masterSeed);
  const int nq = settings.nMajorana / 2;
  const Bipartition part = Bipartition::half(nq, 2);

  SykGrowthOutcome out;
  out.termCount = static_cast<long>(model.terms.size());
  out.boundaryCount = boundaryTermCount(model, part);
  out.hbar = model.hbar;

  const EvolutionEngine engine(assembleDense(model, run.dimensionCap));
  const Matrix hBoundary = assembleDense(extractBoundary(model, part), run.dimensionCap);

  EnsembleSpec spec;
  spec.times = linspace(0.0, settings.tMax, settings.timeSteps);
  spec.alphas = settings.alphas;
  spec.part = part;
  spec.ensembleSize = settings.ensembleSize;
  spec.masterSeed = run.masterSeed;
  spec.jobs = run.jobs;
  spec.sharedEngine = &engine;
  const double beta = settings.beta;
  spec.stateSampler = [nq, beta](std::uint64_t seed, const EvolutionEngine& eng) {
    Rng rng(seed);
    std::vector<int> s(nq);
    for (int q = 0; q < nq; ++q) s[q] = (rng.raw() & 1) ? 1 : -1;
    return buildKmState(eng, s, beta);
  };
  out.curves = runGrowthExperiment(spec);

  // Max |S'_2| along the same trajectories via the boundary trace formula.
  std::vector<double> memberMax(settings.ensembleSize, 0.0);
  parallelFor(settings.ensembleSize, run.jobs, [&](int m) {
    const std::uint64_t seed = deriveSeed(run.masterSeed, m);
    const Vector psi0 = spec.stateSampler(seed, engine);
    const Vector c = engine.coefficients(psi0);
    double best = 0.0;
    for (double t : spec.times) {
      const double rate =
          entropyRateAnalytic(hBoundary, engine.stateAt(c, t), part, 2.0);
      best = std::max(best, std::abs(rate));
    }
    memberMax[m] = best;
  });
  out.maxRateAlpha2 = *std::max_element(memberMax.begin(), memberMax.end());

  BoundContext ctx;
  ctx.alpha = 2.0;
  ctx.k = 4;
  ctx.d0 = 2.0;
  ctx.hbar = model.hbar;
  out.kLocalBound = boundKLocal(ctx, out.boundaryCount);
  out.belowBound = out.maxRateAlpha2 < out.kLocalBound.value;

  out.curveCsvPath = run.outDir / "syk_curves.csv";
  writeCsvWithProvenance(out.curveCsvPath, run, curvesCsv(out.curves));

  std::ostringstream census;
  census << "key,value\n";
  census << "n_majorana," << settings.nMajorana << '\n';
  census << "qubits," << nq << '\n';
  census << "terms," << out.termCount << '\n';
  census << "boundary_terms," << out.boundaryCount << '\n';
  census << "hbar," << num(out.hbar) << '\n';
  census << "beta," << num(settings.beta) << '\n';
  census << "max_rate_alpha2," << num(out.maxRateAlpha2) << '\n';
  census << "k_local_bound," << num(out.kLocalBound.value) << '\n';
  census << "below_bound," << (out.belowBound ? 1 : 0) << '\n';
  out.censusCsvPath = run.outDir / "syk_census.csv";
  writeCsvWithProvenance(out.censusCsvPath, run, census.str());

  writeTextFile(run.outDir / "syk_model.txt", exportModel(model));

  if (run.svg)
    writeCurveSvgs(out.curveCsvPath, run.outDir / "syk_curves.svg", "SYK dot entropy growth");
  return out;
}

// ---------------------------------------------------------------------------

BoundsReportOutcome runBoundsReport(const BoundsReportSettings& settings, const RunContext& run) {
  std::ostringstream os;
  os << "formulaId,alpha,hNorm,dB,dAA,hbar,d0,boundary,R,k,w,xi,D,c,c1,c2,ck,vnPrefactor,J,"
        "trRhoAlpha,vBoundary,value,applicable,reason\n";
  long rows = 0;

  auto emit = [&](const BoundReport& r, const std::string& jCell,
                  const std::string& trCell, const std::string& vbCell) {
    const BoundContext& c = r.inputs;
    auto opt = [&](double v) { return std::isfinite(v) ? num(v) : std::string(); };
    os << r.formulaId << ',' << num(c.alpha) << ',' << num(c.hNorm) << ',' << num(c.dimB) << ','
       << num(c.dimAA) << ',' << num(c.hbar) << ',' << num(c.d0) << ',' << num(c.boundaryArea)
       << ',' << c.range << ',' << c.k << ',' << opt(c.w) << ',' << opt(c.xi) << ','
       << c.spatialDim << ',' << num(c.c) << ',' << num(c.c1) << ',' << num(c.c2) << ','
       << num(c.ck) << ',' << num(c.vnPrefactor) << ',' << jCell << ',' << trCell << ',' << vbCell
       << ',' << (r.applicable ? num(r.value) : std::string()) << ',' << (r.applicable ? 1 : 0)
       << ",\"" << r.reason << "\"\n";
    ++rows;
  };

  for (double alpha : settings.alphas) {
    BoundContext ctx = settings.base;
    ctx.alpha = alpha;
    emit(boundNonlocalIndependent(ctx), "", "", "");
    emit(boundNonlocalStateIndependent(ctx), "", "", "");
    emit(boundVonNeumannNonlocal(ctx), "", "", "");
    if (alpha > 1.0) emit(boundVershyninaState(ctx, 1.0), "", "1", "");

    for (std::int64_t r : settings.ranges) {
      BoundContext c2 = ctx;
      c2.range = static_cast<int>(r);
      emit(boundFiniteRange(c2), "", "", "");
    }
    for (double w : settings.ws) {
      BoundContext c2 = ctx;
      c2.w = w;
      emit(boundPowerLawVn(c2), "", "", "");
      for (double xi : settings.xis) {
        BoundContext c3 = c2;
        c3.xi = xi;
        emit(boundStretchedExpRenyi(c3), "", "", "");
      }
      for (std::int64_t k : settings.ks) {
        BoundContext c3 = c2;
        c3.k = static_cast<int>(k);
        emit(boundKLocalGeo(c3), "", "", "");
      }
    }
    for (std::int64_t k : settings.ks) {
      BoundContext c2 = ctx;
      c2.k = static_cast<int>(k);
      emit(boundKLocal(c2, 1), "", "", "1");
    }
    for (double J : settings.mfimJs) emit(boundMfim(alpha, J), num(J), "", "");
  }

  BoundsReportOutcome out;
  out.rowCount = rows;
  out.csvPath = run.outDir / "bounds_report.csv";
  writeCsvWithProvenance(out.csvPath, run, os.str());
  return out;
}

}  // namespace entrolab
