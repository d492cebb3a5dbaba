#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "entrolab/bounds.hpp"
#include "entrolab/dynamics.hpp"
#include "entrolab/inequalities.hpp"

namespace entrolab {

/// Shared run settings: where to write, the master seed, worker count, and
/// the canonical config text that goes into every CSV provenance header.
struct RunContext {
  std::filesystem::path outDir = "out";
  std::uint64_t masterSeed = 0;
  int jobs = 1;
  bool svg = false;
  std::string configCanonical;
  long dimensionCap = kDefaultDimensionCap;
};

// ---------------------------------------------------------------------------
// fuzz-inequalities

struct FuzzSettings {
  int samples = 10000;
  int dimLo = 2;
  int dimHi = 16;
  std::vector<double> alphas = {1.5, 2.0, 3.0, 5.0};
  bool includePhysical = true;
  double searchAlpha = 0.5;
  int searchSamples = 10000;
  int searchDimLo = 3;
  int searchDimHi = 8;
};

struct FuzzOutcome {
  CampaignResult campaign;
  CounterexampleSearch search;
  std::filesystem::path campaignCsvPath;
  bool checkersAllHold = false;
};

FuzzOutcome runFuzzInequalities(const FuzzSettings& settings, const RunContext& run);

// ---------------------------------------------------------------------------
// gue-s2

struct GueS2Settings {
  int d = 2;
  int V = 8;
  int samples = 200;
  double tMax = 3.0;
  int timeSteps = 31;
};

struct GueS2Outcome {
  std::vector<EntropyCurve> monteCarlo;  // single alpha = 2 curve
  std::vector<double> analytic;
  double maxAbsDeviation = 0.0;          // away from the saturation plateau
  double maxRelDeviation = 0.0;
  double plateauMc = 0.0;
  double plateauFormula = 0.0;
  std::filesystem::path curveCsvPath;
  std::filesystem::path analyticCsvPath;
};

GueS2Outcome runGueS2(const GueS2Settings& settings, const RunContext& run);

// ---------------------------------------------------------------------------
// mfim-growth

struct MfimGrowthSettings {
  int L = 10;
  double g = -1.05;
  double h = 0.5;
  std::vector<double> jValues = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
  int ensembleSize = 100;
  std::vector<double> alphas = {1.0, 2.0};
  int timeSteps = 81;
  double tMaxOverride = 0.0;  // 0 -> per-J default clamp(10/(2 J log 2), 10, 60)
};

struct MfimJResult {
  double J = 0.0;
  std::vector<EntropyCurve> curves;
  LinearFit s1Fit;
  double windowLo = 0.0, windowHi = 0.0;
  double bound = 0.0;             // 2 J log 2
  bool slopeBelowBound = false;
  bool monotoneInAlpha = false;   // S_alpha non-increasing in alpha on the grid
  bool capHolds = false;          // S_2(t) - S_2(0) <= bound * t on the grid
};

struct MfimGrowthOutcome {
  std::vector<MfimJResult> perJ;
  bool allBelowBound = false;
  bool allMonotone = false;
  bool allCapsHold = false;
  std::filesystem::path slopesCsvPath;
  std::vector<std::filesystem::path> curveCsvPaths;
};

MfimGrowthOutcome runMfimGrowth(const MfimGrowthSettings& settings, const RunContext& run);

// ---------------------------------------------------------------------------
// syk-growth

struct SykGrowthSettings {
  int nMajorana = 8;
  double J = 1.0;
  double beta = 0.0;
  int ensembleSize = 20;
  std::vector<double> alphas = {1.0, 2.0};
  double tMax = 5.0;
  int timeSteps = 51;
};

struct SykGrowthOutcome {
  long termCount = 0;
  long boundaryCount = 0;          // V(H_boundary), half cut
  double hbar = 0.0;
  double maxRateAlpha2 = 0.0;      // max |S'_2| along the ensemble trajectories
  BoundReport kLocalBound;
  bool belowBound = false;
  std::vector<EntropyCurve> curves;
  std::filesystem::path curveCsvPath;
  std::filesystem::path censusCsvPath;
};

SykGrowthOutcome runSykGrowth(const SykGrowthSettings& settings, const RunContext& run);

// ---------------------------------------------------------------------------
// bounds-report

struct BoundsReportSettings {
  BoundContext base;
  std::vector<double> alphas = {1.0, 1.5, 2.0, 3.0};
  std::vector<double> ws;       // power-law / geo grid (may be empty)
  std::vector<double> xis;      // stretched-exponential grid
  std::vector<std::int64_t> ranges;
  std::vector<std::int64_t> ks;
  std::vector<double> mfimJs;
};

struct BoundsReportOutcome {
  long rowCount = 0;
  std::filesystem::path csvPath;
};

BoundsReportOutcome runBoundsReport(const BoundsReportSettings& settings, const RunContext& run);

}  // namespace entrolab
