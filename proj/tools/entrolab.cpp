// entrolab — config-driven experiment runner.
//
// Subcommands map one-to-one onto the library pipelines:
//   fuzz-inequalities   operator-inequality campaign + alpha<1 witness search
//   gue-s2              GUE ensemble mean S_2 vs the closed form
//   mfim-growth         MFIM quench curves, fitted slopes, bound overlay
//   syk-growth          SYK-dot KM quench + boundary-term census
//   bounds-report       every bound formula over a parameter grid
//
// Exit codes: 0 success, 1 invariant/acceptance violation, 2 config error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "entrolab/config.hpp"
#include "entrolab/experiments.hpp"
#include "entrolab/output.hpp"

namespace {

using namespace entrolab;

struct CommonArgs {
  std::string configPath;
  std::uint64_t seed = 0;
  bool seedSet = false;
  int jobs = 1;
  std::string outDir;
  bool svg = false;
  bool unsafeDims = false;
};

void addCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.configPath, "experiment config file (TOML-syntax)")
      ->required();
  cmd->add_option("--seed", args.seed, "master seed override")->each([&](const std::string&) {
    args.seedSet = true;
  });
  cmd->add_option("--jobs", args.jobs, "worker threads for ensemble members (0 = hardware)");
  cmd->add_option("--out", args.outDir, "output directory override");
  cmd->add_flag("--svg", args.svg, "emit SVG plots derived from the written CSVs");
  cmd->add_flag("--unsafe-dims", args.unsafeDims, "lift the desk-scale dimension cap");
}

void requireKind(ConfigReader& reader, const std::string& expected) {
  const std::string kind = reader.getString("experiment", "kind", expected);
  if (kind != expected)
    throw ConfigError("config is for experiment kind '" + kind + "', not '" + expected + "'");
}

RunContext makeRunContext(const ConfigFile& file, ConfigReader& reader, const CommonArgs& args) {
  RunContext run;
  // Read the config keys unconditionally so overrides don't turn them into
  // unknown-key rejections.
  const std::uint64_t configSeed =
      static_cast<std::uint64_t>(reader.getInt("experiment", "seed", 0));
  const std::string configOut = reader.getString("experiment", "out", "out");
  run.masterSeed = args.seedSet ? args.seed : configSeed;
  run.outDir = args.outDir.empty() ? configOut : args.outDir;
  run.jobs = args.jobs;
  if (run.jobs <= 0) run.jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (run.jobs <= 0) run.jobs = 1;
  run.svg = args.svg;
  if (args.unsafeDims) run.dimensionCap = 1L << 24;
  // Canonical config text + effective seed feed the provenance hash, so a
  // rerun with identical inputs produces byte-identical CSVs.
  run.configCanonical = file.serialize() + "\nseed=" + std::to_string(run.masterSeed);
  return run;
}

int cmdFuzzInequalities(const CommonArgs& args, int samplesOverride) {
  const ConfigFile file = ConfigFile::load(args.configPath);
  ConfigReader reader(file);
  requireKind(reader, "fuzz-inequalities");

  FuzzSettings settings;
  settings.samples = static_cast<int>(reader.getInt("campaign", "samples", settings.samples));
  if (samplesOverride >= 0) settings.samples = samplesOverride;
  settings.dimLo = static_cast<int>(reader.getInt("campaign", "dim_lo", settings.dimLo));
  settings.dimHi = static_cast<int>(reader.getInt("campaign", "dim_hi", settings.dimHi));
  settings.alphas = reader.getDoubleList("campaign", "alphas", settings.alphas);
  settings.includePhysical =
      reader.getBool("campaign", "include_physical", settings.includePhysical);
  settings.searchAlpha = reader.getDouble("search", "alpha", settings.searchAlpha);
  settings.searchSamples =
      static_cast<int>(reader.getInt("search", "samples", settings.searchSamples));
  settings.searchDimLo = static_cast<int>(reader.getInt("search", "dim_lo", settings.searchDimLo));
  settings.searchDimHi = static_cast<int>(reader.getInt("search", "dim_hi", settings.searchDimHi));

  const RunContext run = makeRunContext(file, reader, args);
  reader.finish();

  const FuzzOutcome outcome = runFuzzInequalities(settings, run);
  std::cout << "campaign: " << outcome.campaign.rows.size() << " checks, "
            << outcome.campaign.violations << " violations\n";
  for (const auto& [checker, margin] : outcome.campaign.minMargin)
    std::cout << "  min margin " << checker << " = " << margin << '\n';
  if (outcome.search.found)
    std::cout << "alpha<1 search: witness at sample " << outcome.search.witnessIndex
              << " (dim " << outcome.search.witnessDim << ", relative violation "
              << outcome.search.relViolation << ")\n";
  else
    std::cout << "alpha<1 search: exhausted " << outcome.search.samplesTried
              << " samples without a violation\n";
  std::cout << "wrote " << outcome.campaignCsvPath.string() << '\n';
  return outcome.checkersAllHold ? 0 : 1;
}

int cmdGueS2(const CommonArgs& args) {
  const ConfigFile file = ConfigFile::load(args.configPath);
  ConfigReader reader(file);
  requireKind(reader, "gue-s2");

  GueS2Settings settings;
  settings.d = static_cast<int>(reader.getInt("model", "d", settings.d));
  settings.V = static_cast<int>(reader.getInt("model", "V", settings.V));
  settings.samples = static_cast<int>(reader.getInt("ensemble", "samples", settings.samples));
  settings.tMax = reader.getDouble("ensemble", "t_max", settings.tMax);
  settings.timeSteps = static_cast<int>(reader.getInt("ensemble", "time_steps", settings.timeSteps));

  const RunContext run = makeRunContext(file, reader, args);
  reader.finish();

  const GueS2Outcome outcome = runGueS2(settings, run);
  std::cout << "max |MC - analytic| away from the plateau = " << outcome.maxAbsDeviation << '\n';
  std::cout << "plateau: MC " << outcome.plateauMc << " vs formula " << outcome.plateauFormula
            << '\n';
  std::cout << "wrote " << outcome.curveCsvPath.string() << " and "
            << outcome.analyticCsvPath.string() << '\n';
  return 0;
}

int cmdMfimGrowth(const CommonArgs& args) {
  const ConfigFile file = ConfigFile::load(args.configPath);
  ConfigReader reader(file);
  requireKind(reader, "mfim-growth");

  MfimGrowthSettings settings;
  settings.L = static_cast<int>(reader.getInt("model", "L", settings.L));
  settings.g = reader.getDouble("model", "g", settings.g);
  settings.h = reader.getDouble("model", "h", settings.h);
  settings.jValues = reader.getDoubleList("model", "J", settings.jValues);
  settings.ensembleSize = static_cast<int>(reader.getInt("ensemble", "size", settings.ensembleSize));
  settings.alphas = reader.getDoubleList("ensemble", "alphas", settings.alphas);
  settings.timeSteps = static_cast<int>(reader.getInt("ensemble", "time_steps", settings.timeSteps));
  settings.tMaxOverride = reader.getDouble("ensemble", "t_max", settings.tMaxOverride);

  const RunContext run = makeRunContext(file, reader, args);
  reader.finish();

  const MfimGrowthOutcome outcome = runMfimGrowth(settings, run);
  for (const MfimJResult& jr : outcome.perJ)
    std::cout << "J=" << jr.J << ": slope " << jr.s1Fit.slope << " vs bound " << jr.bound
              << (jr.slopeBelowBound ? " (below)" : " (NOT below)") << ", vE " << jr.s1Fit.vE
              << '\n';
  std::cout << "wrote " << outcome.slopesCsvPath.string() << '\n';
  const bool ok = outcome.allBelowBound && outcome.allMonotone && outcome.allCapsHold;
  if (!ok) std::cout << "bound/monotonicity/cap violation detected\n";
  return ok ? 0 : 1;
}

int cmdSykGrowth(const CommonArgs& args) {
  const ConfigFile file = ConfigFile::load(args.configPath);
  ConfigReader reader(file);
  requireKind(reader, "syk-growth");

  SykGrowthSettings settings;
  settings.nMajorana = static_cast<int>(reader.getInt("model", "N", settings.nMajorana));
  settings.J = reader.getDouble("model", "J", settings.J);
  settings.beta = reader.getDouble("model", "beta", settings.beta);
  settings.ensembleSize = static_cast<int>(reader.getInt("ensemble", "size", settings.ensembleSize));
  settings.alphas = reader.getDoubleList("ensemble", "alphas", settings.alphas);
  settings.tMax = reader.getDouble("ensemble", "t_max", settings.tMax);
  settings.timeSteps = static_cast<int>(reader.getInt("ensemble", "time_steps", settings.timeSteps));

  const RunContext run = makeRunContext(file, reader, args);
  reader.finish();

  const SykGrowthOutcome outcome = runSykGrowth(settings, run);
  std::cout << "terms " << outcome.termCount << ", boundary terms " << outcome.boundaryCount
            << ", hbar " << outcome.hbar << '\n';
  std::cout << "max |S'_2| = " << outcome.maxRateAlpha2 << " vs k-local bound "
            << outcome.kLocalBound.value << (outcome.belowBound ? " (below)" : " (NOT below)")
            << '\n';
  std::cout << "wrote " << outcome.censusCsvPath.string() << '\n';
  return outcome.belowBound ? 0 : 1;
}

int cmdBoundsReport(const CommonArgs& args) {
  const ConfigFile file = ConfigFile::load(args.configPath);
  ConfigReader reader(file);
  requireKind(reader, "bounds-report");

  BoundsReportSettings settings;
  settings.alphas = reader.getDoubleList("grid", "alphas", settings.alphas);
  settings.ws = reader.getDoubleList("grid", "w", settings.ws);
  settings.xis = reader.getDoubleList("grid", "xi", settings.xis);
  if (reader.has("grid", "R")) settings.ranges = file.get("grid", "R").asIntList();
  if (reader.has("grid", "k")) settings.ks = file.get("grid", "k").asIntList();
  settings.mfimJs = reader.getDoubleList("grid", "mfim_J", settings.mfimJs);

  settings.base.hNorm = reader.getDouble("context", "h_norm", settings.base.hNorm);
  settings.base.dimB = reader.getDouble("context", "dim_b", settings.base.dimB);
  settings.base.dimAA = reader.getDouble("context", "dim_aa", settings.base.dimAA);
  settings.base.hbar = reader.getDouble("context", "hbar", settings.base.hbar);
  settings.base.d0 = reader.getDouble("context", "d0", settings.base.d0);
  settings.base.boundaryArea = reader.getDouble("context", "boundary", settings.base.boundaryArea);
  settings.base.spatialDim =
      static_cast<int>(reader.getInt("context", "spatial_dim", settings.base.spatialDim));
  settings.base.c = reader.getDouble("context", "c", settings.base.c);
  settings.base.c1 = reader.getDouble("context", "c1", settings.base.c1);
  settings.base.c2 = reader.getDouble("context", "c2", settings.base.c2);
  settings.base.ck = reader.getDouble("context", "ck", settings.base.ck);
  settings.base.vnPrefactor =
      reader.getDouble("context", "vn_prefactor", settings.base.vnPrefactor);

  const RunContext run = makeRunContext(file, reader, args);
  reader.finish();

  const BoundsReportOutcome outcome = runBoundsReport(settings, run);
  std::cout << "wrote " << outcome.rowCount << " rows to " << outcome.csvPath.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entrolab — entanglement-entropy growth laboratory"};
  app.require_subcommand(1);

  CommonArgs fuzzArgs, gueArgs, mfimArgs, sykArgs, boundsArgs;
  int samplesOverride = -1;

  CLI::App* fuzz = app.add_subcommand("fuzz-inequalities",
                                      "operator-inequality campaign and counterexample search");
  addCommon(fuzz, fuzzArgs);
  fuzz->add_option("--samples", samplesOverride, "campaign sample count override");

  CLI::App* gue = app.add_subcommand("gue-s2", "GUE ensemble S_2 vs the closed form");
  addCommon(gue, gueArgs);

  CLI::App* mfim = app.add_subcommand("mfim-growth", "MFIM quench growth and bound comparison");
  addCommon(mfim, mfimArgs);

  CLI::App* syk = app.add_subcommand("syk-growth", "SYK-dot KM quench and boundary census");
  addCommon(syk, sykArgs);

  CLI::App* bounds = app.add_subcommand("bounds-report", "bound formulas over a parameter grid");
  addCommon(bounds, boundsArgs);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fuzz->parsed()) return cmdFuzzInequalities(fuzzArgs, samplesOverride);
    if (gue->parsed()) return cmdGueS2(gueArgs);
    if (mfim->parsed()) return cmdMfimGrowth(mfimArgs);
    if (syk->parsed()) return cmdSykGrowth(sykArgs);
    if (bounds->parsed()) return cmdBoundsReport(boundsArgs);
  } catch (const entrolab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
