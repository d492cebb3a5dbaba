#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "entrolab/types.hpp"

namespace entrolab {

enum class Provenance { Algebraic, Physical };

/// An ordered pair 0 <= X <= Y <= I with p = ||X||_1 = Tr X. Physical pairs
/// additionally satisfy p = dimLambda^-2 and Tr Y = 1 by construction.
struct OperatorPair {
  Matrix X, Y;
  double p = 0.0;
  Provenance provenance = Provenance::Algebraic;
  int dim = 0;        // matrix dimension
  int dimA = 0;       // physical only
  int dimLambda = 0;  // physical only
  std::uint64_t seed = 0;
};

struct CheckReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double tol = 0.0;
  bool holds = false;   // margin >= -tol
};

/// Y = G^dag G scaled to a random norm in (0,1]; X = Y^{1/2} K Y^{1/2} with
/// a random contraction K. The ordering 0 <= X <= Y <= I holds by construction.
OperatorPair samplePairAlgebraic(int dim, std::uint64_t seed);

/// Haar pure state on A + Lambda + purifier; X = p rho_{A Lambda},
/// Y = sqrt(p) rho_A ⊗ I_Lambda, p = dimLambda^-2.
OperatorPair samplePairPhysical(int dimA, int dimLambda, std::uint64_t seed,
                                long dimensionCap = kDefaultDimensionCap);

/// ||X Y^{alpha-1}||_1 <= Tr Y^alpha, alpha > 1.
CheckReport checkLemmaAlphaGt1(const OperatorPair& pair, double alpha);

/// ||X Y^{alpha-1}||_1 <= p (Tr Y^alpha)^{(alpha-1)/alpha}, alpha > 1.
CheckReport checkLemmaTraceConstrained(const OperatorPair& pair, double alpha);

/// ||[X, log Y]||_1 <= prefactor * min(p log(1/p), (1-p) log(1/(1-p))).
/// The proven constant is 9; the optimal known is 2 (probe use only).
CheckReport checkVershyninaLog(const OperatorPair& pair, double prefactor = 9.0);

/// ||[X, Y^{alpha-1}]||_1 <= 9 (1-p)[1-(1-p)^{alpha-1}] for 1 < alpha < 2,
/// and <= 9 p (1-p)^{alpha-1} for alpha >= 2.
CheckReport checkVershyninaPower(const OperatorPair& pair, double alpha,
                                 double prefactor = 9.0);

struct CounterexampleSearch {
  bool found = false;
  int samplesTried = 0;
  std::uint64_t witnessIndex = 0;
  std::uint64_t witnessSeed = 0;
  int witnessDim = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double relViolation = 0.0;      // (lhs - rhs) / rhs
  double preciseRelViolation = 0.0;  // Kahan-refined trace norm
  // Relative margins with the eigenvalue floor at 1e-10 / 1e-12 / 1e-14;
  // a genuine witness stays positive across all three.
  double floorMargins[3] = {0.0, 0.0, 0.0};
  OperatorPair witness;
};

/// Scans algebraic pairs for ||X Y^{alpha-1}||_1 > Tr Y^alpha at 0 < alpha < 1.
/// Returns the first witness that survives re-verification at tightened
/// tolerance, or an exhaustion report. (No witness can exist for
/// alpha >= 1/2: X = Y^{1/2} K Y^{1/2}, ||K|| <= 1 and Hoelder close the gap.)
CounterexampleSearch searchAlphaLt1Counterexample(int dimLo, int dimHi, double alpha,
                                                  int maxSamples, std::uint64_t masterSeed);

struct CampaignConfig {
  int samples = 10000;
  int dimLo = 2;
  int dimHi = 16;
  std::vector<double> alphas = {1.5, 2.0, 3.0, 5.0};
  std::uint64_t masterSeed = 0;
  int jobs = 1;
  bool includePhysical = true;
};

struct CampaignRow {
  std::string checker;
  double alpha = 0.0;
  int dim = 0;
  Provenance provenance = Provenance::Algebraic;
  std::uint64_t seed = 0;
  double lhs = 0.0, rhs = 0.0, margin = 0.0;
  bool holds = false;
};

struct CampaignResult {
  std::vector<CampaignRow> rows;
  std::map<std::string, double> minMargin;
  std::map<std::string, long> checksRun;
  long violations = 0;
};

CampaignResult runInequalityCampaign(const CampaignConfig& config);

/// CSV rows `checker,alpha,dim,provenance,seed,lhs,rhs,margin,holds` followed
/// by a per-checker min-margin summary block in trailing comments.
std::string campaignCsv(const CampaignResult& result);

}  // namespace entrolab
