#pragma once

#include <limits>
#include <string>
#include <vector>

#include "entrolab/types.hpp"

namespace entrolab {

/// Every scalar a bound formula can ask for. Lattice constants c, c1, c2, ck
/// are explicit inputs (defaults 1 for the 1D chain, c = 18 for the
/// Vershynina-lineage branch constant); vnPrefactor defaults to the optimal
/// known constant 2 for the non-local Von Neumann bound.
struct BoundContext {
  double alpha = 2.0;
  double hNorm = 1.0;        // ||H||
  double dimB = 1.0;         // D_B
  double dimAA = 1.0;        // D_aA
  double hbar = 1.0;
  double d0 = 2.0;           // onsite dimension
  double boundaryArea = 1.0;  // |∂A|
  int range = 0;             // R (finite-range models)
  int k = 0;                 // k-locality arity
  double w = std::numeric_limits<double>::quiet_NaN();   // decay exponent
  double xi = std::numeric_limits<double>::quiet_NaN();  // decay length
  int spatialDim = 1;        // D
  double c = 18.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double ck = 1.0;
  double vnPrefactor = 2.0;
  // Overrides the alpha != 1 branch constant c' (default 2 alpha / |alpha-1|).
  double cPrimeOverride = std::numeric_limits<double>::quiet_NaN();
};

struct BoundReport {
  std::string formulaId;
  double value = std::numeric_limits<double>::quiet_NaN();
  bool applicable = false;
  std::string reason;
  BoundContext inputs;
};

/// 2 alpha/|alpha-1| * ||H|| * D_B^2; holds for any state, alpha > 1.
BoundReport boundNonlocalIndependent(const BoundContext& ctx);

/// 2 alpha/|alpha-1| * ||H|| * (D_aA D_B)^{(alpha-1)/alpha}; alpha > 1.
BoundReport boundNonlocalStateIndependent(const BoundContext& ctx);

/// vnPrefactor * ||H|| * log min(D_aA, D_B).
BoundReport boundVonNeumannNonlocal(const BoundContext& ctx);

/// State-dependent bound; branches at alpha = 2:
///  1<alpha<2: 9a/(a-1) ||H|| D_B^{1+a} [Tr rho^a]^{-1} (1-D_B^-2)[1-(1-D_B^-2)^{a-1}]
///  alpha>=2:  same prefactors with (D_B^-2 - D_B^-2a).
BoundReport boundVershyninaState(const BoundContext& ctx, double trRhoAlpha);

/// Finite range R: b_1(R) = 18 c1 c2 R^{D+1} (with log d0 factor) for alpha=1,
/// b_alpha(R) = 2a/|a-1| c2 R d0^{2 c1 R^D} (no log factor) otherwise.
BoundReport boundFiniteRange(const BoundContext& ctx);

/// Power-law Von Neumann bound: c_sum * hbar * |∂A| * log d0 with
/// c_sum = 18 c1^2 sum_{r>=1} r^{2D-w}; needs w > 2D+1.
BoundReport boundPowerLawVn(const BoundContext& ctx);

/// Stretched-exponential Renyi bound; applicable for w > D, or w = D with
/// xi < xi_c = (1/(2 c1 log d0))^{1/D}.
BoundReport boundStretchedExpRenyi(const BoundContext& ctx);

double stretchedExpXiCritical(const BoundContext& ctx);

/// k-local: V(H_boundary) * hbar * { c (k-1) log d0 | c' d0^{2(k-1)} }.
BoundReport boundKLocal(const BoundContext& ctx, long vBoundary);

/// k-local + geometric, w > D k; the converged sum ck * sum r^{Dk-w-1} folds
/// into the branch constants.
BoundReport boundKLocalGeo(const BoundContext& ctx);

/// MFIM specialization with the optimal constants:
/// alpha=1 -> 2|J| log 2, else 8 alpha/|alpha-1| * |J|.
BoundReport boundMfim(double alpha, double J);

/// S_alpha(t) <= rate_1 * t for all alpha >= 1, with rate_1 the alpha=1
/// bound resolved from the context (power-law if w set, else finite range).
double totalGrowthCap(const BoundContext& ctx, double t);
double totalGrowthCap(double vnRate, double t);

struct SykChainRate {
  double value = 0.0;
  double perturbativeRatio = 0.0;  // J1 sqrt(beta J0) / J0; small means perturbative
};

/// Closed-form SYK-chain growth slope
/// alpha/(alpha-1) * (2 pi / beta) * J1^2 N / (8 pi J0^2); alpha > 1, beta > 0.
SykChainRate sykChainRate(double alpha, double beta, double j0, double j1, int nFlavors);

struct ComparisonRow {
  std::string label;
  double measured = 0.0;
  BoundReport bound;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  bool comparable = false;
  bool saturationAbove50 = false;
  bool saturationAbove90 = false;
};

/// Pairs measured rates/slopes with bound reports by index; inapplicable
/// bounds are carried through without a numeric ratio.
std::vector<ComparisonRow> compareReport(
    const std::vector<std::pair<std::string, double>>& measured,
    const std::vector<BoundReport>& bounds);

std::string comparisonCsv(const std::vector<ComparisonRow>& rows);

/// sum_{r>=1} r^{-s} to relative 1e-10 with an integral tail bound; s > 1.
double zetaLikeSum(double s);

}  // namespace entrolab
