#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "entrolab/hamiltonian.hpp"
#include "entrolab/linalg.hpp"
#include "entrolab/types.hpp"

namespace entrolab {

using PureState = Vector;
using DensityMatrix = Matrix;

void validatePureState(const PureState& psi);
void validateDensityMatrix(const DensityMatrix& rho);

/// Exact time evolution through the spectral decomposition of H; exact at
/// desk scale up to eigensolver error, no step-size confounds.
class EvolutionEngine {
 public:
  explicit EvolutionEngine(const Matrix& hamiltonian);

  long dim() const { return eig_.eigenvalues.size(); }
  const HermitianEig& spectrum() const { return eig_; }

  Vector coefficients(const Vector& psi) const;            // U^dagger psi
  Vector stateAt(const Vector& coeffs, double t) const;    // U e^{-i lambda t} coeffs
  Vector evolve(const Vector& psi, double t) const;
  Matrix evolveDensity(const Matrix& rho, double t) const;

  /// e^{-beta H / 2} psi, normalized.
  Vector imaginaryTimeProject(const Vector& psi, double beta) const;

 private:
  HermitianEig eig_;
};

PureState haarProductState(int nSites, int d0, std::uint64_t seed,
                           long dimensionCap = kDefaultDimensionCap);

PureState computationalBasisState(int nSites, long index);

/// e^{-beta H/2}|s>, normalized. s is a +/-1 string over the model's qubits;
/// s_j = +1 marks qubit j occupied (|1>) under this library's Jordan-Wigner
/// number-basis convention.
PureState buildKmState(const EvolutionEngine& engine, const std::vector<int>& s, double beta);
PureState buildKmState(const HamiltonianModel& sykModel, const std::vector<int>& s, double beta);

/// Reduced spectrum across the cut. Pure states go through the Schmidt
/// decomposition; density matrices through the partial trace.
RealVector reducedEigenvalues(const PureState& psi, const Bipartition& part, Keep keep = Keep::A);
RealVector reducedEigenvalues(const DensityMatrix& rho, const Bipartition& part,
                              Keep keep = Keep::A);

DensityMatrix reducedDensityMatrix(const PureState& psi, const Bipartition& part,
                                   Keep keep = Keep::A);

/// Renyi entropy of a clipped spectrum, natural-log units. alpha = 1 is the
/// Von Neumann entropy with 0 log 0 := 0.
double renyiEntropyFromSpectrum(const RealVector& lambda, double alpha);
double renyiEntropy(const PureState& psi, const Bipartition& part, double alpha);
double renyiEntropy(const DensityMatrix& rho, const Bipartition& part, double alpha);

double tsallisEntropyFromSpectrum(const RealVector& lambda, double q);
double tsallisEntropy(const PureState& psi, const Bipartition& part, double q);
double tsallisEntropy(const DensityMatrix& rho, const Bipartition& part, double q);

/// Signed instantaneous entropy rate from the boundary-commutator trace form,
/// Schroedinger convention rho' = -i[H, rho]:
///   alpha != 1:  -(2 alpha/(alpha-1)) Im Tr(H_b rho (rho_A^{alpha-1} ⊗ I)) / Tr rho_A^alpha
///   alpha == 1:  -2 Im Tr(H_b rho (log rho_A ⊗ I))
/// Only boundary-crossing terms of the model contribute; the hBoundaryDense
/// overloads take the crossing part already assembled.
double entropyRateAnalytic(const HamiltonianModel& model, const PureState& psi,
                           const Bipartition& part, double alpha);
double entropyRateAnalytic(const HamiltonianModel& model, const DensityMatrix& rho,
                           const Bipartition& part, double alpha);
double entropyRateAnalytic(const Matrix& hBoundaryDense, const PureState& psi,
                           const Bipartition& part, double alpha);
double entropyRateAnalytic(const Matrix& hBoundaryDense, const DensityMatrix& rho,
                           const Bipartition& part, double alpha);

/// Central finite difference (S(t+delta) - S(t-delta)) / (2 delta) along the
/// trajectory started from psi0; the independent oracle for the analytic rate.
double entropyRateFd(const EvolutionEngine& engine, const PureState& psi0,
                     const Bipartition& part, double alpha, double t, double delta);

struct EntropyCurve {
  double alpha = 1.0;
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> stdErr;
  int ensembleSize = 0;
  std::vector<std::uint64_t> seeds;
};

struct EnsembleSpec {
  std::vector<double> times;
  std::vector<double> alphas;
  Bipartition part;
  int ensembleSize = 1;
  std::uint64_t masterSeed = 0;
  int jobs = 1;

  // Fixed Hamiltonian for the whole ensemble, or a per-member sampler.
  const EvolutionEngine* sharedEngine = nullptr;
  std::function<Matrix(std::uint64_t seed)> hamiltonianSampler;
  std::function<Vector(std::uint64_t seed, const EvolutionEngine&)> stateSampler;
};

std::vector<EntropyCurve> runGrowthExperiment(const EnsembleSpec& spec);

std::string curvesCsv(const std::vector<EntropyCurve>& curves);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS
  double vE = 0.0;        // slope / (hbar log d0) when requested
};

LinearFit fitLinearWindow(const std::vector<double>& times, const std::vector<double>& values,
                          double t1, double t2);
LinearFit fitLinearWindow(const std::vector<double>& times, const std::vector<double>& values,
                          double t1, double t2, double hbar, int d0);

/// [0.2, 0.7] * t_sat, with t_sat the first time the curve reaches 90% of its
/// final plateau (mean of the trailing tenth of the grid).
std::pair<double, double> defaultFitWindow(const std::vector<double>& times,
                                           const std::vector<double>& values);

/// Runs fn(0..n-1) on up to `jobs` threads. Any scheduled order; callers make
/// results order-independent by indexing.
void parallelFor(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace entrolab
