#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entrolab/linalg.hpp"
#include "entrolab/types.hpp"

namespace entrolab {

struct Lattice {
  int spatialDim = 1;  // 0 marks a non-geometric (all-to-all) model
  int siteCount = 0;
  int onsiteDim = 2;

  long dimTotal() const;
};

struct SiteFactor {
  int site = 0;
  Matrix op;  // onsiteDim x onsiteDim
};

/// One labelled summand coefficient * O. O is either a product of on-site
/// factors (identity everywhere else) or an explicit dense full-space matrix.
struct Term {
  std::string label;
  double coefficient = 0.0;
  std::vector<SiteFactor> factors;  // sorted by site, non-identity factors only
  Matrix denseOp;                   // full-space operator when factors is empty
  std::vector<int> support;         // sites the operator acts on non-trivially
  int diameter = 0;                 // 1D chain span; 0 for non-geometric terms
  double opNorm = 0.0;              // ||O||

  bool isDense() const { return denseOp.size() != 0; }
};

struct HamiltonianModel {
  Lattice lattice;
  std::vector<Term> terms;
  double hbar = 0.0;  // max over terms of |coefficient| * ||O||
};

/// Mixed-field Ising chain, open boundary conditions:
/// g sum X_i + h sum Z_i + J sum Z_i Z_{i+1}. 2L field terms, L-1 bonds.
HamiltonianModel buildMfim(int L, double g, double h, double J);

/// GUE draw with density ~ exp(-(D/2) Tr H^2): real diagonal at variance 1/D,
/// off-diagonal real/imag parts at variance 1/(2D) each. Seed-deterministic.
Matrix sampleGue(long dim, std::uint64_t seed);

/// Wraps a GUE draw on V qudits of dimension d as a single-term model.
HamiltonianModel buildGueModel(int d, int V, std::uint64_t seed);

/// SYK dot: all quadruples chi_i chi_j chi_k chi_l (i<j<k<l) of N Majoranas
/// with Gaussian couplings at variance 3! J^2 / N^3, Jordan-Wigner mapped to
/// N/2 qubits. Convention {chi_i, chi_j} = delta_ij, i.e. chi^2 = 1/2.
HamiltonianModel buildSykDot(int nMajorana, double J, std::uint64_t seed);

/// Dense Jordan-Wigner Majorana operator (index 0-based) on N/2 qubits,
/// normalized so chi^2 = 1/2.
Matrix majoranaDense(int nMajorana, int index);

/// Terms whose support intersects both A and the complement. The count of
/// these terms is the quantity written V(H_boundary) (aka S(H_boundary)) in
/// the k-local bound.
HamiltonianModel extractBoundary(const HamiltonianModel& model, const Bipartition& part);

long boundaryTermCount(const HamiltonianModel& model, const Bipartition& part);

Matrix termDense(const Term& term, const Lattice& lattice);

Matrix assembleDense(const HamiltonianModel& model, long dimensionCap = kDefaultDimensionCap);

/// Text serialization of lattice metadata and per-term
/// (label, coefficient, support, diameter) for reproducibility audits.
std::string exportModel(const HamiltonianModel& model);

Bipartition modelBipartition(const HamiltonianModel& model, const std::vector<int>& aSites);

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

}  // namespace entrolab
