#pragma once

#include <stdexcept>
#include <vector>

#include "entrolab/types.hpp"

namespace entrolab {

/// Spectral decomposition of a Hermitian matrix: eigenvalues ascending,
/// columns of `eigenvectors` unitary.
struct HermitianEig {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

/// A split of lattice sites into A and its complement. Site 0 is the leftmost
/// (most significant) tensor factor everywhere in this library.
struct Bipartition {
  std::vector<int> siteDims;
  std::vector<int> aSites;  // ordered, non-empty strict subset of all sites

  long dimA() const;
  long dimComplement() const;
  long dimTotal() const;
  std::vector<int> complementSites() const;
  bool contains(int site) const;
  void validate() const;  // throws std::invalid_argument on a malformed split

  static Bipartition firstSites(int nSites, int d0, int nA);
  static Bipartition half(int nSites, int d0);
};

enum class Keep { A, Complement };

HermitianEig eigh(const Matrix& m);

/// Schatten p-norm from singular values; p = inf gives the operator norm,
/// p = 1 the trace norm. p < 1 is rejected.
double schattenNorm(const Matrix& m, double p);

double traceNorm(const Matrix& m);
double operatorNorm(const Matrix& m);

/// Trace norm with long-double Kahan accumulation over singular values; used
/// to re-verify counterexample witnesses at tightened tolerance.
double traceNormPrecise(const Matrix& m);

Matrix partialTrace(const Matrix& m, const Bipartition& part, Keep keep);

/// View a pure state as a dimA x dimComplement matrix across the cut
/// (row = kept-factor index). The reduced density matrix of A is then
/// stateAsMatrix(psi) * stateAsMatrix(psi)^dagger.
Matrix stateAsMatrix(const Vector& psi, const Bipartition& part);

/// Apply (op_A otimes I) to a full-space state, with op_A acting on the A
/// factor of the bipartition.
Vector applyOnA(const Matrix& opA, const Vector& psi, const Bipartition& part);

/// Embed an A-factor operator into the full space as op otimes I.
Matrix embedOnA(const Matrix& opA, const Bipartition& part);

struct MatrixFn {
  enum class Kind { Log, Power };
  Kind kind = Kind::Power;
  double exponent = 1.0;
  bool floorEnabled = true;
  double floorValue = kEigenvalueFloor;

  static MatrixFn log() { return {Kind::Log, 0.0, true, kEigenvalueFloor}; }
  static MatrixFn power(double s) { return {Kind::Power, s, true, kEigenvalueFloor}; }
};

/// f(Y) for Hermitian PSD Y via U f(clip(lambda)) U^dagger. Eigenvalues down
/// to -1e-10 are accepted and clipped; log and negative powers see the floor.
Matrix matrixFunction(const Matrix& y, const MatrixFn& f);

template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Complex(a(i, j)) * b;
  return out;
}

template <typename DerivedA, typename DerivedB>
Matrix commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("commutator: conformable square matrices required");
  return a * b - b * a;
}

}  // namespace entrolab
