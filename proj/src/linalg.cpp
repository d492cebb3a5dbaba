#include "entrolab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace entrolab {

namespace {

Eigen::VectorXd singularValues(const Matrix& m) {
  // Jacobi is the accurate choice at the small dims the checkers live at;
  // BDC takes over for the larger evolution-scale operands.
  if (std::max(m.rows(), m.cols()) <= 32) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

struct CutMaps {
  long dimA = 1;
  long dimC = 1;
  std::vector<long> aIndex;  // full index -> A-factor index
  std::vector<long> cIndex;  // full index -> complement-factor index
};

CutMaps buildCutMaps(const Bipartition& part) {
  part.validate();
  const int n = static_cast<int>(part.siteDims.size());
  std::vector<bool> inA(n, false);
  for (int s : part.aSites) inA[s] = true;

  CutMaps maps;
  maps.dimA = part.dimA();
  maps.dimC = part.dimComplement();
  const long total = maps.dimA * maps.dimC;
  maps.aIndex.assign(total, 0);
  maps.cIndex.assign(total, 0);

  // Site 0 is the most significant digit of the full index. Within each
  // factor, kept sites keep their relative order.
  std::vector<long> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * part.siteDims[s + 1];

  std::vector<long> aStride(n, 0), cStride(n, 0);
  {
    long sa = 1, sc = 1;
    for (int s = n - 1; s >= 0; --s) {
      if (inA[s]) {
        aStride[s] = sa;
        sa *= part.siteDims[s];
      } else {
        cStride[s] = sc;
        sc *= part.siteDims[s];
      }
    }
  }

  for (long full = 0; full < total; ++full) {
    long rem = full, a = 0, c = 0;
    for (int s = 0; s < n; ++s) {
      const long digit = rem / stride[s];
      rem -= digit * stride[s];
      if (inA[s])
        a += digit * aStride[s];
      else
        c += digit * cStride[s];
    }
    maps.aIndex[full] = a;
    maps.cIndex[full] = c;
  }
  return maps;
}

}  // namespace

long Bipartition::dimA() const {
  long d = 1;
  for (int s : aSites) d *= siteDims[s];
  return d;
}

long Bipartition::dimComplement() const { return dimTotal() / dimA(); }

long Bipartition::dimTotal() const {
  long d = 1;
  for (int dim : siteDims) d *= dim;
  return d;
}

std::vector<int> Bipartition::complementSites() const {
  std::vector<int> out;
  for (int s = 0; s < static_cast<int>(siteDims.size()); ++s)
    if (!contains(s)) out.push_back(s);
  return out;
}

bool Bipartition::contains(int site) const {
  return std::find(aSites.begin(), aSites.end(), site) != aSites.end();
}

void Bipartition::validate() const {
  const int n = static_cast<int>(siteDims.size());
  if (n < 2) throw std::invalid_argument("Bipartition: need at least two sites");
  for (int d : siteDims)
    if (d < 1) throw std::invalid_argument("Bipartition: site dimensions must be >= 1");
  if (aSites.empty() || static_cast<int>(aSites.size()) >= n)
    throw std::invalid_argument("Bipartition: A must be a non-empty strict subset");
  std::vector<bool> seen(n, false);
  for (int s : aSites) {
    if (s < 0 || s >= n) throw std::invalid_argument("Bipartition: site index out of range");
    if (seen[s]) throw std::invalid_argument("Bipartition: duplicate site in A");
    seen[s] = true;
  }
}

Bipartition Bipartition::firstSites(int nSites, int d0, int nA) {
  Bipartition part;
  part.siteDims.assign(nSites, d0);
  for (int s = 0; s < nA; ++s) part.aSites.push_back(s);
  part.validate();
  return part;
}

Bipartition Bipartition::half(int nSites, int d0) {
  return firstSites(nSites, d0, nSites / 2);
}

HermitianEig eigh(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigh: matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("eigh: non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol * scale)
    throw std::invalid_argument("eigh: matrix is not Hermitian within tolerance");

  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double schattenNorm(const Matrix& m, double p) {
  if (!(p >= 1.0))  // also rejects NaN
    throw std::invalid_argument("schattenNorm: p must be >= 1 (or infinity)");
  const Eigen::VectorXd sv = singularValues(m);
  if (sv.size() == 0) return 0.0;
  if (std::isinf(p)) return sv.maxCoeff();
  if (p == 1.0) return sv.sum();
  // Factor out the largest singular value before powering.
  const double top = sv.maxCoeff();
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv[i] / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double traceNorm(const Matrix& m) { return schattenNorm(m, 1.0); }

double operatorNorm(const Matrix& m) {
  return schattenNorm(m, std::numeric_limits<double>::infinity());
}

double traceNormPrecise(const Matrix& m) {
  const Eigen::VectorXd sv = singularValues(m);
  long double sum = 0.0L, comp = 0.0L;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const long double y = static_cast<long double>(sv[i]) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(sum);
}

Matrix partialTrace(const Matrix& m, const Bipartition& part, Keep keep) {
  const CutMaps maps = buildCutMaps(part);
  const long total = maps.dimA * maps.dimC;
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("partialTrace: matrix dimension does not match bipartition");

  const long dKeep = (keep == Keep::A) ? maps.dimA : maps.dimC;
  const long dSum = (keep == Keep::A) ? maps.dimC : maps.dimA;
  const std::vector<long>& keepIdx = (keep == Keep::A) ? maps.aIndex : maps.cIndex;
  const std::vector<long>& sumIdx = (keep == Keep::A) ? maps.cIndex : maps.aIndex;

  std::vector<long> fullOf(static_cast<size_t>(total));
  for (long i = 0; i < total; ++i) fullOf[keepIdx[i] * dSum + sumIdx[i]] = i;

  Matrix out = Matrix::Zero(dKeep, dKeep);
  for (long r = 0; r < dKeep; ++r)
    for (long c = 0; c < dKeep; ++c) {
      Complex acc(0, 0);
      for (long s = 0; s < dSum; ++s) acc += m(fullOf[r * dSum + s], fullOf[c * dSum + s]);
      out(r, c) = acc;
    }
  return out;
}

Matrix stateAsMatrix(const Vector& psi, const Bipartition& part) {
  const CutMaps maps = buildCutMaps(part);
  if (psi.size() != maps.dimA * maps.dimC)
    throw std::invalid_argument("stateAsMatrix: state dimension does not match bipartition");
  Matrix out(maps.dimA, maps.dimC);
  for (long i = 0; i < psi.size(); ++i) out(maps.aIndex[i], maps.cIndex[i]) = psi[i];
  return out;
}

Vector applyOnA(const Matrix& opA, const Vector& psi, const Bipartition& part) {
  const CutMaps maps = buildCutMaps(part);
  if (opA.rows() != maps.dimA || opA.cols() != maps.dimA)
    throw std::invalid_argument("applyOnA: operator does not match the A factor");
  const Matrix shaped = stateAsMatrix(psi, part);
  const Matrix mapped = opA * shaped;
  Vector out(psi.size());
  for (long i = 0; i < psi.size(); ++i) out[i] = mapped(maps.aIndex[i], maps.cIndex[i]);
  return out;
}

Matrix embedOnA(const Matrix& opA, const Bipartition& part) {
  const CutMaps maps = buildCutMaps(part);
  if (opA.rows() != maps.dimA || opA.cols() != maps.dimA)
    throw std::invalid_argument("embedOnA: operator does not match the A factor");
  const long total = maps.dimA * maps.dimC;
  Matrix out = Matrix::Zero(total, total);
  for (long i = 0; i < total; ++i)
    for (long j = 0; j < total; ++j)
      if (maps.cIndex[i] == maps.cIndex[j]) out(i, j) = opA(maps.aIndex[i], maps.aIndex[j]);
  return out;
}

Matrix matrixFunction(const Matrix& y, const MatrixFn& f) {
  const HermitianEig eig = eigh(y);
  RealVector lam = eig.eigenvalues;
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  if (lam.minCoeff() < -1e-10 * scale)
    throw std::invalid_argument("matrixFunction: input is not PSD within tolerance");
  lam = lam.cwiseMax(0.0);

  const bool needsFloor =
      f.kind == MatrixFn::Kind::Log || (f.kind == MatrixFn::Kind::Power && f.exponent < 0.0);
  if (needsFloor) {
    if (!f.floorEnabled && lam.minCoeff() <= 0.0)
      throw std::domain_error(
          "matrixFunction: zero eigenvalue with the eigenvalue floor disabled");
    if (f.floorEnabled) lam = lam.cwiseMax(f.floorValue);
  }

  RealVector mapped(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (f.kind == MatrixFn::Kind::Log) {
      mapped[i] = std::log(lam[i]);
    } else if (f.exponent == 0.0) {
      mapped[i] = lam[i] > 0.0 ? 1.0 : 0.0;  // support projector
    } else {
      mapped[i] = std::pow(lam[i], f.exponent);
    }
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace entrolab
