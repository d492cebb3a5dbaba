#include "entrolab/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "entrolab/rng.hpp"

namespace entrolab {

namespace pauli {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}
Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

long Lattice::dimTotal() const {
  long d = 1;
  for (int s = 0; s < siteCount; ++s) d *= onsiteDim;
  return d;
}

namespace {

std::string joinInts(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

// Writes M as scalar * P with P a genuine Pauli (or identity); returns false
// when M is not proportional to any of the four.
bool pauliDecompose(const Matrix& m, Complex& scalar, Matrix& p) {
  const Matrix candidates[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  for (const Matrix& cand : candidates) {
    const Complex c = (cand.adjoint() * m).trace() / 2.0;
    if ((m - c * cand).cwiseAbs().maxCoeff() < 1e-12) {
      scalar = c;
      p = cand;
      return true;
    }
  }
  return false;
}

double updateHbar(const std::vector<Term>& terms) {
  double hbar = 0.0;
  for (const Term& t : terms) hbar = std::max(hbar, std::abs(t.coefficient) * t.opNorm);
  return hbar;
}

}  // namespace

HamiltonianModel buildMfim(int L, double g, double h, double J) {
  if (L < 2) throw std::invalid_argument("buildMfim: L must be >= 2");
  HamiltonianModel model;
  model.lattice = {1, L, 2};
  for (int i = 0; i < L; ++i) {
    Term tx;
    tx.label = "gX_" + std::to_string(i);
    tx.coefficient = g;
    tx.factors = {{i, pauli::x()}};
    tx.support = {i};
    tx.diameter = 0;
    tx.opNorm = 1.0;
    model.terms.push_back(std::move(tx));

    Term tz;
    tz.label = "hZ_" + std::to_string(i);
    tz.coefficient = h;
    tz.factors = {{i, pauli::z()}};
    tz.support = {i};
    tz.diameter = 0;
    tz.opNorm = 1.0;
    model.terms.push_back(std::move(tz));
  }
  for (int i = 0; i + 1 < L; ++i) {
    Term tzz;
    tzz.label = "JZZ_" + std::to_string(i);
    tzz.coefficient = J;
    tzz.factors = {{i, pauli::z()}, {i + 1, pauli::z()}};
    tzz.support = {i, i + 1};
    tzz.diameter = 1;
    tzz.opNorm = 1.0;
    model.terms.push_back(std::move(tzz));
  }
  model.hbar = std::max({std::abs(g), std::abs(h), std::abs(J)});
  return model;
}

Matrix sampleGue(long dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("sampleGue: dimension must be >= 2");
  Rng rng(seed);
  Matrix h = Matrix::Zero(dim, dim);
  const double diagSigma = std::sqrt(1.0 / static_cast<double>(dim));
  const double offSigma = std::sqrt(1.0 / (2.0 * static_cast<double>(dim)));
  for (long i = 0; i < dim; ++i) h(i, i) = Complex(rng.gaussian() * diagSigma, 0.0);
  for (long i = 0; i < dim; ++i)
    for (long j = i + 1; j < dim; ++j) {
      const Complex v(rng.gaussian() * offSigma, rng.gaussian() * offSigma);
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  return h;
}

HamiltonianModel buildGueModel(int d, int V, std::uint64_t seed) {
  HamiltonianModel model;
  model.lattice = {0, V, d};
  Term t;
  t.label = "gue";
  t.coefficient = 1.0;
  t.denseOp = sampleGue(model.lattice.dimTotal(), seed);
  for (int s = 0; s < V; ++s) t.support.push_back(s);
  t.diameter = 0;
  {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(t.denseOp, Eigen::EigenvaluesOnly);
    t.opNorm = solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  model.terms.push_back(std::move(t));
  model.hbar = updateHbar(model.terms);
  return model;
}

namespace {

// Per-qubit factors of the Jordan-Wigner string for Majorana `index`:
// Z on qubits below index/2, X or Y on qubit index/2, all scaled by 1/sqrt(2).
std::vector<Matrix> majoranaSiteFactors(int nQubits, int index) {
  std::vector<Matrix> f(nQubits, pauli::identity());
  const int q = index / 2;
  for (int s = 0; s < q; ++s) f[s] = pauli::z();
  f[q] = (index % 2 == 0) ? pauli::x() : pauli::y();
  return f;
}

}  // namespace

Matrix majoranaDense(int nMajorana, int index) {
  if (nMajorana % 2 != 0 || nMajorana < 2)
    throw std::invalid_argument("majoranaDense: Majorana count must be even and >= 2");
  if (index < 0 || index >= nMajorana)
    throw std::invalid_argument("majoranaDense: index out of range");
  const int nq = nMajorana / 2;
  const auto factors = majoranaSiteFactors(nq, index);
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out / std::sqrt(2.0);
}

HamiltonianModel buildSykDot(int nMajorana, double J, std::uint64_t seed) {
  if (nMajorana % 2 != 0) throw std::invalid_argument("buildSykDot: Majorana count must be even");
  if (nMajorana < 4) throw std::invalid_argument("buildSykDot: need at least 4 Majoranas");
  const int nq = nMajorana / 2;

  HamiltonianModel model;
  model.lattice = {0, nq, 2};

  const double n3 = static_cast<double>(nMajorana) * nMajorana * nMajorana;
  const double sigma = std::abs(J) * std::sqrt(6.0 / n3);
  Rng rng(seed);

  for (int i = 0; i < nMajorana; ++i)
    for (int j = i + 1; j < nMajorana; ++j)
      for (int k = j + 1; k < nMajorana; ++k)
        for (int l = k + 1; l < nMajorana; ++l) {
          const double coupling = rng.gaussian() * sigma;

          // Multiply the four Jordan-Wigner strings site by site; each chi
          // carries 1/sqrt(2), so the quadruple carries 1/4.
          Complex scale(0.25, 0.0);
          std::vector<SiteFactor> kept;
          for (int q = 0; q < nq; ++q) {
            Matrix f = pauli::identity();
            for (int m : {i, j, k, l}) {
              const auto sf = majoranaSiteFactors(nq, m);
              f = f * sf[q];
            }
            Complex c;
            Matrix p;
            if (!pauliDecompose(f, c, p))
              throw std::logic_error("buildSykDot: site factor is not a Pauli");
            scale *= c;
            if ((p - pauli::identity()).cwiseAbs().maxCoeff() > 0.5) kept.push_back({q, p});
          }
          // The ordered quadruple of distinct anticommuting Hermitian chis is
          // itself Hermitian, so the accumulated phase must be real.
          if (std::abs(scale.imag()) > 1e-12)
            throw std::logic_error("buildSykDot: quadruple phase is not real");

          Term t;
          std::ostringstream lbl;
          lbl << "maj(" << i << ',' << j << ',' << k << ',' << l << ')';
          t.label = lbl.str();
          t.coefficient = coupling * scale.real();
          t.factors = std::move(kept);
          for (const SiteFactor& sf : t.factors) t.support.push_back(sf.site);
          t.diameter = 0;
          t.opNorm = 1.0;
          model.terms.push_back(std::move(t));
        }

  model.hbar = updateHbar(model.terms);
  return model;
}

HamiltonianModel extractBoundary(const HamiltonianModel& model, const Bipartition& part) {
  part.validate();
  if (static_cast<int>(part.siteDims.size()) != model.lattice.siteCount)
    throw std::invalid_argument("extractBoundary: bipartition does not match the lattice");

  HamiltonianModel out;
  out.lattice = model.lattice;
  for (const Term& t : model.terms) {
    bool inA = false, inC = false;
    for (int s : t.support) (part.contains(s) ? inA : inC) = true;
    if (inA && inC) out.terms.push_back(t);
  }
  out.hbar = updateHbar(out.terms);
  return out;
}

long boundaryTermCount(const HamiltonianModel& model, const Bipartition& part) {
  return static_cast<long>(extractBoundary(model, part).terms.size());
}

Matrix termDense(const Term& term, const Lattice& lattice) {
  if (term.isDense()) {
    if (term.denseOp.rows() != lattice.dimTotal())
      throw std::invalid_argument("termDense: dense operator does not match the lattice");
    return term.denseOp;
  }
  Matrix out = Matrix::Identity(1, 1);
  size_t next = 0;
  for (int s = 0; s < lattice.siteCount; ++s) {
    if (next < term.factors.size() && term.factors[next].site == s) {
      out = kron(out, term.factors[next].op);
      ++next;
    } else {
      out = kron(out, Matrix::Identity(lattice.onsiteDim, lattice.onsiteDim));
    }
  }
  return out;
}

Matrix assembleDense(const HamiltonianModel& model, long dimensionCap) {
  const long dim = model.lattice.dimTotal();
  if (dim > dimensionCap)
    throw std::invalid_argument("assembleDense: total dimension exceeds the cap");
  Matrix out = Matrix::Zero(dim, dim);
  for (const Term& t : model.terms) out += t.coefficient * termDense(t, model.lattice);
  return out;
}

std::string exportModel(const HamiltonianModel& model) {
  // Full round-trip precision: this listing is the reproducibility record.
  auto num = [](double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  std::ostringstream os;
  os << "# entrolab hamiltonian model\n";
  os << "lattice.spatialDim = " << model.lattice.spatialDim << "\n";
  os << "lattice.siteCount = " << model.lattice.siteCount << "\n";
  os << "lattice.onsiteDim = " << model.lattice.onsiteDim << "\n";
  os << "hbar = " << num(model.hbar) << "\n";
  os << "terms = " << model.terms.size() << "\n";
  for (size_t i = 0; i < model.terms.size(); ++i) {
    const Term& t = model.terms[i];
    os << "term " << i << ": label=" << t.label << " coefficient=" << num(t.coefficient)
       << " support=" << joinInts(t.support) << " diameter=" << t.diameter << "\n";
  }
  return os.str();
}

Bipartition modelBipartition(const HamiltonianModel& model, const std::vector<int>& aSites) {
  Bipartition part;
  part.siteDims.assign(model.lattice.siteCount, model.lattice.onsiteDim);
  part.aSites = aSites;
  part.validate();
  return part;
}

}  // namespace entrolab
