#include <doctest.h>

#include <cmath>

#include "entrolab/dynamics.hpp"
#include "entrolab/hamiltonian.hpp"
#include "entrolab/rng.hpp"

using namespace entrolab;

namespace {

Vector randomState(long dim, std::uint64_t seed) {
  Rng rng(seed);
  Vector psi(dim);
  for (long i = 0; i < dim; ++i) psi[i] = Complex(rng.gaussian(), rng.gaussian());
  psi.normalize();
  return psi;
}

}  // namespace

TEST_CASE("haarProductState basics") {
  const Vector psi = haarProductState(4, 2, 11);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
  // product states carry no entanglement across any cut
  for (int nA : {1, 2, 3})
    CHECK(renyiEntropy(psi, Bipartition::firstSites(4, 2, nA), 2.0) < 1e-10);
  // deterministic per seed, distinct across seeds
  CHECK((haarProductState(4, 2, 11) - psi).cwiseAbs().maxCoeff() == 0.0);
  const Vector other = haarProductState(4, 2, 12);
  CHECK(std::norm(psi.dot(other)) < 1.0 - 1e-6);
  CHECK_THROWS_AS(haarProductState(20, 2, 1), std::invalid_argument);  // over the cap
}

TEST_CASE("evolution preserves norm, energy, purity; t = 0 is the identity") {
  const HamiltonianModel model = buildMfim(4, -1.05, 0.5, 0.8);
  const Matrix h = assembleDense(model);
  const EvolutionEngine engine(h);
  const Vector psi = haarProductState(4, 2, 5);

  CHECK((engine.evolve(psi, 0.0) - psi).cwiseAbs().maxCoeff() < 1e-12);

  const double e0 = (psi.adjoint() * h * psi)(0).real();
  for (double t : {0.3, 1.0, 2.5}) {
    const Vector psit = engine.evolve(psi, t);
    CHECK(std::abs(psit.norm() - 1.0) < 1e-12);
    CHECK(std::abs((psit.adjoint() * h * psit)(0).real() - e0) < 1e-9);
  }

  // density-matrix route: purity conserved
  Matrix rho = 0.7 * (psi * psi.adjoint());
  const Vector phi = randomState(16, 17);
  rho += 0.3 * (phi * phi.adjoint());
  const double purity0 = (rho * rho).trace().real();
  const Matrix rhoT = engine.evolveDensity(rho, 1.3);
  CHECK(std::abs((rhoT * rhoT).trace().real() - purity0) < 1e-9);
  CHECK(std::abs(rhoT.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("KM states") {
  const HamiltonianModel syk = buildSykDot(8, 1.0, 31);
  const EvolutionEngine engine(assembleDense(syk));

  // beta = 0 reproduces the basis state: s = (+,-,+,-) -> bits 1010
  const Vector km0 = buildKmState(engine, {1, -1, 1, -1}, 0.0);
  CHECK(std::abs(std::abs(km0[0b1010]) - 1.0) < 1e-12);

  const Vector kmBeta = buildKmState(engine, {1, -1, 1, -1}, 3.0);
  CHECK(std::abs(kmBeta.norm() - 1.0) < 1e-12);

  // imaginary time projects toward the ground state
  const Vector ground = engine.spectrum().eigenvectors.col(0);
  const double overlap0 = std::norm(ground.dot(km0));
  const double overlapBeta = std::norm(ground.dot(buildKmState(engine, {1, -1, 1, -1}, 50.0)));
  CHECK(overlapBeta > overlap0);

  CHECK_THROWS_AS(buildKmState(engine, {1, -1, 1, -1}, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(buildKmState(engine, {1, -1, 2, -1}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(buildKmState(engine, {1, -1, 1}, 0.5), std::invalid_argument);

  // model-level convenience overload agrees
  const Vector viaModel = buildKmState(syk, {1, -1, 1, -1}, 3.0);
  CHECK((viaModel - kmBeta).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Renyi entropy fixed values") {
  // pure product state -> 0 for every alpha
  const Vector prod = haarProductState(3, 2, 2);
  const Bipartition cut3 = Bipartition::firstSites(3, 2, 1);
  for (double a : {0.5, 1.0, 2.0, 3.0}) CHECK(renyiEntropy(prod, cut3, a) < 1e-9);

  // maximally mixed reduced state of dimension d -> log d
  const Bipartition cut2 = Bipartition::half(2, 2);
  const Matrix mixed = Matrix::Identity(4, 4) / 4.0;
  for (double a : {1.0, 2.0, 5.0})
    CHECK(renyiEntropy(mixed, cut2, a) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Bell pair
  Vector bell = Vector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  CHECK(renyiEntropy(bell, cut2, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(renyiEntropy(bell, cut2, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // alpha -> 1 continuity
  const Vector psi = randomState(16, 8);
  const Bipartition cut4 = Bipartition::half(4, 2);
  CHECK(renyiEntropy(psi, cut4, 1.0 + 1e-6) ==
        doctest::Approx(renyiEntropy(psi, cut4, 1.0)).epsilon(1e-4));
  CHECK_THROWS_AS(renyiEntropy(psi, cut4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(renyiEntropy(psi, cut4, -1.0), std::invalid_argument);
}

TEST_CASE("Renyi entropy invariants on random states") {
  const Bipartition part = Bipartition::firstSites(4, 2, 1);
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const Vector psi = randomState(16, seed);
    // monotone non-increasing in alpha
    double prev = 1e300;
    for (double a : {0.5, 1.0, 1.5, 2.0, 3.0, 6.0}) {
      const double s = renyiEntropy(psi, part, a);
      CHECK(s <= prev + 1e-9);
      prev = s;
      CHECK(s >= -1e-9);
      CHECK(s <= std::log(2.0) + 1e-9);  // log min(D_A, D_C) = log 2
    }
    // pure-state symmetry across the cut
    for (double a : {1.0, 2.0}) {
      const double sa = renyiEntropyFromSpectrum(reducedEigenvalues(psi, part, Keep::A), a);
      const double sc =
          renyiEntropyFromSpectrum(reducedEigenvalues(psi, part, Keep::Complement), a);
      CHECK(sa == doctest::Approx(sc).epsilon(1e-9));
    }
  }
}

TEST_CASE("Tsallis entropy") {
  const Vector prod = haarProductState(3, 2, 4);
  const Bipartition cut = Bipartition::firstSites(3, 2, 1);
  CHECK(tsallisEntropy(prod, cut, 2.0) < 1e-10);

  const Matrix mixed = Matrix::Identity(4, 4) / 4.0;
  CHECK(tsallisEntropy(mixed, Bipartition::half(2, 2), 2.0) ==
        doctest::Approx(0.5).epsilon(1e-12));  // 1 - 1/d with d = 2

  // identity T_q = (1 - e^{(1-q) S_q}) / (q - 1)
  const Vector psi = randomState(16, 12);
  const Bipartition cut4 = Bipartition::half(4, 2);
  for (double q : {0.5, 1.5, 2.0, 3.0}) {
    const double sq = renyiEntropy(psi, cut4, q);
    const double expected = (1.0 - std::exp((1.0 - q) * sq)) / (q - 1.0);
    CHECK(tsallisEntropy(psi, cut4, q) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK_THROWS_AS(tsallisEntropy(psi, cut4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(tsallisEntropy(psi, cut4, 0.0), std::invalid_argument);
}

TEST_CASE("analytic rate vanishes when nothing crosses the cut") {
  // Hamiltonian supported entirely inside A
  HamiltonianModel model;
  model.lattice = {1, 4, 2};
  Term t;
  t.label = "XX01";
  t.coefficient = 0.9;
  t.factors = {{0, pauli::x()}, {1, pauli::x()}};
  t.support = {0, 1};
  t.opNorm = 1.0;
  model.terms.push_back(t);
  model.hbar = 0.9;
  const Bipartition part = Bipartition::firstSites(4, 2, 3);
  const Vector psi = randomState(16, 3);
  CHECK(entropyRateAnalytic(model, psi, part, 2.0) == 0.0);

  // maximally mixed density commutes with everything
  const HamiltonianModel mfim = buildMfim(4, -1.05, 0.5, 0.8);
  const Matrix rho = Matrix::Identity(16, 16) / 16.0;
  CHECK(std::abs(entropyRateAnalytic(mfim, rho, Bipartition::half(4, 2), 2.0)) < 1e-12);
  CHECK(std::abs(entropyRateAnalytic(mfim, rho, Bipartition::half(4, 2), 1.0)) < 1e-12);
}

TEST_CASE("analytic rate matches the finite-difference oracle") {
  const HamiltonianModel model = buildMfim(6, -1.05, 0.5, 0.8);
  const EvolutionEngine engine(assembleDense(model));
  const Bipartition part = Bipartition::half(6, 2);
  for (std::uint64_t seed : {101u, 102u, 103u}) {
    const Vector psi0 = haarProductState(6, 2, seed);
    for (double t : {0.3, 0.7, 1.5}) {
      const Vector psit = engine.evolve(psi0, t);
      for (double alpha : {1.0, 2.0, 3.0}) {
        const double analytic = entropyRateAnalytic(model, psit, part, alpha);
        const double fd = entropyRateFd(engine, psi0, part, alpha, t, 1e-4);
        const double scale = std::max({std::abs(analytic), std::abs(fd), 1e-2});
        CHECK(std::abs(analytic - fd) / scale < 1e-5);
      }
    }
  }
}

TEST_CASE("pure and density routes of the analytic rate agree") {
  const HamiltonianModel model = buildMfim(4, -1.05, 0.5, 0.8);
  const EvolutionEngine engine(assembleDense(model));
  const Bipartition part = Bipartition::half(4, 2);
  const Vector psi = engine.evolve(haarProductState(4, 2, 9), 0.9);
  const Matrix rho = psi * psi.adjoint();
  for (double alpha : {1.0, 2.0}) {
    CHECK(entropyRateAnalytic(model, psi, part, alpha) ==
          doctest::Approx(entropyRateAnalytic(model, rho, part, alpha)).epsilon(1e-9));
  }
}

TEST_CASE("only boundary terms contribute to the rate") {
  // Evaluate the trace form with the full Hamiltonian as one dense all-site
  // term versus the extracted boundary part; the two must agree to 1e-10.
  const HamiltonianModel model = buildMfim(6, -1.05, 0.5, 0.6);
  const EvolutionEngine engine(assembleDense(model));
  const Bipartition part = Bipartition::half(6, 2);
  const Vector psi = engine.evolve(haarProductState(6, 2, 77), 0.8);

  HamiltonianModel fullDense;
  fullDense.lattice = model.lattice;
  Term t;
  t.label = "all";
  t.coefficient = 1.0;
  t.denseOp = assembleDense(model);
  for (int s = 0; s < 6; ++s) t.support.push_back(s);
  t.opNorm = 1.0;
  fullDense.terms.push_back(t);

  for (double alpha : {1.0, 2.0, 3.0}) {
    const double viaBoundary = entropyRateAnalytic(model, psi, part, alpha);
    const double viaFull = entropyRateAnalytic(fullDense, psi, part, alpha);
    CHECK(std::abs(viaBoundary - viaFull) < 1e-10);
  }
}

TEST_CASE("finite difference is second-order accurate") {
  const HamiltonianModel model = buildMfim(6, -1.05, 0.5, 0.8);
  const EvolutionEngine engine(assembleDense(model));
  const Bipartition part = Bipartition::half(6, 2);
  const Vector psi0 = haarProductState(6, 2, 41);
  const double truth = entropyRateAnalytic(model, engine.evolve(psi0, 0.7), part, 2.0);
  const double errBig = std::abs(entropyRateFd(engine, psi0, part, 2.0, 0.7, 2e-3) - truth);
  const double errSmall = std::abs(entropyRateFd(engine, psi0, part, 2.0, 0.7, 1e-3) - truth);
  CHECK(errBig / errSmall == doctest::Approx(4.0).epsilon(0.25));

  // constant curve: H = 0
  const EvolutionEngine zero(Matrix::Zero(16, 16));
  const Vector psi = randomState(16, 6);
  CHECK(entropyRateFd(zero, psi, Bipartition::half(4, 2), 2.0, 1.0, 1e-4) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(entropyRateFd(zero, psi, Bipartition::half(4, 2), 2.0, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("growth experiment: single member reproduces a direct trajectory") {
  const HamiltonianModel model = buildMfim(4, -1.05, 0.5, 0.8);
  const EvolutionEngine engine(assembleDense(model));

  EnsembleSpec spec;
  spec.times = {0.0, 0.5, 1.0, 1.5};
  spec.alphas = {1.0, 2.0};
  spec.part = Bipartition::half(4, 2);
  spec.ensembleSize = 1;
  spec.masterSeed = 314;
  spec.sharedEngine = &engine;
  spec.stateSampler = [](std::uint64_t seed, const EvolutionEngine&) {
    return haarProductState(4, 2, seed);
  };

  const auto curves = runGrowthExperiment(spec);
  REQUIRE(curves.size() == 2);
  const Vector psi0 = haarProductState(4, 2, deriveSeed(314, 0));
  for (size_t k = 0; k < spec.times.size(); ++k) {
    const Vector psit = engine.evolve(psi0, spec.times[k]);
    CHECK(curves[0].mean[k] ==
          doctest::Approx(renyiEntropy(psit, spec.part, 1.0)).epsilon(1e-12));
    CHECK(curves[1].mean[k] ==
          doctest::Approx(renyiEntropy(psit, spec.part, 2.0)).epsilon(1e-12));
    CHECK(curves[0].stdErr[k] == 0.0);
  }
}

TEST_CASE("growth experiment rises from zero and respects the entropy ceiling") {
  const HamiltonianModel model = buildMfim(6, -1.05, 0.5, 0.8);
  const EvolutionEngine engine(assembleDense(model));

  EnsembleSpec spec;
  for (int k = 0; k <= 20; ++k) spec.times.push_back(0.3 * k);
  spec.alphas = {1.0, 2.0};
  spec.part = Bipartition::half(6, 2);
  spec.ensembleSize = 10;
  spec.masterSeed = 2718;
  spec.jobs = 2;
  spec.sharedEngine = &engine;
  spec.stateSampler = [](std::uint64_t seed, const EvolutionEngine&) {
    return haarProductState(6, 2, seed);
  };

  const auto curves = runGrowthExperiment(spec);
  CHECK(curves[0].mean.front() < 1e-9);
  CHECK(curves[0].mean.back() > 1.0);  // grown well away from zero
  const double ceiling = 3.0 * std::log(2.0);
  for (size_t k = 0; k < spec.times.size(); ++k) {
    CHECK(curves[0].mean[k] <= ceiling + 1e-9);
    CHECK(curves[1].mean[k] <= curves[0].mean[k] + 1e-9);  // alpha monotonicity
  }

  // worker count must not change the reduction
  EnsembleSpec serial = spec;
  serial.jobs = 1;
  const auto serialCurves = runGrowthExperiment(serial);
  for (size_t k = 0; k < spec.times.size(); ++k)
    CHECK(serialCurves[0].mean[k] == curves[0].mean[k]);

  EnsembleSpec empty = spec;
  empty.ensembleSize = 0;
  CHECK_THROWS_AS(runGrowthExperiment(empty), std::invalid_argument);
}

TEST_CASE("linear window fits") {
  std::vector<double> ts, ys;
  for (int k = 0; k <= 30; ++k) {
    ts.push_back(0.1 * k);
    ys.push_back(0.4 + 0.9 * 0.1 * k);
  }
  const LinearFit exact = fitLinearWindow(ts, ys, 0.5, 2.5, 1.0, 2);
  CHECK(exact.slope == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(exact.intercept == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(exact.residual < 1e-12);
  CHECK(exact.vE == doctest::Approx(0.9 / std::log(2.0)).epsilon(1e-12));

  std::vector<double> flat(ts.size(), 1.7);
  CHECK(std::abs(fitLinearWindow(ts, flat, 0.5, 2.5).slope) < 1e-12);

  CHECK_THROWS_AS(fitLinearWindow(ts, ys, 5.0, 9.0), std::invalid_argument);
  CHECK_THROWS_AS(fitLinearWindow(ts, ys, 0.5, 0.55), std::invalid_argument);
}

TEST_CASE("default fit window tracks saturation") {
  std::vector<double> ts, ys;
  for (int k = 0; k <= 100; ++k) {
    const double t = 0.1 * k;
    ts.push_back(t);
    ys.push_back(std::min(t, 4.0));  // saturates at t = 4
  }
  const auto [lo, hi] = defaultFitWindow(ts, ys);
  CHECK(lo == doctest::Approx(0.2 * 3.6).epsilon(0.05));  // 0.9 * plateau reached at t = 3.6
  CHECK(hi == doctest::Approx(0.7 * 3.6).epsilon(0.05));
  CHECK(hi > lo);
}

TEST_CASE("state validation") {
  Vector bad = Vector::Ones(4);
  CHECK_THROWS_AS(validatePureState(bad), std::invalid_argument);
  Matrix rho = Matrix::Identity(4, 4);  // trace 4
  CHECK_THROWS_AS(validateDensityMatrix(rho), std::invalid_argument);
  CHECK_NOTHROW(validateDensityMatrix(Matrix::Identity(4, 4) / 4.0));
}

TEST_CASE("curves csv schema") {
  EntropyCurve c;
  c.alpha = 2.0;
  c.times = {0.0, 1.0};
  c.mean = {0.0, 0.5};
  c.stdErr = {0.0, 0.01};
  c.ensembleSize = 7;
  const std::string csv = curvesCsv({c});
  CHECK(csv == "alpha,t,mean,stderr,n\n2,0,0,0,7\n2,1,0.5,0.01,7\n");
}
