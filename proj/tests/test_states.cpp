#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qudit/metrics.hpp"
#include "qudit/quantize.hpp"

using namespace qudit;

TEST_CASE("discrete gaussian: positive, even, unit norm, concentration limit") {
  for (int d : {11, 31}) {
    Grid g = make_grid(d);
    for (double kappa : {0.2, 1.0, 3.0}) {
      auto gk = discrete_gaussian<double>(g, kappa);
      CHECK(std::abs(norm(gk) - 1.0) <= 1e-12);
      for (int n = 0; n <= g.s; ++n) {
        CHECK(gk.at(n).real() > 0.0);
        CHECK(gk.at(n).imag() == 0.0);
        // evenness is exact by construction
        CHECK(gk.at(-n).real() == gk.at(n).real());
      }
    }
  }
  auto g50 = discrete_gaussian<double>(make_grid(31), 50.0);
  CHECK(g50.at(0).real() > 0.999);
}

TEST_CASE("theta truncation certification") {
  ThetaParams<double> p;
  p.kappa = 0.001;
  p.trunc_radius = 1;
  p.tail_tol = 1e-30;
  CHECK_THROWS_AS(discrete_gaussian(make_grid(3), p), TruncationError);
  ThetaParams<double> bad;
  bad.kappa = -1.0;
  CHECK_THROWS_AS(discrete_gaussian(make_grid(11), bad), DomainError);
}

TEST_CASE("Fourier maps g_kappa to g_{1/kappa}") {
  for (int d : {11, 31}) {
    Grid g = make_grid(d);
    CHECK(fourier_of_gaussian_check<double>(g, 1.0) <= 1e-10);
    for (double kappa = 0.125; kappa <= 8.0; kappa *= 1.5) {
      CHECK(fourier_of_gaussian_check<double>(g, kappa) <= 1e-10);
    }
  }
}

TEST_CASE("commutator eigenbasis at d=11: values, Fourier classes") {
  Grid g = make_grid(11);
  auto sp = commutator_eigenbasis<Quad>(g);
  // frozen high-precision eigenvalues (imaginary parts, modulus ascending);
  // the spectrum alternates in sign
  const double want[11] = {-1.485487207e-8, 7.963368239e-7, -2.048832874e-5, 3.360977391e-4,
                           -3.936151041e-3, 3.490087374e-2, -0.2409391061,  1.337137301,
                           -5.455244666,    19.99338714,    -34.9233699};
  for (int k = 0; k < 11; ++k) {
    CHECK(to_dbl(sp.values[k].real()) == 0.0);
    double mu = to_dbl(sp.values[k].imag());
    CHECK(mu == doctest::Approx(want[k]).epsilon(1e-6));
  }

  auto ctx = CanonContext<Quad>::build(g);
  const int expect_class[11] = {0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2};
  for (int k = 0; k < 11; ++k) {
    auto fc = fourier_eigenclass(ctx, sp.vectors[k], Quad(1e-6));
    REQUIRE(fc.cls.has_value());
    CHECK(*fc.cls == expect_class[k]);
    // and the matching residual is tiny
    const int idx_of_class[4] = {0, 3, 1, 2};
    CHECK(to_dbl(fc.norms[idx_of_class[*fc.cls]]) <= 1e-8);
  }
}

TEST_CASE("coherent states") {
  Grid g = make_grid(11);
  auto vac = discrete_gaussian<double>(g, 1.0);
  auto c00 = coherent_state<double>(g, {0, 0});
  for (int i = 0; i < g.d; ++i) CHECK(cx_abs<double>(c00.amp[i] - vac.amp[i]) < 1e-14);

  auto w = coherent_state<double>(g, {2, -3}, /*weighted=*/true);
  CHECK(norm(w) == doctest::Approx(1.0 / std::sqrt(11.0)).epsilon(1e-13));

  CHECK_THROWS_AS(coherent_state<double>(g, {7, 0}), DomainError);

  // sign-flip symmetry of the residual, all four sign choices
  Grid g31 = make_grid(31);
  auto ctx = CanonContext<double>::build(g31);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= 5; ++k) {
      double base = residual_norm(ctx, coherent_state<double>(g31, {n, k}));
      for (auto [sn, sk] : {std::pair{-n, k}, {n, -k}, {-n, -k}}) {
        CHECK(residual_norm(ctx, coherent_state<double>(g31, {sn, sk})) ==
              doctest::Approx(base).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("creation-power states match the brute-force matrix-power route") {
  Grid g = make_grid(31);
  auto adag = creation_matrix<double>(g);
  auto vac = discrete_gaussian<double>(g, 1.0);

  // oracle: explicit matrix power applied to the vacuum; compared by fidelity
  // (the non-normal ladder amplifies rounding in the matrix-power route)
  OpMat<double> power = identity_matrix<double>(g);
  for (int n = 0; n <= 6; ++n) {
    auto psi = creation_power_state<double>(g, n);
    auto want = normalized(apply(power, vac));
    CHECK(1.0 - cx_abs(inner(psi, want)) < 1e-10);
    power = compose(power, adag);
  }

  // n=0 is the vacuum
  auto c0 = creation_power_state<double>(g, 0);
  for (int i = 0; i < g.d; ++i) CHECK(cx_abs<double>(c0.amp[i] - vac.amp[i]) < 1e-14);

  // n=1 has exact odd parity
  auto c1 = creation_power_state<double>(g, 1);
  for (int m = 1; m <= g.s; ++m) CHECK(cx_abs<double>(c1.at(-m) + c1.at(m)) < 1e-14);
  CHECK(cx_abs(c1.at(0)) < 1e-14);

  CHECK_THROWS_AS(creation_power_state<double>(g, 2 * g.s + 1), DomainError);
}

TEST_CASE("hamiltonian eigenstate families are orthonormal") {
  Grid g = make_grid(11);
  for (auto states : {oscillator_eigenstates<double>(g), quantized_eigenstates<double>(g),
                      harper_eigenstates<double>(g)}) {
    REQUIRE(static_cast<int>(states.size()) == g.d);
    for (size_t a = 0; a < states.size(); ++a) {
      CHECK(std::abs(norm(states[a]) - 1.0) <= 1e-12);
      for (size_t b = a + 1; b < states.size(); ++b) {
        CHECK(cx_abs(inner(states[a], states[b])) <= 1e-10);
      }
    }
  }
}

TEST_CASE("annihilation eigenstates: ordering and degenerate residual groups") {
  Grid g = make_grid(31);
  auto states = annihilation_eigenstates<double>(g);
  REQUIRE(static_cast<int>(states.size()) == g.d);
  auto ctx = CanonContext<double>::build(g);
  // residuals are constant within the first degenerate groups
  double r0 = residual_norm(ctx, states[0]);
  for (int k = 1; k <= 2; ++k) CHECK(residual_norm(ctx, states[k]) == doctest::Approx(r0).epsilon(1e-4));
  double r3 = residual_norm(ctx, states[3]);
  for (int k = 4; k <= 6; ++k) CHECK(residual_norm(ctx, states[k]) == doctest::Approx(r3).epsilon(1e-4));
  CHECK(r3 > 10.0 * r0);
}

TEST_CASE("tabulated Hermite-Gaussian ladder") {
  Grid g = make_grid(31);
  // n=0 coincides with the kappa=1 Gaussian: identical construction
  auto m0 = mehta_state<double>(g, 0);
  auto vac = discrete_gaussian<double>(g, 1.0);
  for (int i = 0; i < g.d; ++i) CHECK(cx_abs<double>(m0.amp[i] - vac.amp[i]) < 1e-14);

  // odd orders have exact odd parity
  auto m1 = mehta_state<double>(g, 1);
  for (int m = 1; m <= g.s; ++m) CHECK(m1.at(-m).real() == -m1.at(m).real());
  CHECK(cx_abs(m1.at(0)) == 0.0);

  CHECK_THROWS_AS(mehta_state<double>(g, -1), DomainError);

  ThetaParams<double> tight;
  tight.trunc_radius = 1;
  CHECK_THROWS_AS(mehta_state<double>(make_grid(3), 0, tight), TruncationError);
}

TEST_CASE("scaled Hermite-Gaussian ladder: exact Fourier eigenvectors") {
  Grid g = make_grid(31);
  auto ctx = CanonContext<Quad>::build(g);
  for (int n = 0; n <= 9; ++n) {
    auto psi = mehta_fourier_state<Quad>(g, n);
    auto fpsi = apply(ctx.fourier, psi);
    // (-i)^n
    Cx<Quad> factor(1);
    for (int j = 0; j < n % 4; ++j) factor *= Cx<Quad>(Quad(0), Quad(-1));
    Quad dev(0);
    for (int i = 0; i < g.d; ++i) dev += cx_norm2<Quad>(fpsi.amp[i] - factor * psi.amp[i]);
    CHECK(to_dbl(RealOps<Quad>::sqrt(dev)) < 1e-8);
  }
}

TEST_CASE("Kravchuk polynomials: generating function, symmetry, leading row") {
  // s=1, k=1: (1-X)^2 = 1 - 2X + X^2
  CHECK(kravchuk_polynomial(1, -1, 1) == 1);
  CHECK(kravchuk_polynomial(1, 0, 1) == -2);
  CHECK(kravchuk_polynomial(1, 1, 1) == 1);

  // expansion oracle at s=3: the leading coefficient of
  // (1-X)^{s+k}(1+X)^{s-k} is (-1)^{s+k}, so K_s(k) alternates in sign
  int s = 3;
  for (int k = -s; k <= s; ++k) {
    BigInt lead = kravchuk_polynomial(s, s, k);
    CHECK(lead == (((s + k) % 2 == 0) ? 1 : -1));
  }
}

TEST_CASE("Kravchuk orthogonality, exact and floating point") {
  // exact integer identity for s up to 15, all pairs
  for (int s : {2, 5, 15}) {
    for (int m = -s; m <= s; ++m) {
      for (int n = m; n <= s; ++n) CHECK(kravchuk_orthogonality_exact(s, m, n));
    }
  }

  Grid g = make_grid(11);
  std::vector<StateVec<double>> basis;
  for (int m = -g.s; m <= g.s; ++m) basis.push_back(kravchuk_state<double>(g, m));
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t b = 0; b < basis.size(); ++b) {
      double want = (a == b) ? 1.0 : 0.0;
      CHECK(std::abs(inner(basis[a], basis[b]).real() - want) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(kravchuk_state<double>(g, 6), DomainError);
}

TEST_CASE("superposition bound over the first commutator eigenvectors") {
  Grid g = make_grid(31);
  auto sp = commutator_eigenbasis<double>(g);
  auto ctx = CanonContext<double>::build(g);
  const int kdim = 5;
  const double eps = 0.001;
  for (int k = 0; k < kdim; ++k) CHECK(to_dbl(cx_abs(sp.values[k])) < eps);

  std::mt19937_64 rng(515151);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<Cx<double>, kdim> coef;
    double n2 = 0;
    for (auto& c : coef) {
      c = {gauss(rng), gauss(rng)};
      n2 += cx_norm2(c);
    }
    StateVec<double> psi(g);
    for (int k = 0; k < kdim; ++k) {
      for (int i = 0; i < g.d; ++i) psi.amp[i] += coef[k] / std::sqrt(n2) * sp.vectors[k].amp[i];
    }
    CHECK(residual_norm(ctx, psi) <= eps * std::sqrt(double(kdim)));
  }
}
