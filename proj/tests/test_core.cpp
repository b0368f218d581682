#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qudit/eig.hpp"
#include "qudit/eig_general.hpp"
#include "qudit/operators.hpp"

using namespace qudit;

namespace {

StateVec<double> random_state(Grid g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVec<double> v(g);
  for (auto& z : v.amp) z = {gauss(rng), gauss(rng)};
  return normalized(std::move(v));
}

// roots of det(M - x I) for a 3x3 Hermitian matrix, via the trigonometric
// solution of the cubic; all roots are real
std::array<double, 3> cubic_eigen_oracle(const OpMat<double>& m) {
  auto a = [&](int i, int j) { return m.at_storage(i, j); };
  // characteristic polynomial x^3 - c2 x^2 + c1 x - c0
  double c2 = (a(0, 0) + a(1, 1) + a(2, 2)).real();
  double c1 = ((a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) + (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) +
               (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)))
                  .real();
  Cx<double> det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                   a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                   a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  double c0 = det.real();
  // depressed cubic t^3 + p t + q with x = t + c2/3
  double sh = c2 / 3.0;
  double p = c1 - c2 * c2 / 3.0;
  double q = -c0 + c2 * c1 / 3.0 - 2.0 * c2 * c2 * c2 / 27.0;  // t^3 + p t + q = 0
  double r = std::sqrt(-4.0 * p / 3.0);
  double arg = std::clamp(-4.0 * q / (r * r * r), -1.0, 1.0);
  double phi = std::acos(arg) / 3.0;
  std::array<double, 3> roots{};
  for (int k = 0; k < 3; ++k) roots[static_cast<size_t>(k)] = sh + r * std::cos(phi - 2.0 * M_PI * k / 3.0);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

TEST_CASE("make_grid accepts odd d >= 3 and fixes s") {
  CHECK(make_grid(11).s == 5);
  CHECK(make_grid(3).s == 1);
  CHECK(make_grid(101).s == 50);
  CHECK_THROWS_AS(make_grid(12), DimensionError);
  CHECK_THROWS_AS(make_grid(1), DimensionError);
  CHECK_THROWS_AS(make_grid(0), DimensionError);
  CHECK_THROWS_AS(make_grid(-7), DimensionError);
}

TEST_CASE("storage and logical maps are mutually inverse") {
  for (int d : {3, 11, 31}) {
    Grid g = make_grid(d);
    for (int i = 0; i < d; ++i) CHECK(g.storage(g.logical(i)) == i);
    for (int n = -g.s; n <= g.s; ++n) CHECK(g.logical(g.storage(n)) == n);
  }
}

TEST_CASE("wrap folds into the symmetric window modulo d") {
  Grid g = make_grid(11);
  CHECK(g.wrap(5) == 5);
  CHECK(g.wrap(6) == -5);
  CHECK(g.wrap(-6) == 5);
  CHECK(g.wrap(11) == 0);
  CHECK(g.wrap(-16) == -5);
  for (int n = -g.s; n <= g.s; ++n) {
    CHECK(g.wrap(n + 11) == n);
    CHECK(g.wrap(n - 22) == n);
  }
}

TEST_CASE("delta states are orthonormal") {
  Grid g = make_grid(11);
  for (int m = -5; m <= 5; ++m) {
    CHECK(inner(delta_state<double>(g, m), delta_state<double>(g, m)).real() == doctest::Approx(1.0));
  }
  CHECK(cx_abs(inner(delta_state<double>(g, 1), delta_state<double>(g, -1))) == 0.0);
}

TEST_CASE("norm basics") {
  Grid g = make_grid(11);
  CHECK(norm(delta_state<double>(g, 0)) == doctest::Approx(1.0));
  StateVec<double> ones(g);
  for (auto& z : ones.amp) z = 1.0;
  CHECK(norm(ones) == doctest::Approx(std::sqrt(11.0)));
}

TEST_CASE("inner is conjugate symmetric on random vectors") {
  Grid g = make_grid(11);
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    auto a = random_state(g, seed);
    auto b = random_state(g, seed + 100);
    Cx<double> lhs = inner(a, b);
    Cx<double> rhs = std::conj(inner(b, a));
    CHECK(cx_abs<double>(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("inner rejects grid mismatch") {
  auto a = delta_state<double>(make_grid(11), 0);
  auto b = delta_state<double>(make_grid(13), 0);
  CHECK_THROWS_AS(inner(a, b), GridMismatchError);
  CHECK_THROWS_AS(apply(position_matrix<double>(make_grid(11)), b), GridMismatchError);
}

TEST_CASE("apply: identity, position eigenbasis, Fourier of the delta spike") {
  Grid g = make_grid(11);
  auto psi = random_state(g, 42);
  auto id = identity_matrix<double>(g);
  auto out = apply(id, psi);
  for (int i = 0; i < g.d; ++i) CHECK(cx_abs<double>(out.amp[i] - psi.amp[i]) < 1e-15);

  auto q = position_matrix<double>(g);
  for (int m : {-5, -1, 0, 3}) {
    auto qd = apply(q, delta_state<double>(g, m));
    for (int n = -g.s; n <= g.s; ++n) {
      CHECK(cx_abs<double>(qd.at(n) - Cx<double>(n == m ? m : 0.0)) < 1e-15);
    }
  }

  // direct evaluation: (F delta_0)(k) = 1/sqrt(d) for every k
  auto f = dft_matrix<double>(g);
  auto fd = apply(f, delta_state<double>(g, 0));
  for (int k = -g.s; k <= g.s; ++k) CHECK(cx_abs<double>(fd.at(k) - Cx<double>(1.0 / std::sqrt(11.0))) < 1e-15);
}

TEST_CASE("compose / adjoint / commutator basics") {
  Grid g = make_grid(11);
  auto q = position_matrix<double>(g);
  auto f = dft_matrix<double>(g);

  auto zero = commutator(q, q);
  CHECK(max_abs(zero) == 0.0);

  auto gram = compose(adjoint(f), f);
  CHECK(max_abs(sub(gram, identity_matrix<double>(g))) < 1e-12);

  // [q,p] against the brute-force double sum (1/d) sum_k k (n-m) e^{2 pi i k(n-m)/d}
  auto c = commutator(q, momentum_matrix<double>(g));
  for (int n = -g.s; n <= g.s; ++n) {
    for (int m = -g.s; m <= g.s; ++m) {
      Cx<double> want(0);
      for (int k = -g.s; k <= g.s; ++k) {
        double ang = 2.0 * M_PI * k * (n - m) / g.d;
        want += Cx<double>(std::cos(ang), std::sin(ang)) * Cx<double>(double(k) * (n - m) / g.d);
      }
      CHECK(cx_abs<double>(c.at(n, m) - want) < 1e-12);
    }
  }
}

TEST_CASE("serial and parallel matmul agree bitwise") {
  Grid g = make_grid(31);
  auto f = dft_matrix<double>(g);
  auto q = position_matrix<double>(g);
  auto a = compose(f, q, Exec::serial);
  auto b = compose(f, q, Exec::parallel);
  for (size_t i = 0; i < a.a.size(); ++i) {
    CHECK(a.a[i].real() == b.a[i].real());
    CHECK(a.a[i].imag() == b.a[i].imag());
  }
}

TEST_CASE("structure tags verify on construction") {
  Grid g = make_grid(11);
  auto q = position_matrix<double>(g);
  CHECK_NOTHROW(tagged(q, Structure::hermitian));
  CHECK_THROWS_AS(tagged(q, Structure::unitary), StructureError);
  auto f = dft_matrix<double>(g);
  CHECK_NOTHROW(tagged(f, Structure::unitary));
  CHECK_THROWS_AS(tagged(f, Structure::hermitian), StructureError);
}

TEST_CASE("eig_hermitian: diagonal matrix reproduces the delta basis") {
  Grid g = make_grid(11);
  auto sp = eig_hermitian(position_matrix<double>(g));
  for (int k = 0; k < 11; ++k) {
    CHECK(sp.values[k].real() == doctest::Approx(k - 5).epsilon(1e-14));
    // phase convention makes the eigenvector exactly the delta spike
    CHECK(cx_abs<double>(sp.vectors[k].at(k - 5) - Cx<double>(1.0)) < 1e-14);
  }
}

TEST_CASE("eig_hermitian matches the cubic characteristic-polynomial oracle") {
  Grid g = make_grid(3);
  std::mt19937_64 rng(20240817);
  std::normal_distribution<double> gauss(0.0, 1.0);
  OpMat<double> m(g);
  for (int i = 0; i < 3; ++i) {
    m.at_storage(i, i) = gauss(rng);
    for (int j = i + 1; j < 3; ++j) {
      m.at_storage(i, j) = {gauss(rng), gauss(rng)};
      m.at_storage(j, i) = std::conj(m.at_storage(i, j));
    }
  }
  m.tag = Structure::hermitian;
  auto roots = cubic_eigen_oracle(m);
  auto sp = eig_hermitian(m);
  for (int k = 0; k < 3; ++k) CHECK(sp.values[k].real() == doctest::Approx(roots[k]).epsilon(1e-10));
}

TEST_CASE("eig_hermitian contract invariants on a dense spectrum") {
  Grid g = make_grid(11);
  auto h = oscillator_hamiltonian<double>(g);
  auto sp = eig_hermitian(h);
  double scale = max_abs(h);

  // residual bound
  for (int k = 0; k < g.d; ++k) {
    StateVec<double> hv = apply(h, sp.vectors[k]);
    double r = 0;
    for (int i = 0; i < g.d; ++i) {
      r += cx_norm2<double>(hv.amp[i] - sp.values[k] * sp.vectors[k].amp[i]);
    }
    CHECK(std::sqrt(r) <= 1e-10 * scale * g.d);
    CHECK(std::abs(norm(sp.vectors[k]) - 1.0) <= 1e-12);
  }
  // pairwise orthogonality
  for (int a = 0; a < g.d; ++a) {
    for (int b = a + 1; b < g.d; ++b) {
      CHECK(cx_abs(inner(sp.vectors[a], sp.vectors[b])) <= 1e-10);
    }
  }
  // reconstruction sum_k lambda_k v v^dag
  OpMat<double> rec(g);
  for (int k = 0; k < g.d; ++k) {
    for (int i = 0; i < g.d; ++i) {
      for (int j = 0; j < g.d; ++j) {
        rec.at_storage(i, j) += sp.values[k].real() * sp.vectors[k].amp[i] * std::conj(sp.vectors[k].amp[j]);
      }
    }
  }
  CHECK(max_abs(sub(rec, h)) <= 1e-10 * scale);
  // ascending order
  for (int k = 1; k < g.d; ++k) CHECK(sp.values[k].real() >= sp.values[k - 1].real());
}

TEST_CASE("eig_hermitian: shift by c*I keeps eigenvectors, shifts values") {
  // a seeded random Hermitian matrix has well-separated eigenvalues, so the
  // eigenvectors are individually well conditioned
  Grid g = make_grid(11);
  std::mt19937_64 rng(2718281);
  std::normal_distribution<double> gauss(0.0, 1.0);
  OpMat<double> h(g);
  for (int i = 0; i < g.d; ++i) {
    h.at_storage(i, i) = gauss(rng);
    for (int j = i + 1; j < g.d; ++j) {
      h.at_storage(i, j) = {gauss(rng), gauss(rng)};
      h.at_storage(j, i) = std::conj(h.at_storage(i, j));
    }
  }
  h.tag = Structure::hermitian;
  auto shifted = h;
  const double c = 2.75;
  for (int i = 0; i < g.d; ++i) shifted.at_storage(i, i) += c;
  auto sp0 = eig_hermitian(h);
  auto sp1 = eig_hermitian(shifted);
  for (int k = 0; k < g.d; ++k) {
    CHECK(std::abs(sp1.values[k].real() - sp0.values[k].real() - c) < 1e-10);
    for (int i = 0; i < g.d; ++i) {
      CHECK(cx_abs<double>(sp1.vectors[k].amp[i] - sp0.vectors[k].amp[i]) < 1e-10);
    }
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  Grid g = make_grid(3);
  OpMat<double> m(g);
  m.at_storage(0, 1) = {1.0, 0.0};
  m.at_storage(1, 0) = {2.0, 0.0};
  CHECK_THROWS_AS(eig_hermitian(m), StructureError);
}

TEST_CASE("phase convention is deterministic and idempotent") {
  Grid g = make_grid(11);
  for (uint64_t seed : {7u, 8u, 9u}) {
    auto v = random_state(g, seed);
    auto w = v;
    phase_fix(w);
    // largest-modulus entry real non-negative
    size_t imax = 0;
    for (size_t i = 0; i < w.amp.size(); ++i) {
      if (cx_norm2(w.amp[i]) > cx_norm2(w.amp[imax])) imax = i;
    }
    CHECK(w.amp[imax].imag() == 0.0);
    CHECK(w.amp[imax].real() >= 0.0);
    auto w2 = w;
    phase_fix(w2);
    for (size_t i = 0; i < w.amp.size(); ++i) CHECK(cx_abs<double>(w2.amp[i] - w.amp[i]) == 0.0);
  }
}

TEST_CASE("eig_general: unitary spectrum, companion matrix, residuals") {
  Grid g = make_grid(11);
  auto f = dft_matrix<double>(g);
  auto sp = eig_general(f);
  for (const auto& v : sp.values) CHECK(std::abs(cx_abs(v) - 1.0) < 1e-12);
  // modulus-ascending with phase tie-break never decreases the modulus
  for (int k = 1; k < sp.size(); ++k) CHECK(cx_abs(sp.values[k]) >= cx_abs(sp.values[k - 1]) - 1e-12);
  for (int k = 0; k < sp.size(); ++k) {
    auto fv = apply(f, sp.vectors[k]);
    double r = 0;
    for (int i = 0; i < g.d; ++i) r += cx_norm2<double>(fv.amp[i] - sp.values[k] * sp.vectors[k].amp[i]);
    CHECK(std::sqrt(r) <= 1e-10 * g.d);
  }

  // companion matrix of z^2 - 1 (eigenvalues +-1); use the smallest grid
  Grid g3 = make_grid(3);
  OpMat<double> comp(g3);
  comp.at_storage(0, 1) = 1.0;
  comp.at_storage(1, 0) = 1.0;
  comp.at_storage(2, 2) = 5.0;  // spectator to fill the odd dimension
  auto sc = eig_general(comp);
  CHECK(sc.values[0].real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(sc.values[1].real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sc.values[2].real() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("quad refinement sharpens general eigenpairs") {
  Grid g = make_grid(11);
  OpMat<Quad> a = annihilation_matrix<Quad>(g);
  Spectral<double> base = eig_general(annihilation_matrix<double>(g));
  Spectral<Quad> lifted;
  for (int k = 0; k < base.size(); ++k) {
    lifted.values.push_back(Cx<Quad>(Quad(base.values[k].real()), Quad(base.values[k].imag())));
    lifted.vectors.push_back(cast_state<Quad>(base.vectors[k]));
  }
  refine_eigenpairs(a, lifted);
  double best = 1.0;
  for (int k = 0; k < lifted.size(); ++k) {
    StateVec<Quad> av = apply(a, lifted.vectors[k]);
    Quad r(0);
    for (int i = 0; i < g.d; ++i) r += cx_norm2<Quad>(av.amp[i] - lifted.values[k] * lifted.vectors[k].amp[i]);
    double res = to_dbl(RealOps<Quad>::sqrt(r));
    best = std::min(best, res);
    // clustered eigenvalues cap individual-pair accuracy; the contract bound
    // still holds with orders of magnitude to spare
    CHECK(res < 1e-9);
  }
  // well-separated pairs refine to genuine quad accuracy
  CHECK(best < 1e-25);
}
