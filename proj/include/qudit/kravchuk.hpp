#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "qudit/state.hpp"

namespace qudit {

using BigInt = boost::multiprecision::cpp_int;

// Exact conversion of a big integer into the target real type, limb by limb.
// All magnitudes used here fit the 113-bit quad mantissa exactly.
template <class R>
R big_to_real(const BigInt& x) {
  bool neg = x < 0;
  BigInt v = neg ? BigInt(-x) : x;
  R acc(0);
  const R base = R(4294967296.0);  // 2^32
  std::vector<uint32_t> limbs;
  while (v > 0) {
    limbs.push_back(static_cast<uint32_t>(v & 0xffffffffu));
    v >>= 32;
  }
  for (auto it = limbs.rbegin(); it != limbs.rend(); ++it) acc = acc * base + R(static_cast<double>(*it));
  return neg ? -acc : acc;
}

inline BigInt binomial_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

// Coefficients of (1-X)^(s+k) (1+X)^(s-k); degree 2s. K_m(k) is the
// coefficient of X^(s+m). Exact integer convolution of the two binomial
// expansions.
inline std::vector<BigInt> kravchuk_coefficients(int s, int k) {
  const int deg = 2 * s;
  std::vector<BigInt> a(static_cast<size_t>(deg) + 1), b(static_cast<size_t>(deg) + 1);
  for (int i = 0; i <= s + k; ++i) a[static_cast<size_t>(i)] = ((i % 2) ? -1 : 1) * binomial_big(s + k, i);
  for (int i = 0; i <= s - k; ++i) b[static_cast<size_t>(i)] = binomial_big(s - k, i);
  std::vector<BigInt> c(static_cast<size_t>(deg) + 1);
  for (int i = 0; i <= deg; ++i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; i + j <= deg; ++j) {
      if (b[static_cast<size_t>(j)] == 0) continue;
      c[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
  }
  return c;
}

// K_m(k), exact.
inline BigInt kravchuk_polynomial(int s, int m, int k) {
  if (m < -s || m > s || k < -s || k > s) throw DomainError("kravchuk_polynomial: index out of range");
  return kravchuk_coefficients(s, k)[static_cast<size_t>(s + m)];
}

// psi_{K,m}(n) = 2^{-s} sqrt(C(2s,s+n)/C(2s,s+m)) K_m(n). Binomials and K_m
// stay exact integers until the final conversion.
template <class R>
StateVec<R> kravchuk_state(Grid g, int m) {
  if (!g.in_range(m)) throw DomainError("kravchuk_state: m out of range");
  const int s = g.s;
  StateVec<R> v(g);
  const R denom = big_to_real<R>(binomial_big(2 * s, s + m));
  R two_pow_s(1);
  for (int i = 0; i < s; ++i) two_pow_s *= R(2);
  for (int n = -s; n <= s; ++n) {
    R num = big_to_real<R>(binomial_big(2 * s, s + n));
    R km = big_to_real<R>(kravchuk_polynomial(s, m, n));
    v.at(n) = Cx<R>(RealOps<R>::sqrt(num / denom) * km / two_pow_s);
  }
  return v;  // unit norm by the exact orthogonality relation
}

// Exact orthogonality check: sum_k C(2s,s+k) K_m(k) K_n(k) == 2^{2s} C(2s,s+m) delta_mn.
inline bool kravchuk_orthogonality_exact(int s, int m, int n) {
  BigInt acc = 0;
  for (int k = -s; k <= s; ++k) {
    acc += binomial_big(2 * s, s + k) * kravchuk_polynomial(s, m, k) * kravchuk_polynomial(s, n, k);
  }
  BigInt expect = (m == n) ? BigInt(BigInt(1) << (2 * s)) * binomial_big(2 * s, s + m) : BigInt(0);
  return acc == expect;
}

}  // namespace qudit
