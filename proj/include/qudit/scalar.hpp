#pragma once

#include <quadmath.h>

#include <cmath>
#include <complex>
#include <string>

// Real-scalar abstraction. The toolkit runs the same templated numerics in
// double for everyday use and in __float128 for reference-table reproduction,
// where several target quantities sit below the double-precision noise floor.

namespace qudit {

using Quad = __float128;

template <class R>
struct RealOps;

template <>
struct RealOps<double> {
  static double sqrt(double x) { return std::sqrt(x); }
  static double abs(double x) { return std::fabs(x); }
  static double cos(double x) { return std::cos(x); }
  static double sin(double x) { return std::sin(x); }
  static double exp(double x) { return std::exp(x); }
  static double pi() { return 3.14159265358979323846; }
  static double eps() { return 2.220446049250313e-16; }
  static double to_double(double x) { return x; }
  static const char* name() { return "double"; }
};

template <>
struct RealOps<long double> {
  static long double sqrt(long double x) { return std::sqrt(x); }
  static long double abs(long double x) { return std::fabs(x); }
  static long double cos(long double x) { return std::cos(x); }
  static long double sin(long double x) { return std::sin(x); }
  static long double exp(long double x) { return std::exp(x); }
  static long double pi() { return 3.141592653589793238462643383279502884L; }
  static long double eps() { return 1.084202172485504434e-19L; }
  static double to_double(long double x) { return static_cast<double>(x); }
  static const char* name() { return "long double"; }
};

template <>
struct RealOps<Quad> {
  static Quad sqrt(Quad x) { return sqrtq(x); }
  static Quad abs(Quad x) { return fabsq(x); }
  static Quad cos(Quad x) { return cosq(x); }
  static Quad sin(Quad x) { return sinq(x); }
  static Quad exp(Quad x) { return expq(x); }
  static Quad pi() { return M_PIq; }
  static Quad eps() { return FLT128_EPSILON; }
  static double to_double(Quad x) { return static_cast<double>(x); }
  static const char* name() { return "float128"; }
};

template <class R>
using Cx = std::complex<R>;

// |z|^2 and |z| without routing through std::abs, whose generic fallback
// degrades __float128 to double.
template <class R>
inline R cx_norm2(const Cx<R>& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

template <class R>
inline R cx_abs(const Cx<R>& z) {
  return RealOps<R>::sqrt(cx_norm2(z));
}

// unit phase e^{i theta} for theta given as a fraction of 2*pi, i.e.
// e^{2*pi*i*num/den}. Reducing num mod den first keeps the trig argument
// small for large index products.
template <class R>
inline Cx<R> unit_phase(long long num, long long den) {
  num %= den;
  R angle = R(2) * RealOps<R>::pi() * R(num) / R(den);
  return Cx<R>(RealOps<R>::cos(angle), RealOps<R>::sin(angle));
}

template <class R>
inline double to_dbl(R x) {
  return RealOps<R>::to_double(x);
}

}  // namespace qudit
