#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace sflab {

/// Complex number with a long double mantissa and a separate binary exponent.
///
/// The value is mantissa * 2^exponent with max(|re|, |im|) of the mantissa in
/// [0.5, 1) unless the value is zero.  Iterates of entire functions leave the
/// double range after a handful of steps, and Schroeder coefficients grow like
/// r^-n; this type carries both without overflow.
class ExtComplex {
 public:
  using real = long double;

  ExtComplex() = default;
  ExtComplex(std::complex<double> z)  // NOLINT(google-explicit-constructor)
      : mant_(static_cast<real>(z.real()), static_cast<real>(z.imag())) {
    normalize();
  }
  ExtComplex(double x) : ExtComplex(std::complex<double>(x, 0.0)) {}  // NOLINT

  static ExtComplex from_parts(std::complex<real> mantissa, std::int64_t exponent) {
    ExtComplex r;
    r.mant_ = mantissa;
    r.exp_ = exponent;
    r.normalize();
    return r;
  }

  static ExtComplex from_long(std::complex<real> z) { return from_parts(z, 0); }

  /// e^w; exact scaling for |Re w| up to about 3e18, beyond that inf or zero.
  static ExtComplex exp(std::complex<double> w) {
    constexpr real ln2 = 0.693147180559945309417232121458176568L;
    const real x = w.real();
    const real k = std::floor(x / ln2);
    if (!(k < 0x1p62L)) {
      constexpr real inf = std::numeric_limits<real>::infinity();
      return from_parts({inf, inf}, 0);
    }
    if (k < -0x1p62L) return {};
    const real rem = x - k * ln2;
    const real mag = std::exp(rem);
    const real y = w.imag();
    return from_parts({mag * std::cos(y), mag * std::sin(y)},
                      static_cast<std::int64_t>(k));
  }

  std::complex<real> mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }
  bool is_zero() const { return mant_.real() == 0 && mant_.imag() == 0; }
  bool is_finite() const {
    return std::isfinite(mant_.real()) && std::isfinite(mant_.imag());
  }

  /// Natural log of the modulus; -inf for zero.
  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    constexpr real ln2 = 0.693147180559945309417232121458176568L;
    return static_cast<double>(std::log(std::hypot(mant_.real(), mant_.imag())) +
                               static_cast<real>(exp_) * ln2);
  }

  /// True when the value converts to a finite double complex.
  bool fits_double() const {
    return is_finite() && (is_zero() || exp_ <= std::numeric_limits<double>::max_exponent - 1);
  }

  /// Conversion to double precision; overflows to inf, underflows to 0.
  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    constexpr std::int64_t lim = 1 << 20;
    const int e = static_cast<int>(exp_ > lim ? lim : (exp_ < -lim ? -lim : exp_));
    return {static_cast<double>(std::ldexp(mant_.real(), e)),
            static_cast<double>(std::ldexp(mant_.imag(), e))};
  }

  std::complex<real> to_long() const {
    if (is_zero()) return {0, 0};
    constexpr std::int64_t lim = 1 << 20;
    const int e = static_cast<int>(exp_ > lim ? lim : (exp_ < -lim ? -lim : exp_));
    return {std::ldexp(mant_.real(), e), std::ldexp(mant_.imag(), e)};
  }

  ExtComplex conj() const { return from_parts(std::conj(mant_), exp_); }

  friend ExtComplex operator-(const ExtComplex& a) { return from_parts(-a.mant_, a.exp_); }

  friend ExtComplex operator*(const ExtComplex& a, const ExtComplex& b) {
    const real re = a.mant_.real() * b.mant_.real() - a.mant_.imag() * b.mant_.imag();
    const real im = a.mant_.real() * b.mant_.imag() + a.mant_.imag() * b.mant_.real();
    return from_parts({re, im}, a.exp_ + b.exp_);
  }

  friend ExtComplex operator/(const ExtComplex& a, const ExtComplex& b) {
    const real den = b.mant_.real() * b.mant_.real() + b.mant_.imag() * b.mant_.imag();
    const real re = (a.mant_.real() * b.mant_.real() + a.mant_.imag() * b.mant_.imag()) / den;
    const real im = (a.mant_.imag() * b.mant_.real() - a.mant_.real() * b.mant_.imag()) / den;
    return from_parts({re, im}, a.exp_ - b.exp_);
  }

  friend ExtComplex operator+(const ExtComplex& a, const ExtComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ExtComplex& big = a.exp_ >= b.exp_ ? a : b;
    const ExtComplex& small = a.exp_ >= b.exp_ ? b : a;
    const std::int64_t shift = big.exp_ - small.exp_;
    if (shift > 80) return big;
    const int s = static_cast<int>(-shift);
    const std::complex<real> m{big.mant_.real() + std::ldexp(small.mant_.real(), s),
                               big.mant_.imag() + std::ldexp(small.mant_.imag(), s)};
    return from_parts(m, big.exp_);
  }

  friend ExtComplex operator-(const ExtComplex& a, const ExtComplex& b) { return a + (-b); }

  ExtComplex& operator+=(const ExtComplex& o) { return *this = *this + o; }
  ExtComplex& operator-=(const ExtComplex& o) { return *this = *this - o; }
  ExtComplex& operator*=(const ExtComplex& o) { return *this = *this * o; }
  ExtComplex& operator/=(const ExtComplex& o) { return *this = *this / o; }

 private:
  void normalize() {
    const real ar = std::fabs(mant_.real());
    const real ai = std::fabs(mant_.imag());
    const real m = ar > ai ? ar : ai;
    if (m == 0) {
      mant_ = {0, 0};
      exp_ = 0;
      return;
    }
    if (!std::isfinite(m)) return;
    int e = 0;
    std::frexp(m, &e);
    if (e != 0) {
      mant_ = {std::ldexp(mant_.real(), -e), std::ldexp(mant_.imag(), -e)};
      exp_ += e;
    }
  }

  std::complex<real> mant_{0, 0};
  std::int64_t exp_ = 0;
};

}  // namespace sflab
