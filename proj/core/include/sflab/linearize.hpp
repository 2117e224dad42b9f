#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "sflab/ext_complex.hpp"
#include "sflab/series.hpp"
#include "sflab/sf_function.hpp"

namespace sflab {

/// Schroeder linearizer phi(w) = w + phi_2 w^2 + ... solving phi(lambda w) = f(phi(w)).
///
/// coefficients[n - 1] holds phi_n for n = 1..order; divisor_log[n - 2] holds
/// log|lambda^(n-1) - 1| for n = 2..order.
struct LinearizationSeries {
  cplx lambda{};
  std::vector<ExtComplex> coefficients;
  int order = 0;
  std::vector<double> divisor_log;
  std::optional<double> radius_estimate;
  std::vector<int> near_resonance_flags;

  /// phi_n, zero outside 1..order.
  ExtComplex phi(int n) const {
    return n >= 1 && n <= order ? coefficients[static_cast<std::size_t>(n - 1)] : ExtComplex{};
  }
  /// Truncated sum of phi at w.
  cplx evaluate(cplx w) const;
};

/// Divisors with |lambda^(n-1) - 1| below this are flagged, not rejected.
inline constexpr double kNearResonance = 1e-13;

/// Taylor series of w -> f(fixed_point + w) - fixed_point.
TaylorSeries recenter(const SFFunction& f, cplx fixed_point, int order);

/// Order-by-order solution of the Schroeder equation for a local series with
/// zero constant term and unimodular linear coefficient.  Coefficients of the
/// local series beyond its order are taken as zero.  Throws ResonanceError
/// when lambda^(n-1) = 1 (to working precision) for some n <= order.
LinearizationSeries schroeder(const TaylorSeries& local, int order);

/// max_{n<=N} |[w^n] (phi(lambda w) - f(phi(w)))|, composed independently of
/// the recursion by truncated Horner composition.
double verify_conjugacy(const TaylorSeries& local, const LinearizationSeries& lin, int N);

/// Median-smoothed root test over the last `window` coefficients:
/// 1 / exp(median_n log|phi_n| / n).  Empty when every coefficient in the
/// window is below 1e-300 (no finite radius detected).
std::optional<double> radius_estimate(const LinearizationSeries& lin, int window);

/// phi(r e^{2 pi i k / count}) for k < count with r = fraction * radius_estimate.
/// Throws NumericalError when the series terms are still growing at r.
std::vector<cplx> boundary_samples(const LinearizationSeries& lin, double fraction, int count);

}  // namespace sflab
