#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "sflab/errors.hpp"

namespace sflab {

struct QuadratureOptions {
  /// Stop when error <= tol * (abs_scale + |value|).
  double tol = 1e-12;
  double abs_scale = 1.0;
  std::size_t max_panels = std::size_t{1} << 14;
  std::size_t initial_panels = 1;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  std::complex<double> a, b;
  std::complex<double> value;
  double error;
};

template <class F>
Panel gk15(F& f, std::complex<double> a, std::complex<double> b) {
  const std::complex<double> centre = 0.5 * (a + b);
  const std::complex<double> half = 0.5 * (b - a);
  const std::complex<double> fc = f(centre);
  std::complex<double> kronrod = fc * kWgk[7];
  std::complex<double> gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const std::complex<double> dx = half * kXgk[j];
    const std::complex<double> s = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod.real()) || !std::isfinite(kronrod.imag()))
    throw OverflowError("quadrature integrand is not finite on the path");
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 integration of f along the straight
/// segment a -> b.  Panels with the largest error estimate are bisected until
/// the summed estimate meets the tolerance or the panel budget runs out.
template <class F>
QuadratureResult integrate_segment(F&& f, std::complex<double> a, std::complex<double> b,
                                   const QuadratureOptions& options = {}) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  const auto by_error = [](const detail::Panel& x, const detail::Panel& y) {
    return x.error < y.error;
  };
  std::vector<detail::Panel> heap;
  const std::size_t n0 = std::max<std::size_t>(1, options.initial_panels);
  heap.reserve(n0 + 64);
  for (std::size_t i = 0; i < n0; ++i) {
    const std::complex<double> lo = a + (b - a) * (static_cast<double>(i) / static_cast<double>(n0));
    const std::complex<double> hi =
        i + 1 == n0 ? b : a + (b - a) * (static_cast<double>(i + 1) / static_cast<double>(n0));
    heap.push_back(detail::gk15(f, lo, hi));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  const auto totals = [&heap](std::complex<double>& value, double& error) {
    value = {};
    error = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
    }
  };
  std::complex<double> value;
  double error = 0.0;
  totals(value, error);
  while (error > options.tol * (options.abs_scale + std::abs(value)) &&
         heap.size() < options.max_panels) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const std::complex<double> mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gk15(f, worst.a, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }
  totals(value, error);
  result.value = value;
  result.error = error;
  result.panels = heap.size();
  result.converged = error <= options.tol * (options.abs_scale + std::abs(value));
  return result;
}

}  // namespace sflab
