#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "sflab/polynomial.hpp"

namespace sflab {

using Coeffs = std::vector<cplx>;

/// Truncated Taylor expansion sum_k c_k (z - center)^k.
///
/// trust_radius is the radius inside which the dropped tail is below 1e-14
/// relative to the largest retained term; infinite for exact polynomials.
struct TaylorSeries {
  cplx center{};
  Coeffs coefficients;
  int order = 0;
  double trust_radius = std::numeric_limits<double>::infinity();

  cplx coefficient(int k) const {
    return k >= 0 && k <= order ? coefficients[static_cast<std::size_t>(k)] : cplx{};
  }
  cplx sum(cplx z) const;
};

struct HornerResult {
  cplx value;
  double abs_sum;  // sum_k |c_k| |w|^k, for cancellation checks
};

HornerResult horner_with_bound(const Coeffs& c, cplx w);

/// Product truncated to degree `order`.
Coeffs series_mul(const Coeffs& a, const Coeffs& b, std::size_t order);

/// exp(h) to degree `order`; h[0] must be zero.
Coeffs series_exp(const Coeffs& h, std::size_t order);

/// Termwise antiderivative with zero constant, truncated to degree `order`.
Coeffs series_integrate(const Coeffs& g, std::size_t order);

/// Largest radius with |c_N| r^N + |c_{N-1}| r^{N-1} <= rel_tol * max_k |c_k| r^k.
double series_trust_radius(const Coeffs& c, double rel_tol = 1e-14);

TaylorSeries make_series(cplx center, Coeffs coefficients, double trust_radius);

}  // namespace sflab
