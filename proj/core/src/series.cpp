#include "sflab/series.hpp"

#include <algorithm>
#include <cmath>

#include "sflab/errors.hpp"

namespace sflab {

cplx TaylorSeries::sum(cplx z) const { return horner_with_bound(coefficients, z - center).value; }

HornerResult horner_with_bound(const Coeffs& c, cplx w) {
  const double r = std::abs(w);
  cplx acc{};
  double bound = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * w + *it;
    bound = bound * r + std::abs(*it);
  }
  return {acc, bound};
}

Coeffs series_mul(const Coeffs& a, const Coeffs& b, std::size_t order) {
  Coeffs out(order + 1);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Coeffs series_exp(const Coeffs& h, std::size_t order) {
  if (!h.empty() && h[0] != cplx{})
    throw PreconditionError("series_exp: constant term must be zero");
  Coeffs g(order + 1);
  g[0] = 1.0;
  // g' = h' g  =>  n g_n = sum_{k=1}^{n} k h_k g_{n-k}
  for (std::size_t n = 1; n <= order; ++n) {
    cplx acc{};
    const std::size_t kmax = std::min(n, h.empty() ? 0 : h.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) acc += static_cast<double>(k) * h[k] * g[n - k];
    g[n] = acc / static_cast<double>(n);
  }
  return g;
}

Coeffs series_integrate(const Coeffs& g, std::size_t order) {
  Coeffs out(order + 1);
  for (std::size_t k = 0; k + 1 <= order && k < g.size(); ++k)
    out[k + 1] = g[k] / static_cast<double>(k + 1);
  return out;
}

double series_trust_radius(const Coeffs& c, double rel_tol) {
  const std::size_t n = c.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  const std::size_t second = n >= 3 ? n - 2 : n - 1;
  const double top1 = std::abs(c[n - 1]);
  const double top2 = std::abs(c[second]);
  if (top1 == 0.0 && top2 == 0.0) return std::numeric_limits<double>::infinity();

  const auto log_term = [&c](std::size_t k, double log_r) {
    const double a = std::abs(c[k]);
    return a == 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::log(a) + static_cast<double>(k) * log_r;
  };
  const auto ok = [&](double log_r) {
    double head = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < n; ++k) head = std::max(head, log_term(k, log_r));
    const double tail = std::max(log_term(n - 1, log_r), log_term(second, log_r));
    return tail + std::log(2.0) <= std::log(rel_tol) + head;
  };
  double lo = std::log(1e-8);
  double hi = std::log(1e8);
  if (!ok(lo)) return 1e-8;
  if (ok(hi)) return 1e8;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return std::exp(lo);
}

TaylorSeries make_series(cplx center, Coeffs coefficients, double trust_radius) {
  TaylorSeries s;
  s.center = center;
  s.order = static_cast<int>(coefficients.size()) - 1;
  s.coefficients = std::move(coefficients);
  s.trust_radius = trust_radius;
  return s;
}

}  // namespace sflab
