#include "sflab/linearize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sflab/errors.hpp"

namespace sflab {
namespace {

using lcplx = std::complex<long double>;

lcplx lmul(lcplx a, lcplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// lambda^0 .. lambda^n by repeated multiplication in extended precision.
std::vector<lcplx> powers(cplx lambda, int n) {
  std::vector<lcplx> p(static_cast<std::size_t>(n) + 1);
  p[0] = 1.0L;
  const lcplx l(lambda.real(), lambda.imag());
  for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = lmul(p[static_cast<std::size_t>(k - 1)], l);
  return p;
}

// Truncated product of two ExtComplex series (index = degree).
std::vector<ExtComplex> ext_mul(const std::vector<ExtComplex>& a, const std::vector<ExtComplex>& b,
                                std::size_t order) {
  std::vector<ExtComplex> out(order + 1);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

cplx LinearizationSeries::evaluate(cplx w) const {
  ExtComplex acc;
  const ExtComplex x(w);
  for (int n = order; n >= 1; --n) acc = (acc + phi(n)) * x;
  return acc.to_complex();
}

TaylorSeries recenter(const SFFunction& f, cplx fixed_point, int order) {
  if (order < 1) throw PreconditionError("recenter: order must be >= 1");
  const double residual = std::abs(f.evaluate(fixed_point) - fixed_point);
  if (!(residual < 1e-10))
    throw PreconditionError("recenter: point is not a fixed point (residual " +
                            std::to_string(residual) + ")");
  TaylorSeries s = taylor_at(f, fixed_point, order);
  s.coefficients[0] = 0.0;
  if (order >= 1) s.coefficients[1] = f.derivative(fixed_point);
  return s;
}

LinearizationSeries schroeder(const TaylorSeries& local, int order) {
  if (order < 1) throw PreconditionError("schroeder: order must be >= 1");
  const cplx lambda = local.coefficient(1);
  if (std::abs(local.coefficient(0)) > 1e-12)
    throw PreconditionError("schroeder: local series must vanish at the fixed point");
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw PreconditionError("schroeder: multiplier must have modulus 1");

  // Resonance lambda^q = 1 at working precision, q = n - 1 < order.
  double x = std::arg(lambda) / (2.0 * std::numbers::pi);
  if (x < 0) x += 1.0;
  for (int q = 1; q < order; ++q) {
    const long double xq = static_cast<long double>(x) * q;
    if (std::fabs(xq - std::nearbyint(xq)) <= 8.0L * std::numeric_limits<double>::epsilon() * q)
      throw ResonanceError("schroeder: resonance lambda^" + std::to_string(q) + " = 1 at n = " +
                               std::to_string(q + 1),
                           q + 1);
  }

  const auto N = static_cast<std::size_t>(order);
  int top = 1;
  for (int k = 2; k <= std::min(order, local.order); ++k)
    if (local.coefficient(k) != cplx{}) top = k;
  const auto K = static_cast<std::size_t>(top);

  std::vector<ExtComplex> fk(K + 1);
  for (std::size_t k = 2; k <= K; ++k) fk[k] = ExtComplex(local.coefficient(static_cast<int>(k)));

  LinearizationSeries lin;
  lin.lambda = lambda;
  lin.order = order;
  lin.coefficients.assign(N, ExtComplex{});
  lin.coefficients[0] = ExtComplex(1.0);

  const std::vector<lcplx> pw_lambda = powers(lambda, order);
  const lcplx l(lambda.real(), lambda.imag());
  const double log_abs_lambda = std::log(std::abs(lambda));

  // pw[k][m] = [w^m] phi(w)^k for 2 <= k <= K.
  std::vector<std::vector<ExtComplex>> pw(K + 1, std::vector<ExtComplex>(N + 1));
  const auto phi = [&lin](std::size_t j) -> const ExtComplex& { return lin.coefficients[j - 1]; };
  const auto power = [&](std::size_t k, std::size_t m) -> ExtComplex {
    return k == 1 ? (m >= 1 && m <= N ? phi(m) : ExtComplex{}) : pw[k][m];
  };
  if (K >= 2) pw[2][2] = ExtComplex(1.0);
  for (std::size_t k = 3; k <= K; ++k) pw[k][k] = ExtComplex(1.0);

  for (std::size_t n = 2; n <= N; ++n) {
    ExtComplex rhs;
    for (std::size_t k = 2; k <= std::min(n, K); ++k) {
      if (n > k) {
        ExtComplex acc;
        for (std::size_t j = 1; j + k <= n + 1; ++j) {
          const ExtComplex& a = phi(j);
          if (a.is_zero()) continue;
          acc += a * power(k - 1, n - j);
        }
        pw[k][n] = acc;
      }
      if (!fk[k].is_zero()) rhs += fk[k] * pw[k][n];
    }
    const lcplx divisor = pw_lambda[n] - l;
    const double dlog = std::log(static_cast<double>(std::abs(divisor))) - log_abs_lambda;
    lin.divisor_log.push_back(dlog);
    if (dlog < std::log(kNearResonance)) lin.near_resonance_flags.push_back(static_cast<int>(n));
    lin.coefficients[n - 1] = rhs / ExtComplex::from_long(divisor);
  }
  return lin;
}

double verify_conjugacy(const TaylorSeries& local, const LinearizationSeries& lin, int N) {
  if (N < 1 || N > lin.order) throw PreconditionError("verify_conjugacy: need 1 <= N <= order");
  const auto n = static_cast<std::size_t>(N);
  std::vector<ExtComplex> phi(n + 1);
  for (std::size_t j = 1; j <= n; ++j) phi[j] = lin.phi(static_cast<int>(j));

  // f(phi) = phi * (f_1 + phi * (f_2 + ... )) by Horner on truncated series.
  int top = std::min(N, local.order);
  while (top > 1 && local.coefficient(top) == cplx{}) --top;
  std::vector<ExtComplex> acc(n + 1);
  acc[0] = ExtComplex(local.coefficient(top));
  for (int k = top - 1; k >= 1; --k) {
    acc = ext_mul(acc, phi, n);
    acc[0] += ExtComplex(local.coefficient(k));
  }
  acc = ext_mul(acc, phi, n);

  const std::vector<lcplx> pw = powers(lin.lambda, N);
  double worst = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const ExtComplex lhs = phi[j] * ExtComplex::from_long(pw[j]);
    const ExtComplex diff = lhs - acc[j];
    worst = std::max(worst, diff.is_zero() ? 0.0 : std::exp(diff.log_abs()));
  }
  return worst;
}

std::optional<double> radius_estimate(const LinearizationSeries& lin, int window) {
  if (window < 1 || lin.order < 2 * window)
    throw PreconditionError("radius_estimate: order must be >= 2 * window");
  std::vector<double> roots;
  for (int n = lin.order - window + 1; n <= lin.order; ++n) {
    const double la = lin.phi(n).log_abs();
    if (la > std::log(1e-300)) roots.push_back(la / n);
  }
  if (roots.empty()) return std::nullopt;
  std::sort(roots.begin(), roots.end());
  const std::size_t m = roots.size();
  const double median = m % 2 ? roots[m / 2] : 0.5 * (roots[m / 2 - 1] + roots[m / 2]);
  return std::exp(-median);
}

std::vector<cplx> boundary_samples(const LinearizationSeries& lin, double fraction, int count) {
  if (!lin.radius_estimate) throw PreconditionError("boundary_samples: radius estimate unavailable");
  if (!(fraction > 0.0 && fraction < 1.0)) throw PreconditionError("boundary_samples: fraction must lie in (0,1)");
  if (count < 1) throw PreconditionError("boundary_samples: count must be >= 1");
  const double r = fraction * *lin.radius_estimate;

  // Term growth check on |phi_n| r^n over the last two blocks of indices.
  const int block = std::max(1, std::min(10, lin.order / 4));
  if (lin.order >= 2 * block && lin.order >= 8) {
    const double log_r = std::log(r);
    double last = -std::numeric_limits<double>::infinity();
    double prev = -std::numeric_limits<double>::infinity();
    for (int n = lin.order - block + 1; n <= lin.order; ++n)
      last = std::max(last, lin.phi(n).log_abs() + n * log_r);
    for (int n = lin.order - 2 * block + 1; n <= lin.order - block; ++n)
      prev = std::max(prev, lin.phi(n).log_abs() + n * log_r);
    if (last > prev && last > std::log(1e-3) + std::log(r))
      throw NumericalError("boundary_samples: series terms still grow at this radius; use a smaller fraction");
  }

  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    out.push_back(lin.evaluate(std::polar(r, 2.0 * std::numbers::pi * k / count)));
  return out;
}

}  // namespace sflab
