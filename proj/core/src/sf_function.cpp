#include "sflab/sf_function.hpp"

#include <algorithm>
#include <cmath>

#include "sflab/errors.hpp"

namespace sflab {
namespace {

// Above this |Re Q| the exponential is carried as mantissa/exponent.
constexpr double kLogScaleThreshold = 300.0;
// Series sums whose absolute-term bound exceeds the value by more than this
// factor are redone by quadrature.
constexpr double kCancellationLimit = 10.0;

// Coefficients 1..order of lambda * int_c^{c+w} P e^Q, scaled by e^{Q(c)}.
Coeffs expansion_coefficients(cplx lambda, const Polynomial& P, const Polynomial& Q, cplx c,
                              int order) {
  const auto n = static_cast<std::size_t>(order);
  Coeffs q_shift = Q.shifted(c).coefficients();
  const cplx q_at_c = q_shift[0];
  q_shift[0] = 0.0;
  const Coeffs e = series_exp(q_shift, n - 1);
  const Coeffs g = series_mul(P.shifted(c).coefficients(), e, n - 1);
  const Coeffs integral = series_integrate(g, n);
  const ExtComplex scale = ExtComplex::exp(q_at_c) * ExtComplex(lambda);
  Coeffs out(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const ExtComplex v = scale * ExtComplex(integral[k]);
    if (!v.fits_double() || !std::isfinite(integral[k].real()) ||
        !std::isfinite(integral[k].imag()))
      throw OverflowError("Taylor coefficient out of double range");
    out[k] = v.to_complex();
  }
  return out;
}

}  // namespace

SFFunction::SFFunction(cplx lambda, Polynomial P, Polynomial Q, cplx translation)
    : lambda_(lambda), P_(std::move(P)), Q_(std::move(Q)), translation_(translation) {
  if (lambda_ == cplx{}) throw PreconditionError("lambda must be nonzero");
  if (P_.is_zero()) throw PreconditionError("P must not be identically zero");
  if (Q_[0] != cplx{}) throw PreconditionError("Q must have zero constant term");
  normalized_ = P_[0] == cplx{1.0, 0.0} && translation_ == cplx{};

  if (is_polynomial()) {
    std::vector<cplx> a(static_cast<std::size_t>(P_.degree()) + 2);
    for (int k = 0; k <= P_.degree(); ++k)
      a[static_cast<std::size_t>(k) + 1] = lambda_ * P_[k] / static_cast<double>(k + 1);
    antiderivative_ = Polynomial::trimmed(a);
    a[0] = translation_;
    origin_ = make_series({}, std::move(a), std::numeric_limits<double>::infinity());
  } else {
    Coeffs c = expansion_coefficients(lambda_, P_, Q_, {}, kOriginSeriesOrder);
    c[0] = translation_;
    const double trust = series_trust_radius(c);
    origin_ = make_series({}, std::move(c), trust);
  }
}

SFFunction make_normalized(cplx lambda, const Polynomial& P, const Polynomial& Q) {
  const cplx p0 = P[0];
  if (P.is_zero()) throw PreconditionError("P must not be identically zero");
  if (p0 == cplx{}) throw PreconditionError("make_normalized requires P(0) != 0");
  std::vector<cplx> pc = P.coefficients();
  for (auto& c : pc) c /= p0;
  pc[0] = 1.0;
  std::vector<cplx> qc = Q.coefficients();
  qc[0] = 0.0;
  SFFunction f(lambda, Polynomial(std::move(pc)), Polynomial::trimmed(std::move(qc)));
  f.normalization_factor_ = p0;
  return f;
}

SFFunction::PathIntegral SFFunction::integrate(cplx a, cplx b, double tol) const {
  PathIntegral out;
  if (a == b) return out;

  // Reference exponent and a rough count of oscillations along the path.
  constexpr int kSamples = 33;
  const Polynomial dq = Q_.derivative();
  double max_re_q = -std::numeric_limits<double>::infinity();
  double max_dq = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const cplx t = a + (b - a) * (static_cast<double>(i) / (kSamples - 1));
    max_re_q = std::max(max_re_q, Q_(t).real());
    max_dq = std::max(max_dq, std::abs(dq(t)));
  }
  if (!(max_re_q < 0x1p52)) throw OverflowError("exponent of f(z) beyond the extended range");
  const double shift = max_re_q > kLogScaleThreshold ? max_re_q : 0.0;
  const double length = std::abs(b - a);

  QuadratureOptions opts;
  opts.tol = tol;
  opts.abs_scale = std::exp(-shift);
  opts.initial_panels = static_cast<std::size_t>(
      std::clamp(std::ceil(length * max_dq / 3.0), 1.0, 4096.0));

  const auto integrand = [this, shift](cplx t) { return lambda_ * P_(t) * std::exp(Q_(t) - shift); };
  const QuadratureResult r = integrate_segment(integrand, a, b, opts);
  const ExtComplex scale = ExtComplex::exp({shift, 0.0});
  out.value = ExtComplex(r.value) * scale;
  out.error = r.error * std::exp(shift);
  out.panels = r.panels;
  if (!r.converged)
    throw QuadratureError("quadrature did not converge within the panel budget",
                          out.value.to_complex(), out.error);
  return out;
}

ExtComplex SFFunction::evaluate_scaled(cplx z) const {
  if (is_polynomial()) {
    const cplx v = origin_.sum(z);
    if (std::isfinite(v.real()) && std::isfinite(v.imag())) return v;
    ExtComplex acc;
    const auto& c = origin_.coefficients;
    const ExtComplex w(z);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + ExtComplex(*it);
    return acc;
  }
  if (std::abs(z) <= origin_.trust_radius) {
    const HornerResult h = horner_with_bound(origin_.coefficients, z);
    if (h.abs_sum == 0.0 || h.abs_sum <= kCancellationLimit * std::abs(h.value)) return h.value;
  }
  return integrate({}, z).value + ExtComplex(translation_);
}

cplx SFFunction::evaluate(cplx z) const {
  const ExtComplex v = evaluate_scaled(z);
  if (!v.fits_double()) throw OverflowError("f(z) is outside the double range");
  return v.to_complex();
}

ExtComplex SFFunction::derivative_scaled(cplx z) const {
  const cplx qz = Q_(z);
  const cplx lp = lambda_ * P_(z);
  if (std::abs(qz.real()) <= kLogScaleThreshold) return lp * std::exp(qz);
  return ExtComplex::exp(qz) * ExtComplex(lp);
}

cplx SFFunction::derivative(cplx z) const {
  const ExtComplex v = derivative_scaled(z);
  if (!v.fits_double()) throw OverflowError("f'(z) is outside the double range");
  return v.to_complex();
}

TaylorSeries taylor_at(const SFFunction& f, cplx center, int order) {
  if (order < 1) throw PreconditionError("taylor_at: order must be >= 1");
  if (f.is_polynomial()) {
    Coeffs a = f.origin_series().coefficients;
    Coeffs shifted = Polynomial::trimmed(a).shifted(center).coefficients();
    const bool exact = static_cast<int>(shifted.size()) - 1 <= order;
    shifted.resize(static_cast<std::size_t>(order) + 1);
    const double trust = exact ? std::numeric_limits<double>::infinity()
                               : series_trust_radius(shifted);
    return make_series(center, std::move(shifted), trust);
  }
  Coeffs c = expansion_coefficients(f.lambda(), f.P(), f.Q(), center, order);
  c[0] = f.evaluate(center);
  const double trust = series_trust_radius(c);
  return make_series(center, std::move(c), trust);
}

}  // namespace sflab
