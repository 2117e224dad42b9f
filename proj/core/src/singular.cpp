#include <algorithm>
#include <cmath>
#include <numbers>

#include "sflab/errors.hpp"
#include "sflab/roots.hpp"
#include "sflab/sf_function.hpp"

namespace sflab {
namespace {

constexpr double kTailTarget = 1e-14;
constexpr double kMaxRayRadius = 1e4;

// Bound for int_R^inf |P e^Q| along the ray at angle theta, using
// |P| <= sum |c_k| r^k and Re Q <= Re(a_q e^{iq theta}) r^q + sum_{k<q} |a_k| r^k.
// Infinite when that majorant is not yet decreasing at R.
double ray_tail_bound(const Polynomial& P, const Polynomial& Q, double theta, double R) {
  const int q = Q.degree();
  const double lead = (Q.leading() * std::polar(1.0, q * theta)).real();
  const auto log_majorant = [&](double r) {
    double e = lead * std::pow(r, q);
    for (int k = 1; k < q; ++k) e += std::abs(Q[k]) * std::pow(r, k);
    return std::log(P.abs_bound(r)) + e;
  };
  double slope = static_cast<double>(P.degree()) / R + q * lead * std::pow(R, q - 1);
  for (int k = 1; k < q; ++k) slope += k * std::abs(Q[k]) * std::pow(R, k - 1);
  if (!(slope < 0.0)) return std::numeric_limits<double>::infinity();

  // Left-endpoint Riemann sum of a decreasing function bounds its integral.
  const double h = std::clamp(1.0 / -slope, 1e-4, 1.0);
  double sum = 0.0;
  for (int j = 0; j < 1'000'000; ++j) {
    const double term = h * std::exp(log_majorant(R + j * h));
    sum += term;
    if (term == 0.0 || term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

std::vector<double> tract_directions(const Polynomial& Q) {
  std::vector<double> out;
  if (Q.is_zero() || Q.degree() < 1) return out;
  const int q = Q.degree();
  const double base = std::numbers::pi - std::arg(Q.leading());
  for (int j = 0; j < q; ++j) {
    double theta = (base + 2.0 * std::numbers::pi * j) / q;
    theta = std::fmod(theta, 2.0 * std::numbers::pi);
    if (theta < 0) theta += 2.0 * std::numbers::pi;
    out.push_back(theta);
  }
  return out;
}

SingularData singular_data(const SFFunction& f) {
  if (!f.normalized()) throw PreconditionError("singular_data requires a normalized function");
  SingularData out;

  if (f.p() >= 1) {
    for (const RootCluster& c : root_clusters(f.P())) {
      out.critical_points.push_back({c.location, c.multiplicity});
      out.critical_values.push_back(f.evaluate(c.location));
      out.p_found += c.multiplicity;
    }
  }

  for (double theta : tract_directions(f.Q())) {
    AsymptoticValue av;
    av.tract_direction = theta;
    double R = 1.0;
    double tail = ray_tail_bound(f.P(), f.Q(), theta, R);
    while (tail >= kTailTarget && R < kMaxRayRadius) {
      R *= 1.25;
      tail = ray_tail_bound(f.P(), f.Q(), theta, R);
    }
    av.flagged = !(tail < kTailTarget);
    av.radius = R;
    const auto path = f.integrate({}, std::polar(R, theta));
    const cplx v = (path.value + ExtComplex(f.translation())).to_complex();
    av.value = v;
    av.error = path.error + std::abs(f.lambda()) * tail;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) av.flagged = true;
    out.asymptotic_values.push_back(av);
  }
  out.q_found = static_cast<int>(out.asymptotic_values.size());
  return out;
}

}  // namespace sflab
