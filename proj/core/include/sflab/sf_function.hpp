#pragma once

#include <complex>
#include <vector>

#include "sflab/ext_complex.hpp"
#include "sflab/polynomial.hpp"
#include "sflab/quadrature.hpp"
#include "sflab/series.hpp"

namespace sflab {

/// Order of the Taylor expansion at the origin cached by every SFFunction
/// with an exponential factor.
inline constexpr int kOriginSeriesOrder = 64;

/// Structurally finite entire function
///
///     f(z) = lambda * integral_0^z P(t) exp(Q(t)) dt + translation
///
/// with Q(0) = 0.  Immutable; the origin Taylor series is built on
/// construction so every member function is safe to call concurrently.
class SFFunction {
 public:
  /// General (not necessarily normalized) member.  Requires P != 0 and
  /// Q(0) = 0.
  SFFunction(cplx lambda, Polynomial P, Polynomial Q, cplx translation = {});

  cplx lambda() const { return lambda_; }
  const Polynomial& P() const { return P_; }
  const Polynomial& Q() const { return Q_; }
  cplx translation() const { return translation_; }
  /// P(0) = 1, Q(0) = 0, translation = 0; then f(0) = 0 and f'(0) = lambda.
  bool normalized() const { return normalized_; }
  /// P(0) of the polynomial passed to make_normalized (1 otherwise).
  cplx normalization_factor() const { return normalization_factor_; }

  int p() const { return P_.degree(); }
  int q() const { return Q_.is_zero() ? 0 : Q_.degree(); }
  bool is_polynomial() const { return q() == 0; }

  const TaylorSeries& origin_series() const { return origin_; }

  /// f(z); throws OverflowError when |f(z)| leaves the double range and
  /// QuadratureError when the panel budget is exhausted.
  cplx evaluate(cplx z) const;
  /// f(z) with an exponent-carrying result; never overflows.
  ExtComplex evaluate_scaled(cplx z) const;

  /// f'(z) = lambda P(z) exp(Q(z)) in closed form.
  cplx derivative(cplx z) const;
  ExtComplex derivative_scaled(cplx z) const;

  struct PathIntegral {
    ExtComplex value;  // lambda * integral of P e^Q along a -> b
    double error = 0.0;
    std::size_t panels = 0;
  };
  /// lambda * integral_a^b P(t) e^{Q(t)} dt along the straight segment.
  PathIntegral integrate(cplx a, cplx b, double tol = 1e-12) const;

 private:
  friend SFFunction make_normalized(cplx, const Polynomial&, const Polynomial&);

  cplx lambda_;
  Polynomial P_;
  Polynomial Q_;
  cplx translation_;
  bool normalized_ = false;
  cplx normalization_factor_{1.0, 0.0};
  Polynomial antiderivative_;  // lambda * int P, polynomial case only
  TaylorSeries origin_;
};

/// Normal form f(z) = lambda * int_0^z P e^Q with P(0) = 1 and Q(0) = 0.
///
/// P is divided by P(0) (kept as normalization_factor) and the constant term
/// of Q is dropped.  Throws PreconditionError for P(0) = 0.
SFFunction make_normalized(cplx lambda, const Polynomial& P, const Polynomial& Q);

/// Taylor series of f about `center` through degree `order`.
TaylorSeries taylor_at(const SFFunction& f, cplx center, int order);

struct CriticalPoint {
  cplx location;
  int multiplicity = 1;
};

struct AsymptoticValue {
  cplx value;
  double tract_direction = 0.0;  // radians
  double radius = 0.0;           // ray integrated out to this radius
  double error = 0.0;            // quadrature error plus analytic tail bound
  bool flagged = false;          // tail bound not reached below the radius cap
};

struct SingularData {
  std::vector<CriticalPoint> critical_points;
  std::vector<cplx> critical_values;
  std::vector<AsymptoticValue> asymptotic_values;
  int p_found = 0;  // critical points counted with multiplicity
  int q_found = 0;  // tract directions
};

/// Critical points (roots of P), critical values, and one asymptotic value per
/// tract of steepest decay of Re Q.  Requires a normalized f.
SingularData singular_data(const SFFunction& f);

/// The q directions theta with arg(a_q) + q theta = pi (mod 2 pi).
std::vector<double> tract_directions(const Polynomial& Q);

}  // namespace sflab
