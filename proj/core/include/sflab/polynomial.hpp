#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace sflab {

using cplx = std::complex<double>;

/// Dense complex polynomial, constant term first.
///
/// The leading coefficient is nonzero except for the zero polynomial, which is
/// stored as the single coefficient 0.  Use `trimmed` to build from arithmetic
/// results that may carry vanishing top coefficients.
class Polynomial {
 public:
  Polynomial() : coeffs_{cplx{0.0, 0.0}} {}
  explicit Polynomial(std::vector<cplx> coefficients);
  Polynomial(std::initializer_list<cplx> coefficients)
      : Polynomial(std::vector<cplx>(coefficients)) {}

  /// Drops zero top coefficients instead of rejecting them.
  static Polynomial trimmed(std::vector<cplx> coefficients);
  static Polynomial constant(cplx c) { return Polynomial({c}); }
  /// The monomial c * t^n.
  static Polynomial monomial(cplx c, int n);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cplx{}; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  cplx operator[](int k) const {
    return k >= 0 && k <= degree() ? coeffs_[static_cast<std::size_t>(k)] : cplx{};
  }
  cplx leading() const { return coeffs_.back(); }

  cplx operator()(cplx z) const;

  Polynomial derivative() const;
  /// Coefficients of u -> p(c + u).
  Polynomial shifted(cplx c) const;
  /// Coefficients of s -> p(b s).
  Polynomial scaled_argument(cplx b) const;
  /// Sum of |coefficient| * r^k, an upper bound for |p| on |z| = r.
  double abs_bound(double r) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  std::vector<cplx> coeffs_;
};

}  // namespace sflab
