#include "sflab/polynomial.hpp"

#include <cmath>

#include "sflab/errors.hpp"

namespace sflab {

Polynomial::Polynomial(std::vector<cplx> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back({});
  if (coeffs_.size() > 1 && coeffs_.back() == cplx{})
    throw PreconditionError("polynomial leading coefficient must be nonzero");
}

Polynomial Polynomial::trimmed(std::vector<cplx> coefficients) {
  while (coefficients.size() > 1 && coefficients.back() == cplx{}) coefficients.pop_back();
  return Polynomial(std::move(coefficients));
}

Polynomial Polynomial::monomial(cplx c, int n) {
  std::vector<cplx> v(static_cast<std::size_t>(n) + 1);
  v.back() = c;
  return trimmed(std::move(v));
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return trimmed(std::move(d));
}

Polynomial Polynomial::shifted(cplx c) const {
  std::vector<cplx> a = coeffs_;
  const std::size_t n = a.size();
  // Repeated synthetic division by (u - c).
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) a[k - 1] += c * a[k];
  return trimmed(std::move(a));
}

Polynomial Polynomial::scaled_argument(cplx b) const {
  std::vector<cplx> a = coeffs_;
  cplx power{1.0, 0.0};
  for (auto& x : a) {
    x *= power;
    power *= b;
  }
  return trimmed(std::move(a));
}

double Polynomial::abs_bound(double r) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k < a.coeffs_.size()) c[k] += a.coeffs_[k];
    if (k < b.coeffs_.size()) c[k] += b.coeffs_[k];
  }
  return Polynomial::trimmed(std::move(c));
}

Polynomial operator*(cplx s, const Polynomial& a) {
  std::vector<cplx> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return Polynomial::trimmed(std::move(c));
}

}  // namespace sflab
