#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <sflab/errors.hpp>
#include <sflab/ext_complex.hpp>
#include <sflab/polynomial.hpp>
#include <sflab/quadrature.hpp>
#include <sflab/roots.hpp>
#include <sflab/series.hpp>

#include "oracles.hpp"

using namespace sflab;

TEST_CASE("polynomial basics") {
  const Polynomial p({1.0, -3.0, 2.0});  // (2z - 1)(z - 1)
  CHECK(p.degree() == 2);
  CHECK(p(1.0) == cplx{});
  CHECK(p(0.5) == cplx{});
  CHECK(p.derivative() == Polynomial({-3.0, 4.0}));
  CHECK_THROWS_AS(Polynomial({1.0, 0.0}), PreconditionError);
  CHECK(Polynomial::trimmed({1.0, 0.0}).degree() == 0);
  CHECK(Polynomial().is_zero());

  // Taylor shift and argument scaling against direct evaluation.
  const cplx c(0.3, -0.7), b(1.5, 0.2);
  const Polynomial q({cplx(1, 1), 2.0, cplx(0, -1), 0.5});
  const Polynomial s = q.shifted(c);
  const Polynomial t = q.scaled_argument(b);
  for (const cplx u : {cplx(0.1, 0.2), cplx(-1, 0.5), cplx(2, -2)}) {
    CHECK(std::abs(s(u) - q(c + u)) < 1e-13 * std::max(1.0, std::abs(q(c + u))));
    CHECK(std::abs(t(u) - q(b * u)) < 1e-13 * std::max(1.0, std::abs(q(b * u))));
  }
}

TEST_CASE("series arithmetic against known expansions") {
  // exp(z) coefficients 1/k!.
  const Coeffs e = series_exp({0.0, 1.0}, 20);
  for (int k = 0; k <= 20; ++k) CHECK(std::abs(e[static_cast<std::size_t>(k)] - 1.0 / oracle::factorial(k)) < 1e-16);
  // exp(z + z^2) = sum of Hermite-like numbers a_k / k! with a = 1,1,3,7,25,81.
  const Coeffs h = series_exp({0.0, 1.0, 1.0}, 5);
  const double a[] = {1, 1, 3, 7, 25, 81};
  for (int k = 0; k <= 5; ++k)
    CHECK(h[static_cast<std::size_t>(k)].real() == doctest::Approx(a[k] / oracle::factorial(k)).epsilon(1e-15));
  // (1 + z)^2.
  const Coeffs m = series_mul({1.0, 1.0}, {1.0, 1.0}, 4);
  CHECK(m[0] == 1.0);
  CHECK(m[1] == 2.0);
  CHECK(m[2] == 1.0);
  CHECK(m[3] == 0.0);
  const Coeffs i = series_integrate({1.0, 2.0, 3.0}, 3);
  CHECK(i[0] == 0.0);
  CHECK(i[3] == 1.0);
  CHECK_THROWS_AS(series_exp({1.0, 1.0}, 3), PreconditionError);
}

TEST_CASE("trust radius of a truncated exponential grows with order") {
  Coeffs c(65);
  for (int k = 0; k <= 64; ++k) c[static_cast<std::size_t>(k)] = 1.0 / oracle::factorial(k);
  const double r = series_trust_radius(c);
  CHECK(r > 1.0);
  CHECK(r < 64.0);
  // The reported radius keeps the tail tiny relative to the largest term.
  const auto hb = horner_with_bound(c, r);
  CHECK(std::abs(hb.value - std::exp(r)) / std::exp(r) < 1e-12);
}

TEST_CASE("extended complex arithmetic") {
  const ExtComplex big = ExtComplex::exp({2000.0, 1.0});
  CHECK(big.log_abs() == doctest::Approx(2000.0).epsilon(1e-15));
  CHECK(!big.fits_double());
  const ExtComplex q = big / ExtComplex::exp({1999.0, 1.0});
  CHECK(std::abs(q.to_complex() - std::exp(1.0)) < 1e-15);
  const ExtComplex s = ExtComplex(cplx(1.5, -2.0)) + ExtComplex(cplx(-0.5, 1.0));
  CHECK(s.to_complex() == cplx(1.0, -1.0));
  CHECK((ExtComplex(3.0) * ExtComplex(cplx(0, 1))).to_complex() == cplx(0.0, 3.0));
  CHECK(ExtComplex().is_zero());
}

TEST_CASE("Gauss-Kronrod quadrature") {
  const auto r = integrate_segment([](cplx t) { return std::exp(t); }, cplx{}, cplx(1.0, 2.0), {});
  CHECK(r.converged);
  CHECK(std::abs(r.value - (std::exp(cplx(1.0, 2.0)) - 1.0)) < 1e-13);
  // Oscillatory integrand needs many panels.
  QuadratureOptions o;
  o.initial_panels = 8;
  const auto s = integrate_segment([](cplx t) { return std::cos(40.0 * t); }, cplx{}, cplx(3.0, 0.0), o);
  CHECK(std::abs(s.value - std::sin(120.0) / 40.0) < 1e-12);
}

TEST_CASE("Aberth roots of random polynomials") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int deg = 1; deg <= 8; ++deg) {
    std::vector<cplx> roots;
    Polynomial p({1.0});
    for (int k = 0; k < deg; ++k) {
      roots.emplace_back(2 * u(rng), 2 * u(rng));
      std::vector<cplx> c(p.coefficients().size() + 1);
      for (std::size_t j = 0; j < p.coefficients().size(); ++j) {
        c[j + 1] += p.coefficients()[j];
        c[j] -= roots.back() * p.coefficients()[j];
      }
      p = Polynomial(c);
    }
    const auto found = aberth_roots(p);
    REQUIRE(found.size() == roots.size());
    for (const cplx r : roots) {
      double best = 1e300;
      for (const cplx f : found) best = std::min(best, std::abs(f - r));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("root clusters report multiplicity") {
  // (z - 1)^3 (z + 2).
  const Polynomial p({-2.0, 5.0, -3.0, -1.0, 1.0});
  const auto clusters = root_clusters(p);
  REQUIRE(clusters.size() == 2);
  int total = 0;
  for (const auto& c : clusters) {
    total += c.multiplicity;
    if (std::abs(c.location - 1.0) < 1e-6) CHECK(c.multiplicity == 3);
    else CHECK(std::abs(c.location + 2.0) < 1e-10);
  }
  CHECK(total == 4);
}
