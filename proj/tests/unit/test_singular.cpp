#include <doctest.h>

#include <cmath>
#include <random>

#include <sflab/sf_function.hpp>

#include "oracles.hpp"

using namespace sflab;

namespace {

std::mt19937 rng(2024);

cplx in_disk() {
  std::uniform_real_distribution<double> r(0.0, 1.0), th(0.0, 2.0 * std::numbers::pi);
  return std::polar(std::sqrt(r(rng)), th(rng));
}

cplx leading() {
  std::uniform_real_distribution<double> r(0.5, 1.0), th(0.0, 2.0 * std::numbers::pi);
  return std::polar(r(rng), th(rng));
}

}  // namespace

TEST_CASE("Geyer function singular values") {
  const cplx lambda = oracle::golden_lambda();
  const SingularData sd = singular_data(oracle::make_geyer(lambda));
  REQUIRE(sd.critical_points.size() == 1);
  CHECK(std::abs(sd.critical_points[0].location + 1.0) < 1e-12);
  CHECK(sd.critical_points[0].multiplicity == 1);
  REQUIRE(sd.critical_values.size() == 1);
  CHECK(std::abs(sd.critical_values[0] - oracle::geyer(lambda, -1.0)) < 1e-13);
  REQUIRE(sd.asymptotic_values.size() == 1);
  CHECK(std::abs(sd.asymptotic_values[0].value) < 1e-12);
  CHECK(sd.asymptotic_values[0].tract_direction == doctest::Approx(std::numbers::pi));
  CHECK(!sd.asymptotic_values[0].flagged);
}

TEST_CASE("E has one asymptotic value at -lambda and no critical points") {
  const cplx lambda = oracle::golden_lambda();
  const SingularData sd = singular_data(oracle::make_exp(lambda));
  CHECK(sd.critical_points.empty());
  CHECK(sd.p_found == 0);
  REQUIRE(sd.asymptotic_values.size() == 1);
  CHECK(std::abs(sd.asymptotic_values[0].value + lambda) < 1e-12);
}

TEST_CASE("tract directions are the steepest-descent rays of the leading term") {
  for (int q = 1; q <= 5; ++q) {
    std::vector<cplx> c(static_cast<std::size_t>(q) + 1);
    c.back() = leading();
    const auto dirs = tract_directions(Polynomial(c));
    REQUIRE(dirs.size() == static_cast<std::size_t>(q));
    for (const double th : dirs) CHECK(std::cos(std::arg(c.back()) + q * th) == doctest::Approx(-1.0));
  }
}

TEST_CASE("asymptotic values for monomial Q match Gamma-function integrals") {
  // Along t = r e^{i th} with a e^{i q th} = -|a|:
  // int t^k e^{a t^q} dt = e^{i th (k+1)} Gamma((k+1)/q) / (q |a|^{(k+1)/q}).
  const cplx lambda = oracle::golden_lambda();
  for (int q = 1; q <= 3; ++q) {
    for (int p = 0; p <= 3; ++p) {
      std::vector<cplx> P(static_cast<std::size_t>(p) + 1), Q(static_cast<std::size_t>(q) + 1);
      P[0] = 1.0;
      for (int k = 1; k <= p; ++k) P[static_cast<std::size_t>(k)] = k == p ? leading() : in_disk();
      const cplx a = leading();
      Q.back() = a;
      const SFFunction f(lambda, Polynomial(P), Polynomial(Q));
      const SingularData sd = singular_data(f);
      REQUIRE(sd.asymptotic_values.size() == static_cast<std::size_t>(q));
      for (const auto& av : sd.asymptotic_values) {
        const double th = av.tract_direction;
        cplx want{};
        for (int k = 0; k <= p; ++k)
          want += P[static_cast<std::size_t>(k)] * std::polar(1.0, th * (k + 1)) * std::tgamma((k + 1.0) / q) /
                  (q * std::pow(std::abs(a), (k + 1.0) / q));
        want *= lambda;
        CHECK(std::abs(av.value - want) < 1e-10 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("random instances: counts of critical points and tracts") {
  for (int trial = 0; trial < 20; ++trial) {
    const int p = trial % 4, q = (trial / 4 + trial) % 4;
    std::vector<cplx> P(static_cast<std::size_t>(p) + 1), Q(static_cast<std::size_t>(q) + 1);
    P[0] = 1.0;
    for (int k = 1; k <= p; ++k) P[static_cast<std::size_t>(k)] = k == p ? leading() : in_disk();
    for (int k = 1; k <= q; ++k) Q[static_cast<std::size_t>(k)] = k == q ? leading() : in_disk();
    const SFFunction f(oracle::golden_lambda(), Polynomial(P), Polynomial(Q));
    const SingularData sd = singular_data(f);
    CHECK(sd.p_found == p);
    CHECK(sd.q_found == q);
    CHECK(sd.asymptotic_values.size() == static_cast<std::size_t>(q));
    int mult = 0;
    for (const auto& c : sd.critical_points) {
      mult += c.multiplicity;
      CHECK(std::abs(f.P()(c.location)) < 1e-9 * std::max(1.0, f.P().abs_bound(std::abs(c.location))));
    }
    CHECK(mult == p);
    for (std::size_t k = 0; k < sd.critical_points.size(); ++k)
      CHECK(std::abs(sd.critical_values[k] - f.evaluate(sd.critical_points[k].location)) < 1e-12);
    for (const auto& av : sd.asymptotic_values) {
      CHECK(std::isfinite(av.value.real()));
      CHECK(!av.flagged);
    }
  }
}

TEST_CASE("double critical point") {
  // P = (1 + t)^2.
  const SFFunction f(oracle::golden_lambda(), Polynomial({1.0, 2.0, 1.0}), Polynomial({0.0, 1.0}));
  const SingularData sd = singular_data(f);
  REQUIRE(sd.critical_points.size() == 1);
  CHECK(sd.critical_points[0].multiplicity == 2);
  CHECK(std::abs(sd.critical_points[0].location + 1.0) < 1e-6);
  CHECK(sd.p_found == 2);
}
