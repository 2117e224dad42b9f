#include <doctest.h>

#include <cmath>

#include <sflab/errors.hpp>
#include <sflab/perturb.hpp>

#include "oracles.hpp"

using namespace sflab;

namespace {

const cplx kLambda = oracle::golden_lambda();

PerturbationFamily critical_geyer(cplx lambda = kLambda) {
  return PerturbationFamily(oracle::make_geyer(lambda), PerturbKind::critical);
}
PerturbationFamily singular_exp(cplx lambda = kLambda) {
  return PerturbationFamily(oracle::make_exp(lambda), PerturbKind::singularity);
}

double max_abs(const TaylorSeries& s) {
  double m = 0.0;
  for (const auto& c : s.coefficients) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("family compatibility") {
  CHECK_THROWS_AS(PerturbationFamily(oracle::make_exp(kLambda), PerturbKind::critical), PreconditionError);
  CHECK_THROWS_AS(PerturbationFamily(oracle::make_geyer(kLambda), PerturbKind::singularity), PreconditionError);
  CHECK_THROWS_AS(PerturbationFamily(SFFunction(kLambda, Polynomial({1.0}), Polynomial()), PerturbKind::singularity),
                  PreconditionError);
  CHECK_NOTHROW(critical_geyer());
  CHECK_NOTHROW(singular_exp());
}

TEST_CASE("family members") {
  // f[b] = f + (1/b) int t e^Q, so P picks up t / (lambda b).
  const SFFunction m1 = family_member(critical_geyer(1.0), 1.0);
  CHECK(m1.P() == Polynomial({1.0, 2.0}));
  const SFFunction mg = family_member(critical_geyer(), 0.5);
  CHECK(std::abs(mg.P()[1] - (1.0 + 2.0 / kLambda)) < 1e-15);
  // f[b] - f = (1/b) int_0^z t e^t dt = ((z - 1) e^z + 1) / b.
  for (const cplx z : {cplx(0.3, 0.2), cplx(-1, 1)})
    CHECK(std::abs(mg.evaluate(z) - oracle::geyer(kLambda, z) - ((z - 1.0) * std::exp(z) + 1.0) / 0.5) < 1e-13);

  const SFFunction e2 = family_member(singular_exp(), 2.0);
  CHECK(e2.Q() == Polynomial({0.0, 1.5}));
  CHECK_THROWS_AS(family_member(singular_exp(), 0.0), PreconditionError);
}

TEST_CASE("rescaled limits are exact") {
  const RescaledMember c0 = rescaled_member(critical_geyer(), 0.0, 8);
  CHECK(c0.series.coefficient(0) == cplx{});
  CHECK(c0.series.coefficient(1) == kLambda);
  CHECK(c0.series.coefficient(2) == cplx(0.5));
  for (int k = 3; k <= 8; ++k) CHECK(c0.series.coefficient(k) == cplx{});
  REQUIRE(c0.closed_form);
  CHECK(c0.closed_form->is_polynomial());

  const RescaledMember s0 = rescaled_member(singular_exp(), 0.0, 8);
  CHECK(s0.series.coefficient(0) == cplx{});
  for (int k = 1; k <= 8; ++k)
    CHECK(std::abs(s0.series.coefficient(k) - kLambda / oracle::factorial(k)) <= 1e-16 * std::abs(kLambda / oracle::factorial(k)));
}

TEST_CASE("rescaled members against closed forms") {
  // Geyer, b = 1: F_1 = lambda z e^z + (z - 1) e^z + 1.
  const RescaledMember g1 = rescaled_member(critical_geyer(), 1.0, 12);
  for (int k = 1; k <= 12; ++k) {
    const cplx want = kLambda / oracle::factorial(k - 1) + 1.0 / oracle::factorial(k - 1) - 1.0 / oracle::factorial(k);
    CHECK(std::abs(g1.series.coefficient(k) - want) < 1e-15);
  }
  // E, any b: F_b = lambda (e^{(1+b) z} - 1) / (1 + b).
  const cplx b(0.1, 0.05);
  const RescaledMember eb = rescaled_member(singular_exp(), b, 12);
  for (int k = 1; k <= 12; ++k) {
    const cplx want = kLambda * std::pow(1.0 + b, k - 1) / oracle::factorial(k);
    CHECK(std::abs(eb.series.coefficient(k) - want) < 1e-15);
  }
  for (const cplx z : {cplx(0.5, 0.5), cplx(-2, 1)})
    CHECK(std::abs(eb.closed_form->evaluate(z) - kLambda * (std::exp((1.0 + b) * z) - 1.0) / (1.0 + b)) < 1e-12);
}

TEST_CASE("rescaled member equals (1/b) f[b](b z)") {
  for (const auto& fam : {critical_geyer(), singular_exp()}) {
    for (const cplx b : {cplx(0.1), cplx(0.3, -0.2), cplx(1.0)}) {
      const RescaledMember m = rescaled_member(fam, b, 10);
      const TaylorSeries direct = taylor_at(family_member(fam, b), 0.0, 10);
      cplx bk = 1.0;
      for (int k = 1; k <= 10; ++k) {
        const cplx want = direct.coefficient(k) * bk;  // c_k b^k / b
        CHECK(std::abs(m.series.coefficient(k) - want) <= 1e-11 * std::max(std::abs(want), 1e-300));
        bk *= b;
      }
    }
  }
}

TEST_CASE("remainder series") {
  for (const auto& fam : {critical_geyer(), singular_exp()}) {
    const TaylorSeries h0 = remainder_h(fam, 0.0, 6);
    for (const auto& c : h0.coefficients) CHECK(c == cplx{});
    const TaylorSeries h1 = remainder_h(fam, 0.1, 6);
    const TaylorSeries h2 = remainder_h(fam, 0.2, 6);
    CHECK(h1.coefficient(0) == cplx{});
    CHECK(h1.coefficient(1) == cplx{});
    const double ratio = max_abs(h2) / max_abs(h1);
    CHECK(ratio >= 1.6);
    CHECK(ratio <= 2.4);
    for (int k = 2; k <= 6; ++k) CHECK(std::abs(h1.coefficient(k)) <= 1.25 * 0.5 * max_abs(h2));
  }
  // E: the z^2 coefficient of h is lambda b / 2.
  const TaylorSeries h = remainder_h(singular_exp(), 0.1, 4);
  CHECK(std::abs(h.coefficient(2) - kLambda * 0.1 / 2.0) < 1e-15);
}

TEST_CASE("Hartogs indicator") {
  for (const auto& fam : {critical_geyer(), singular_exp()})
    for (const cplx b : {cplx(0.0), cplx(0.1), cplx(1.0)})
      for (int n = 1; n <= 3; ++n) {
        const HartogsGrid g = hartogs_grid(fam, b, n, -1, 1, -1, 1, 3, 3);
        const HartogsCell& centre = g.cells[4];
        CHECK(centre.z == cplx{});
        CHECK(std::abs(centre.value - 1.0 / (std::pow(kLambda, n) - 1.0)) < 1e-13);
      }

  // b = 0, period 1: F_0 = lambda z + z^2/2 has its other fixed point at 2(1 - lambda).
  const PerturbationFamily fam = critical_geyer();
  const SFFunction F0 = *rescaled_member(fam, 0.0, 2).closed_form;
  const cplx pole = 2.0 * (1.0 - kLambda);
  CHECK(hartogs_value(F0, 1, pole).flag == CellFlag::pole);
  // H = 1 / (lambda - 1 + z/2) away from the pole.
  const cplx z(0.3, -0.4);
  const HartogsCell c = hartogs_value(F0, 1, z);
  CHECK(c.flag == CellFlag::ok);
  CHECK(std::abs(c.value - 1.0 / (kLambda - 1.0 + z / 2.0)) < 1e-14);

  // A window away from the periodic points is all finite.
  const HartogsGrid g = hartogs_grid(fam, 0.0, 1, -1.5, -0.5, -1.0, 0.0, 8, 8);
  for (const auto& cell : g.cells) CHECK(cell.flag == CellFlag::ok);

  // Grid coordinates.
  CHECK(g.cells.front().z == cplx(-1.5, -1.0));
  CHECK(g.cells.back().z == cplx(-0.5, 0.0));

  // On Im z = -arg(lambda) the first E iterate is huge and positive, the
  // second leaves the double range.
  const double y = -std::arg(kLambda);
  const HartogsGrid wide = hartogs_grid(singular_exp(), 0.0, 3, 700, 705, y, y, 2, 1);
  for (const auto& cell : wide.cells) CHECK(cell.flag == CellFlag::overflow);
}
