#include "sflab/perturb.hpp"

#include <cmath>

#include "sflab/parallel.hpp"
#include "sflab/errors.hpp"

namespace sflab {
namespace {

constexpr double kPoleTol = 1e-9;
constexpr double kLowOrderTol = 1e-14;

// Polynomial parts of the closed form of F_b: lambda int (P~) e^{Q~}.
std::pair<Polynomial, Polynomial> rescaled_polys(const PerturbationFamily& fam, cplx b) {
  const SFFunction& f = fam.base();
  if (fam.kind() == PerturbKind::critical) {
    return {f.P().scaled_argument(b) + Polynomial({0.0, 1.0 / f.lambda()}), f.Q().scaled_argument(b)};
  }
  return {f.P().scaled_argument(b), f.Q().scaled_argument(b) + Polynomial({0.0, 1.0})};
}

}  // namespace

std::string to_string(PerturbKind k) {
  return k == PerturbKind::critical ? "critical" : "singularity";
}

PerturbKind parse_perturb_kind(const std::string& s) {
  if (s == "critical") return PerturbKind::critical;
  if (s == "singularity") return PerturbKind::singularity;
  throw PreconditionError("unknown perturbation kind '" + s + "'");
}

std::string to_string(CellFlag f) {
  switch (f) {
    case CellFlag::ok: return "ok";
    case CellFlag::pole: return "pole";
    case CellFlag::overflow: return "overflow";
  }
  return "ok";
}

PerturbationFamily::PerturbationFamily(SFFunction base, PerturbKind kind)
    : base_(std::move(base)), kind_(kind) {
  if (!base_.normalized()) throw PreconditionError("perturbation family needs a normalized base");
  if (kind_ == PerturbKind::critical && base_.p() < 1)
    throw PreconditionError("critical perturbation needs deg P >= 1");
  if (kind_ == PerturbKind::singularity && (base_.p() != 0 || base_.q() < 1))
    throw PreconditionError("singularity perturbation needs deg P = 0 and deg Q >= 1");
}

SFFunction family_member(const PerturbationFamily& fam, cplx b) {
  if (b == cplx{}) throw PreconditionError("family_member needs b != 0; use rescaled_member");
  const SFFunction& f = fam.base();
  if (fam.kind() == PerturbKind::critical)
    return SFFunction(f.lambda(), f.P() + Polynomial({0.0, 1.0 / (f.lambda() * b)}), f.Q());
  return SFFunction(f.lambda(), f.P(), f.Q() + Polynomial({0.0, 1.0 / b}));
}

RescaledMember rescaled_member(const PerturbationFamily& fam, cplx b, int order) {
  if (order < 2) throw PreconditionError("rescaled_member: order must be >= 2");
  const auto n = static_cast<std::size_t>(order);
  const cplx lambda = fam.base().lambda();
  const auto [Pb, Qb] = rescaled_polys(fam, b);

  Coeffs coeffs;
  if (fam.kind() == PerturbKind::critical) {
    // lambda int P(bs) e^{Q(bs)} + int s e^{Q(bs)}, assembled as two parts so
    // that b = 0 leaves exactly lambda z + z^2 / 2.
    const Coeffs e = series_exp(fam.base().Q().scaled_argument(b).coefficients(), n - 1);
    const Coeffs main = series_integrate(series_mul(fam.base().P().scaled_argument(b).coefficients(), e, n - 1), n);
    const Coeffs extra = series_integrate(series_mul({0.0, 1.0}, e, n - 1), n);
    coeffs.resize(n + 1);
    for (std::size_t k = 1; k <= n; ++k) coeffs[k] = lambda * main[k] + extra[k];
  } else {
    const Coeffs e = series_exp(Qb.coefficients(), n - 1);
    const Coeffs g = series_integrate(series_mul(Pb.coefficients(), e, n - 1), n);
    coeffs.resize(n + 1);
    for (std::size_t k = 1; k <= n; ++k) coeffs[k] = lambda * g[k];
  }
  coeffs[0] = 0.0;

  RescaledMember out;
  out.b = b;
  const double trust = Qb.is_zero() ? std::numeric_limits<double>::infinity() : series_trust_radius(coeffs);
  out.series = make_series({}, std::move(coeffs), trust);
  out.closed_form.emplace(lambda, Pb, Qb);
  return out;
}

TaylorSeries remainder_h(const PerturbationFamily& fam, cplx b, int order) {
  const RescaledMember fb = rescaled_member(fam, b, order);
  const RescaledMember f0 = rescaled_member(fam, 0.0, order);
  const cplx lambda = fam.base().lambda();
  if (std::abs(fb.series.coefficient(0)) > kLowOrderTol ||
      std::abs(fb.series.coefficient(1) - lambda) > kLowOrderTol * std::abs(lambda))
    throw ConsistencyError("remainder_h: F_b does not fix 0 with multiplier lambda");
  Coeffs h(static_cast<std::size_t>(order) + 1);
  for (int k = 2; k <= order; ++k)
    h[static_cast<std::size_t>(k)] = fb.series.coefficient(k) - f0.series.coefficient(k);
  return make_series({}, std::move(h), fb.series.trust_radius);
}

HartogsCell hartogs_value(const SFFunction& Fb, int period, cplx z) {
  if (period < 1) throw PreconditionError("hartogs: period must be >= 1");
  HartogsCell cell;
  cell.z = z;
  if (z == cplx{}) {
    cplx lp{1.0, 0.0};
    for (int i = 0; i < period; ++i) lp *= Fb.lambda();
    cell.value = 1.0 / (lp - 1.0);
    return cell;
  }
  cplx w = z;
  try {
    for (int i = 0; i < period; ++i) w = Fb.evaluate(w);
  } catch (const NumericalError&) {
    cell.flag = CellFlag::overflow;
    cell.value = {std::nan(""), std::nan("")};
    return cell;
  }
  const cplx den = w - z;
  if (!std::isfinite(den.real()) || !std::isfinite(den.imag())) {
    cell.flag = CellFlag::overflow;
    cell.value = {std::nan(""), std::nan("")};
  } else if (std::abs(den) < kPoleTol * (1.0 + std::abs(z))) {
    cell.flag = CellFlag::pole;
    cell.value = {std::nan(""), std::nan("")};
  } else {
    cell.value = z / den;
  }
  return cell;
}

HartogsGrid hartogs_grid(const PerturbationFamily& fam, cplx b, int period, double x0, double x1,
                         double y0, double y1, int width, int height) {
  if (period < 1) throw PreconditionError("hartogs: period must be >= 1");
  if (width < 1 || height < 1) throw PreconditionError("hartogs: resolution must be positive");
  if (!(x0 <= x1 && y0 <= y1)) throw PreconditionError("hartogs: window must satisfy x0 <= x1, y0 <= y1");
  const RescaledMember member = rescaled_member(fam, b, 2);
  const SFFunction& Fb = *member.closed_form;

  HartogsGrid g;
  g.b = b;
  g.period = period;
  g.x0 = x0, g.x1 = x1, g.y0 = y0, g.y1 = y1;
  g.width = width, g.height = height;
  g.cells.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  const auto coord = [](double a, double c, int i, int n) {
    return n == 1 ? a : a + (c - a) * i / (n - 1);
  };
  detail::parallel_for(static_cast<std::size_t>(height), [&](std::size_t j) {
    const double y = coord(y0, y1, static_cast<int>(j), height);
    for (int i = 0; i < width; ++i) {
      const cplx z(coord(x0, x1, i, width), y);
      g.cells[j * static_cast<std::size_t>(width) + static_cast<std::size_t>(i)] = hartogs_value(Fb, period, z);
    }
  });
  return g;
}

}  // namespace sflab
