#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sflab/series.hpp"
#include "sflab/sf_function.hpp"

namespace sflab {

enum class PerturbKind { critical, singularity };

std::string to_string(PerturbKind k);
PerturbKind parse_perturb_kind(const std::string& s);

/// One-parameter family f[b] around a normalized base.
///
/// critical:    f[b] = f + (1/b) int_0^z t e^{Q(t)} dt      (needs p >= 1)
/// singularity: f[b] = lambda int_0^z e^{Q(t) + t/b} dt     (needs p = 0, q >= 1)
class PerturbationFamily {
 public:
  PerturbationFamily(SFFunction base, PerturbKind kind);

  const SFFunction& base() const { return base_; }
  PerturbKind kind() const { return kind_; }

 private:
  SFFunction base_;
  PerturbKind kind_;
};

/// F_b(z) = f[b](b z) / b, together with its b -> 0 limit at b = 0.
struct RescaledMember {
  cplx b{};
  TaylorSeries series;
  std::optional<SFFunction> closed_form;
};

/// f[b] for b != 0.
SFFunction family_member(const PerturbationFamily& fam, cplx b);

/// Taylor series of F_b at 0 by exact coefficient transforms; exact at b = 0.
RescaledMember rescaled_member(const PerturbationFamily& fam, cplx b, int order);

/// Series of h = F_b - F_0, with h_0 = h_1 = 0.
TaylorSeries remainder_h(const PerturbationFamily& fam, cplx b, int order);

enum class CellFlag { ok, pole, overflow };
std::string to_string(CellFlag f);

struct HartogsCell {
  cplx z{};
  cplx value{};
  CellFlag flag = CellFlag::ok;
};

struct HartogsGrid {
  cplx b{};
  int period = 1;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  int width = 0, height = 0;
  /// Row-major, row j has imaginary part y0 + (y1 - y0) j / (height - 1).
  std::vector<HartogsCell> cells;
};

/// H(b, z) = z / (F_b^n(z) - z); exactly 1/(lambda^n - 1) at z = 0.
HartogsCell hartogs_value(const SFFunction& Fb, int period, cplx z);

HartogsGrid hartogs_grid(const PerturbationFamily& fam, cplx b, int period, double x0, double x1,
                         double y0, double y1, int width, int height);

}  // namespace sflab
