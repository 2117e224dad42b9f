#include "sflab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "sflab/errors.hpp"

namespace sflab {
namespace {

struct EvalPair {
  cplx p;
  cplx dp;
};

EvalPair eval_with_derivative(const std::vector<cplx>& a, cplx z) {
  cplx p{};
  cplx dp{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

void newton_polish(const Polynomial& poly, cplx& z) {
  const auto& a = poly.coefficients();
  for (int i = 0; i < 3; ++i) {
    const auto [p, dp] = eval_with_derivative(a, z);
    if (dp == cplx{} || p == cplx{}) return;
    const cplx next = z - p / dp;
    if (std::abs(poly(next)) >= std::abs(p)) return;
    z = next;
  }
}

}  // namespace

std::vector<cplx> aberth_roots(const Polynomial& poly, int max_iterations) {
  const int n = poly.degree();
  if (n < 1) return {};
  const cplx lead = poly.leading();
  std::vector<cplx> a(poly.coefficients());
  for (auto& c : a) c /= lead;
  if (n == 1) return {-a[0]};

  // Initial guesses on a circle around the root centroid.
  const cplx centroid = -a[static_cast<std::size_t>(n - 1)] / static_cast<double>(n);
  const Polynomial centred = Polynomial(a).shifted(centroid);
  double radius = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double c = std::abs(centred[n - k]);
    if (c > 0) radius = std::max(radius, std::pow(c, 1.0 / k));
  }
  if (radius == 0.0) return std::vector<cplx>(static_cast<std::size_t>(n), centroid);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] =
        centroid + std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < max_iterations; ++it) {
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto [p, dp] = eval_with_derivative(a, z[i]);
      if (p == cplx{}) continue;
      cplx repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      const cplx ratio = dp == cplx{} ? cplx{eps, 0.0} : p / dp;
      const cplx step = ratio / (1.0 - ratio * repulsion);
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (worst < 4.0 * eps) break;
  }

  Polynomial monic(a);
  for (auto& r : z) {
    newton_polish(monic, r);
    const double scale = monic.abs_bound(std::abs(r));
    if (!(std::abs(monic(r)) <= 1e-8 * scale))
      throw RootFindingError("Aberth iteration did not converge");
  }
  return z;
}

std::vector<RootCluster> root_clusters(const Polynomial& p, double cluster_tol) {
  std::vector<cplx> roots = aberth_roots(p);
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  const std::size_t n = roots.size();

  // Single-linkage grouping at a loose radius; groups are then accepted or
  // split by the multiplicity-dependent test below.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
      if (std::abs(roots[i] - roots[j]) < 1e-3 * scale) parent[find(j)] = find(i);
    }

  std::vector<RootCluster> out;
  std::vector<bool> done(n, false);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < n; ++j)
      if (!done[j] && find(j) == find(i)) members.push_back(j);
    for (auto j : members) done[j] = true;

    const int m = static_cast<int>(members.size());
    cplx centre{};
    for (auto j : members) centre += roots[j];
    centre /= static_cast<double>(m);
    const double scale = std::max(1.0, std::abs(centre));
    double diameter = 0.0;
    for (auto j : members)
      for (auto k : members) diameter = std::max(diameter, std::abs(roots[j] - roots[k]));

    bool merge = m == 1 || diameter < cluster_tol * scale;
    if (!merge && diameter < 100.0 * std::pow(eps, 1.0 / m) * scale) {
      Polynomial d = p;
      for (int k = 0; k < m - 1; ++k) d = d.derivative();
      const Polynomial dd = d.derivative();
      cplx z = centre;
      for (int it = 0; it < 4; ++it) {
        const cplx dv = dd(z);
        if (dv == cplx{}) break;
        z -= d(z) / dv;
      }
      merge = std::abs(z - centre) <= diameter && std::abs(d(z)) <= 1e-10 * d.abs_bound(std::abs(z));
      if (merge) centre = z;
    }
    if (merge) {
      out.push_back({centre, m});
    } else {
      for (auto j : members) out.push_back({roots[j], 1});
    }
  }
  return out;
}

}  // namespace sflab
