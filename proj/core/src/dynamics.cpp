#include "sflab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>

#include "sflab/errors.hpp"
#include "sflab/parallel.hpp"

namespace sflab {

std::string to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::escaped: return "escaped";
    case OrbitStatus::bounded_budget_exhausted: return "bounded-budget-exhausted";
    case OrbitStatus::converged_to_cycle: return "converged-to-cycle";
    case OrbitStatus::overflow: return "overflow";
  }
  return "escaped";
}

std::string to_string(CycleClass c) {
  switch (c) {
    case CycleClass::attracting: return "attracting";
    case CycleClass::superattracting: return "superattracting";
    case CycleClass::repelling: return "repelling";
    case CycleClass::rationally_indifferent: return "rationally-indifferent";
    case CycleClass::irrationally_indifferent: return "irrationally-indifferent";
  }
  return "repelling";
}

std::string to_string(Correspondence c) {
  switch (c) {
    case Correspondence::corresponds_likely: return "corresponds-likely";
    case Correspondence::no_evidence: return "no-evidence";
    case Correspondence::escaped: return "escaped";
    case Correspondence::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(SingularKind k) {
  switch (k) {
    case SingularKind::critical_point: return "critical-point";
    case SingularKind::critical_value: return "critical-value";
    case SingularKind::asymptotic_value: return "asymptotic-value";
  }
  return "critical-point";
}

std::string to_string(SubhypClass c) {
  switch (c) {
    case SubhypClass::converges_to_attracting_cycle: return "converges-to-attracting-cycle";
    case SubhypClass::numerically_preperiodic: return "numerically-preperiodic";
    case SubhypClass::recurrent_near_gamma: return "recurrent-near-gamma";
    case SubhypClass::escaping: return "escaping";
    case SubhypClass::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

cplx chain_multiplier(const SFFunction& f, const std::vector<cplx>& points) {
  ExtComplex m(1.0);
  for (cplx z : points) m *= f.derivative_scaled(z);
  return m.fits_double() ? m.to_complex()
                         : cplx{std::numeric_limits<double>::infinity(), 0.0};
}

struct NewtonState {
  cplx value;       // f^n(z) - z
  cplx derivative;  // (f^n)'(z) - 1
  bool ok = false;
};

NewtonState fn_minus_id(const SFFunction& f, cplx z, int n, double radius) {
  NewtonState s;
  cplx w = z;
  ExtComplex d(1.0);
  for (int j = 0; j < n; ++j) {
    d *= f.derivative_scaled(w);
    const ExtComplex next = f.evaluate_scaled(w);
    if (!next.fits_double()) return s;
    w = next.to_complex();
    if (std::abs(w) > radius) return s;
  }
  if (!d.fits_double()) return s;
  s.value = w - z;
  s.derivative = d.to_complex() - 1.0;
  s.ok = std::isfinite(s.value.real()) && std::isfinite(s.value.imag());
  return s;
}

std::optional<cplx> newton_periodic(const SFFunction& f, cplx seed, int n, double tol,
                                    const PeriodicSearchOptions& opt) {
  cplx z = seed;
  NewtonState s = fn_minus_id(f, z, n, opt.divergence_radius);
  if (!s.ok) return std::nullopt;
  for (int it = 0; it < opt.max_newton_steps; ++it) {
    if (std::abs(s.value) < 1e-3 * tol) break;
    if (s.derivative == cplx{}) return std::nullopt;
    cplx step = s.value / s.derivative;
    NewtonState next;
    cplx candidate = z;
    int halvings = 0;
    for (; halvings < 30; ++halvings) {
      candidate = z - step;
      next = fn_minus_id(f, candidate, n, opt.divergence_radius);
      if (next.ok && std::abs(next.value) <= std::abs(s.value)) break;
      step *= 0.5;
    }
    if (!next.ok) return std::nullopt;
    const bool stalled = std::abs(candidate - z) <= 1e-15 * (1.0 + std::abs(z));
    z = candidate;
    s = next;
    if (std::abs(z) > opt.divergence_radius) return std::nullopt;
    if (stalled) break;
  }
  if (!(std::abs(s.value) < tol)) return std::nullopt;
  return z;
}

bool lex_less(cplx a, cplx b) {
  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

}  // namespace

OrbitRecord iterate(const SFFunction& f, cplx z0, const IterateOptions& options) {
  if (options.n_max < 1) throw PreconditionError("iterate: n_max must be >= 1");
  if (!(options.escape_radius > 0)) throw PreconditionError("iterate: escape_radius must be > 0");
  OrbitRecord rec;
  rec.samples.reserve(std::min<std::size_t>(options.n_max + 1, 1 << 20));
  rec.samples.push_back(z0);
  if (std::abs(z0) > options.escape_radius) {
    rec.escaped = true;
    rec.escape_index = 0;
    rec.final_status = OrbitStatus::escaped;
    return rec;
  }
  cplx z = z0;
  for (std::size_t k = 1; k <= options.n_max; ++k) {
    ExtComplex w;
    try {
      w = f.evaluate_scaled(z);
    } catch (const OverflowError&) {
      w = ExtComplex::exp({std::numeric_limits<double>::infinity(), 0.0});
    }
    if (!w.fits_double()) {
      rec.escaped = true;
      rec.escape_index = k;
      rec.final_status = OrbitStatus::overflow;
      return rec;
    }
    z = w.to_complex();
    rec.samples.push_back(z);
    if (std::abs(z) > options.escape_radius) {
      rec.escaped = true;
      rec.escape_index = k;
      rec.final_status = OrbitStatus::escaped;
      return rec;
    }
    if (!options.detect_cycles) continue;
    const std::size_t jmax = std::min<std::size_t>(static_cast<std::size_t>(options.max_cycle_period), k);
    for (std::size_t j = 1; j <= jmax; ++j) {
      const double d = std::abs(z - rec.samples[k - j]);
      if (d > options.cycle_tol) continue;
      bool accept = d == 0.0;
      if (!accept) {
        const std::vector<cplx> cyc(rec.samples.begin() + static_cast<std::ptrdiff_t>(k - j),
                                    rec.samples.begin() + static_cast<std::ptrdiff_t>(k));
        accept = std::abs(chain_multiplier(f, cyc)) <= 1.0 + 1e-6;
      }
      if (accept) {
        rec.final_status = OrbitStatus::converged_to_cycle;
        return rec;
      }
    }
  }
  rec.final_status = OrbitStatus::bounded_budget_exhausted;
  return rec;
}

std::pair<long long, long long> best_rational(double x, long long max_den) {
  // Convergents of the continued fraction of x.
  long long p_prev = 1, q_prev = 0;
  long long p = static_cast<long long>(std::floor(x)), q = 1;
  double rem = x - std::floor(x);
  while (rem > 1e-300) {
    const double inv = 1.0 / rem;
    if (inv > 1e15) break;
    const auto a = static_cast<long long>(std::floor(inv));
    const long long q_next = a * q + q_prev;
    if (q_next > max_den) break;
    const long long p_next = a * p + p_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    rem = inv - static_cast<double>(a);
  }
  return {p, q};
}

CycleRecord classify_cycle(CycleRecord record, double tol) {
  const double a = std::abs(record.multiplier);
  record.rotation_number.reset();
  if (a < tol) {
    record.classification = CycleClass::superattracting;
  } else if (a < 1.0 - tol) {
    record.classification = CycleClass::attracting;
  } else if (a > 1.0 + tol) {
    record.classification = CycleClass::repelling;
  } else {
    double x = std::arg(record.multiplier) / (2.0 * std::numbers::pi);
    if (x < 0) x += 1.0;
    record.rotation_number = x;
    const auto [p, q] = best_rational(x, 64);
    const bool near_rational = std::abs(x - static_cast<double>(p) / static_cast<double>(q)) < tol ||
                               std::abs(x - 1.0) < tol;
    record.classification =
        near_rational ? CycleClass::rationally_indifferent : CycleClass::irrationally_indifferent;
  }
  return record;
}

CycleRecord make_cycle(const SFFunction& f, cplx z, int period, double indifference_tol) {
  if (period < 1) throw PreconditionError("make_cycle: period must be >= 1");
  CycleRecord rec;
  rec.period = period;
  rec.points.reserve(static_cast<std::size_t>(period));
  cplx w = z;
  for (int i = 0; i < period; ++i) {
    rec.points.push_back(w);
    w = f.evaluate(w);
  }
  const auto start = std::min_element(rec.points.begin(), rec.points.end(), lex_less);
  std::rotate(rec.points.begin(), start, rec.points.end());
  rec.residual = 0.0;
  for (int i = 0; i < period; ++i) {
    const cplx image = f.evaluate(rec.points[static_cast<std::size_t>(i)]);
    const cplx next = rec.points[static_cast<std::size_t>((i + 1) % period)];
    rec.residual = std::max(rec.residual, std::abs(image - next));
  }
  rec.multiplier = chain_multiplier(f, rec.points);
  return classify_cycle(std::move(rec), indifference_tol);
}

std::vector<CycleRecord> find_periodic_points(const SFFunction& f, int period, const Box& box,
                                              int grid, double tol,
                                              const PeriodicSearchOptions& options) {
  if (period < 1) throw PreconditionError("find_periodic_points: period must be >= 1");
  if (grid < 2) throw PreconditionError("find_periodic_points: grid must be >= 2");
  if (!(box.x0 < box.x1 && box.y0 < box.y1)) throw PreconditionError("find_periodic_points: empty box");

  const auto g = static_cast<std::size_t>(grid);
  std::vector<std::optional<cplx>> roots(g * g);
  detail::parallel_for(g * g, [&](std::size_t idx) {
    const double x = box.x0 + (box.x1 - box.x0) * static_cast<double>(idx % g) / static_cast<double>(g - 1);
    const double y = box.y0 + (box.y1 - box.y0) * static_cast<double>(idx / g) / static_cast<double>(g - 1);
    try {
      roots[idx] = newton_periodic(f, {x, y}, period, tol, options);
    } catch (const NumericalError&) {
      roots[idx].reset();
    }
  });

  std::vector<CycleRecord> out;
  for (const auto& r : roots) {
    if (!r) continue;
    const cplx z = *r;
    bool duplicate = false;
    for (const auto& c : out) {
      for (cplx p : c.points)
        if (std::abs(p - z) < options.dedup_tol) duplicate = true;
      if (duplicate) break;
    }
    if (duplicate) continue;

    int true_period = period;
    for (int d = 1; d < period; ++d) {
      if (period % d != 0) continue;
      cplx w = z;
      bool ok = true;
      for (int j = 0; j < d && ok; ++j) {
        const ExtComplex next = f.evaluate_scaled(w);
        ok = next.fits_double();
        w = next.to_complex();
      }
      if (ok && std::abs(w - z) < tol) {
        true_period = d;
        break;
      }
    }
    CycleRecord rec;
    try {
      rec = make_cycle(f, z, true_period, options.indifference_tol);
    } catch (const NumericalError&) {
      continue;
    }
    if (!(rec.residual < tol)) continue;
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------- probes

CorrespondenceRecord probe_orbit(const SFFunction& f, cplx start, SingularKind kind,
                                 const std::vector<cplx>& gamma, const ManeOptions& options) {
  if (gamma.empty()) throw PreconditionError("probe requires a non-empty gamma sample set");
  IterateOptions it;
  it.n_max = options.n_iters;
  it.escape_radius = options.escape_radius;
  it.detect_cycles = false;
  const OrbitRecord orbit = iterate(f, start, it);

  CorrespondenceRecord rec;
  rec.start = start;
  rec.kind = kind;
  rec.iterations = orbit.samples.size() - 1;

  const std::size_t burn = static_cast<std::size_t>(options.burn_in_fraction *
                                                    static_cast<double>(orbit.samples.size()));
  const std::size_t first = std::min(burn, orbit.samples.size() - 1);
  const std::span<const cplx> tail(orbit.samples.data() + first, orbit.samples.size() - first);

  std::size_t hits = 0;
  double min_distance = std::numeric_limits<double>::infinity();
  for (cplx g : gamma) {
    double best = std::numeric_limits<double>::infinity();
    for (cplx z : tail) best = std::min(best, std::norm(g - z));
    best = std::sqrt(best);
    min_distance = std::min(min_distance, best);
    if (best < options.eps) ++hits;
  }
  rec.min_distance = min_distance;
  rec.accumulation_score = static_cast<double>(hits) / static_cast<double>(gamma.size());
  if (orbit.escaped)
    rec.status = Correspondence::escaped;
  else if (rec.accumulation_score > options.corresponds_threshold)
    rec.status = Correspondence::corresponds_likely;
  else if (rec.accumulation_score < options.no_evidence_threshold)
    rec.status = Correspondence::no_evidence;
  else
    rec.status = Correspondence::inconclusive;
  return rec;
}

CorrespondenceReport mane_probe(const SFFunction& f, const std::vector<cplx>& gamma,
                                const ManeOptions& options) {
  if (gamma.empty()) throw PreconditionError("mane_probe: gamma must be non-empty");
  const SingularData sd = singular_data(f);
  std::vector<std::pair<cplx, SingularKind>> starts;
  for (const auto& c : sd.critical_points) starts.emplace_back(c.location, SingularKind::critical_point);
  for (const auto& a : sd.asymptotic_values) starts.emplace_back(a.value, SingularKind::asymptotic_value);

  CorrespondenceReport report;
  report.gamma_size = gamma.size();
  report.eps = options.eps;
  report.records.resize(starts.size());
  detail::parallel_for(starts.size(), [&](std::size_t i) {
    report.records[i] = probe_orbit(f, starts[i].first, starts[i].second, gamma, options);
  });
  return report;
}

ExpansionResult expansion_metric(const SFFunction& f, const std::vector<cplx>& samples, int n) {
  if (n < 1) throw PreconditionError("expansion_metric: n must be >= 1");
  if (samples.empty()) throw PreconditionError("expansion_metric: sample set must be non-empty");
  ExpansionResult out;
  const double inf = std::numeric_limits<double>::infinity();
  for (cplx z : samples) {
    double log_sum = 0.0;
    bool overflow = false;
    cplx w = z;
    for (int j = 0; j < n; ++j) {
      log_sum += f.derivative_scaled(w).log_abs();
      if (j + 1 == n) break;
      const ExtComplex next = f.evaluate_scaled(w);
      if (!next.fits_double()) {
        overflow = true;
        break;
      }
      w = next.to_complex();
    }
    out.per_sample_log.push_back(overflow ? inf : log_sum);
    out.overflowed.push_back(overflow);
  }
  out.log_value = *std::min_element(out.per_sample_log.begin(), out.per_sample_log.end());
  out.value = std::exp(out.log_value);
  return out;
}

SubhypReport subhyperbolicity_report(const SFFunction& f, std::size_t budget,
                                     const std::optional<std::vector<cplx>>& gamma,
                                     const SubhypOptions& options) {
  if (budget < 1) throw PreconditionError("subhyperbolicity_report: budget must be >= 1");
  const SingularData sd = singular_data(f);
  SubhypReport report;
  for (cplx v : sd.critical_values) report.entries.push_back({v, SingularKind::critical_value, {}, {}});
  for (const auto& a : sd.asymptotic_values)
    report.entries.push_back({a.value, SingularKind::asymptotic_value, {}, {}});

  detail::parallel_for(report.entries.size(), [&](std::size_t i) {
    SubhypEntry& e = report.entries[i];
    IterateOptions it;
    it.n_max = budget;
    it.escape_radius = options.escape_radius;
    it.detect_cycles = false;
    const OrbitRecord orbit = iterate(f, e.value, it);
    if (orbit.escaped) {
      e.classification = SubhypClass::escaping;
      return;
    }
    const auto& z = orbit.samples;
    const double tol = options.preperiodic_tol;

    // Settled onto a cycle at the end of the budget?
    const std::size_t last = z.size() - 1;
    for (std::size_t j = 1; j <= std::min<std::size_t>(32, last); ++j) {
      if (std::abs(z[last] - z[last - j]) >= tol) continue;
      const std::vector<cplx> cyc(z.begin() + static_cast<std::ptrdiff_t>(last - j),
                                  z.begin() + static_cast<std::ptrdiff_t>(last));
      if (std::abs(chain_multiplier(f, cyc)) < 1.0) {
        e.classification = SubhypClass::converges_to_attracting_cycle;
        return;
      }
      break;
    }

    // Any orbit self-approach within tol: sweep in order of real part.
    std::vector<std::size_t> order(z.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&z](std::size_t a, std::size_t b) {
      return z[a].real() < z[b].real();
    });
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        if (z[order[b]].real() - z[order[a]].real() >= tol) break;
        if (std::abs(z[order[b]] - z[order[a]]) < tol) {
          e.classification = SubhypClass::numerically_preperiodic;
          return;
        }
      }
    }

    if (gamma) {
      ManeOptions mo = options.mane;
      mo.n_iters = budget;
      const CorrespondenceRecord r = probe_orbit(f, e.value, e.kind, *gamma, mo);
      e.accumulation_score = r.accumulation_score;
      if (r.status == Correspondence::corresponds_likely) {
        e.classification = SubhypClass::recurrent_near_gamma;
        return;
      }
    }
    e.classification = SubhypClass::inconclusive;
  });
  for (const auto& e : report.entries)
    if (e.classification == SubhypClass::recurrent_near_gamma) ++report.recurrent_count;
  return report;
}

}  // namespace sflab
