#include "dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <sflab/brjuno.hpp>
#include <sflab/dynamics.hpp>
#include <sflab/errors.hpp>
#include <sflab/linearize.hpp>
#include <sflab/perturb.hpp>
#include <sflab/render.hpp>
#include <sflab/sf_function.hpp>
#include <sflab/version.hpp>

#include "parse.hpp"
#include "report.hpp"

namespace sflab::cli {
namespace {

constexpr std::size_t kAlphaDepth = 48;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------------ inputs

struct FunctionArgs {
  std::string map;
  std::string alpha;
  std::string multiplier;
  std::string P;
  std::string Q;
};

void add_function_options(CLI::App* sub, FunctionArgs& a, const std::string& map_flag = "--map") {
  sub->add_option(map_flag, a.map, "Named map: geyer (lambda z e^z), exp (lambda(e^z-1)), quadratic (lambda z + z^2/2)");
  sub->add_option("--alpha,--lambda", a.alpha, "Rotation number spec; lambda = exp(2 pi i alpha)");
  sub->add_option("--multiplier", a.multiplier, "Multiplier lambda as a complex literal");
  sub->add_option("--P", a.P, "Coefficients of P, ascending, comma separated");
  sub->add_option("--Q", a.Q, "Coefficients of Q, ascending, comma separated");
}

cplx build_lambda(const FunctionArgs& a) {
  if (!a.alpha.empty() && !a.multiplier.empty())
    throw UsageError("--alpha and --multiplier are mutually exclusive");
  if (!a.multiplier.empty()) return parse_complex(a.multiplier);
  return brjuno::rotation_to_lambda(parse_alpha(a.alpha.empty() ? "golden" : a.alpha, kAlphaDepth), 17);
}

SFFunction build_function(const FunctionArgs& a) {
  const cplx lambda = build_lambda(a);
  std::string map = a.map;
  if (!map.empty() && (!a.P.empty() || !a.Q.empty()))
    throw UsageError("a named map excludes --P/--Q");
  if (map.empty() && a.P.empty() && a.Q.empty()) map = "geyer";
  if (map == "geyer") return SFFunction(lambda, Polynomial({1.0, 1.0}), Polynomial({0.0, 1.0}));
  if (map == "exp") return SFFunction(lambda, Polynomial({1.0}), Polynomial({0.0, 1.0}));
  if (map == "quadratic") return SFFunction(lambda, Polynomial({1.0, 1.0 / lambda}), Polynomial());
  if (!map.empty()) throw UsageError("unknown map '" + map + "'");
  const Polynomial P = parse_polynomial(a.P.empty() ? "1" : a.P);
  const Polynomial Q = parse_polynomial(a.Q.empty() ? "0" : a.Q);
  return make_normalized(lambda, P, Q);
}

json function_json(const SFFunction& f) {
  json j;
  j["lambda"] = to_json(f.lambda());
  j["P"] = to_json(f.P());
  j["Q"] = to_json(f.Q());
  j["p"] = f.p();
  j["q"] = f.q();
  j["normalization_factor"] = to_json(f.normalization_factor());
  return j;
}

std::array<double, 4> parse_window(const std::string& s) {
  const auto v = parse_real_list(s);
  if (v.size() != 4) throw UsageError("window needs four numbers x0,x1,y0,y1");
  return {v[0], v[1], v[2], v[3]};
}

// ------------------------------------------------------------------ context

struct Context {
  std::vector<std::string> command_line;
  std::vector<std::string> effective;
  CLI::App* sub = nullptr;
  std::ostream* out = nullptr;
  std::string out_path;
  std::string manifest_path;

  json echo() const {
    json j;
    for (const CLI::Option* opt : sub->get_options()) {
      const auto& names = opt->get_lnames();
      if (names.empty() || names.front() == "help" || names.front() == "config") continue;
      if (opt->get_items_expected_max() == 0) {
        j[names.front()] = opt->count() > 0;
      } else if (opt->count() > 0) {
        std::string v;
        for (const auto& r : opt->results()) v += (v.empty() ? "" : " ") + r;
        j[names.front()] = v;
      } else {
        j[names.front()] = opt->get_default_str();
      }
    }
    return j;
  }

  json manifest_json() const { return manifest(command_line, effective, echo()); }

  json report(const std::string& kind) const {
    json j;
    j["schema"] = "sflab." + kind + "/" + std::to_string(kSchemaVersion);
    j["manifest"] = manifest_json();
    return j;
  }

  void write(const std::string& text) const {
    if (out_path.empty()) {
      *out << text;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + out_path + "'");
    f << text;
  }

  void write_json(const json& j) const { write(j.dump(2) + "\n"); }

  // CSV reports keep their manifest in a side file.
  void write_side_manifest(const std::string& kind) const {
    if (manifest_path.empty()) return;
    std::ofstream f(manifest_path, std::ios::binary);
    if (!f) throw UsageError("cannot open manifest file '" + manifest_path + "'");
    f << report(kind).dump(2) << "\n";
  }
};

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& c : cells) row += (row.empty() ? "" : ",") + c;
  return row + "\n";
}

std::string n(double x) { return csv_number(x); }

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
json nullable(const std::optional<double>& x) { return x ? nullable(*x) : json(nullptr); }

// ------------------------------------------------------------------ brjuno

struct BrjunoArgs {
  std::string alpha;
  std::size_t depth = 40;
  double tail_tol = 1e-9;
  std::size_t max_digits = 64;
  bool csv = false;
};

std::string big_string(const brjuno::BigInt& x, std::size_t max_digits) {
  const std::size_t d = brjuno::decimal_digits(x);
  if (d > max_digits) return "<" + std::to_string(d) + " digits>";
  return x.str();
}

void run_brjuno(const Context& ctx, const BrjunoArgs& a) {
  const auto cf = parse_alpha(a.alpha, a.depth);
  brjuno::BrjunoOptions opts;
  opts.tail_tol = a.tail_tol;
  const auto rep = brjuno::brjuno_partial_sums(cf, a.depth, opts);
  if (a.csv) {
    std::string s = csv_row({"n", "quotient", "q_digits", "term", "partial_sum"});
    for (std::size_t k = 0; k < rep.terms.size(); ++k) {
      const std::string quot = k < cf.partial_quotients.size() ? big_string(cf.partial_quotients[k], a.max_digits) : "capped";
      const std::string qd = k < cf.convergents.size() ? std::to_string(brjuno::decimal_digits(cf.convergents[k].q)) : "";
      s += csv_row({std::to_string(k), quot, qd, n(rep.terms[k]), n(rep.partial_sums[k])});
    }
    ctx.write(s);
    ctx.write_side_manifest("brjuno");
    return;
  }
  json j = ctx.report("brjuno");
  j["alpha"] = a.alpha;
  j["source"] = cf.source == brjuno::CfSource::exact_rational ? "exact-rational"
                : cf.source == brjuno::CfSource::decimal_approx ? "decimal-approx" : "preset";
  j["integer_part"] = cf.integer_part.str();
  json q = json::array();
  for (const auto& x : cf.partial_quotients) q.push_back(big_string(x, a.max_digits));
  j["quotients"] = q;
  j["capped_quotients"] = cf.capped_quotients;
  json conv = json::array();
  for (const auto& c : cf.convergents)
    conv.push_back({{"p", big_string(c.p, a.max_digits)}, {"q", big_string(c.q, a.max_digits)}});
  j["convergents"] = conv;
  j["terms"] = rep.terms;
  j["partial_sums"] = rep.partial_sums;
  j["last_gap"] = rep.terms.empty() ? json(nullptr) : nullable(rep.terms.back());
  j["tail_bound"] = nullable(rep.tail_bound);
  j["bounded_from"] = rep.bounded_from ? json(*rep.bounded_from) : json(nullptr);
  j["terminated"] = cf.terminated;
  j["truncated_by_precision"] = rep.truncated_by_precision;
  j["verdict"] = brjuno::to_string(rep.verdict);
  ctx.write_json(j);
}

// ------------------------------------------------------------------ inspect

void run_inspect(const Context& ctx, const FunctionArgs& fa) {
  const SFFunction f = build_function(fa);
  const SingularData sd = singular_data(f);
  json j = ctx.report("inspect");
  j["function"] = function_json(f);
  json cps = json::array();
  for (const auto& c : sd.critical_points) cps.push_back({{"z", to_json(c.location)}, {"multiplicity", c.multiplicity}});
  j["critical_points"] = cps;
  json cvs = json::array();
  for (const auto& v : sd.critical_values) cvs.push_back(to_json(v));
  j["critical_values"] = cvs;
  json avs = json::array();
  for (const auto& v : sd.asymptotic_values)
    avs.push_back({{"value", to_json(v.value)},
                   {"tract_direction", v.tract_direction},
                   {"radius", v.radius},
                   {"error", nullable(v.error)},
                   {"flagged", v.flagged}});
  j["asymptotic_values"] = avs;
  j["p_found"] = sd.p_found;
  j["q_found"] = sd.q_found;
  ctx.write_json(j);
}

// ------------------------------------------------------------------ orbit

struct OrbitArgs {
  std::string z0 = "0.1";
  std::size_t n_max = 1000;
  double escape_radius = 1e3;
  bool no_cycle_detect = false;
  bool csv = false;
};

void run_orbit(const Context& ctx, const FunctionArgs& fa, const OrbitArgs& a) {
  const SFFunction f = build_function(fa);
  IterateOptions opts;
  opts.n_max = a.n_max;
  opts.escape_radius = a.escape_radius;
  opts.detect_cycles = !a.no_cycle_detect;
  const OrbitRecord rec = iterate(f, parse_complex(a.z0), opts);
  if (a.csv) {
    std::string s = csv_row({"index", "re", "im", "abs"});
    for (std::size_t k = 0; k < rec.samples.size(); ++k)
      s += csv_row({std::to_string(k), n(rec.samples[k].real()), n(rec.samples[k].imag()), n(std::abs(rec.samples[k]))});
    ctx.write(s);
    ctx.write_side_manifest("orbit");
    return;
  }
  json j = ctx.report("orbit");
  j["function"] = function_json(f);
  json s = json::array();
  for (const auto& z : rec.samples) s.push_back(to_json(z));
  j["samples"] = s;
  j["escaped"] = rec.escaped;
  j["escape_index"] = rec.escape_index ? json(*rec.escape_index) : json(nullptr);
  j["final_status"] = to_string(rec.final_status);
  ctx.write_json(j);
}

// ------------------------------------------------------------------ cycles

struct CyclesArgs {
  int period = 1;
  std::string box = "-4,4,-4,4";
  int grid = 24;
  double tol = 1e-12;
  bool csv = false;
};

json cycle_json(const CycleRecord& c) {
  json pts = json::array();
  for (const auto& z : c.points) pts.push_back(to_json(z));
  return {{"period", c.period},
          {"points", pts},
          {"multiplier", to_json(c.multiplier)},
          {"abs_multiplier", std::abs(c.multiplier)},
          {"classification", to_string(c.classification)},
          {"rotation_number", nullable(c.rotation_number)},
          {"residual", c.residual}};
}

void run_cycles(const Context& ctx, const FunctionArgs& fa, const CyclesArgs& a) {
  const SFFunction f = build_function(fa);
  const auto w = parse_window(a.box);
  if (a.period < 1) throw UsageError("--period must be >= 1");
  if (a.grid < 1) throw UsageError("--grid must be >= 1");
  const auto cycles = find_periodic_points(f, a.period, Box{w[0], w[1], w[2], w[3]}, a.grid, a.tol);
  if (a.csv) {
    std::string s = csv_row({"cycle", "period", "index", "re", "im", "multiplier_re", "multiplier_im",
                             "abs_multiplier", "classification", "residual"});
    for (std::size_t c = 0; c < cycles.size(); ++c)
      for (std::size_t k = 0; k < cycles[c].points.size(); ++k)
        s += csv_row({std::to_string(c), std::to_string(cycles[c].period), std::to_string(k),
                      n(cycles[c].points[k].real()), n(cycles[c].points[k].imag()),
                      n(cycles[c].multiplier.real()), n(cycles[c].multiplier.imag()),
                      n(std::abs(cycles[c].multiplier)), to_string(cycles[c].classification),
                      n(cycles[c].residual)});
    ctx.write(s);
    ctx.write_side_manifest("cycles");
    return;
  }
  json j = ctx.report("cycles");
  j["function"] = function_json(f);
  j["period"] = a.period;
  json arr = json::array();
  for (const auto& c : cycles) arr.push_back(cycle_json(c));
  j["cycles"] = arr;
  ctx.write_json(j);
}

// ------------------------------------------------------------------ linearize / siegel

struct LinearizeArgs {
  std::string fixed_point = "0";
  int order = 100;
  int window = 0;
  int verify = 40;
  bool csv = false;
};

LinearizationSeries linearize(const SFFunction& f, cplx fp, int order, int window) {
  if (order < 2) throw UsageError("--order must be >= 2");
  if (window <= 0) window = std::max(1, order / 4);
  LinearizationSeries lin = schroeder(recenter(f, fp, order), order);
  if (order >= 2 * window) lin.radius_estimate = radius_estimate(lin, window);
  return lin;
}

void run_linearize(const Context& ctx, const FunctionArgs& fa, const LinearizeArgs& a) {
  const SFFunction f = build_function(fa);
  const cplx fp = parse_complex(a.fixed_point);
  const LinearizationSeries lin = linearize(f, fp, a.order, a.window);
  if (a.csv) {
    std::string s = csv_row({"n", "abs", "log_abs", "arg", "divisor_log"});
    for (int k = 1; k <= lin.order; ++k) {
      const ExtComplex c = lin.phi(k);
      const double la = c.log_abs();
      s += csv_row({std::to_string(k), n(std::exp(la)), n(la), n(std::arg(c.to_long())),
                    k >= 2 ? n(lin.divisor_log[static_cast<std::size_t>(k - 2)]) : ""});
    }
    ctx.write(s);
    ctx.write_side_manifest("linearize");
    return;
  }
  json j = ctx.report("linearize");
  j["function"] = function_json(f);
  j["fixed_point"] = to_json(fp);
  j["lambda"] = to_json(lin.lambda);
  j["order"] = lin.order;
  json coeffs = json::array();
  for (int k = 1; k <= lin.order; ++k) {
    const ExtComplex c = lin.phi(k);
    const double la = c.log_abs();
    coeffs.push_back({{"n", k}, {"abs", nullable(std::exp(la))}, {"log_abs", nullable(la)},
                      {"arg", static_cast<double>(std::arg(c.to_long()))}});
  }
  j["coefficients"] = coeffs;
  j["divisor_log"] = lin.divisor_log;
  j["radius_estimate"] = nullable(lin.radius_estimate);
  j["near_resonance"] = lin.near_resonance_flags;
  if (a.verify > 0) {
    const int N = std::min(a.verify, lin.order);
    j["conjugacy_residual"] = {{"N", N}, {"value", nullable(verify_conjugacy(recenter(f, fp, N), lin, N))}};
  }
  ctx.write_json(j);
}

struct SiegelArgs {
  LinearizeArgs lin{.order = 400};
  double fraction = 0.95;
  int samples = 256;
};

void run_siegel(const Context& ctx, const FunctionArgs& fa, const SiegelArgs& a) {
  const SFFunction f = build_function(fa);
  const cplx fp = parse_complex(a.lin.fixed_point);
  const LinearizationSeries lin = linearize(f, fp, a.lin.order, a.lin.window);
  if (!lin.radius_estimate) throw NumericalError("no finite radius detected; the series looks entire at this order");
  const auto pts = boundary_samples(lin, a.fraction, a.samples);
  if (a.lin.csv) {
    std::string s = csv_row({"k", "re", "im"});
    for (std::size_t k = 0; k < pts.size(); ++k)
      s += csv_row({std::to_string(k), n(pts[k].real() + fp.real()), n(pts[k].imag() + fp.imag())});
    ctx.write(s);
    ctx.write_side_manifest("siegel");
    return;
  }
  json j = ctx.report("siegel");
  j["function"] = function_json(f);
  j["fixed_point"] = to_json(fp);
  j["order"] = lin.order;
  j["radius_estimate"] = nullable(lin.radius_estimate);
  j["fraction"] = a.fraction;
  json arr = json::array();
  for (const auto& z : pts) arr.push_back(to_json(z + fp));
  j["samples"] = arr;
  ctx.write_json(j);
}

// ------------------------------------------------------------------ perturb / hartogs

struct PerturbArgs {
  std::string kind = "critical";
  std::string b_list = "0,0.05,0.1";
  int order = 10;
};

PerturbationFamily build_family(const FunctionArgs& fa, const std::string& kind) {
  FunctionArgs base = fa;
  if (base.map.empty() && base.P.empty() && base.Q.empty())
    base.map = kind == "singularity" ? "exp" : "geyer";
  return PerturbationFamily(build_function(base), parse_perturb_kind(kind));
}

json series_json(const TaylorSeries& s) {
  json a = json::array();
  for (const auto& c : s.coefficients) a.push_back(to_json(c));
  return a;
}

void run_perturb(const Context& ctx, const FunctionArgs& fa, const PerturbArgs& a) {
  const PerturbationFamily fam = build_family(fa, a.kind);
  if (a.order < 2) throw UsageError("--order must be >= 2");
  json j = ctx.report("perturb");
  j["kind"] = to_string(fam.kind());
  j["base"] = function_json(fam.base());
  json members = json::array();
  for (const cplx b : parse_complex_list(a.b_list)) {
    const RescaledMember m = rescaled_member(fam, b, a.order);
    const TaylorSeries h = remainder_h(fam, b, a.order);
    double hmax = 0.0;
    for (const auto& c : h.coefficients) hmax = std::max(hmax, std::abs(c));
    members.push_back({{"b", to_json(b)},
                       {"series", series_json(m.series)},
                       {"remainder", series_json(h)},
                       {"remainder_max_abs", hmax},
                       {"closed_form", {{"P", to_json(m.closed_form->P())}, {"Q", to_json(m.closed_form->Q())}}}});
  }
  j["order"] = a.order;
  j["members"] = members;
  ctx.write_json(j);
}

struct HartogsArgs {
  std::string kind = "critical";
  std::string b = "0";
  int period = 1;
  std::string window;
  std::vector<int> res{64, 64};
  bool csv = false;
};

void run_hartogs(const Context& ctx, const FunctionArgs& fa, const HartogsArgs& a) {
  const PerturbationFamily fam = build_family(fa, a.kind);
  const auto w = parse_window(a.window);
  if (a.period < 1) throw UsageError("--period must be >= 1");
  if (a.res.size() != 2 || a.res[0] < 1 || a.res[1] < 1) throw UsageError("--res needs two positive integers");
  const cplx b = parse_complex(a.b);
  const HartogsGrid g = hartogs_grid(fam, b, a.period, w[0], w[1], w[2], w[3], a.res[0], a.res[1]);
  if (a.csv) {
    std::string s = csv_row({"i", "j", "re_z", "im_z", "re_h", "im_h", "flag"});
    for (int row = 0; row < g.height; ++row)
      for (int col = 0; col < g.width; ++col) {
        const auto& c = g.cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(g.width) + static_cast<std::size_t>(col)];
        s += csv_row({std::to_string(col), std::to_string(row), n(c.z.real()), n(c.z.imag()), n(c.value.real()),
                      n(c.value.imag()), to_string(c.flag)});
      }
    ctx.write(s);
    ctx.write_side_manifest("hartogs");
    return;
  }
  json j = ctx.report("hartogs");
  j["kind"] = to_string(fam.kind());
  j["base"] = function_json(fam.base());
  j["b"] = to_json(b);
  j["period"] = a.period;
  j["window"] = {w[0], w[1], w[2], w[3]};
  j["resolution"] = {g.width, g.height};
  const RescaledMember m = rescaled_member(fam, b, 2);
  j["value_at_zero"] = to_json(hartogs_value(*m.closed_form, a.period, 0.0).value);
  json cells = json::array();
  for (const auto& c : g.cells) {
    const bool finite = c.flag == CellFlag::ok;
    cells.push_back({{"z", to_json(c.z)}, {"value", finite ? to_json(c.value) : json(nullptr)}, {"flag", to_string(c.flag)}});
  }
  j["cells"] = cells;
  ctx.write_json(j);
}

// ------------------------------------------------------------------ probes

struct GammaArgs {
  int order = 200;
  int window = 0;
  double fraction = 0.95;
  int samples = 256;
};

struct ProbeArgs {
  GammaArgs gamma;
  std::size_t iters = 100000;
  double eps = 1e-2;
  double burn_in = 0.1;
};

struct GammaInfo {
  std::vector<cplx> points;
  std::optional<double> radius;
};

GammaInfo build_gamma(const SFFunction& f, const GammaArgs& g) {
  const LinearizationSeries lin = linearize(f, 0.0, g.order, g.window);
  if (!lin.radius_estimate) throw NumericalError("no finite Siegel radius detected at this order");
  return {boundary_samples(lin, g.fraction, g.samples), lin.radius_estimate};
}

void add_gamma_options(CLI::App* sub, GammaArgs& g) {
  sub->add_option("--gamma-order", g.order, "Schroeder order for the boundary samples");
  sub->add_option("--gamma-window", g.window, "Root-test window (default order/4)");
  sub->add_option("--fraction", g.fraction, "Sample circle radius as a fraction of the radius estimate");
  sub->add_option("--samples", g.samples, "Number of boundary samples");
}

json gamma_json(const GammaArgs& g, const GammaInfo& info) {
  return {{"order", g.order}, {"radius_estimate", nullable(info.radius)}, {"fraction", g.fraction},
          {"size", info.points.size()}};
}

json record_json(const CorrespondenceRecord& r) {
  return {{"start", to_json(r.start)},
          {"kind", to_string(r.kind)},
          {"min_distance", nullable(r.min_distance)},
          {"accumulation_score", r.accumulation_score},
          {"status", to_string(r.status)},
          {"iterations", r.iterations}};
}

void run_probe(const Context& ctx, const FunctionArgs& fa, const ProbeArgs& a) {
  const SFFunction f = build_function(fa);
  const GammaInfo gamma = build_gamma(f, a.gamma);
  ManeOptions opts;
  opts.n_iters = a.iters;
  opts.eps = a.eps;
  opts.burn_in_fraction = a.burn_in;
  const CorrespondenceReport rep = mane_probe(f, gamma.points, opts);
  json j = ctx.report("probe-mane");
  j["function"] = function_json(f);
  j["gamma"] = gamma_json(a.gamma, gamma);
  j["eps"] = rep.eps;
  json recs = json::array();
  for (const auto& r : rep.records) recs.push_back(record_json(r));
  j["records"] = recs;
  ctx.write_json(j);
}

struct SubhypArgs {
  ProbeArgs probe;
  std::size_t budget = 10000;
  bool no_gamma = false;
};

void run_subhyp(const Context& ctx, const FunctionArgs& fa, const SubhypArgs& a) {
  const SFFunction f = build_function(fa);
  std::optional<std::vector<cplx>> gamma;
  std::optional<GammaInfo> info;
  if (!a.no_gamma) {
    info = build_gamma(f, a.probe.gamma);
    gamma = info->points;
  }
  SubhypOptions opts;
  opts.mane.n_iters = a.probe.iters;
  opts.mane.eps = a.probe.eps;
  opts.mane.burn_in_fraction = a.probe.burn_in;
  const SubhypReport rep = subhyperbolicity_report(f, a.budget, gamma, opts);
  json j = ctx.report("subhyp");
  j["function"] = function_json(f);
  j["gamma"] = info ? gamma_json(a.probe.gamma, *info) : json(nullptr);
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"value", to_json(e.value)},
                       {"kind", to_string(e.kind)},
                       {"classification", to_string(e.classification)},
                       {"accumulation_score", nullable(e.accumulation_score)}});
  j["entries"] = entries;
  j["recurrent_count"] = rep.recurrent_count;
  j["preperiodic_is_heuristic"] = rep.preperiodic_is_heuristic;
  ctx.write_json(j);
}

// ------------------------------------------------------------------ render

struct RenderArgs {
  std::string window;
  std::vector<int> res{256, 256};
  int max_iter = 100;
  double escape_radius = 1e3;
  std::string palette = "grayscale";
  std::string image = "sflab.pgm";
};

void run_render(const Context& ctx, const FunctionArgs& fa, const RenderArgs& a) {
  const SFFunction f = build_function(fa);
  const auto w = parse_window(a.window);
  if (a.res.size() != 2) throw UsageError("--res needs two integers");
  RenderConfig cfg;
  cfg.x0 = w[0], cfg.x1 = w[1], cfg.y0 = w[2], cfg.y1 = w[3];
  cfg.width = a.res[0];
  cfg.height = a.res[1];
  cfg.max_iter = a.max_iter;
  cfg.escape_radius = a.escape_radius;
  cfg.palette = parse_palette(a.palette);
  cfg.validate();
  const Image img = render_escape(f, cfg);
  {
    std::ofstream os(a.image, std::ios::binary);
    if (!os) throw UsageError("cannot open image file '" + a.image + "'");
    write_pgm(os, img);
  }
  json j = ctx.report("render");
  j["function"] = function_json(f);
  j["image"] = a.image;
  j["width"] = img.width;
  j["height"] = img.height;
  j["pixel_hash"] = "fnv1a64:" + hex64(fnv1a64({reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size()}));
  j["black_pixels"] = std::count(img.pixels.begin(), img.pixels.end(), 0);
  ctx.write_json(j);
}

// ------------------------------------------------------------------ config

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat key = value file; returns arguments for keys not already on the command line.
std::vector<std::string> config_args(const std::string& path, CLI::App* sub, const std::vector<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr || key == "config") throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    const bool present = std::any_of(given.begin(), given.end(), [&](const std::string& g) {
      return g == flag || g.rfind(flag + "=", 0) == 0;
    });
    if (present) continue;
    if (opt->get_items_expected_max() == 0) {
      if (value == "true" || value == "1" || value == "yes" || value == "on") out.push_back(flag);
      else if (!(value == "false" || value == "0" || value == "no" || value == "off"))
        throw UsageError(path + ":" + std::to_string(lineno) + ": '" + key + "' expects true or false");
      continue;
    }
    out.push_back(flag);
    std::istringstream tokens(value);
    for (std::string t; tokens >> t;) out.push_back(t);
  }
  return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sflab: numerical laboratory for structurally finite entire functions", "sflab"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sflab::kVersion));

  Context ctx;
  ctx.out = &out;
  std::string config_path;

  FunctionArgs fa;
  BrjunoArgs ba;
  OrbitArgs oa;
  CyclesArgs ca;
  LinearizeArgs la;
  SiegelArgs sa;
  PerturbArgs pa;
  HartogsArgs ha;
  ProbeArgs pra;
  SubhypArgs sha;
  RenderArgs ra;
  std::map<std::string, std::function<void()>> handlers;

  const auto common = [&](CLI::App* sub, bool json_flag) {
    sub->add_option("--out", ctx.out_path, "Write the report to this file instead of stdout");
    sub->add_option("--config", config_path, "Flat key = value file; command-line flags take precedence");
    if (json_flag) sub->add_flag("--json", "JSON report (default)");
  };
  const auto csv_capable = [&](CLI::App* sub, bool& csv) {
    sub->add_flag("--csv", csv, "CSV report instead of JSON");
    sub->add_option("--manifest", ctx.manifest_path, "With --csv, write the run manifest here");
  };

  {
    auto* s = app.add_subcommand("brjuno", "Continued fraction and Brjuno partial sums");
    s->add_option("--alpha", ba.alpha, "p/q, decimal, golden, silver, liouville[:G], or [a0;a1,...]")->required();
    s->add_option("--depth", ba.depth, "Number of partial quotients");
    s->add_option("--tail-tol", ba.tail_tol, "Tail tolerance for the convergent verdict");
    s->add_option("--max-digits", ba.max_digits, "Integers longer than this are abbreviated");
    common(s, true);
    csv_capable(s, ba.csv);
    handlers["brjuno"] = [&] { run_brjuno(ctx, ba); };
  }
  {
    auto* s = app.add_subcommand("inspect", "Critical points, critical values and asymptotic values");
    add_function_options(s, fa);
    common(s, true);
    handlers["inspect"] = [&] { run_inspect(ctx, fa); };
  }
  {
    auto* s = app.add_subcommand("orbit", "Forward orbit of one point");
    add_function_options(s, fa);
    s->add_option("--z0", oa.z0, "Start point");
    s->add_option("--n-max", oa.n_max, "Iteration budget");
    s->add_option("--escape-radius", oa.escape_radius, "Escape radius");
    s->add_flag("--no-cycle-detect", oa.no_cycle_detect, "Keep iterating after a cycle is detected");
    common(s, true);
    csv_capable(s, oa.csv);
    handlers["orbit"] = [&] { run_orbit(ctx, fa, oa); };
  }
  {
    auto* s = app.add_subcommand("cycles", "Periodic points of a given period in a box");
    add_function_options(s, fa);
    s->add_option("--period", ca.period, "Period n (cycles of every divisor are reported)");
    s->add_option("--box", ca.box, "Search box x0,x1,y0,y1");
    s->add_option("--grid", ca.grid, "Seeds per side");
    s->add_option("--tol", ca.tol, "Newton step tolerance");
    common(s, true);
    csv_capable(s, ca.csv);
    handlers["cycles"] = [&] { run_cycles(ctx, fa, ca); };
  }
  const auto lin_options = [&](CLI::App* s, LinearizeArgs& l) {
    s->add_option("--fixed-point", l.fixed_point, "Indifferent fixed point to linearize at");
    s->add_option("--order", l.order, "Number of Schroeder coefficients");
    s->add_option("--window", l.window, "Root-test window (default order/4)");
  };
  {
    auto* s = app.add_subcommand("linearize", "Schroeder coefficients and radius estimate");
    add_function_options(s, fa);
    lin_options(s, la);
    s->add_option("--verify", la.verify, "Conjugacy check order (0 disables)");
    common(s, true);
    csv_capable(s, la.csv);
    handlers["linearize"] = [&] { run_linearize(ctx, fa, la); };
  }
  {
    auto* s = app.add_subcommand("siegel", "Samples of an invariant curve inside the Siegel disk");
    add_function_options(s, fa);
    lin_options(s, sa.lin);
    s->add_option("--fraction", sa.fraction, "Fraction of the radius estimate");
    s->add_option("--samples", sa.samples, "Number of samples");
    common(s, true);
    csv_capable(s, sa.lin.csv);
    handlers["siegel"] = [&] { run_siegel(ctx, fa, sa); };
  }
  {
    auto* s = app.add_subcommand("perturb", "Rescaled family members F_b and remainders h");
    add_function_options(s, fa, "--base");
    s->add_option("--kind", pa.kind, "critical or singularity")->check(CLI::IsMember({"critical", "singularity"}));
    s->add_option("--b-list", pa.b_list, "Comma-separated parameters b");
    s->add_option("--order", pa.order, "Series order");
    common(s, true);
    handlers["perturb"] = [&] { run_perturb(ctx, fa, pa); };
  }
  {
    auto* s = app.add_subcommand("hartogs", "Grid of H(b,z) = z/(F_b^n(z) - z)");
    add_function_options(s, fa, "--base");
    s->add_option("--kind", ha.kind, "critical or singularity")->check(CLI::IsMember({"critical", "singularity"}));
    s->add_option("--b", ha.b, "Parameter b");
    s->add_option("--period", ha.period, "Iterate n");
    s->add_option("--window", ha.window, "x0,x1,y0,y1")->required();
    s->add_option("--res", ha.res, "Grid width and height")->expected(2);
    common(s, true);
    csv_capable(s, ha.csv);
    handlers["hartogs"] = [&] { run_hartogs(ctx, fa, ha); };
  }
  const auto probe_options = [&](CLI::App* s, ProbeArgs& p) {
    add_gamma_options(s, p.gamma);
    s->add_option("--iters", p.iters, "Orbit length");
    s->add_option("--eps", p.eps, "Accumulation radius");
    s->add_option("--burn-in", p.burn_in, "Discarded fraction of the orbit");
  };
  {
    auto* s = app.add_subcommand("probe-mane", "Accumulation of singular orbits on the Siegel boundary");
    add_function_options(s, fa);
    probe_options(s, pra);
    common(s, true);
    handlers["probe-mane"] = [&] { run_probe(ctx, fa, pra); };
  }
  {
    auto* s = app.add_subcommand("subhyp", "Orbit classification of singular values");
    add_function_options(s, fa);
    probe_options(s, sha.probe);
    s->add_option("--budget", sha.budget, "Iteration budget per singular value");
    s->add_flag("--no-gamma", sha.no_gamma, "Skip the Siegel boundary comparison");
    common(s, true);
    handlers["subhyp"] = [&] { run_subhyp(ctx, fa, sha); };
  }
  {
    auto* s = app.add_subcommand("render", "Escape-time PGM image");
    add_function_options(s, fa);
    s->add_option("--window", ra.window, "x0,x1,y0,y1")->required();
    s->add_option("--res", ra.res, "Width and height in pixels")->expected(2);
    s->add_option("--max-iter", ra.max_iter, "Iteration budget per pixel");
    s->add_option("--escape-radius", ra.escape_radius, "Escape radius");
    s->add_option("--palette", ra.palette, "grayscale or log-iteration")->check(CLI::IsMember({"grayscale", "log-iteration"}));
    s->add_option("--image", ra.image, "Output PGM path");
    common(s, true);
    handlers["render"] = [&] { run_render(ctx, fa, ra); };
  }

  std::vector<std::string> effective = args;
  try {
    // Config injection happens before CLI11 sees the arguments.
    auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
      return a == "--config" || a.rfind("--config=", 0) == 0;
    });
    if (it != args.end() && !args.empty()) {
      std::string path;
      std::vector<std::string> rest(args.begin(), it);
      if (*it == "--config") {
        if (it + 1 == args.end()) throw UsageError("--config needs a file name");
        path = *(it + 1);
        rest.insert(rest.end(), it + 2, args.end());
      } else {
        path = it->substr(9);
        rest.insert(rest.end(), it + 1, args.end());
      }
      CLI::App* sub = nullptr;
      for (auto* s : app.get_subcommands({})) {
        if (!rest.empty() && s->get_name() == rest.front()) sub = s;
      }
      if (sub == nullptr) throw UsageError("--config must follow a subcommand");
      const auto injected = config_args(path, sub, rest);
      effective.assign(rest.begin(), rest.begin() + 1);
      effective.insert(effective.end(), injected.begin(), injected.end());
      effective.insert(effective.end(), rest.begin() + 1, rest.end());
    }

    std::vector<std::string> reversed(effective.rbegin(), effective.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  ctx.sub = sub;
  ctx.command_line.push_back("sflab");
  ctx.command_line.insert(ctx.command_line.end(), args.begin(), args.end());
  ctx.effective = effective;
  try {
    handlers.at(sub->get_name())();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace sflab::cli
