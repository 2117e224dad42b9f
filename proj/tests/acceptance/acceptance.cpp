// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <sflab/brjuno.hpp>
#include <sflab/dynamics.hpp>
#include <sflab/linearize.hpp>
#include <sflab/perturb.hpp>
#include <sflab/sf_function.hpp>

using namespace sflab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const double kGoldenAlpha = (std::sqrt(5.0) - 1.0) / 2.0;
const cplx kGolden = std::polar(1.0, 2.0 * std::numbers::pi * kGoldenAlpha);

SFFunction quadratic(cplx lambda) { return SFFunction(lambda, Polynomial({1.0, 1.0 / lambda}), Polynomial()); }
SFFunction geyer(cplx lambda) { return SFFunction(lambda, Polynomial({1.0, 1.0}), Polynomial({0.0, 1.0})); }
SFFunction expo(cplx lambda) { return SFFunction(lambda, Polynomial({1.0}), Polynomial({0.0, 1.0})); }

// ----------------------------------------------------------------------------

Outcome brjuno_arithmetic() {
  using namespace brjuno;
  Outcome o;
  const auto golden = brjuno_partial_sums(preset({PresetKind::golden}, 40), 40);
  const double gap = golden.partial_sums.back() - golden.partial_sums[golden.partial_sums.size() - 2];
  o.require(golden.verdict == Verdict::convergent_likely, "golden(40) verdict " + to_string(golden.verdict));
  o.require(gap < 1e-9, "golden(40) last gap " + fmt(gap) + " < 1e-9");

  const auto liou = brjuno_partial_sums(preset({PresetKind::liouville_demo, 2}, 12), 12);
  o.require(liou.verdict == Verdict::divergent_likely, "liouville(2,12) verdict " + to_string(liou.verdict));

  std::mt19937_64 rng(1);
  bool exact = true;
  for (int t = 0; t < 100; ++t) {
    BigInt num = rng(), den = rng();
    num = (num << 64) + rng();
    den = (den << 64) + rng() + 1;
    const Rational r = to_rational(expand(Rational{num, den}, 100'000));
    const BigInt g = boost::multiprecision::gcd(num, den);
    exact = exact && r.num == num / g && r.den == den / g;
  }
  o.require(exact, "100 rational round trips bit-exact");
  return o;
}

Outcome closed_forms() {
  Outcome o;
  const SFFunction g = geyer(kGolden), e = expo(kGolden);
  double eg = 0, ee = 0, ed = 0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const cplx z(-2.0 + 0.2 * i, -2.0 + 0.2 * j);
      const cplx gv = kGolden * z * std::exp(z), ev = kGolden * (std::exp(z) - 1.0);
      if (gv != cplx{}) eg = std::max(eg, std::abs(g.evaluate(z) - gv) / std::abs(gv));
      if (ev != cplx{}) ee = std::max(ee, std::abs(e.evaluate(z) - ev) / std::abs(ev));
      const double h = 1e-5;
      for (const SFFunction* f : {&g, &e}) {
        const cplx fd = (f->evaluate(z + h) - f->evaluate(z - h)) / (2 * h);
        ed = std::max(ed, std::abs(fd - f->derivative(z)) / std::max(1.0, std::abs(f->derivative(z))));
      }
    }
  o.require(eg < 1e-11, "Geyer rel err " + fmt(eg));
  o.require(ee < 1e-11, "E rel err " + fmt(ee));
  o.require(ed < 1e-5, "derivative vs finite differences " + fmt(ed));
  return o;
}

Outcome singular_counts() {
  Outcome o;
  std::mt19937 rng(20);
  std::uniform_real_distribution<double> r01(0.0, 1.0), th(0.0, 2.0 * std::numbers::pi);
  const auto disk = [&] { return std::polar(std::sqrt(r01(rng)), th(rng)); };
  const auto lead = [&] { return std::polar(0.5 + 0.5 * r01(rng), th(rng)); };
  int good = 0;
  for (int t = 0; t < 20; ++t) {
    const int p = static_cast<int>(rng() % 4), q = static_cast<int>(rng() % 4);
    std::vector<cplx> P(static_cast<std::size_t>(p) + 1), Q(static_cast<std::size_t>(q) + 1);
    P[0] = 1.0;
    for (int k = 1; k <= p; ++k) P[static_cast<std::size_t>(k)] = k == p ? lead() : disk();
    for (int k = 1; k <= q; ++k) Q[static_cast<std::size_t>(k)] = k == q ? lead() : disk();
    const SingularData sd = singular_data(SFFunction(kGolden, Polynomial(P), Polynomial(Q)));
    int mult = 0;
    for (const auto& c : sd.critical_points) mult += c.multiplicity;
    if (mult == p && sd.asymptotic_values.size() == static_cast<std::size_t>(q)) ++good;
  }
  o.require(good == 20, std::to_string(good) + "/20 instances with exact counts");
  return o;
}

Outcome schroeder_correctness() {
  Outcome o;
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int k = 0; k < 10; ++k) {
    const cplx lambda = std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
    const cplx a = std::polar(0.1 + u(rng), 2.0 * std::numbers::pi * u(rng));
    const SFFunction f(lambda, Polynomial({1.0, 2.0 * a / lambda}), Polynomial());
    const LinearizationSeries lin = schroeder(recenter(f, 0.0, 2), 2);
    const cplx want = a / (lambda * lambda - lambda);
    worst = std::max(worst, std::abs(lin.phi(2).to_complex() - want) / std::abs(want));
  }
  o.require(worst < 1e-14, "phi_2 identity rel err " + fmt(worst));
  for (const auto& [name, f] : {std::pair{"quadratic", quadratic(kGolden)}, std::pair{"Geyer", geyer(kGolden)}}) {
    const TaylorSeries local = recenter(f, 0.0, 40);
    const double res = verify_conjugacy(local, schroeder(local, 40), 40);
    o.require(res < 1e-9, std::string(name) + " N=40 residual " + fmt(res));
  }
  return o;
}

Outcome radius_behavior() {
  Outcome o;
  const auto radius = [](cplx lambda, int N) {
    const LinearizationSeries lin = schroeder(recenter(quadratic(lambda), 0.0, N), N);
    return radius_estimate(lin, 50);
  };
  const auto r200 = radius(kGolden, 200), r400 = radius(kGolden, 400);
  if (!r200 || !r400) {
    o.require(false, "golden radius estimate missing");
    return o;
  }
  const double drift = std::abs(*r200 - *r400) / *r400;
  o.require(drift <= 0.05, "golden r200=" + fmt(*r200) + " r400=" + fmt(*r400) + " drift " + fmt(drift));

  std::vector<brjuno::BigInt> q{1, 1, 1, 1000000};
  while (q.size() < 48) q.emplace_back(1);
  const cplx bad = brjuno::rotation_to_lambda(brjuno::from_quotients(0, q));
  for (const int N : {200, 400}) {
    const auto rb = radius(bad, N);
    const auto rg = N == 200 ? r200 : r400;
    o.require(rb && 10.0 * *rb <= *rg, "CF [1,1,1,1e6,...] N=" + std::to_string(N) + " r=" + (rb ? fmt(*rb) : "none"));
  }
  return o;
}

Outcome perturbation_limits() {
  Outcome o;
  const PerturbationFamily crit(geyer(kGolden), PerturbKind::critical);
  const PerturbationFamily sing(expo(kGolden), PerturbKind::singularity);
  const RescaledMember c0 = rescaled_member(crit, 0.0, 10);
  bool exact_c = c0.series.coefficient(0) == cplx{} && c0.series.coefficient(1) == kGolden && c0.series.coefficient(2) == cplx(0.5);
  for (int k = 3; k <= 10; ++k) exact_c = exact_c && c0.series.coefficient(k) == cplx{};
  o.require(exact_c, "F_0 = lambda z + z^2/2 exactly");

  const RescaledMember s0 = rescaled_member(sing, 0.0, 10);
  double fact = 1.0, serr = 0.0;
  for (int k = 1; k <= 10; ++k) {
    fact *= k;
    serr = std::max(serr, std::abs(s0.series.coefficient(k) - kGolden / fact) / std::abs(kGolden / fact));
  }
  o.require(s0.series.coefficient(0) == cplx{} && serr <= 2e-16, "F_0 = lambda(e^z - 1) coefficients, rel err " + fmt(serr));

  for (const auto* fam : {&crit, &sing}) {
    const auto maxabs = [&](double b) {
      const TaylorSeries h = remainder_h(*fam, b, 10);
      double m = 0;
      for (const auto& c : h.coefficients) m = std::max(m, std::abs(c));
      return m;
    };
    const double ratio = maxabs(0.2) / maxabs(0.1);
    o.require(ratio >= 1.6 && ratio <= 2.4, to_string(fam->kind()) + " remainder ratio " + fmt(ratio));
  }

  double herr = 0.0;
  for (const auto* fam : {&crit, &sing})
    for (const double b : {0.0, 0.1, 1.0})
      for (int n = 1; n <= 4; ++n) {
        const HartogsGrid g = hartogs_grid(*fam, b, n, -1, 1, -1, 1, 3, 3);
        herr = std::max(herr, std::abs(g.cells[4].value - 1.0 / (std::pow(kGolden, n) - 1.0)));
      }
  o.require(herr < 1e-13, "H(b,0) = 1/(lambda^n - 1) err " + fmt(herr));
  return o;
}

Outcome dynamics_checks() {
  Outcome o;
  const SFFunction q = quadratic(kGolden);
  double worst = 0.0;
  std::size_t count = 0;
  for (const SFFunction* f : {&q}) {
    for (int n = 1; n <= 3; ++n)
      for (const auto& c : find_periodic_points(*f, n, Box{-4, 4, -4, 4}, 20, 1e-13)) {
        worst = std::max(worst, c.residual);
        ++count;
      }
  }
  const SFFunction g = geyer(kGolden);
  for (int n = 1; n <= 2; ++n)
    for (const auto& c : find_periodic_points(g, n, Box{-3, 3, -3, 3}, 16, 1e-13)) {
      worst = std::max(worst, c.residual);
      ++count;
    }
  o.require(count > 0 && worst < 1e-10, std::to_string(count) + " cycles, max residual " + fmt(worst));

  const auto fixed = find_periodic_points(q, 1, Box{-4, 4, -4, 4}, 16, 1e-13);
  const cplx other = 2.0 * (1.0 - kGolden);
  bool has0 = false, has1 = false;
  for (const auto& c : fixed) {
    has0 = has0 || std::abs(c.points[0]) < 1e-10;
    has1 = has1 || std::abs(c.points[0] - other) < 1e-10;
  }
  o.require(fixed.size() == 2 && has0 && has1, "fixed points {0, 2(1-lambda)}");

  const double m = std::abs(2.0 - kGolden);
  double rel = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const ExpansionResult r = expansion_metric(q, {other}, n);
    rel = std::max(rel, std::abs(r.value - std::pow(m, n)) / std::pow(m, n));
  }
  o.require(rel < 1e-12, "expansion |m|^n rel err " + fmt(rel));
  return o;
}

Outcome mane_probe_check() {
  Outcome o;
  const auto gamma_of = [](const SFFunction& f) {
    LinearizationSeries lin = schroeder(recenter(f, 0.0, 200), 200);
    lin.radius_estimate = radius_estimate(lin, 50);
    return boundary_samples(lin, 0.95, 256);
  };
  ManeOptions opts;
  opts.n_iters = 100'000;
  opts.eps = 1e-2;
  const SFFunction q = quadratic(kGolden);
  const CorrespondenceReport rq = mane_probe(q, gamma_of(q), opts);
  const double score = rq.records.empty() ? 0.0 : rq.records[0].accumulation_score;
  o.require(score > 0.9, "golden quadratic critical orbit score " + fmt(score));

  const SFFunction e = expo(kGolden);
  const CorrespondenceReport re = mane_probe(e, gamma_of(e), opts);
  bool finite = !re.records.empty();
  for (const auto& r : re.records)
    finite = finite && std::isfinite(r.accumulation_score) && std::isfinite(r.min_distance);
  o.require(finite, "E report finite (" + std::to_string(re.records.size()) + " records, score " +
                        (re.records.empty() ? "n/a" : fmt(re.records[0].accumulation_score)) + ")");
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "sflab_acceptance";
  std::filesystem::create_directories(dir);
  const std::string exe = SFLAB_EXE;
  const auto sh = [&](const std::string& args, const std::filesystem::path& out) {
    const std::string cmd = "\"" + exe + "\" " + args + " > \"" + out.string() + "\"";
    return std::system(cmd.c_str());
  };
  const auto strip = [](const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    j["manifest"].erase("timestamp");
    return j.dump();
  };
  const std::string render = "render --map quadratic --window=-2,2,-2,2 --res 64 64 --max-iter 100 --image \"" +
                             (dir / "img.pgm").string() + "\"";
  bool ok = sh(render, dir / "r1.json") == 0;
  const std::string img1 = slurp(dir / "img.pgm");
  ok = ok && sh(render, dir / "r2.json") == 0;
  const std::string img2 = slurp(dir / "img.pgm");
  o.require(ok && !img1.empty() && img1 == img2, "render PGM byte-identical (" + std::to_string(img1.size()) + " bytes)");

  bool same = ok && strip(slurp(dir / "r1.json")) == strip(slurp(dir / "r2.json"));
  for (const std::string args : {"brjuno --alpha golden --depth 40", "inspect --map geyer",
                                 "linearize --map quadratic --order 100", "hartogs --b 0.1 --window=-1,1,-1,1 --res 8 8"}) {
    const bool run = sh(args, dir / "a.json") == 0 && sh(args, dir / "b.json") == 0;
    same = same && run && strip(slurp(dir / "a.json")) == strip(slurp(dir / "b.json"));
  }
  o.require(same, "JSON reports identical without timestamp");
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Brjuno arithmetic", 1.0, brjuno_arithmetic},
      {2, "Closed-form oracles", 5.0, closed_forms},
      {3, "Singular counts", 30.0, singular_counts},
      {4, "Schroeder correctness", 10.0, schroeder_correctness},
      {5, "Radius behavior", 60.0, radius_behavior},
      {6, "Perturbation limits", 10.0, perturbation_limits},
      {7, "Dynamics", 10.0, dynamics_checks},
      {8, "Mane probe", 120.0, mane_probe_check},
      {9, "Determinism", 10.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      out.pass = false;
      out.detail += "; FAILED runtime limit " + fmt(c.limit_s) + " s";
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d %-22s %7.3f s  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
