#include "sflab/brjuno.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "sflab/errors.hpp"

namespace sflab::brjuno {
namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt pow10(std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= 10;
  return r;
}

void push_quotient(ContinuedFraction& cf, const BigInt& a) {
  const auto n = cf.convergents.size();
  const BigInt p_prev2 = n >= 2 ? cf.convergents[n - 2].p : BigInt(1);
  const BigInt q_prev2 = n >= 2 ? cf.convergents[n - 2].q : BigInt(0);
  const Convergent& last = cf.convergents.back();
  cf.convergents.push_back({a * last.p + p_prev2, a * last.q + q_prev2});
  cf.partial_quotients.push_back(a);
}

void start(ContinuedFraction& cf, const BigInt& a0, CfSource source) {
  cf.integer_part = a0;
  cf.source = source;
  cf.convergents.push_back({a0, BigInt(1)});
}

// (cos 2 pi x, sin 2 pi x) with exact values at quarter turns.
std::complex<long double> unit_turn(long double x) {
  x -= std::floor(x);
  const long double quarter = std::nearbyint(4.0L * x);
  const long double y = x - quarter / 4.0L;
  const long double angle = 2.0L * std::numbers::pi_v<long double> * y;
  const long double c = std::cos(angle);
  const long double s = std::sin(angle);
  switch (static_cast<int>(quarter) % 4) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

}  // namespace

double log_big(const BigInt& x) {
  if (x <= 0) throw PreconditionError("log_big: argument must be positive");
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 900) return std::log(x.convert_to<double>());
  const auto shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) +
         static_cast<double>(shift) * std::numbers::ln2;
}

std::size_t decimal_digits(const BigInt& x) {
  if (x == 0) return 1;
  const BigInt a = x < 0 ? BigInt(-x) : x;
  const auto bits = boost::multiprecision::msb(a);
  if (bits < 4096) return a.str().size();
  return static_cast<std::size_t>(static_cast<double>(bits) * 0.30102999566398120) + 1;
}

ContinuedFraction from_quotients(const BigInt& integer_part,
                                 const std::vector<BigInt>& quotients,
                                 CfSource source) {
  ContinuedFraction cf;
  start(cf, integer_part, source);
  for (const auto& a : quotients) {
    if (a <= 0) throw PreconditionError("partial quotients must be positive");
    push_quotient(cf, a);
  }
  return cf;
}

ContinuedFraction expand(const Rational& alpha, std::size_t depth) {
  if (depth < 1) throw PreconditionError("expand: depth must be >= 1");
  if (alpha.den == 0) throw PreconditionError("expand: zero denominator");
  BigInt num = alpha.den < 0 ? BigInt(-alpha.num) : alpha.num;
  BigInt den = alpha.den < 0 ? BigInt(-alpha.den) : alpha.den;

  ContinuedFraction cf;
  BigInt a = floor_div(num, den);
  start(cf, a, CfSource::exact_rational);
  BigInt rem = num - a * den;
  while (rem != 0 && cf.partial_quotients.size() < depth) {
    num = den;
    den = rem;
    a = num / den;
    rem = num - a * den;
    push_quotient(cf, a);
  }
  cf.terminated = rem == 0;
  return cf;
}

ContinuedFraction expand_decimal(std::string_view literal, std::size_t depth,
                                 std::optional<int> precision_digits) {
  if (depth < 1) throw PreconditionError("expand_decimal: depth must be >= 1");
  std::size_t i = 0;
  bool negative = false;
  if (i < literal.size() && (literal[i] == '+' || literal[i] == '-')) {
    negative = literal[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < literal.size(); ++i) {
    const char c = literal[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else {
      throw PreconditionError("malformed decimal literal: " + std::string(literal));
    }
  }
  if (!any_digit) throw PreconditionError("malformed decimal literal: " + std::string(literal));
  if (negative) digits = -digits;

  const std::size_t precision =
      precision_digits ? static_cast<std::size_t>(std::max(*precision_digits, 0)) : frac_digits;
  const std::size_t scale = std::max(frac_digits, precision);
  const BigInt centre = 2 * digits * pow10(scale - frac_digits);
  const BigInt half_width = pow10(scale - precision);

  BigInt lo_num = centre - half_width;
  BigInt hi_num = centre + half_width;
  BigInt lo_den = 2 * pow10(scale);
  BigInt hi_den = lo_den;

  ContinuedFraction cf;
  BigInt a_lo = floor_div(lo_num, lo_den);
  BigInt a_hi = floor_div(hi_num, hi_den);
  if (a_lo != a_hi) {
    // Integer part itself is uncertain; report the centre's floor.
    start(cf, floor_div(centre, lo_den), CfSource::decimal_approx);
    cf.truncated_by_precision = true;
    return cf;
  }
  start(cf, a_lo, CfSource::decimal_approx);
  while (cf.partial_quotients.size() < depth) {
    const BigInt r_lo = lo_num - a_lo * lo_den;
    const BigInt r_hi = hi_num - a_hi * hi_den;
    if (r_lo == 0 || r_hi == 0) {
      cf.truncated_by_precision = true;
      break;
    }
    lo_num = lo_den;
    lo_den = r_lo;
    hi_num = hi_den;
    hi_den = r_hi;
    a_lo = lo_num / lo_den;
    a_hi = hi_num / hi_den;
    if (a_lo != a_hi) {
      cf.truncated_by_precision = true;
      break;
    }
    push_quotient(cf, a_lo);
  }
  return cf;
}

ContinuedFraction preset(const Preset& which, std::size_t depth) {
  if (depth < 1) throw PreconditionError("preset: depth must be >= 1");
  ContinuedFraction cf;
  start(cf, BigInt(0), CfSource::preset);
  switch (which.kind) {
    case PresetKind::golden:
      for (std::size_t n = 0; n < depth; ++n) push_quotient(cf, BigInt(1));
      break;
    case PresetKind::silver:
      for (std::size_t n = 0; n < depth; ++n) push_quotient(cf, BigInt(2));
      break;
    case PresetKind::liouville_demo: {
      if (which.growth < 2) throw PreconditionError("liouville_demo growth must be >= 2");
      const double log10_g = std::log10(static_cast<double>(which.growth));
      push_quotient(cf, BigInt(1));
      while (cf.length() < depth) {
        const BigInt& q = cf.convergents.back().q;
        const double digits_of_a = q.convert_to<double>() * log10_g;
        const double digits_of_next_q =
            digits_of_a + static_cast<double>(decimal_digits(q)) + 1.0;
        if (cf.capped_quotients > 0 || digits_of_next_q > static_cast<double>(kLiouvilleDigitCap)) {
          ++cf.capped_quotients;
          continue;
        }
        push_quotient(cf, boost::multiprecision::pow(BigInt(which.growth),
                                                     q.convert_to<unsigned>()));
      }
      if (cf.capped_quotients > 0) cf.capped_term_bound = std::log(static_cast<double>(which.growth));
      break;
    }
  }
  return cf;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent_likely: return "convergent-likely";
    case Verdict::divergent_likely: return "divergent-likely";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::rational: return "rational";
  }
  return "inconclusive";
}

BrjunoReport brjuno_partial_sums(const ContinuedFraction& cf, std::size_t depth,
                                 const BrjunoOptions& options) {
  if (depth < 1) throw PreconditionError("brjuno_partial_sums: depth must be >= 1");
  BrjunoReport report;
  report.truncated_by_precision = cf.truncated_by_precision;
  if (cf.terminated) {
    report.verdict = Verdict::rational;
    return report;
  }

  const std::size_t n_terms = std::min(depth, cf.length());
  const std::size_t exact = cf.partial_quotients.size();
  double sum = 0.0;
  for (std::size_t n = 0; n < n_terms; ++n) {
    double term = 0.0;
    if (n + 1 <= exact) {
      term = log_big(cf.convergents[n + 1].q) / cf.convergents[n].q.convert_to<double>();
    } else {
      if (!report.bounded_from) report.bounded_from = n;
      term = cf.capped_term_bound;
    }
    report.terms.push_back(term);
    sum += term;
    report.partial_sums.push_back(sum);
  }
  report.depth = n_terms;

  const auto& t = report.terms;
  const std::size_t w = options.divergence_window;
  if (w >= 2 && t.size() >= w) {
    const auto first = t.end() - static_cast<std::ptrdiff_t>(w);
    const double lo = *std::min_element(first, t.end());
    if (lo >= options.divergence_floor && t.back() >= 0.5 * *first) {
      report.verdict = Verdict::divergent_likely;
      return report;
    }
  }

  if (t.size() >= 4 && !report.bounded_from) {
    // Observed decay ratio over the last few terms.
    const std::size_t k = std::min<std::size_t>(5, t.size() - 1);
    double ratio = 0.0;
    bool decaying = true;
    for (std::size_t i = t.size() - k; i < t.size(); ++i) {
      if (t[i - 1] <= 0.0) {
        decaying = false;
        break;
      }
      ratio = std::max(ratio, t[i] / t[i - 1]);
    }
    if (decaying && ratio < 1.0) {
      report.tail_bound = t.back() * ratio / (1.0 - ratio);
      if (t.back() < options.tail_tol && *report.tail_bound < options.tail_tol) {
        report.verdict = Verdict::convergent_likely;
        return report;
      }
    }
  }
  report.verdict = Verdict::inconclusive;
  return report;
}

Rational to_rational(const ContinuedFraction& cf) {
  const Convergent& c = cf.convergents.back();
  return {c.p, c.q};
}

long double rotation_number(const ContinuedFraction& cf) {
  const Convergent& c = cf.convergents.back();
  BigInt r = c.p % c.q;
  if (r < 0) r += c.q;
  constexpr unsigned kBits = 80;
  const BigInt scaled = (r << kBits) / c.q;
  return std::ldexp(scaled.convert_to<long double>(), -static_cast<int>(kBits));
}

std::complex<double> rotation_to_lambda(const ContinuedFraction& cf, int precision) {
  if (precision < 15) throw PreconditionError("rotation_to_lambda: precision must be >= 15");
  const auto z = unit_turn(rotation_number(cf));
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace sflab::brjuno
