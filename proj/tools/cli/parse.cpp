#include "parse.hpp"

#include <charconv>
#include <string>

#include <sflab/errors.hpp>

namespace sflab::cli {
namespace {

double parse_double(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw PreconditionError("malformed number in '" + std::string(whole) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

brjuno::BigInt parse_bigint(std::string_view s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
    throw PreconditionError("expected a nonnegative integer, got '" + std::string(s) + "'");
  return brjuno::BigInt(std::string(s));
}

}  // namespace

cplx parse_complex(std::string_view text) {
  if (text.empty()) throw PreconditionError("empty complex literal");
  if (text.back() != 'i' && text.back() != 'j') return {parse_double(text, text), 0.0};
  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  if (split_at == std::string_view::npos) {
    if (body.empty()) return {0.0, 1.0};
    return {0.0, parse_double(body, text)};
  }
  const std::string_view re = body.substr(0, split_at);
  if (re.empty()) throw PreconditionError("malformed complex literal '" + std::string(text) + "'");
  return {parse_double(re, text), parse_double(body.substr(split_at), text)};
}

std::vector<cplx> parse_complex_list(std::string_view text) {
  std::vector<cplx> out;
  for (const auto part : split(text, ',')) out.push_back(parse_complex(part));
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const auto part : split(text, ',')) {
    if (part.empty()) throw PreconditionError("empty entry in list '" + std::string(text) + "'");
    out.push_back(parse_double(part, text));
  }
  return out;
}

brjuno::ContinuedFraction parse_alpha(std::string_view spec, std::size_t depth) {
  using namespace brjuno;
  if (spec.empty()) throw PreconditionError("empty alpha spec");
  if (spec == "golden") return preset({PresetKind::golden}, depth);
  if (spec == "silver") return preset({PresetKind::silver}, depth);
  if (spec.substr(0, 9) == "liouville") {
    Preset p{PresetKind::liouville_demo, 2};
    if (spec.size() > 9) {
      if (spec[9] != ':') throw PreconditionError("expected liouville:G");
      const auto g = parse_bigint(spec.substr(10));
      if (g < 2 || g > 1000) throw PreconditionError("liouville growth must lie in [2, 1000]");
      p.growth = g.convert_to<unsigned>();
    }
    return preset(p, depth);
  }
  if (spec.front() == '[') {
    if (spec.back() != ']') throw PreconditionError("continued fraction spec must end with ']'");
    std::string_view body = spec.substr(1, spec.size() - 2);
    const std::size_t semi = body.find(';');
    const BigInt a0 = parse_bigint(body.substr(0, semi));
    std::vector<BigInt> q;
    bool repeat = false;
    if (semi != std::string_view::npos) {
      for (const auto part : split(body.substr(semi + 1), ',')) {
        if (part == "...") {
          repeat = true;
          continue;
        }
        if (repeat) throw PreconditionError("'...' must close the quotient list");
        q.push_back(parse_bigint(part));
      }
    }
    for (const auto& a : q)
      if (a == 0) throw PreconditionError("partial quotients must be positive");
    if (repeat) {
      if (q.empty()) throw PreconditionError("'...' needs a quotient to repeat");
      while (q.size() < depth) q.push_back(q.back());
    }
    if (q.size() > depth) q.resize(depth);
    return from_quotients(a0, q);
  }
  const std::size_t slash = spec.find('/');
  if (slash != std::string_view::npos) {
    const BigInt num = parse_bigint(spec.substr(0, slash));
    const BigInt den = parse_bigint(spec.substr(slash + 1));
    if (den == 0) throw PreconditionError("zero denominator in alpha spec");
    return expand(Rational{num, den}, depth);
  }
  return expand_decimal(spec, depth);
}

Polynomial parse_polynomial(std::string_view text) {
  return Polynomial::trimmed(parse_complex_list(text));
}

}  // namespace sflab::cli
