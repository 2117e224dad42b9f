#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sflab::brjuno {

using BigInt = boost::multiprecision::cpp_int;

enum class CfSource { exact_rational, decimal_approx, preset };

struct Convergent {
  BigInt p;
  BigInt q;
};

/// Continued fraction [a0; a1, a2, ...] of a rotation number with exact
/// convergents.
///
/// convergents[n] = p_n/q_n for n = 0..partial_quotients.size(), with
/// p_0/q_0 = a0/1.  Quotients that are too large to hold (the Liouville-type
/// preset past its size cap) are not stored; `capped_quotients` counts them and
/// each contributes a Brjuno term of at least `capped_term_bound`.
struct ContinuedFraction {
  BigInt integer_part;
  std::vector<BigInt> partial_quotients;
  std::vector<Convergent> convergents;
  CfSource source = CfSource::exact_rational;
  bool terminated = false;
  bool truncated_by_precision = false;
  std::size_t capped_quotients = 0;
  double capped_term_bound = 0.0;

  /// Number of partial quotients represented, stored or capped.
  std::size_t length() const { return partial_quotients.size() + capped_quotients; }
};

struct Rational {
  BigInt num;
  BigInt den;
};

/// Builds a continued fraction from explicit quotients a1..ak.
ContinuedFraction from_quotients(const BigInt& integer_part,
                                 const std::vector<BigInt>& quotients,
                                 CfSource source = CfSource::preset);

/// Euclidean expansion of an exact rational; stops after `depth` quotients or
/// when the expansion terminates (flagged).
ContinuedFraction expand(const Rational& alpha, std::size_t depth);

/// Expansion of a decimal literal such as "0.4142135623730950488".
///
/// The literal is read as the interval of half a unit in its last digit (or in
/// digit `precision_digits` when given); quotients are emitted only while both
/// interval ends agree, so nothing past the input precision is invented.
ContinuedFraction expand_decimal(std::string_view literal, std::size_t depth,
                                 std::optional<int> precision_digits = std::nullopt);

enum class PresetKind { golden, silver, liouville_demo };

struct Preset {
  PresetKind kind = PresetKind::golden;
  unsigned growth = 2;  // liouville_demo only: a_{n+1} = growth^{q_n}
};

/// Largest decimal size of a stored denominator for the Liouville preset.
inline constexpr std::size_t kLiouvilleDigitCap = 1'000'000;

ContinuedFraction preset(const Preset& which, std::size_t depth);

enum class Verdict { convergent_likely, divergent_likely, inconclusive, rational };

std::string to_string(Verdict v);

struct BrjunoOptions {
  double tail_tol = 1e-9;
  std::size_t divergence_window = 10;
  /// Terms over the divergence window must stay above this floor.
  double divergence_floor = 0.1;
};

struct BrjunoReport {
  std::vector<double> terms;         // log q_{n+1} / q_n
  std::vector<double> partial_sums;  // running sums of `terms`
  Verdict verdict = Verdict::inconclusive;
  std::size_t depth = 0;
  /// Index of the first term that is a lower bound rather than a value.
  std::optional<std::size_t> bounded_from;
  bool truncated_by_precision = false;
  /// Certified remainder bound when a geometric tail was observed.
  std::optional<double> tail_bound;
};

/// Partial sums of sum_{n>=0} log(q_{n+1}) / q_n and a numerical verdict.
BrjunoReport brjuno_partial_sums(const ContinuedFraction& cf, std::size_t depth,
                                 const BrjunoOptions& options = {});

/// Last exact convergent p/q.
Rational to_rational(const ContinuedFraction& cf);

/// Fractional part of the last exact convergent as a long double.
long double rotation_number(const ContinuedFraction& cf);

/// lambda = exp(2 pi i alpha) with alpha taken from the convergents.
std::complex<double> rotation_to_lambda(const ContinuedFraction& cf, int precision = 17);

/// Natural log of a positive big integer.
double log_big(const BigInt& x);

/// Decimal digits of a nonnegative big integer.
std::size_t decimal_digits(const BigInt& x);

}  // namespace sflab::brjuno
