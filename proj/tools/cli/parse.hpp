#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <sflab/brjuno.hpp>
#include <sflab/polynomial.hpp>

namespace sflab::cli {

/// Parses "a", "a+bi", "a-bi", "bi", "i", "-i" (no spaces).
cplx parse_complex(std::string_view text);

/// Comma-separated complex literals.
std::vector<cplx> parse_complex_list(std::string_view text);

std::vector<double> parse_real_list(std::string_view text);

/// Rotation-number spec: "p/q", a decimal literal, "golden", "silver",
/// "liouville[:G]", or "[a0;a1,a2,...]" where a trailing "..." repeats the last
/// quotient out to `depth`.
brjuno::ContinuedFraction parse_alpha(std::string_view spec, std::size_t depth);

/// Polynomial from ascending coefficients, trailing zeros dropped.
Polynomial parse_polynomial(std::string_view text);

}  // namespace sflab::cli
