#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <sflab/polynomial.hpp>

namespace sflab::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// UTC time in ISO 8601; SOURCE_DATE_EPOCH overrides the clock when set.
std::string utc_timestamp();

json manifest(const std::vector<std::string>& command_line, const std::vector<std::string>& effective_args,
              const json& input_echo);

json to_json(cplx z);
json to_json(const Polynomial& p);

/// "%.17g", with nan/inf spelled the same way on every platform.
std::string csv_number(double x);

}  // namespace sflab::cli
