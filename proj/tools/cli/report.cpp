#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>

#include <sflab/version.hpp>

namespace sflab::cli {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest(const std::vector<std::string>& command_line, const std::vector<std::string>& effective_args,
              const json& input_echo) {
  std::string joined;
  for (const auto& a : effective_args) {
    joined += a;
    joined.push_back('\0');
  }
  json m;
  m["tool"] = "sflab";
  m["version"] = std::string(kVersion);
  m["command_line"] = command_line;
  m["config_hash"] = "fnv1a64:" + hex64(fnv1a64(joined));
  m["timestamp"] = utc_timestamp();
  m["input"] = input_echo;
  return m;
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Polynomial& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(to_json(c));
  return a;
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace sflab::cli
