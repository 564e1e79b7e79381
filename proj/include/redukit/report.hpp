#pragma once

// Run reports. The body is everything except the wall time; two runs with
// the same scenario and seed have byte-identical bodies.

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace redukit {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

struct Report {
  std::string scenario;
  std::string command;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  int exit_code = 0;
  nlohmann::json results = nlohmann::json::object();
  double wall_time_s = 0.0;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

/// Serialized report without the wall time.
std::string report_body(const Report& r);

void write_report(const Report& r, const std::filesystem::path& path);
Report read_report(const std::filesystem::path& path);

}  // namespace redukit
