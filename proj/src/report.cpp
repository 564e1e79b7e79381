#include "redukit/report.hpp"

#include "redukit/error.hpp"

#include <fstream>

namespace redukit {

using nlohmann::json;

json to_json(const Report& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["scenario"] = r.scenario;
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["version"] = r.version;
  j["exit_code"] = r.exit_code;
  j["results"] = r.results;
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

Report report_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw Error(ErrorCode::LoadError, "unsupported report schema_version");
    }
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.version = j.at("version").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    r.results = j.at("results");
    r.wall_time_s = j.value("wall_time_s", 0.0);
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::LoadError, e.what());
  }
}

std::string report_body(const Report& r) {
  json j = to_json(r);
  j.erase("wall_time_s");
  return j.dump(2);
}

void write_report(const Report& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::LoadError, "cannot write " + path.string());
  out << to_json(r).dump(2) << '\n';
}

Report read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::LoadError, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::LoadError, e.what());
  }
  return report_from_json(j);
}

}  // namespace redukit
