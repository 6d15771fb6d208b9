#include "caas/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "caas/error.hpp"

namespace caas {

namespace {

using nlohmann::json;

RateLimit parse_limit(const json& j, std::string_view field) {
  if (j.is_number()) return RateLimit::mbps(j.get<double>());
  if (j.is_string()) {
    const std::string text = j.get<std::string>();
    if (text == "CRRM") return RateLimit::crrm();
    constexpr std::string_view kSuffix = "*CRRM";
    if (text.size() > kSuffix.size() && text.ends_with(kSuffix)) {
      const std::string_view head(text.data(), text.size() - kSuffix.size());
      double fraction = 0.0;
      const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), fraction);
      if (ec == std::errc() && ptr == head.data() + head.size()) return RateLimit::crrm(fraction);
    }
  }
  throw Error(ErrorKind::InvalidScenario,
              fmt::format("field '{}': expected a number, \"CRRM\" or \"<f>*CRRM\", got {}", field,
                          j.dump()));
}

json dump_limit(const RateLimit& limit) {
  if (!limit.tracks_crrm()) return limit.value();
  if (limit.value() == 1.0) return "CRRM";
  return fmt::format("{}*CRRM", limit.value());
}

template <typename T>
T required(const json& obj, const char* key) {
  if (!obj.contains(key))
    throw Error(ErrorKind::InvalidScenario, fmt::format("missing field '{}'", key));
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidScenario, fmt::format("field '{}': {}", key, e.what()));
  }
}

ServiceSpec parse_service(const json& j) {
  ServiceSpec s;
  s.name = required<std::string>(j, "name");
  s.delta = required<double>(j, "delta");
  s.r_srv_min = required<double>(j, "r_srv_min_mbps");
  if (!j.contains("r_srv_max_mbps"))
    throw Error(ErrorKind::InvalidScenario, "missing field 'r_srv_max_mbps'");
  s.r_srv_max = parse_limit(j.at("r_srv_max_mbps"), "r_srv_max_mbps");
  if (j.contains("user_count")) s.user_count = required<int>(j, "user_count");
  if (j.contains("user_share")) s.user_share = required<double>(j, "user_share");
  return s;
}

VnoSpec parse_vno(const json& j) {
  VnoSpec v;
  v.name = required<std::string>(j, "name");
  const auto sla_text = required<std::string>(j, "sla");
  const auto sla = parse_sla(sla_text);
  if (!sla) throw Error(ErrorKind::InvalidScenario, fmt::format("unknown SLA '{}'", sla_text));
  v.sla = *sla;
  v.gamma = required<double>(j, "gamma");
  for (const char* key : {"r_vno_min_mbps", "r_vno_max_mbps"})
    if (!j.contains(key)) throw Error(ErrorKind::InvalidScenario, fmt::format("missing field '{}'", key));
  v.r_vno_min = parse_limit(j.at("r_vno_min_mbps"), "r_vno_min_mbps");
  v.r_vno_max = parse_limit(j.at("r_vno_max_mbps"), "r_vno_max_mbps");
  if (j.contains("users")) v.users = required<int>(j, "users");
  if (!j.contains("services") || !j.at("services").is_array())
    throw Error(ErrorKind::InvalidScenario, "field 'services' must be a list");
  for (const json& s : j.at("services")) v.services.push_back(parse_service(s));
  return v;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidScenario, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidScenario, "top level must be an object");
  Scenario sc;
  sc.r_crrm = required<double>(doc, "r_crrm_mbps");
  if (!doc.contains("vnos") || !doc.at("vnos").is_array())
    throw Error(ErrorKind::InvalidScenario, "field 'vnos' must be a list");
  for (const json& v : doc.at("vnos")) sc.vnos.push_back(parse_vno(v));
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot read '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& scenario) {
  json doc;
  doc["r_crrm_mbps"] = scenario.r_crrm;
  json vnos = json::array();
  for (const VnoSpec& v : scenario.vnos) {
    json jv;
    jv["name"] = v.name;
    jv["sla"] = std::string(to_string(v.sla));
    jv["gamma"] = v.gamma;
    jv["r_vno_min_mbps"] = dump_limit(v.r_vno_min);
    jv["r_vno_max_mbps"] = dump_limit(v.r_vno_max);
    if (v.users) jv["users"] = *v.users;
    json services = json::array();
    for (const ServiceSpec& s : v.services) {
      json js;
      js["name"] = s.name;
      js["delta"] = s.delta;
      js["r_srv_min_mbps"] = s.r_srv_min;
      js["r_srv_max_mbps"] = dump_limit(s.r_srv_max);
      if (s.user_count) js["user_count"] = *s.user_count;
      if (s.user_share) js["user_share"] = *s.user_share;
      services.push_back(std::move(js));
    }
    jv["services"] = std::move(services);
    vnos.push_back(std::move(jv));
  }
  doc["vnos"] = std::move(vnos);
  return doc.dump(2) + "\n";
}

}  // namespace caas
