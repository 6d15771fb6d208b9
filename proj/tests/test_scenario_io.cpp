#include <doctest.h>

#include <filesystem>

#include "caas/scenario_io.hpp"
#include "caas/sweeps.hpp"
#include "support.hpp"

using namespace caas;
using caas::testing::error_kind;

TEST_CASE("baseline round-trips through the scenario format") {
  const Scenario base = baseline_scenario();
  const std::string text = dump_scenario(base);
  CHECK(parse_scenario(text) == base);
  CHECK(dump_scenario(parse_scenario(text)) == text);
}

TEST_CASE("shipped baseline file equals the built-in baseline") {
  const Scenario file = load_scenario(std::filesystem::path(CAAS_DATA_DIR) / "baseline.scenario");
  CHECK(file == baseline_scenario());
}

TEST_CASE("pool-relative limits parse") {
  const Scenario sc = parse_scenario(R"({
    "r_crrm_mbps": 100,
    "vnos": [{
      "name": "A", "sla": "GB", "gamma": 2,
      "r_vno_min_mbps": "0.25*CRRM", "r_vno_max_mbps": 80,
      "services": [{"name": "x", "delta": 1, "r_srv_min_mbps": 0.5,
                    "r_srv_max_mbps": "CRRM", "user_count": 4}]
    }]
  })");
  REQUIRE(sc.vnos.size() == 1);
  CHECK(sc.vnos[0].r_vno_min == RateLimit::crrm(0.25));
  CHECK(sc.vnos[0].r_vno_max == RateLimit::mbps(80));
  CHECK(sc.vnos[0].services[0].r_srv_max.tracks_crrm());
  CHECK(sc.vnos[0].services[0].user_count == 4);
  CHECK_NOTHROW(validate_scenario(sc));
}

TEST_CASE("malformed scenarios are rejected") {
  CHECK(error_kind([] { parse_scenario("{"); }) == ErrorKind::InvalidScenario);
  CHECK(error_kind([] { parse_scenario("[]"); }) == ErrorKind::InvalidScenario);
  CHECK(error_kind([] { parse_scenario(R"({"vnos": []})"); }) == ErrorKind::InvalidScenario);
  CHECK(error_kind([] {
          parse_scenario(R"({"r_crrm_mbps": 1, "vnos": [{"name": "A", "sla": "XX", "gamma": 1,
            "r_vno_min_mbps": 0, "r_vno_max_mbps": 1, "services": []}]})");
        }) == ErrorKind::InvalidScenario);
  CHECK(error_kind([] {
          parse_scenario(R"({"r_crrm_mbps": 1, "vnos": [{"name": "A", "sla": "BE", "gamma": 1,
            "r_vno_min_mbps": 0, "r_vno_max_mbps": "half", "services": []}]})");
        }) == ErrorKind::InvalidScenario);
}

TEST_CASE("missing file is an Io error") {
  CHECK(error_kind([] { load_scenario("/nonexistent/x.scenario"); }) == ErrorKind::Io);
}
