#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "caas/model.hpp"

namespace caas {

// Scenario documents are JSON. Rate limits accept a number (Mbps), the string
// "CRRM", or "<fraction>*CRRM".
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
std::string dump_scenario(const Scenario& scenario);

}  // namespace caas
