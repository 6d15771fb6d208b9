#pragma once

#include <span>
#include <string_view>

namespace caas {

enum class GoldenQuantity { Weight, Rate, VnoTotal };

/// One printed reference figure. `axis` is the sweep coordinate of the
/// column: capacity factor for tables 5-7, load fraction for tables 8-10,
/// 1 for table 4.
struct GoldenCell {
  int table = 0;
  std::string_view vno;      // GB, BG, BE (VNO1..VNO3)
  std::string_view service;  // empty for VNO totals
  GoldenQuantity quantity = GoldenQuantity::Weight;
  double axis = 1.0;
  double value = 0.0;
  bool flagged = false;      // known anomaly in the printed table
  bool excluded = false;     // flagged and left out of the verdict
  std::string_view note;
};

std::span<const GoldenCell> golden_cells();

/// Supportable population stated alongside tables 8-10.
inline constexpr int kGoldenMaxUsers = 645;

}  // namespace caas
