#include "caas/golden.hpp"

#include <array>

namespace caas {

namespace {

using Q = GoldenQuantity;

constexpr GoldenCell cell(int table, std::string_view vno, std::string_view service, Q quantity,
                          double axis, double value) {
  return {table, vno, service, quantity, axis, value, false, false, {}};
}

// Printed figures, transcribed as shown. Citations are by table number.
constexpr std::array kCells = {
    // Table 4: baseline allocation, 100 users per VNO.
    cell(4, "GB", "voice", Q::Weight, 1, 1.0),
    cell(4, "GB", "IoT", Q::Weight, 1, 1.0),
    cell(4, "GB", "eMBB", Q::Weight, 1, 0.014),
    cell(4, "BG", "voice", Q::Weight, 1, 1.0),
    cell(4, "BG", "IoT", Q::Weight, 1, 1.0),
    cell(4, "BG", "eMBB", Q::Weight, 1, 0.0106),
    cell(4, "BE", "voice", Q::Weight, 1, 1.0),
    cell(4, "BE", "IoT", Q::Weight, 1, 0.7036),
    cell(4, "BE", "eMBB", Q::Weight, 1, 0.0014),
    cell(4, "GB", "voice", Q::Rate, 1, 0.064),
    cell(4, "GB", "IoT", Q::Rate, 1, 1.0),
    cell(4, "GB", "eMBB", Q::Rate, 1, 8.82),
    cell(4, "BG", "voice", Q::Rate, 1, 0.064),
    cell(4, "BG", "IoT", Q::Rate, 1, 1.0),
    cell(4, "BG", "eMBB", Q::Rate, 1, 6.678),
    cell(4, "BE", "voice", Q::Rate, 1, 0.064),
    cell(4, "BE", "IoT", Q::Rate, 1, 0.7037),
    cell(4, "BE", "eMBB", Q::Rate, 1, 0.882),
    GoldenCell{4, "GB", "", Q::VnoTotal, 1, 315.1509, true, false,
               "per-service rounded entries sum to about 315.88"},
    cell(4, "BG", "", Q::VnoTotal, 1, 252.0),
    cell(4, "BE", "", Q::VnoTotal, 1, 62.8491),

    // Table 5: VNO1 (GB) user weights vs capacity factor.
    cell(5, "GB", "voice", Q::Weight, 0.5, 1.0),
    cell(5, "GB", "voice", Q::Weight, 0.75, 1.0),
    cell(5, "GB", "voice", Q::Weight, 1.0, 1.0),
    cell(5, "GB", "voice", Q::Weight, 1.25, 1.0),
    cell(5, "GB", "voice", Q::Weight, 1.5, 1.0),
    cell(5, "GB", "IoT", Q::Weight, 0.5, 0.7857),
    cell(5, "GB", "IoT", Q::Weight, 0.75, 1.0),
    cell(5, "GB", "IoT", Q::Weight, 1.0, 1.0),
    cell(5, "GB", "IoT", Q::Weight, 1.25, 1.0),
    cell(5, "GB", "IoT", Q::Weight, 1.5, 1.0),
    cell(5, "GB", "eMBB", Q::Weight, 0.5, 0.0127),
    cell(5, "GB", "eMBB", Q::Weight, 0.75, 0.0132),
    cell(5, "GB", "eMBB", Q::Weight, 1.0, 0.014),
    cell(5, "GB", "eMBB", Q::Weight, 1.25, 0.0144),
    cell(5, "GB", "eMBB", Q::Weight, 1.5, 0.0149),

    // Table 6: VNO2 (BG).
    cell(6, "BG", "voice", Q::Weight, 0.5, 1.0),
    cell(6, "BG", "voice", Q::Weight, 0.75, 1.0),
    cell(6, "BG", "voice", Q::Weight, 1.0, 1.0),
    cell(6, "BG", "voice", Q::Weight, 1.25, 1.0),
    cell(6, "BG", "voice", Q::Weight, 1.5, 1.0),
    cell(6, "BG", "IoT", Q::Weight, 0.5, 0.5),
    cell(6, "BG", "IoT", Q::Weight, 0.75, 1.0),
    cell(6, "BG", "IoT", Q::Weight, 1.0, 1.0),
    cell(6, "BG", "IoT", Q::Weight, 1.25, 1.0),
    cell(6, "BG", "IoT", Q::Weight, 1.5, 1.0),
    cell(6, "BG", "eMBB", Q::Weight, 0.5, 0.0127),
    cell(6, "BG", "eMBB", Q::Weight, 0.75, 0.0097),
    cell(6, "BG", "eMBB", Q::Weight, 1.0, 0.0106),
    cell(6, "BG", "eMBB", Q::Weight, 1.25, 0.0112),
    cell(6, "BG", "eMBB", Q::Weight, 1.5, 0.0115),

    // Table 7: VNO3 (BE).
    cell(7, "BE", "voice", Q::Weight, 0.5, 1.0),
    cell(7, "BE", "voice", Q::Weight, 0.75, 1.0),
    cell(7, "BE", "voice", Q::Weight, 1.0, 1.0),
    cell(7, "BE", "voice", Q::Weight, 1.25, 1.0),
    cell(7, "BE", "voice", Q::Weight, 1.5, 1.0),
    cell(7, "BE", "IoT", Q::Weight, 0.5, 0.0786),
    cell(7, "BE", "IoT", Q::Weight, 0.75, 0.4993),
    cell(7, "BE", "IoT", Q::Weight, 1.0, 0.7037),
    cell(7, "BE", "IoT", Q::Weight, 1.25, 0.908),
    cell(7, "BE", "IoT", Q::Weight, 1.5, 1.0),
    cell(7, "BE", "eMBB", Q::Weight, 0.5, 0.0003),
    cell(7, "BE", "eMBB", Q::Weight, 0.75, 0.0013),
    cell(7, "BE", "eMBB", Q::Weight, 1.0, 0.0014),
    cell(7, "BE", "eMBB", Q::Weight, 1.25, 0.0014),
    cell(7, "BE", "eMBB", Q::Weight, 1.5, 0.0015),

    // Table 8: VNO1 (GB) user weights vs load.
    cell(8, "GB", "voice", Q::Weight, 0.2, 1.0),
    cell(8, "GB", "voice", Q::Weight, 0.4, 1.0),
    cell(8, "GB", "voice", Q::Weight, 0.6, 1.0),
    cell(8, "GB", "voice", Q::Weight, 0.8, 1.0),
    cell(8, "GB", "voice", Q::Weight, 1.0, 1.0),
    cell(8, "GB", "IoT", Q::Weight, 0.2, 1.0),
    cell(8, "GB", "IoT", Q::Weight, 0.4, 1.0),
    cell(8, "GB", "IoT", Q::Weight, 0.6, 1.0),
    cell(8, "GB", "IoT", Q::Weight, 0.8, 1.0),
    cell(8, "GB", "IoT", Q::Weight, 1.0, 0.5),
    cell(8, "GB", "eMBB", Q::Weight, 0.2, 0.04),
    cell(8, "GB", "eMBB", Q::Weight, 0.4, 0.016),
    GoldenCell{8, "GB", "eMBB", Q::Weight, 0.6, 0.001, true, true,
               "breaks the monotone sequence; likely 0.01"},
    cell(8, "GB", "eMBB", Q::Weight, 0.8, 0.0063),
    cell(8, "GB", "eMBB", Q::Weight, 1.0, 0.0063),

    // Table 9: VNO2 (BG).
    cell(9, "BG", "voice", Q::Weight, 0.2, 1.0),
    cell(9, "BG", "voice", Q::Weight, 0.4, 1.0),
    cell(9, "BG", "voice", Q::Weight, 0.6, 1.0),
    cell(9, "BG", "voice", Q::Weight, 0.8, 1.0),
    cell(9, "BG", "voice", Q::Weight, 1.0, 1.0),
    cell(9, "BG", "IoT", Q::Weight, 0.2, 1.0),
    cell(9, "BG", "IoT", Q::Weight, 0.4, 1.0),
    cell(9, "BG", "IoT", Q::Weight, 0.6, 1.0),
    cell(9, "BG", "IoT", Q::Weight, 0.8, 1.0),
    cell(9, "BG", "IoT", Q::Weight, 1.0, 0.5),
    cell(9, "BG", "eMBB", Q::Weight, 0.2, 0.03),
    cell(9, "BG", "eMBB", Q::Weight, 0.4, 0.0126),
    cell(9, "BG", "eMBB", Q::Weight, 0.6, 0.0077),
    cell(9, "BG", "eMBB", Q::Weight, 0.8, 0.0063),
    cell(9, "BG", "eMBB", Q::Weight, 1.0, 0.0063),

    // Table 10: VNO3 (BE).
    cell(10, "BE", "voice", Q::Weight, 0.2, 1.0),
    cell(10, "BE", "voice", Q::Weight, 0.4, 1.0),
    cell(10, "BE", "voice", Q::Weight, 0.6, 1.0),
    cell(10, "BE", "voice", Q::Weight, 0.8, 1.0),
    cell(10, "BE", "voice", Q::Weight, 1.0, 0.832),
    cell(10, "BE", "IoT", Q::Weight, 0.2, 1.0),
    cell(10, "BE", "IoT", Q::Weight, 0.4, 0.8367),
    cell(10, "BE", "IoT", Q::Weight, 0.6, 0.5150),
    cell(10, "BE", "IoT", Q::Weight, 0.8, 0.2356),
    cell(10, "BE", "IoT", Q::Weight, 1.0, 0.0171),
    cell(10, "BE", "eMBB", Q::Weight, 0.2, 0.004),
    cell(10, "BE", "eMBB", Q::Weight, 0.4, 0.0016),
    cell(10, "BE", "eMBB", Q::Weight, 0.6, 0.001),
    cell(10, "BE", "eMBB", Q::Weight, 0.8, 0.0004),
    cell(10, "BE", "eMBB", Q::Weight, 1.0, 0.00003),
};

}  // namespace

std::span<const GoldenCell> golden_cells() { return kCells; }

}  // namespace caas
