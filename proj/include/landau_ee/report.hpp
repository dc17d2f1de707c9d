#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "landau_ee/config.hpp"
#include "landau_ee/entanglement.hpp"

namespace landau_ee {

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);

/// Header `L,alpha,S_unpert,S_pert,cross_p...,diff_p...`, one row per (L, alpha), '\n' line ends.
std::string scan_csv(const ScanTable& table);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  ///< -1 when absent
};

CsvTable parse_csv(const std::string& text);

/// Fits over the top fit_window scales; absent (null) with fewer than 3 scales.
nlohmann::json scan_fits(const ScanTable& table, int fit_window);

/// Config echo, table, fits and per-scale diagnostics. Contains no timing data.
nlohmann::json scan_result_json(const StudyConfig& cfg, const ScanTable& table);

/// Line plot of S_unpert / S_pert against L, one pair of series per alpha.
std::string svg_entropy_plot(const CsvTable& csv);
/// Log-log plot of the cross_p and diff_p columns against L (first alpha).
std::string svg_norm_plot(const CsvTable& csv);

}  // namespace landau_ee
