#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "landau_ee/config.hpp"
#include "landau_ee/entanglement.hpp"

namespace landau_ee {

/// One verified quantity: passes when achieved <= required.
struct VerifyCheck {
    std::string suite;
    std::string name;
    double achieved = 0.0;
    double required = 0.0;
    bool passed = false;
    std::string error;  ///< set when the check threw instead of producing a number
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool passed() const;
    nlohmann::json to_json() const;
};

/// Runs every suite in order: special, kernels, gauge, assembly, riesz, resolvent, contour, schatten.
/// Each finished check is printed to `log` when given.
VerifyReport run_verify(const StudyConfig& cfg, std::ostream* log = nullptr);

struct StudyResult {
    ScanTable table;
    std::string csv;
    nlohmann::json result;  ///< config echo, rows, diagnostics, fits
    double wall_seconds = 0.0;
};

StudyResult run_scan(const StudyConfig& cfg);

/// Writes scan.csv, result.json, run_meta.json and (if cfg.plots) entropy.svg / norms.svg to cfg.out.
void write_scan_outputs(const StudyConfig& cfg, const StudyResult& r);

// Command entry points; the return value is the process exit status.
int cmd_verify(const StudyConfig& cfg, std::ostream& out);
int cmd_scan(const StudyConfig& cfg, std::ostream& out);
int cmd_kernels(const StudyConfig& cfg, std::ostream& out);

}  // namespace landau_ee
