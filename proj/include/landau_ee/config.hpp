#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "landau_ee/entanglement.hpp"

namespace landau_ee {

enum class Spacing { linear, log };

struct FamilyConfig {
    std::string kind = "zero";  ///< zero | gaussian | power_law
    double amplitude = 0.0;
    double width = 1.0;
    double exponent = 2.0;
    Point center{};
};

struct ToleranceConfig {
    double endpoint_gap = 1e-8;  ///< relative to B0
    double level_gap = 1e-6;     ///< relative to B0
    double max_asymmetry = 1e-6;
    double overlap_slack = 1e-6;
    double clip = 1e-8;
    double clip_error = 1e-6;
    double schatten_slack = 1e-9;
    double gauge_fd = 1e-4;
    double gauge_agreement = 1e-6;
    double gram = 1e-8;
    double completeness = 1e-6;
    double genfun = 1e-10;
    double covariance = 1e-12;
    double kernel_covariance = 1e-8;
    double special = 1e-12;
    double contour_k0 = 1e-12;
    double riesz = 1e-8;
    double resolvent = 1e-10;
    double contour = 1e-5;
};

struct VerifyConfig {
    int trials = 100;
    double fd_step = 1e-3;
    int audit_points = 20;
    double audit_radius = 50.0;
    int completeness_m_max = 120;
    double completeness_radius = 4.0;
    int identity_l_max = 6;
    int identity_m_max = 12;
};

struct KernelsConfig {
    int l = 0;
    double t = 0.3;
    std::vector<std::pair<Point, Point>> points{{{0.0, 0.0}, {1.0, 0.0}}};
    Point shift{0.7, -1.3};
};

/// Typed study configuration. Every field has a default; see config::describe_keys().
struct StudyConfig {
    double B0 = 1.0;
    int gamma = 2;
    double eps = 0.5;
    FamilyConfig field;
    FamilyConfig potential;
    RegionSpec region;
    double L_min = 3.0;
    double L_max = 8.0;
    int L_count = 6;
    Spacing spacing = Spacing::linear;
    std::vector<double> alphas{0.5, 1.0, 2.0};
    Interval window{0.5, 2.0};
    std::vector<double> p_values{1.0};
    int fit_window = 3;
    TruncationPolicy truncation;
    double angular_offset = 0.0;
    int contour_nodes = 64;
    int identity_nodes = 96;
    double kernel_abs_tol = 1e-12;
    double kernel_rel_tol = 1e-12;
    double gauge_tol = 1e-9;
    ToleranceConfig tol;
    VerifyConfig verify;
    KernelsConfig kernels;
    std::uint64_t seed = 1;
    int jobs = 0;
    std::string out = "results";
    bool plots = true;

    TamenessParams tameness() const { return TamenessParams(gamma, eps); }
    FieldFamily field_family() const;
    PotentialFamily potential_family() const;
    std::vector<double> L_grid() const;
    ScanSpec scan_spec() const;
    /// Checks every precondition; throws ValidationError naming the offending key.
    void validate() const;
};

/// Flat "section.key" -> text map, as read from a file.
using KeyMap = std::map<std::string, std::string>;

/// Reads an INI-style file (sections in brackets, key = value, ';' or '#' comments), or a
/// JSON document whose "config" member (or root) holds {section: {key: value}}.
KeyMap read_key_map(const std::string& path);
KeyMap parse_ini_text(const std::string& text);
KeyMap key_map_from_json(const nlohmann::json& j);

/// Unknown keys and malformed values are ValidationErrors.
StudyConfig config_from_keys(const KeyMap& keys);
StudyConfig load_config(const std::string& path);

/// Typed echo of every key, {section: {key: value}}; config_from_keys(key_map_from_json(echo)) reproduces it.
nlohmann::json config_to_json(const StudyConfig& cfg);

/// Documented keys with their default values, in file order.
std::vector<std::pair<std::string, std::string>> describe_keys();

/// LANDAU_EE_OUT and LANDAU_EE_JOBS, when set, replace the output directory and job count.
void apply_environment(StudyConfig& cfg);

}  // namespace landau_ee
