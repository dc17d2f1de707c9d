#include "landau_ee/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace landau_ee {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad_value(const std::string& key, const std::string& text, const std::string& what) {
    throw ValidationError("config key '" + key + "': cannot read '" + text + "' as " + what);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    static const std::regex sep("[,\\s]+");
    std::vector<std::string> out;
    const std::string t = trim(s);
    if (t.empty()) return out;
    for (std::sregex_token_iterator it(t.begin(), t.end(), sep, -1), end; it != end; ++it) {
        if (!it->str().empty()) out.push_back(*it);
    }
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v))
        bad_value(key, text, "a finite number");
    return v;
}

long long to_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) bad_value(key, text, "an integer");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    const long long v = to_integer(key, text);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad_value(key, text, "an int");
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    bad_value(key, text, "a boolean");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& tok : tokens(text)) out.push_back(to_double(key, tok));
    return out;
}

Point to_point(const std::string& key, const std::string& text) {
    const auto v = to_list(key, text);
    if (v.size() != 2) bad_value(key, text, "a point 'x, y'");
    return {v[0], v[1]};
}

std::vector<std::pair<Point, Point>> to_pairs(const std::string& key, const std::string& text) {
    std::vector<std::pair<Point, Point>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (trim(item).empty()) continue;
        const auto v = to_list(key, item);
        if (v.size() != 4) bad_value(key, item, "a point pair 'x1 x2 y1 y2'");
        out.push_back({{v[0], v[1]}, {v[2], v[3]}});
    }
    if (out.empty()) bad_value(key, text, "a non-empty list of point pairs");
    return out;
}

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// One documented key: how to set it from text and how to echo it.
struct KeyDef {
    std::string key;
    std::function<void(StudyConfig&, const std::string&)> set;
    std::function<json(const StudyConfig&)> echo;
};

#define LEE_DOUBLE(K, F) \
    KeyDef { K, [](StudyConfig& c, const std::string& t) { c.F = to_double(K, t); }, [](const StudyConfig& c) { return json(c.F); } }
#define LEE_INT(K, F) \
    KeyDef { K, [](StudyConfig& c, const std::string& t) { c.F = to_int(K, t); }, [](const StudyConfig& c) { return json(c.F); } }
#define LEE_LIST(K, F) \
    KeyDef { K, [](StudyConfig& c, const std::string& t) { c.F = to_list(K, t); }, [](const StudyConfig& c) { return json(c.F); } }
#define LEE_POINT(K, F)                                                                \
    KeyDef {                                                                           \
        K, [](StudyConfig& c, const std::string& t) { c.F = to_point(K, t); },         \
            [](const StudyConfig& c) { return json::array({c.F.x, c.F.y}); }            \
    }

std::vector<KeyDef> family_keys(const std::string& section, FamilyConfig StudyConfig::*member) {
    const std::string s = section + ".";
    return {
        {s + "kind", [member, s](StudyConfig& c, const std::string& t) {
             const std::string v = trim(t);
             if (v != "zero" && v != "gaussian" && v != "power_law")
                 bad_value(s + "kind", t, "one of zero, gaussian, power_law");
             (c.*member).kind = v;
         },
         [member](const StudyConfig& c) { return json((c.*member).kind); }},
        {s + "amplitude", [member, s](StudyConfig& c, const std::string& t) { (c.*member).amplitude = to_double(s + "amplitude", t); },
         [member](const StudyConfig& c) { return json((c.*member).amplitude); }},
        {s + "width", [member, s](StudyConfig& c, const std::string& t) { (c.*member).width = to_double(s + "width", t); },
         [member](const StudyConfig& c) { return json((c.*member).width); }},
        {s + "exponent", [member, s](StudyConfig& c, const std::string& t) { (c.*member).exponent = to_double(s + "exponent", t); },
         [member](const StudyConfig& c) { return json((c.*member).exponent); }},
        {s + "center", [member, s](StudyConfig& c, const std::string& t) { (c.*member).center = to_point(s + "center", t); },
         [member](const StudyConfig& c) { return json::array({(c.*member).center.x, (c.*member).center.y}); }},
    };
}

const std::vector<KeyDef>& key_defs() {
    static const std::vector<KeyDef> defs = [] {
        std::vector<KeyDef> d{
            LEE_DOUBLE("physics.B0", B0),
            LEE_INT("tameness.gamma", gamma),
            LEE_DOUBLE("tameness.eps", eps),
        };
        for (auto& k : family_keys("field", &StudyConfig::field)) d.push_back(std::move(k));
        for (auto& k : family_keys("potential", &StudyConfig::potential)) d.push_back(std::move(k));
        d.push_back({"region.shape",
                     [](StudyConfig& c, const std::string& t) {
                         const std::string v = trim(t);
                         if (v == "disk") c.region.shape = RegionShape::disk;
                         else if (v == "square") c.region.shape = RegionShape::square;
                         else bad_value("region.shape", t, "disk or square");
                     },
                     [](const StudyConfig& c) { return json(to_string(c.region.shape)); }});
        d.push_back(LEE_DOUBLE("region.size", region.size));
        d.push_back(LEE_DOUBLE("scan.L_min", L_min));
        d.push_back(LEE_DOUBLE("scan.L_max", L_max));
        d.push_back(LEE_INT("scan.L_count", L_count));
        d.push_back({"scan.spacing",
                     [](StudyConfig& c, const std::string& t) {
                         const std::string v = trim(t);
                         if (v == "linear") c.spacing = Spacing::linear;
                         else if (v == "log") c.spacing = Spacing::log;
                         else bad_value("scan.spacing", t, "linear or log");
                     },
                     [](const StudyConfig& c) { return json(c.spacing == Spacing::log ? "log" : "linear"); }});
        d.push_back(LEE_LIST("scan.alphas", alphas));
        d.push_back({"scan.interval",
                     [](StudyConfig& c, const std::string& t) {
                         const auto v = to_list("scan.interval", t);
                         if (v.size() != 2) bad_value("scan.interval", t, "an interval 'a, b'");
                         c.window = {v[0], v[1]};
                     },
                     [](const StudyConfig& c) { return json::array({c.window.a, c.window.b}); }});
        d.push_back(LEE_LIST("scan.p_values", p_values));
        d.push_back(LEE_INT("scan.fit_window", fit_window));
        d.push_back({"truncation.mode",
                     [](StudyConfig& c, const std::string& t) {
                         const std::string v = trim(t);
                         if (v == "auto") c.truncation.automatic = true;
                         else if (v == "explicit") c.truncation.automatic = false;
                         else bad_value("truncation.mode", t, "auto or explicit");
                     },
                     [](const StudyConfig& c) { return json(c.truncation.automatic ? "auto" : "explicit"); }});
        d.push_back(LEE_INT("truncation.l_max", truncation.l_max));
        d.push_back(LEE_INT("truncation.m_max", truncation.m_max));
        d.push_back(LEE_DOUBLE("truncation.margin", truncation.margin_lengths));
        d.push_back(LEE_INT("truncation.extra", truncation.extra));
        d.push_back(LEE_DOUBLE("quadrature.angular_offset", angular_offset));
        d.push_back(LEE_INT("quadrature.contour_nodes", contour_nodes));
        d.push_back(LEE_INT("quadrature.identity_nodes", identity_nodes));
        d.push_back(LEE_DOUBLE("quadrature.kernel_abs_tol", kernel_abs_tol));
        d.push_back(LEE_DOUBLE("quadrature.kernel_rel_tol", kernel_rel_tol));
        d.push_back(LEE_DOUBLE("quadrature.gauge_tol", gauge_tol));
        d.push_back(LEE_DOUBLE("tolerances.endpoint_gap", tol.endpoint_gap));
        d.push_back(LEE_DOUBLE("tolerances.level_gap", tol.level_gap));
        d.push_back(LEE_DOUBLE("tolerances.max_asymmetry", tol.max_asymmetry));
        d.push_back(LEE_DOUBLE("tolerances.overlap_slack", tol.overlap_slack));
        d.push_back(LEE_DOUBLE("tolerances.clip", tol.clip));
        d.push_back(LEE_DOUBLE("tolerances.clip_error", tol.clip_error));
        d.push_back(LEE_DOUBLE("tolerances.schatten_slack", tol.schatten_slack));
        d.push_back(LEE_DOUBLE("tolerances.gauge_fd", tol.gauge_fd));
        d.push_back(LEE_DOUBLE("tolerances.gauge_agreement", tol.gauge_agreement));
        d.push_back(LEE_DOUBLE("tolerances.gram", tol.gram));
        d.push_back(LEE_DOUBLE("tolerances.completeness", tol.completeness));
        d.push_back(LEE_DOUBLE("tolerances.genfun", tol.genfun));
        d.push_back(LEE_DOUBLE("tolerances.covariance", tol.covariance));
        d.push_back(LEE_DOUBLE("tolerances.kernel_covariance", tol.kernel_covariance));
        d.push_back(LEE_DOUBLE("tolerances.special", tol.special));
        d.push_back(LEE_DOUBLE("tolerances.contour_k0", tol.contour_k0));
        d.push_back(LEE_DOUBLE("tolerances.riesz", tol.riesz));
        d.push_back(LEE_DOUBLE("tolerances.resolvent", tol.resolvent));
        d.push_back(LEE_DOUBLE("tolerances.contour", tol.contour));
        d.push_back(LEE_INT("verify.trials", verify.trials));
        d.push_back(LEE_DOUBLE("verify.fd_step", verify.fd_step));
        d.push_back(LEE_INT("verify.audit_points", verify.audit_points));
        d.push_back(LEE_DOUBLE("verify.audit_radius", verify.audit_radius));
        d.push_back(LEE_INT("verify.completeness_m_max", verify.completeness_m_max));
        d.push_back(LEE_DOUBLE("verify.completeness_radius", verify.completeness_radius));
        d.push_back(LEE_INT("verify.identity_l_max", verify.identity_l_max));
        d.push_back(LEE_INT("verify.identity_m_max", verify.identity_m_max));
        d.push_back(LEE_INT("kernels.l", kernels.l));
        d.push_back(LEE_DOUBLE("kernels.t", kernels.t));
        d.push_back({"kernels.points",
                     [](StudyConfig& c, const std::string& t) { c.kernels.points = to_pairs("kernels.points", t); },
                     [](const StudyConfig& c) {
                         json a = json::array();
                         for (const auto& [x, y] : c.kernels.points) a.push_back(json::array({x.x, x.y, y.x, y.y}));
                         return a;
                     }});
        d.push_back(LEE_POINT("kernels.shift", kernels.shift));
        d.push_back({"run.seed",
                     [](StudyConfig& c, const std::string& t) {
                         const long long v = to_integer("run.seed", t);
                         if (v < 0) bad_value("run.seed", t, "a non-negative integer");
                         c.seed = static_cast<std::uint64_t>(v);
                     },
                     [](const StudyConfig& c) { return json(c.seed); }});
        d.push_back(LEE_INT("run.jobs", jobs));
        d.push_back({"run.out", [](StudyConfig& c, const std::string& t) { c.out = trim(t); },
                     [](const StudyConfig& c) { return json(c.out); }});
        d.push_back({"run.plots", [](StudyConfig& c, const std::string& t) { c.plots = to_bool("run.plots", t); },
                     [](const StudyConfig& c) { return json(c.plots); }});
        return d;
    }();
    return defs;
}

#undef LEE_DOUBLE
#undef LEE_INT
#undef LEE_LIST
#undef LEE_POINT

std::string json_scalar_text(const std::string& key, const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) return num(v.get<double>());
    throw ValidationError("config key '" + key + "': unsupported JSON value " + v.dump());
}

std::string json_value_text(const std::string& key, const json& v) {
    if (!v.is_array()) return json_scalar_text(key, v);
    std::string out;
    bool nested = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_array()) {
            nested = true;
            std::string inner;
            for (std::size_t k = 0; k < v[i].size(); ++k) inner += (k ? " " : "") + json_scalar_text(key, v[i][k]);
            out += (i ? "; " : "") + inner;
        } else {
            if (nested) throw ValidationError("config key '" + key + "': mixed nested JSON array");
            out += (i ? ", " : "") + json_scalar_text(key, v[i]);
        }
    }
    return out;
}

}  // namespace

// ---- reading ------------------------------------------------------------

KeyMap parse_ini_text(const std::string& text) {
    // '#' comment lines are accepted in addition to the parser's ';'.
    std::stringstream cleaned;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty() && t[0] == '#') continue;
        cleaned << line << '\n';
    }
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::ini_parser::read_ini(cleaned, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    KeyMap keys;
    for (const auto& [section, node] : pt) {
        if (node.empty()) {
            throw ValidationError("config key '" + section + "' outside any section");
        }
        for (const auto& [key, leaf] : node) keys[section + "." + key] = leaf.data();
    }
    return keys;
}

KeyMap key_map_from_json(const nlohmann::json& j) {
    const json& root = j.contains("config") ? j.at("config") : j;
    if (!root.is_object()) throw ValidationError("config: JSON document must be an object of sections");
    KeyMap keys;
    for (const auto& [section, node] : root.items()) {
        if (!node.is_object()) throw ValidationError("config: JSON member '" + section + "' is not a section");
        for (const auto& [key, value] : node.items()) {
            const std::string full = section + "." + key;
            keys[full] = json_value_text(full, value);
        }
    }
    return keys;
}

KeyMap read_key_map(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    if (is_json) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("config: ") + e.what());
        }
        return key_map_from_json(j);
    }
    return parse_ini_text(text);
}

StudyConfig config_from_keys(const KeyMap& keys) {
    StudyConfig cfg;
    const auto& defs = key_defs();
    for (const auto& [key, value] : keys) {
        const auto it = std::find_if(defs.begin(), defs.end(), [&](const KeyDef& d) { return d.key == key; });
        if (it == defs.end()) throw ValidationError("config: unknown key '" + key + "'");
        it->set(cfg, value);
    }
    cfg.validate();
    return cfg;
}

StudyConfig load_config(const std::string& path) { return config_from_keys(read_key_map(path)); }

nlohmann::json config_to_json(const StudyConfig& cfg) {
    json out = json::object();
    for (const auto& d : key_defs()) {
        const auto dot = d.key.find('.');
        out[d.key.substr(0, dot)][d.key.substr(dot + 1)] = d.echo(cfg);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> describe_keys() {
    const StudyConfig def;
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& d : key_defs()) out.emplace_back(d.key, json_value_text(d.key, d.echo(def)));
    return out;
}

void apply_environment(StudyConfig& cfg) {
    if (const char* o = std::getenv("LANDAU_EE_OUT"); o && *o) cfg.out = o;
    if (const char* j = std::getenv("LANDAU_EE_JOBS"); j && *j) {
        cfg.jobs = to_int("LANDAU_EE_JOBS", j);
        if (cfg.jobs < 0) bad_value("LANDAU_EE_JOBS", j, "a non-negative job count");
    }
}

// ---- typed views --------------------------------------------------------

namespace {

std::vector<RadialProfile> profiles(const FamilyConfig& f) {
    if (f.kind == "zero") return {};
    RadialProfile p;
    p.kind = f.kind == "gaussian" ? ProfileKind::gaussian : ProfileKind::power_law;
    p.amplitude = f.amplitude;
    p.width = f.width;
    p.exponent = f.exponent;
    p.center = f.center;
    return {p};
}

}  // namespace

FieldFamily StudyConfig::field_family() const { return FieldFamily(profiles(field), tameness()); }

PotentialFamily StudyConfig::potential_family() const { return PotentialFamily(profiles(potential), tameness()); }

std::vector<double> StudyConfig::L_grid() const {
    std::vector<double> g;
    if (L_count == 1) return {L_min};
    for (int i = 0; i < L_count; ++i) {
        const double f = static_cast<double>(i) / (L_count - 1);
        g.push_back(spacing == Spacing::linear ? L_min + f * (L_max - L_min)
                                               : L_min * std::pow(L_max / L_min, f));
    }
    g.back() = L_max;
    return g;
}

ScanSpec StudyConfig::scan_spec() const {
    ScanSpec s;
    s.B0 = B0;
    s.field = field_family();
    s.potential = potential_family();
    s.region = region;
    s.truncation = truncation;
    s.L_grid = L_grid();
    s.alphas = alphas;
    s.window = window;
    s.p_values = p_values;
    s.clip = {tol.clip, tol.clip_error};
    s.assembly = {tol.max_asymmetry, tol.overlap_slack};
    s.endpoint_gap = tol.endpoint_gap;
    s.angular_offset = angular_offset;
    s.jobs = jobs;
    return s;
}

void StudyConfig::validate() const {
    auto fail = [](const std::string& key, const std::string& msg) { throw ValidationError(key + ": " + msg); };
    if (!(B0 > 0.0)) fail("physics.B0", "magnetic strength must be positive");
    if (gamma < 0) fail("tameness.gamma", "must be a natural number");
    if (!(eps > 0.0 && eps < 1.0))
        fail("tameness.eps", "decay exponent must lie in (0,1), got " + num(eps) + " (the convolution gauge needs eps < 1)");
    try {
        (void)field_family();
    } catch (const ValidationError& e) {
        fail("field", e.what());
    }
    try {
        (void)potential_family();
    } catch (const ValidationError& e) {
        fail("potential", e.what());
    }
    if (!(region.size > 0.0)) fail("region.size", "must be positive");
    if (!(L_min > 0.0)) fail("scan.L_min", "must be positive");
    if (L_count < 1) fail("scan.L_count", "must be at least 1");
    if (L_count > 1 && !(L_max > L_min)) fail("scan.L_max", "must exceed scan.L_min when scan.L_count > 1");
    if (alphas.empty()) fail("scan.alphas", "need at least one Renyi order");
    for (double a : alphas) {
        if (!(a > 0.0)) fail("scan.alphas", "Renyi orders must be positive, got " + num(a));
    }
    if (p_values.empty()) fail("scan.p_values", "need at least one p");
    for (double p : p_values) {
        if (!(p > 0.0)) fail("scan.p_values", "p must be positive, got " + num(p));
    }
    if (!(window.a < window.b)) fail("scan.interval", "need a < b");
    const double gap = tol.endpoint_gap * B0;
    for (const auto& [name, e] : {std::pair{"a", window.a}, std::pair{"b", window.b}}) {
        const double l = 0.5 * (e / B0 - 1.0);
        const double nearest = std::max(0.0, std::round(l));
        const double level = B0 * (2.0 * nearest + 1.0);
        if (std::abs(e - level) <= gap) {
            fail("scan.interval", std::string("endpoint ") + name + " = " + num(e) + " lies on the Landau level B0(2*" +
                                      num(nearest) + "+1) = " + num(level) + "; endpoints must avoid B0(2N+1)");
        }
    }
    if (fit_window < 0) fail("scan.fit_window", "must be non-negative");
    if (truncation.l_max < 0) fail("truncation.l_max", "must be non-negative");
    if (!truncation.automatic && truncation.m_max < 1) fail("truncation.m_max", "explicit truncation needs m_max >= 1");
    if (!(truncation.margin_lengths >= 0.0)) fail("truncation.margin", "must be non-negative");
    if (truncation.extra < 0) fail("truncation.extra", "must be non-negative");
    if (contour_nodes < 2 || contour_nodes % 2) fail("quadrature.contour_nodes", "must be even and >= 2");
    if (identity_nodes < 2 || identity_nodes % 2) fail("quadrature.identity_nodes", "must be even and >= 2");
    if (!(kernel_abs_tol > 0.0) || !(kernel_rel_tol > 0.0)) fail("quadrature.kernel_abs_tol", "tolerances must be positive");
    if (!(gauge_tol > 0.0)) fail("quadrature.gauge_tol", "must be positive");
    if (!(tol.clip >= 0.0) || !(tol.clip_error >= tol.clip)) fail("tolerances.clip_error", "need 0 <= clip <= clip_error");
    if (!(tol.level_gap > 0.0) || !(tol.endpoint_gap > 0.0)) fail("tolerances.level_gap", "gap tolerances must be positive");
    if (verify.trials < 1) fail("verify.trials", "must be at least 1");
    if (!(verify.fd_step > 0.0)) fail("verify.fd_step", "must be positive");
    if (verify.audit_points < 1) fail("verify.audit_points", "must be at least 1");
    if (!(verify.audit_radius > 1.0)) fail("verify.audit_radius", "must exceed 1");
    if (verify.completeness_m_max < 1) fail("verify.completeness_m_max", "must be at least 1");
    if (verify.identity_l_max < 2 || verify.identity_m_max < 1) fail("verify.identity_l_max", "need l_max >= 2, m_max >= 1");
    if (kernels.l < 0) fail("kernels.l", "must be non-negative");
    if (!(kernels.t >= 0.0 && kernels.t < 1.0)) fail("kernels.t", "must lie in [0,1)");
    if (jobs < 0) fail("run.jobs", "must be non-negative");
    if (out.empty()) fail("run.out", "output directory must not be empty");
}

}  // namespace landau_ee
