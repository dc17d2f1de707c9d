#include "landau_ee/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace landau_ee {

using json = nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string scan_csv(const ScanTable& table) {
    std::string out;
    const auto names = table.column_names();
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
    out += '\n';
    for (const auto& r : table.rows) {
        out += format_number(r.L) + ',' + format_number(r.alpha) + ',' + format_number(r.S_unpert) + ',' +
               format_number(r.S_pert);
        for (double v : r.cross) out += ',' + format_number(v);
        for (double v : r.diff) out += ',' + format_number(v);
        out += '\n';
    }
    return out;
}

int CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::stringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
            continue;
        }
        if (cells.size() != t.header.size()) throw ValidationError("csv: row width differs from header");
        std::vector<double> row;
        for (const auto& c : cells) {
            double v = 0.0;
            const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec != std::errc() || res.ptr != c.data() + c.size()) throw ValidationError("csv: bad number '" + c + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

json scan_fits(const ScanTable& table, int fit_window) {
    const auto Ls = table.Ls();
    const int window = fit_window <= 0 ? static_cast<int>(Ls.size()) : std::min<int>(fit_window, Ls.size());
    if (window < 3) return nullptr;
    json fits;
    auto fit_json = [](const LinearFit& f) {
        return json{{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"points", f.points}};
    };
    json entropy = json::array();
    for (double a : table.alphas()) {
        const LinearFit fu = fit_slope(table, "S_unpert", a, window);
        const LinearFit fp = fit_slope(table, "S_pert", a, window);
        const double rel = fu.slope != 0.0 ? std::abs(fp.slope - fu.slope) / std::abs(fu.slope) : 0.0;
        entropy.push_back({{"alpha", a}, {"S_unpert", fit_json(fu)}, {"S_pert", fit_json(fp)},
                           {"slope_relative_difference", rel}});
    }
    fits["window"] = window;
    fits["entropy"] = entropy;
    json exps = json::array();
    for (double p : table.p_values) {
        json e{{"p", p}};
        for (auto [kind, name] : {std::pair{NormKind::same, "cross"}, std::pair{NormKind::difference, "diff"}}) {
            try {
                e[name] = pnorm_scaling_exponent(table, kind, p, window);
            } catch (const DomainError&) {
                e[name] = nullptr;  // zero norms (unperturbed runs) have no exponent
            }
        }
        exps.push_back(e);
    }
    fits["norm_exponents"] = exps;
    return fits;
}

json scan_result_json(const StudyConfig& cfg, const ScanTable& table) {
    json j;
    j["config"] = config_to_json(cfg);
    j["columns"] = table.column_names();
    json rows = json::array();
    for (const auto& r : table.rows) {
        json row = json::array({r.L, r.alpha, r.S_unpert, r.S_pert});
        for (double v : r.cross) row.push_back(v);
        for (double v : r.diff) row.push_back(v);
        rows.push_back(row);
    }
    j["rows"] = rows;
    json diag = json::array();
    for (const auto& d : table.diagnostics) {
        diag.push_back({{"L", d.L},
                        {"l_max", d.l_max},
                        {"m_max", d.m_max},
                        {"rank_unpert", d.rank_unpert},
                        {"rank_pert", d.rank_pert},
                        {"clip_count", d.clip_count},
                        {"heps_asymmetry", d.heps_asymmetry}});
    }
    j["diagnostics"] = diag;
    j["fits"] = scan_fits(table, cfg.fit_window);
    return j;
}

// ---- SVG ----------------------------------------------------------------

namespace {

struct Series {
    std::string label;
    std::vector<double> x, y;
};

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, bool loglog) {
    constexpr double W = 640, H = 420, ml = 70, mr = 170, mt = 40, mb = 50;
    auto tx = [&](double v) { return loglog ? std::log10(v) : v; };
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (loglog && (s.x[i] <= 0.0 || s.y[i] <= 0.0)) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, tx(s.y[i]));
            y1 = std::max(y1, tx(s.y[i]));
        }
    }
    if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    auto px = [&](double v) { return ml + (tx(v) - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double v) { return H - mb - (tx(v) - y0) / (y1 - y0) * (H - mt - mb); };
    auto fmt = [](double v) { return format_number(std::round(v * 100.0) / 100.0); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
        const double sx = ml + (W - ml - mr) * i / 4.0, sy = H - mb - (H - mt - mb) * i / 4.0;
        os << "<text x=\"" << sx << "\" y=\"" << H - mb + 16 << "\" text-anchor=\"middle\">"
           << (loglog ? "1e" : "") << fmt(fx) << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">" << (loglog ? "1e" : "")
           << fmt(fy) << "</text>\n";
    }
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + H - mb) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (mt + H - mb) / 2 << ")\">" << ylabel << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % (sizeof kColors / sizeof *kColors)];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (loglog && (s.x[i] <= 0.0 || s.y[i] <= 0.0)) continue;
            pts << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << pts.str() << "\"/>\n";
        const double ly = mt + 16.0 * k;
        os << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 30 << "\" y2=\"" << ly
           << "\" stroke=\"" << color << "\"/>\n";
        os << "<text x=\"" << W - mr + 35 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string svg_entropy_plot(const CsvTable& csv) {
    const int cl = csv.column("L"), ca = csv.column("alpha"), cu = csv.column("S_unpert"), cp = csv.column("S_pert");
    if (cl < 0 || ca < 0 || cu < 0 || cp < 0) throw ValidationError("svg: csv lacks entropy columns");
    std::vector<double> alphas;
    for (const auto& r : csv.rows) {
        if (std::find(alphas.begin(), alphas.end(), r[ca]) == alphas.end()) alphas.push_back(r[ca]);
    }
    std::vector<Series> series;
    for (double a : alphas) {
        Series su{"S_unpert a=" + format_number(a), {}, {}}, sp{"S_pert a=" + format_number(a), {}, {}};
        for (const auto& r : csv.rows) {
            if (r[ca] != a) continue;
            su.x.push_back(r[cl]);
            su.y.push_back(r[cu]);
            sp.x.push_back(r[cl]);
            sp.y.push_back(r[cp]);
        }
        series.push_back(std::move(su));
        series.push_back(std::move(sp));
    }
    return svg_plot("Renyi entropy against scale", "L", "S", series, false);
}

std::string svg_norm_plot(const CsvTable& csv) {
    const int cl = csv.column("L"), ca = csv.column("alpha");
    if (cl < 0 || ca < 0 || csv.rows.empty()) throw ValidationError("svg: csv lacks rows");
    const double a0 = csv.rows.front()[ca];
    std::vector<Series> series;
    for (std::size_t c = 0; c < csv.header.size(); ++c) {
        const auto& name = csv.header[c];
        if (name.rfind("cross_p", 0) != 0 && name.rfind("diff_p", 0) != 0) continue;
        Series s{name, {}, {}};
        for (const auto& r : csv.rows) {
            if (r[ca] != a0) continue;
            s.x.push_back(r[cl]);
            s.y.push_back(r[c]);
        }
        series.push_back(std::move(s));
    }
    return svg_plot("Schatten norms (p-th power) against scale", "L", "norm^p", series, true);
}

}  // namespace landau_ee
