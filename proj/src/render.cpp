#include "resil/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace resil {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

std::string render_errorbar_svg(const std::string& title, const std::vector<GroupStats>& groups) {
    const double width = 120.0 * std::max<size_t>(groups.size(), 1) + 80.0;
    const double height = 360.0;
    const double plot_top = 50.0, plot_bottom = height - 50.0;

    double lo = 0.0, hi = 1.0;
    bool any = false;
    for (const auto& g : groups) {
        if (g.n == 0) continue;
        const double l = g.interval_defined ? g.ci_low : g.mean;
        const double h = g.interval_defined ? g.ci_high : g.mean;
        if (!any) {
            lo = l;
            hi = h;
            any = true;
        } else {
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
    }
    if (!any) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    const auto y_of = [&](double v) {
        return plot_bottom - (v - lo) / (hi - lo) * (plot_bottom - plot_top);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
        << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
    svg << "  <text x=\"" << fmt(width / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    svg << "  <line x1=\"40\" y1=\"" << fmt(plot_bottom) << "\" x2=\"" << fmt(width - 20)
        << "\" y2=\"" << fmt(plot_bottom) << "\" stroke=\"#333\"/>\n";

    for (size_t i = 0; i < groups.size(); ++i) {
        const auto& g = groups[i];
        const double x = 100.0 + 120.0 * static_cast<double>(i);
        svg << "  <text x=\"" << fmt(x) << "\" y=\"" << fmt(plot_bottom + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << g.group_label << " (n=" << g.n << ")</text>\n";
        if (g.n == 0) continue;
        const double ym = y_of(g.mean);
        if (g.interval_defined) {
            const double yl = y_of(g.ci_low), yh = y_of(g.ci_high);
            svg << "  <line x1=\"" << fmt(x) << "\" y1=\"" << fmt(yl) << "\" x2=\"" << fmt(x)
                << "\" y2=\"" << fmt(yh) << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
            for (double y : {yl, yh})
                svg << "  <line x1=\"" << fmt(x - 8) << "\" y1=\"" << fmt(y) << "\" x2=\""
                    << fmt(x + 8) << "\" y2=\"" << fmt(y)
                    << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
        }
        svg << "  <circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(ym)
            << "\" r=\"4\" fill=\"#d62728\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string geojson_property_join(const std::string& geojson_text,
                                  const std::vector<CountryTrajectory>& trajectories) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(geojson_text);
    std::map<std::string, const CountryTrajectory*> by_code;
    for (const auto& t : trajectories) by_code[t.country_code] = &t;

    static const std::vector<std::string> keys = {"ISO_A3", "ADM0_A3", "iso_a3", "ISO3", "id"};
    if (!doc.contains("features")) return doc.dump(2) + "\n";
    for (auto& feature : doc["features"]) {
        std::string code;
        auto& props = feature["properties"];
        for (const auto& key : keys) {
            if (props.contains(key) && props[key].is_string()) {
                code = props[key].get<std::string>();
                break;
            }
        }
        if (code.empty() && feature.contains("id") && feature["id"].is_string())
            code = feature["id"].get<std::string>();
        auto it = by_code.find(code);
        if (it == by_code.end()) continue;
        props["resilience_status"] = to_string(it->second->status);
        if (it->second->average_class)
            props["resilience_class"] = to_string(*it->second->average_class);
    }
    return doc.dump(2) + "\n";
}

} // namespace resil
