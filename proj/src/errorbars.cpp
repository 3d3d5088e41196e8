#include "resil/errorbars.hpp"

#include <algorithm>
#include <sstream>

namespace resil {

namespace {

std::optional<double> select_value(const PanelRow& row, const std::string& selector,
                                   bool is_component) {
    if (is_component) {
        if (!row.record) return std::nullopt;
        if (selector == "r_en") return row.record->vector.r_en;
        if (selector == "r_ec") return row.record->vector.r_ec;
        if (selector == "r_ev") return row.record->vector.r_ev;
        return row.record->i_r;
    }
    auto it = row.covariates.find(selector);
    return it == row.covariates.end() ? std::nullopt : it->second;
}

} // namespace

std::vector<GroupStats> grouped_errorbars(const Panel& panel, const std::string& value_selector,
                                          GroupBy group_by, double level) {
    const auto& comps = component_selectors();
    const bool is_component =
        std::find(comps.begin(), comps.end(), value_selector) != comps.end();
    if (!is_component &&
        std::find(panel.covariate_codes.begin(), panel.covariate_codes.end(), value_selector) ==
            panel.covariate_codes.end())
        throw UnknownSelector(value_selector);

    std::vector<std::string> labels;
    if (group_by == GroupBy::ResilienceClass)
        labels = {"Low", "Medium", "High"};
    else
        labels = {"Africa", "Asia", "Europe", "North America", "Oceania", "South America"};

    std::map<std::string, std::vector<double>> buckets;
    for (const auto& l : labels) buckets[l];
    for (const auto& row : panel.rows) {
        std::string label;
        if (group_by == GroupBy::ResilienceClass) {
            if (!row.record) continue; // class unknown, excluded pairwise
            label = to_string(row.record->cls);
        } else {
            label = to_string(row.continent);
        }
        if (auto v = select_value(row, value_selector, is_component)) buckets[label].push_back(*v);
    }

    std::vector<GroupStats> out;
    for (const auto& label : labels) {
        const auto& values = buckets[label];
        if (values.size() >= 2) {
            out.push_back(confidence_interval(values, level, label));
        } else {
            GroupStats s;
            s.group_label = label;
            s.n = static_cast<long>(values.size());
            s.mean = values.empty() ? 0.0 : values.front();
            s.level = level;
            s.interval_defined = false;
            out.push_back(s);
        }
    }
    return out;
}

std::string errorbars_to_csv(const std::vector<GroupStats>& rows) {
    std::ostringstream out;
    out << "group,n,mean,sd,ci_low,ci_high,level\n";
    for (const auto& s : rows) {
        out << '"' << s.group_label << "\"," << s.n << ',';
        if (s.n > 0) out << format_value(s.mean);
        out << ',';
        if (s.interval_defined)
            out << format_value(s.sd) << ',' << format_value(s.ci_low) << ','
                << format_value(s.ci_high);
        else
            out << ",,";
        out << ',' << format_value(s.level) << '\n';
    }
    return out.str();
}

} // namespace resil
