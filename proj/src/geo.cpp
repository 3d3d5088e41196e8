#include "resil/geo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace resil {

const char* to_string(TrajectoryStatus s) {
    switch (s) {
    case TrajectoryStatus::Fixed: return "Fixed";
    case TrajectoryStatus::Commute: return "Commute";
    case TrajectoryStatus::Insufficient: return "Insufficient";
    }
    return "?";
}

namespace {

int ordinal(Class c) {
    switch (c) {
    case Class::Low: return 1;
    case Class::Medium: return 2;
    case Class::High: return 3;
    }
    return 0;
}

Class class_from_ordinal(int o) {
    return o <= 1 ? Class::Low : (o == 2 ? Class::Medium : Class::High);
}

} // namespace

std::vector<CountryTrajectory> fixed_commute_status(const Panel& panel) {
    std::map<std::string, CountryTrajectory> by_country;
    for (const auto& row : panel.rows) {
        auto& traj = by_country[row.country_code];
        traj.country_code = row.country_code;
        traj.classes_by_shock.emplace_back(
            row.shock_year, row.record ? std::optional<Class>(row.record->cls) : std::nullopt);
    }

    std::vector<CountryTrajectory> out;
    out.reserve(by_country.size());
    for (auto& [code, traj] : by_country) {
        std::sort(traj.classes_by_shock.begin(), traj.classes_by_shock.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Class> computable;
        for (const auto& [year, cls] : traj.classes_by_shock)
            if (cls) computable.push_back(*cls);
        if (computable.size() < 2) {
            traj.status = TrajectoryStatus::Insufficient;
        } else if (std::all_of(computable.begin(), computable.end(),
                               [&](Class c) { return c == computable.front(); })) {
            traj.status = TrajectoryStatus::Fixed;
            traj.average_class = computable.front();
        } else {
            traj.status = TrajectoryStatus::Commute;
            double sum = 0.0;
            for (Class c : computable) sum += ordinal(c);
            const double mean = sum / static_cast<double>(computable.size());
            traj.average_class =
                class_from_ordinal(static_cast<int>(std::floor(mean + 0.5))); // half rounds up
        }
        out.push_back(std::move(traj));
    }
    return out;
}

std::vector<ShiftRecord> shift_pyramid(const Panel& panel) {
    // (country -> ordered (year, class)) plus each country's continent.
    std::map<std::string, std::vector<std::pair<int, Class>>> computable;
    std::map<std::string, Continent> continent_of;
    std::set<int> shock_years;
    for (const auto& row : panel.rows) {
        shock_years.insert(row.shock_year);
        continent_of[row.country_code] = row.continent;
        if (row.record)
            computable[row.country_code].emplace_back(row.shock_year, row.record->cls);
    }
    if (shock_years.empty()) return {};
    const int earliest = *shock_years.begin();

    std::map<std::pair<Continent, int>, int> net;
    for (int year : shock_years)
        if (year != earliest)
            for (const auto& [code, cont] : continent_of) net[{cont, year}] += 0;

    for (auto& [code, classes] : computable) {
        std::sort(classes.begin(), classes.end());
        for (size_t i = 1; i < classes.size(); ++i) {
            const int diff = ordinal(classes[i].second) - ordinal(classes[i - 1].second);
            if (diff == 0) continue;
            net[{continent_of.at(code), classes[i].first}] += diff > 0 ? +1 : -1;
        }
    }

    std::vector<ShiftRecord> out;
    // Deterministic order: continent, then year. Collapse to the continents
    // actually present in the panel.
    std::set<Continent> continents;
    for (const auto& [code, cont] : continent_of) continents.insert(cont);
    for (Continent cont : continents)
        for (int year : shock_years) {
            if (year == earliest) continue;
            out.push_back({cont, year, net[{cont, year}]});
        }
    return out;
}

std::vector<std::pair<std::string, std::vector<GroupStats>>>
continent_errorbars(const Panel& panel, double level) {
    std::vector<std::pair<std::string, std::vector<GroupStats>>> out;
    for (const auto& measure : component_selectors())
        out.emplace_back(measure, grouped_errorbars(panel, measure, GroupBy::Continent, level));
    return out;
}

std::vector<ShareCell> class_share_tabulation(const std::vector<CountryTrajectory>& trajectories,
                                              const std::map<std::string, CountryMeta>& meta) {
    const int total_countries = static_cast<int>(trajectories.size());
    const std::vector<Class> classes = {Class::Low, Class::Medium, Class::High};

    std::vector<ShareCell> out;
    for (TrajectoryStatus status : {TrajectoryStatus::Fixed, TrajectoryStatus::Commute}) {
        std::map<std::pair<Continent, Class>, int> counts;
        std::map<Continent, int> by_continent;
        std::map<Class, int> by_class;
        int status_total = 0;
        std::set<Continent> continents;
        for (const auto& traj : trajectories) {
            auto mit = meta.find(traj.country_code);
            if (mit == meta.end()) throw UnknownContinent(traj.country_code);
            continents.insert(mit->second.continent);
            if (traj.status != status) continue;
            const Continent cont = mit->second.continent;
            const Class cls = *traj.average_class;
            ++counts[{cont, cls}];
            ++by_continent[cont];
            ++by_class[cls];
            ++status_total;
        }

        for (Class cls : classes) {
            ShareCell global;
            global.status = status;
            global.continent = "Global";
            global.cls = cls;
            global.count = by_class[cls];
            global.within_continent_pct =
                total_countries ? 100.0 * by_class[cls] / total_countries : 0.0;
            global.within_status_pct = status_total ? 100.0 * by_class[cls] / status_total : 0.0;
            out.push_back(global);
        }
        for (Continent cont : continents) {
            for (Class cls : classes) {
                ShareCell cell;
                cell.status = status;
                cell.continent = to_string(cont);
                cell.cls = cls;
                cell.count = counts[{cont, cls}];
                cell.within_continent_pct =
                    by_continent[cont] ? 100.0 * cell.count / by_continent[cont] : 0.0;
                cell.within_status_pct = status_total ? 100.0 * cell.count / status_total : 0.0;
                out.push_back(cell);
            }
        }
    }
    return out;
}

std::string trajectories_to_csv(const std::vector<CountryTrajectory>& trajectories) {
    std::ostringstream out;
    out << "country,status,average_class,classes\n";
    for (const auto& traj : trajectories) {
        out << traj.country_code << ',' << to_string(traj.status) << ',';
        if (traj.average_class) out << to_string(*traj.average_class);
        out << ",\"";
        bool first = true;
        for (const auto& [year, cls] : traj.classes_by_shock) {
            if (!first) out << ';';
            first = false;
            out << year << ':' << (cls ? to_string(*cls) : "-");
        }
        out << "\"\n";
    }
    return out.str();
}

std::string shift_pyramid_to_csv(const std::vector<ShiftRecord>& records) {
    std::ostringstream out;
    out << "continent,shock_year,net_shift\n";
    for (const auto& r : records)
        out << '"' << to_string(r.continent) << "\"," << r.shock_year << ',' << r.net_shift
            << '\n';
    return out.str();
}

std::string share_tabulation_to_csv(const std::vector<ShareCell>& cells) {
    std::ostringstream out;
    out << "status,continent,class,count,within_continent_pct,within_status_pct\n";
    out.setf(std::ios::fixed);
    out.precision(2);
    for (const auto& c : cells)
        out << to_string(c.status) << ",\"" << c.continent << "\"," << to_string(c.cls) << ','
            << c.count << ',' << c.within_continent_pct << ',' << c.within_status_pct << '\n';
    return out.str();
}

std::string choropleth_join_csv(const std::vector<CountryTrajectory>& trajectories) {
    std::ostringstream out;
    out << "iso3,status,class\n";
    for (const auto& traj : trajectories) {
        out << traj.country_code << ',' << to_string(traj.status) << ',';
        if (traj.average_class) out << to_string(*traj.average_class);
        out << '\n';
    }
    return out.str();
}

} // namespace resil
