#ifndef RESIL_RENDER_HPP
#define RESIL_RENDER_HPP

#include <string>
#include <vector>

#include "resil/geo.hpp"
#include "resil/stats.hpp"

namespace resil {

/// Deterministic SVG error-bar chart: one group per x position, mean dot,
/// whiskers with caps. Geometry and formatting are fixed for golden-file
/// stability.
std::string render_errorbar_svg(const std::string& title, const std::vector<GroupStats>& groups);

/// Joins trajectory status and class onto a GeoJSON FeatureCollection by
/// ISO3, trying the property keys ISO_A3, ADM0_A3, iso_a3, ISO3, id.
std::string geojson_property_join(const std::string& geojson_text,
                                  const std::vector<CountryTrajectory>& trajectories);

} // namespace resil

#endif
