// Copyright 2026 The urbantext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "urbantext/geo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "urbantext/csv.hpp"
#include "urbantext/error.hpp"

namespace urbantext::geo {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}

GeoPoint::GeoPoint(double lat_deg, double lon_deg) : lat(lat_deg), lon(lon_deg) {
  if (!(lat >= -90.0 && lat <= 90.0)) {
    throw input_error("latitude out of range [-90, 90]: " + csv::format_double(lat_deg));
  }
  if (!(lon >= -180.0 && lon <= 180.0)) {
    throw input_error("longitude out of range [-180, 180]: " + csv::format_double(lon_deg));
  }
}

Gazetteer::Gazetteer(std::vector<SpatialUnit> units) : units_(std::move(units)) {
  std::sort(units_.begin(), units_.end(),
            [](const SpatialUnit& a, const SpatialUnit& b) { return a.unit_id < b.unit_id; });
  for (std::size_t i = 0; i < units_.size(); ++i) {
    if (units_[i].name.empty()) {
      throw input_error("gazetteer unit '" + units_[i].unit_id + "' has an empty name");
    }
    if (i > 0 && units_[i].unit_id == units_[i - 1].unit_id) {
      throw input_error("duplicate unit_id in gazetteer: " + units_[i].unit_id);
    }
  }
}

const SpatialUnit* Gazetteer::find(const std::string& unit_id) const {
  auto it = std::lower_bound(
      units_.begin(), units_.end(), unit_id,
      [](const SpatialUnit& u, const std::string& id) { return u.unit_id < id; });
  if (it != units_.end() && it->unit_id == unit_id) return &*it;
  return nullptr;
}

std::optional<double> UnitAttributeTable::value(const std::string& unit_id,
                                                const std::string& attribute) const {
  auto uit = entries.find(unit_id);
  if (uit == entries.end()) return std::nullopt;
  auto ait = uit->second.find(attribute);
  if (ait == uit->second.end()) return std::nullopt;
  return ait->second;
}

std::vector<std::string> UnitAttributeTable::attributes() const {
  std::set<std::string> names;
  for (const auto& [unit, vals] : entries) {
    for (const auto& [attr, v] : vals) names.insert(attr);
  }
  return {names.begin(), names.end()};
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  // |deltas| keep d(a,b) and d(b,a) bit-identical.
  const double lat1 = a.lat * kDegToRad;
  const double lat2 = b.lat * kDegToRad;
  const double dlat = std::fabs(lat2 - lat1);
  const double dlon = std::fabs(b.lon - a.lon) * kDegToRad;
  const double sl = std::sin(dlat / 2.0);
  const double so = std::sin(dlon / 2.0);
  double h = sl * sl + std::cos(lat1) * std::cos(lat2) * so * so;
  if (h > 1.0) h = 1.0;
  if (h < 0.0) h = 0.0;
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

std::optional<std::string> assign_point(const GeoPoint& p, const Gazetteer& g,
                                        double max_km) {
  if (max_km <= 0.0) {
    throw input_error("assign_point: max_km must be positive");
  }
  const SpatialUnit* best = nullptr;
  double best_d = 0.0;
  // Units are sorted by unit_id, so strict < keeps the smaller id on ties.
  for (const SpatialUnit& u : g.units()) {
    const double d = haversine_km(p, u.centre);
    if (best == nullptr || d < best_d) {
      best = &u;
      best_d = d;
    }
  }
  if (best == nullptr || best_d > max_km) return std::nullopt;
  return best->unit_id;
}

UnitAttributeTable aggregate_attributes(const Gazetteer& g,
                                        const std::vector<AttributeSource>& sources,
                                        int k_max, double max_km) {
  if (k_max < 1) {
    throw input_error("aggregate_attributes: k_max must be >= 1");
  }
  if (max_km <= 0.0) {
    throw input_error("aggregate_attributes: max_km must be positive");
  }

  UnitAttributeTable table;
  for (const SpatialUnit& unit : g.units()) {
    // (distance, zone index) of every zone within range.
    std::vector<std::pair<double, std::size_t>> in_range;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      const double d = haversine_km(unit.centre, sources[i].centroid);
      if (d <= max_km) in_range.emplace_back(d, i);
    }
    if (in_range.empty()) continue;

    std::sort(in_range.begin(), in_range.end(),
              [&](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return sources[a.second].zone_id < sources[b.second].zone_id;
              });
    if (in_range.size() > static_cast<std::size_t>(k_max)) {
      in_range.resize(static_cast<std::size_t>(k_max));
    }

    // Sums accumulate in closest-first order so results are reproducible
    // bit for bit against the sort-and-average oracle.
    std::map<std::string, std::pair<double, int>> acc;  // attr -> (sum, count)
    for (const auto& [d, idx] : in_range) {
      for (const auto& [attr, v] : sources[idx].values) {
        auto& slot = acc[attr];
        slot.first += v;
        slot.second += 1;
      }
    }
    std::map<std::string, double> means;
    for (const auto& [attr, sum_count] : acc) {
      means[attr] = sum_count.first / static_cast<double>(sum_count.second);
    }
    table.entries[unit.unit_id] = std::move(means);
    table.support[unit.unit_id] = static_cast<int>(in_range.size());
  }
  return table;
}

Gazetteer load_gazetteer(const std::string& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty()) {
    throw input_error(path + ": empty gazetteer file");
  }
  const auto header = csv::split_fields(lines[0]);
  if (header.size() != 4 || csv::trim(header[0]) != "unit_id" ||
      csv::trim(header[1]) != "name" || csv::trim(header[2]) != "lat" ||
      csv::trim(header[3]) != "lon") {
    throw input_error(path + ": expected header 'unit_id,name,lat,lon'");
  }
  std::vector<SpatialUnit> units;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const auto f = csv::split_fields(lines[i]);
    const std::string ctx = path + " line " + std::to_string(i + 1);
    if (f.size() != 4) {
      throw input_error(ctx + ": expected 4 fields, got " + std::to_string(f.size()));
    }
    units.push_back(SpatialUnit{
        csv::trim(f[0]), csv::trim(f[1]),
        GeoPoint(csv::parse_double(f[2], ctx), csv::parse_double(f[3], ctx))});
  }
  return Gazetteer(std::move(units));
}

std::vector<AttributeSource> load_attribute_sources(const std::string& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty()) {
    throw input_error(path + ": empty attribute file");
  }
  const auto header = csv::split_fields(lines[0]);
  if (header.size() < 4 || csv::trim(header[0]) != "zone_id" ||
      csv::trim(header[1]) != "lat" || csv::trim(header[2]) != "lon") {
    throw input_error(path + ": expected header 'zone_id,lat,lon,<attr>,...'");
  }
  std::vector<std::string> attr_names;
  for (std::size_t c = 3; c < header.size(); ++c) {
    attr_names.push_back(csv::trim(header[c]));
    if (attr_names.back().empty()) {
      throw input_error(path + ": empty attribute name in header column " + std::to_string(c + 1));
    }
  }

  std::vector<AttributeSource> sources;
  std::set<std::string> seen_ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const auto f = csv::split_fields(lines[i]);
    const std::string ctx = path + " line " + std::to_string(i + 1);
    if (f.size() != header.size()) {
      throw input_error(ctx + ": expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(f.size()));
    }
    AttributeSource src{csv::trim(f[0]),
                        GeoPoint(csv::parse_double(f[1], ctx), csv::parse_double(f[2], ctx)),
                        {}};
    if (!seen_ids.insert(src.zone_id).second) {
      throw input_error(ctx + ": duplicate zone_id '" + src.zone_id + "'");
    }
    for (std::size_t c = 3; c < f.size(); ++c) {
      if (csv::trim(f[c]).empty()) continue;  // missing value
      const double v = csv::parse_double(f[c], ctx);
      if (!std::isfinite(v)) {
        throw input_error(ctx + ": attribute value must be finite");
      }
      src.values[attr_names[c - 3]] = v;
    }
    sources.push_back(std::move(src));
  }
  return sources;
}

void write_attribute_table(const UnitAttributeTable& table, const std::string& path) {
  std::ostringstream out;
  out << "unit_id,attribute,value,support\n";
  for (const auto& [unit, vals] : table.entries) {
    const int sup = table.support.at(unit);
    for (const auto& [attr, v] : vals) {
      out << unit << ',' << attr << ',' << csv::format_double(v) << ',' << sup << '\n';
    }
  }
  csv::write_file(path, out.str());
}

UnitAttributeTable load_attribute_table(const std::string& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty() || csv::trim(lines[0]) != "unit_id,attribute,value,support") {
    throw input_error(path + ": expected header 'unit_id,attribute,value,support'");
  }
  UnitAttributeTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const auto f = csv::split_fields(lines[i]);
    const std::string ctx = path + " line " + std::to_string(i + 1);
    if (f.size() != 4) {
      throw input_error(ctx + ": expected 4 fields");
    }
    table.entries[csv::trim(f[0])][csv::trim(f[1])] = csv::parse_double(f[2], ctx);
    table.support[csv::trim(f[0])] = static_cast<int>(csv::parse_long(f[3], ctx));
  }
  return table;
}

}  // namespace urbantext::geo
