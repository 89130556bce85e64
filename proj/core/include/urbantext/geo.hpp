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

#ifndef URBANTEXT_GEO_HPP
#define URBANTEXT_GEO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace urbantext::geo {

/// Mean Earth radius used by haversine_km, in kilometres.
inline constexpr double kEarthRadiusKm = 6371.0;

struct GeoPoint {
  GeoPoint(double lat_deg, double lon_deg);

  double lat;
  double lon;
};

/// A named place with a representative centre point (one gazetteer row).
struct SpatialUnit {
  std::string unit_id;
  std::string name;
  GeoPoint centre;
};

/// Ordered collection of spatial units, sorted by unit_id. Duplicate ids
/// and empty names are rejected at construction.
class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(std::vector<SpatialUnit> units);

  const std::vector<SpatialUnit>& units() const { return units_; }
  bool empty() const { return units_.empty(); }
  std::size_t size() const { return units_.size(); }

  const SpatialUnit* find(const std::string& unit_id) const;

 private:
  std::vector<SpatialUnit> units_;
};

/// One attribute-bearing statistical zone (an LSOA-style record): a
/// centroid plus a value per attribute name. Attributes a zone lacks are
/// simply absent from the map.
struct AttributeSource {
  std::string zone_id;
  GeoPoint centroid;
  std::map<std::string, double> values;
};

/// Per-unit attribute values produced by zone aggregation. Units with no
/// qualifying zone are absent, never zero-filled.
struct UnitAttributeTable {
  // unit_id -> attribute -> mean value over contributing zones
  std::map<std::string, std::map<std::string, double>> entries;
  // unit_id -> number of zones selected for that unit
  std::map<std::string, int> support;

  std::optional<double> value(const std::string& unit_id,
                              const std::string& attribute) const;
  /// Union of attribute names present in any entry, sorted.
  std::vector<std::string> attributes() const;
};

/// Great-circle distance on a sphere of radius kEarthRadiusKm. Symmetric
/// by construction (works on |delta| terms).
double haversine_km(const GeoPoint& a, const GeoPoint& b);

/// The unit whose centre is closest to p, if that distance is <= max_km.
/// Distance ties go to the smaller unit_id.
std::optional<std::string> assign_point(const GeoPoint& p, const Gazetteer& g,
                                        double max_km);

/// For each unit, average attribute values over the up-to-k_max closest
/// zones within max_km (ties by smaller zone_id). A zone missing an
/// attribute is excluded from that attribute's mean only.
UnitAttributeTable aggregate_attributes(const Gazetteer& g,
                                        const std::vector<AttributeSource>& sources,
                                        int k_max = 10, double max_km = 1.0);

/// Gazetteer CSV: header `unit_id,name,lat,lon`.
Gazetteer load_gazetteer(const std::string& path);

/// Attribute source CSV: header `zone_id,lat,lon,<attr1>,...`; empty cells
/// are missing values.
std::vector<AttributeSource> load_attribute_sources(const std::string& path);

/// Persisted aggregation result: `unit_id,attribute,value,support`.
void write_attribute_table(const UnitAttributeTable& table, const std::string& path);
UnitAttributeTable load_attribute_table(const std::string& path);

}  // namespace urbantext::geo

#endif  // URBANTEXT_GEO_HPP
