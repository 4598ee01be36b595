#include "boa/cost.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boa {

double manhattan(const Location& a, const Location& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

double euclidean(const Location& a, const Location& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void validate_bbox(const GeoBoundingBox& bbox) {
  if (!(bbox.lat_min < bbox.lat_max) || !(bbox.lon_min < bbox.lon_max))
    throw std::invalid_argument("bbox: min bounds must be strictly below max bounds");
  if (bbox.lat_min < -90.0 || bbox.lat_max > 90.0)
    throw std::invalid_argument("bbox: latitude outside [-90, 90]");
  if (bbox.lon_min < -180.0 || bbox.lon_max > 180.0)
    throw std::invalid_argument("bbox: longitude outside [-180, 180]");
}

namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double lon_scale_km(const GeoBoundingBox& bbox) {
  return kKmPerDegLon * std::cos(deg_to_rad(bbox.lat_mid()));
}

}  // namespace

Location project_geo(double lat, double lon, const GeoBoundingBox& bbox) {
  validate_bbox(bbox);
  if (lat < bbox.lat_min || lat > bbox.lat_max || lon < bbox.lon_min || lon > bbox.lon_max)
    throw std::out_of_range("project_geo: point outside bounding box");
  return Location{(lon - bbox.lon_min) * lon_scale_km(bbox),
                  (lat - bbox.lat_min) * kKmPerDegLat};
}

std::pair<double, double> unproject_geo(const Location& loc, const GeoBoundingBox& bbox) {
  validate_bbox(bbox);
  return {bbox.lat_min + loc.y / kKmPerDegLat,
          bbox.lon_min + loc.x / lon_scale_km(bbox)};
}

std::pair<double, double> bbox_extent_km(const GeoBoundingBox& bbox) {
  Location corner = project_geo(bbox.lat_max, bbox.lon_max, bbox);
  return {corner.x, corner.y};
}

double region_c_max(double width, double height, const CostMetric& metric) {
  if (!(width > 0.0) || !(height > 0.0))
    throw std::invalid_argument("region_c_max: degenerate region");
  switch (metric.kind()) {
    case MetricKind::Manhattan:
      return width + height;
    case MetricKind::Euclidean:
      return std::hypot(width, height);
    case MetricKind::Table:
      throw std::invalid_argument("region_c_max: table metric has no region diameter");
  }
  throw std::logic_error("region_c_max: unknown metric kind");
}

double region_c_max(const GeoBoundingBox& bbox, const CostMetric& metric) {
  auto [width, height] = bbox_extent_km(bbox);
  return region_c_max(width, height, metric);
}

}  // namespace boa
