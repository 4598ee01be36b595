#pragma once

#include "boa/model.hpp"

namespace boa {

double manhattan(const Location& a, const Location& b);
double euclidean(const Location& a, const Location& b);

// Spherical-Earth projection constants (km per degree). The longitude
// constant is scaled by cos(mid-latitude) at projection time.
inline constexpr double kKmPerDegLat = 110.574;
inline constexpr double kKmPerDegLon = 111.320;

struct GeoBoundingBox {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;

  double lat_mid() const { return 0.5 * (lat_min + lat_max); }
};

// Throws std::invalid_argument on degenerate or out-of-range bounds.
void validate_bbox(const GeoBoundingBox& bbox);

// Equirectangular projection to km relative to the bbox's south-west corner:
//   x = (lon - lon_min) * 111.320 * cos(lat_mid)
//   y = (lat - lat_min) * 110.574
// Throws std::out_of_range for points outside the bbox.
Location project_geo(double lat, double lon, const GeoBoundingBox& bbox);

// Inverse of project_geo; returns {lat, lon}. Used for CSV round-trips.
std::pair<double, double> unproject_geo(const Location& loc, const GeoBoundingBox& bbox);

// Projected extents of the bbox in km: {width (x), height (y)}.
std::pair<double, double> bbox_extent_km(const GeoBoundingBox& bbox);

// Metric diameter of an axis-aligned rectangle: width+height for Manhattan,
// the diagonal for Euclidean. Table metrics have no region diameter.
double region_c_max(double width, double height, const CostMetric& metric);
double region_c_max(const GeoBoundingBox& bbox, const CostMetric& metric);

}  // namespace boa
