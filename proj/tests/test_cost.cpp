#include "boa/cost.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace boa;

namespace {

// The pickup-trace study region (NYC box).
GeoBoundingBox nyc_bbox() { return {40.5998, 40.8998, -74.0701, -73.7701}; }

}  // namespace

TEST_CASE("manhattan distances") {
  CHECK(manhattan({0, 0}, {500, 500}) == 1000.0);
  CHECK(manhattan({1, 1}, {1, 1}) == 0.0);
  CHECK(manhattan({2, 3}, {5, 1}) == 5.0);
}

TEST_CASE("metric properties: symmetry and triangle inequality") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-100.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    Location a{pos(rng), pos(rng)}, b{pos(rng), pos(rng)}, c{pos(rng), pos(rng)};
    for (auto* d : {&manhattan, &euclidean}) {
      CHECK(d(a, b) == doctest::Approx(d(b, a)));
      CHECK(d(a, b) >= 0.0);
      CHECK(d(a, c) <= d(a, b) + d(b, c) + 1e-9);
    }
  }
}

TEST_CASE("project_geo maps the bbox origin to (0,0)") {
  GeoBoundingBox bbox = nyc_bbox();
  Location origin = project_geo(bbox.lat_min, bbox.lon_min, bbox);
  CHECK(origin.x == doctest::Approx(0.0));
  CHECK(origin.y == doctest::Approx(0.0));
}

TEST_CASE("project_geo midpoint lands mid-box") {
  GeoBoundingBox bbox = nyc_bbox();
  auto [width, height] = bbox_extent_km(bbox);
  Location mid = project_geo(bbox.lat_mid(), 0.5 * (bbox.lon_min + bbox.lon_max), bbox);
  CHECK(mid.x == doctest::Approx(width / 2).epsilon(1e-9));
  CHECK(mid.y == doctest::Approx(height / 2).epsilon(1e-9));
}

TEST_CASE("project_geo rejects out-of-region points") {
  CHECK_THROWS_AS(project_geo(41.5, -73.9, nyc_bbox()), std::out_of_range);
}

TEST_CASE("projected diagonal of the study region is ~41.7 km") {
  double diagonal = region_c_max(nyc_bbox(), CostMetric::euclidean());
  CHECK(std::abs(diagonal - 41.7027) / 41.7027 < 0.02);
}

TEST_CASE("projection is monotone in each axis") {
  GeoBoundingBox bbox = nyc_bbox();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> lat(bbox.lat_min, bbox.lat_max);
  std::uniform_real_distribution<double> lon(bbox.lon_min, bbox.lon_max);
  for (int i = 0; i < 200; ++i) {
    double la1 = lat(rng), la2 = lat(rng), lo1 = lon(rng), lo2 = lon(rng);
    Location p1 = project_geo(la1, lo1, bbox);
    Location p2 = project_geo(la2, lo2, bbox);
    if (la1 < la2) CHECK(p1.y < p2.y);
    if (lo1 < lo2) CHECK(p1.x < p2.x);
  }
}

TEST_CASE("unproject_geo inverts project_geo") {
  GeoBoundingBox bbox = nyc_bbox();
  Location p = project_geo(40.7, -73.9, bbox);
  auto [lat, lon] = unproject_geo(p, bbox);
  CHECK(lat == doctest::Approx(40.7).epsilon(1e-12));
  CHECK(lon == doctest::Approx(-73.9).epsilon(1e-12));
}

TEST_CASE("region_c_max") {
  CHECK(region_c_max(500, 500, CostMetric::manhattan()) == 1000.0);
  CHECK(region_c_max(8, 8, CostMetric::manhattan()) == 16.0);
  CHECK(region_c_max(3, 4, CostMetric::euclidean()) == doctest::Approx(5.0));
  CHECK_THROWS_AS(region_c_max(0, 5, CostMetric::manhattan()), std::invalid_argument);
}

TEST_CASE("region_c_max dominates costs of points inside the region") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(1.0, 200.0);
  for (int trial = 0; trial < 50; ++trial) {
    double width = w(rng), height = w(rng);
    std::uniform_real_distribution<double> px(0.0, width), py(0.0, height);
    for (auto metric : {CostMetric::manhattan(), CostMetric::euclidean()}) {
      double cmax = region_c_max(width, height, metric);
      for (int i = 0; i < 20; ++i) {
        Location a{px(rng), py(rng)}, b{px(rng), py(rng)};
        double d = metric.kind() == MetricKind::Manhattan ? manhattan(a, b) : euclidean(a, b);
        CHECK(d <= cmax + 1e-9);
      }
    }
  }
}
