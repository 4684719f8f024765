#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "attain/core.hpp"

using namespace attain;
using Catch::Matchers::WithinAbs;

TEST_CASE("normalize maps default bounds to the unit cube", "[core]") {
  const DomainBounds b;
  const auto u = normalize(RawVector{1.0, 15.0, 0.5, 0.02, 0.25}, b);
  CHECK(u[dim::ice] == 1.0);
  CHECK_THAT(u[dim::angle], WithinAbs(0.5, 1e-15));
  CHECK_THAT(u[dim::kp], WithinAbs(0.25, 1e-15));
  CHECK_THAT(u[dim::ki], WithinAbs(0.2, 1e-15));
  CHECK_THAT(u[dim::kd], WithinAbs(0.5, 1e-15));

  const auto lo = normalize(RawVector{0, 0, 0, 0, 0}, b);
  const auto hi = normalize(RawVector{1, 30, 2, 0.1, 0.5}, b);
  for (std::size_t d = 0; d < kDims; ++d) {
    CHECK(lo[d] == 0.0);
    CHECK(hi[d] == 1.0);
  }
}

TEST_CASE("normalize and denormalize round-trip", "[core]") {
  const DomainBounds b;
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    RawVector v{};
    for (std::size_t d = 0; d < kDims; ++d) v[d] = std::uniform_real_distribution<double>(b[d].lo, b[d].hi)(rng);
    const auto back = denormalize_array(normalize(v, b), b);
    for (std::size_t d = 0; d < kDims; ++d) REQUIRE_THAT(back[d], WithinAbs(v[d], 1e-12 * (1.0 + std::abs(v[d]))));
  }
}

TEST_CASE("out-of-bounds coordinates name the offending dimension", "[core]") {
  const DomainBounds b;
  try {
    normalize(RawVector{0, 45, 1, 0, 0}, b);
    FAIL("expected BoundsError");
  } catch (const BoundsError& e) {
    CHECK(e.dim() == "angle");
    CHECK(std::string(e.what()).find("angle") != std::string::npos);
  }
  try {
    normalize(RawVector{0, 0, 2.5, 0, 0}, b);
    FAIL("expected BoundsError");
  } catch (const BoundsError& e) {
    CHECK(e.dim() == "kp");
  }
}

TEST_CASE("non-finite values are rejected", "[core]") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(FeatureVector(nan, 0.0), BoundsError);
  CHECK_THROWS_AS(FeatureVector(0.0, inf), BoundsError);
  CHECK_THROWS_AS(GainVector(nan, 0.0, 0.0), BoundsError);
  CHECK_THROWS_AS(GainVector(0.0, 0.0, -inf), BoundsError);
  CHECK_THROWS_AS(normalize(RawVector{0, 0, nan, 0, 0}, DomainBounds{}), BoundsError);
  CHECK_THROWS_AS(denormalize_array(UnitVector{0, 0, 0, inf, 0}, DomainBounds{}), BoundsError);
}

TEST_CASE("value types validate their ranges", "[core]") {
  CHECK_THROWS_AS(FeatureVector(1.5, 0.0), BoundsError);
  CHECK_THROWS_AS(FeatureVector(0.0, 31.0), BoundsError);
  CHECK_THROWS_AS(GainVector(-0.1, 0.0, 0.0), BoundsError);
  CHECK_NOTHROW(FeatureVector(0.3, 12.5));
  CHECK_THROWS_AS(TrialRecord({}, 2, 0, TrialSource::simulated), ConfigError);
  CHECK_THROWS_AS(DomainBounds({{{0, 1}, {0, 30}, {1, 1}, {0, 0.1}, {0, 0.5}}}), ConfigError);
}

TEST_CASE("dimension names resolve to indices", "[core]") {
  CHECK(dim_index("ice") == dim::ice);
  CHECK(dim_index("angle") == dim::angle);
  CHECK(dim_index("angle_deg") == dim::angle);
  CHECK(dim_index("kd") == dim::kd);
  CHECK_FALSE(dim_index("gain").has_value());
  CHECK(parse_source("physical") == TrialSource::physical);
  CHECK_FALSE(parse_source("real").has_value());
}

TEST_CASE("denormalize clamps rounding excursions into bounds", "[core]") {
  const DomainBounds b;
  const auto v = denormalize_array(UnitVector{1.0 + 1e-15, -1e-15, 0.5, 0.5, 0.5}, b);
  CHECK(v[dim::ice] == 1.0);
  CHECK(v[dim::angle] == 0.0);
  CHECK(b.contains(v));
}
