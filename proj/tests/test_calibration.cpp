#include <catch_amalgamated.hpp>

#include <random>

#include "attain/calibration.hpp"
#include "support.hpp"

using namespace attain;
using Catch::Matchers::WithinAbs;

namespace {

struct StubModel {
  DomainBounds b;
  const DomainBounds& bounds() const noexcept { return b; }
  double mean_unit(const UnitVector& u) const { return 0.9 - 0.5 * u[dim::ice] - 0.4 * u[dim::angle] + 0.1 * u[dim::kp]; }
};

}  // namespace

TEST_CASE("reference latent readings give the expected map coefficients", "[calibration]") {
  const auto ice = fit_linear_map({0.35, 0.0}, {1.26, 1.0}, dim::ice);
  CHECK_THAT(ice.slope(), WithinAbs(1.10, 0.01));
  CHECK_THAT(ice.intercept(), WithinAbs(-0.38, 0.01));

  const auto angle = fit_linear_map({0.095, 0.0}, {-1.63, 30.0}, dim::angle);
  CHECK_THAT(angle.slope(), WithinAbs(-17.39, 0.01));
  CHECK_THAT(angle.intercept(), WithinAbs(1.65, 0.01));
}

TEST_CASE("endpoints map exactly and the map is affine", "[calibration]") {
  const auto m = fit_linear_map({0.095, 0.0}, {-1.63, 30.0}, dim::angle);
  CHECK(m.evaluate(0.095) == 0.0);
  CHECK(m.evaluate(-1.63) == 30.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng), b = u(rng), t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double lhs = m.evaluate(t * a + (1 - t) * b);
    const double rhs = t * m.evaluate(a) + (1 - t) * m.evaluate(b);
    CHECK_THAT(lhs, WithinAbs(rhs, 1e-9));
  }
}

TEST_CASE("degenerate or invalid endpoints are rejected", "[calibration]") {
  CHECK_THROWS_AS(fit_linear_map({0.5, 0.0}, {0.5, 1.0}, dim::ice), ConfigError);
  CHECK_THROWS_AS(fit_linear_map({0.1, 0.0}, {0.5, 1.0}, dim::kp), ConfigError);
  CHECK_THROWS_AS(fit_linear_map({0.1, 0.0}, {std::nan(""), 1.0}, dim::ice), ConfigError);
}

TEST_CASE("mapped values are clamped into bounds", "[calibration]") {
  const auto m = fit_linear_map({0.35, 0.0}, {1.26, 1.0}, dim::ice);
  const auto over = apply_map(m, 2.0);
  CHECK(over.value == 1.0);
  CHECK(over.clamped);
  const auto inside = apply_map(m, 0.8);
  CHECK_FALSE(inside.clamped);
  CHECK_THAT(inside.value, WithinAbs((0.8 - 0.35) / 0.91, 1e-12));
}

TEST_CASE("binary ice decoding uses the feature-space midpoint", "[calibration]") {
  CHECK(decode_binary(0.5) == IcePresence::present);
  CHECK(decode_binary(0.4999) == IcePresence::absent);
  CHECK(decode_binary(1.0) == IcePresence::present);
  // A raw reading of 0.80 sits just below the midpoint after mapping.
  const auto m = fit_linear_map({0.35, 0.0}, {1.26, 1.0}, dim::ice);
  CHECK(decode_binary(apply_map(m, 0.80).value) == IcePresence::absent);
  CHECK(decode_binary(apply_map(m, 0.81).value) == IcePresence::present);
}

TEST_CASE("identity calibration equals direct prediction", "[calibration]") {
  const StubModel model;
  const AttainmentQuery q(model, 0.6);
  const auto cal = Calibration::identity();
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const auto raw = attain::testing::random_raw(rng);
    const auto x = FeatureParameterPoint::from_array(raw);
    const auto p = calibrated_predict(q, cal, {raw[dim::ice], raw[dim::angle]}, x.theta);
    REQUIRE(p.x == x);
    REQUIRE(p.probability == success_probability(q, x));
    REQUIRE(p.attainable == is_attainable(q, x));
    REQUIRE_FALSE(p.clamped);
  }
}

TEST_CASE("calibration file round-trips", "[calibration]") {
  attain::testing::TempDir dir;
  const Calibration c{fit_linear_map({0.35, 0.0}, {1.26, 1.0}, dim::ice),
                      fit_linear_map({0.095, 0.0}, {-1.63, 30.0}, dim::angle)};
  save_calibration(c, dir / "cal.json");
  const auto back = load_calibration(dir / "cal.json");
  CHECK(back.ice.first() == c.ice.first());
  CHECK(back.ice.second() == c.ice.second());
  CHECK(back.angle.slope() == c.angle.slope());
  CHECK(back.angle.intercept() == c.angle.intercept());

  attain::testing::spit(dir / "old.json", R"({"schema":"attainment-calibration-v0","maps":[]})");
  CHECK_THROWS_AS(load_calibration(dir / "old.json"), VersionError);
  attain::testing::spit(dir / "half.json", R"({"schema":"attainment-calibration-v1","maps":[]})");
  CHECK_THROWS_AS(load_calibration(dir / "half.json"), ParseError);
  CHECK_THROWS_AS(load_calibration(dir / "none.json"), IoError);
}
