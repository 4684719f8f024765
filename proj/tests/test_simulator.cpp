#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "attain/simulator.hpp"

using namespace attain;

namespace {

SimConfig noise_free() {
  SimConfig c;
  c.friction_noise_std = 0.0;
  return c;
}

GainVector random_gains(std::mt19937_64& rng) {
  const DomainBounds b;
  auto u = [&](std::size_t d) { return std::uniform_real_distribution<double>(b[d].lo, b[d].hi)(rng); };
  return {u(dim::kp), u(dim::ki), u(dim::kd)};
}

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace

TEST_CASE("flat metal ramp with moderate kp succeeds", "[simulator]") {
  for (std::int64_t seed : {0, 1, 99, 123456}) {
    const auto r = run_trial(FeatureVector(0, 0), GainVector(1.0, 0, 0), seed, {}, true);
    CHECK(r.record.y() == 1);
    CHECK(r.failure_reason == FailureReason::none);
    REQUIRE(r.trace);
    CHECK(r.trace->steps.back().position >= 4.0);
    CHECK(r.trace->steps.back().time < 20.0);
  }
}

TEST_CASE("steep iced ramp cannot be climbed", "[simulator]") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    CHECK(run_trial(FeatureVector(1, 25), random_gains(rng), k, noise_free()).record.y() == 0);
  }
}

TEST_CASE("weak proportional gain times out on a slope", "[simulator]") {
  const auto r = run_trial(FeatureVector(0, 10), GainVector(0.01, 0, 0), 3);
  CHECK(r.record.y() == 0);
  CHECK(r.failure_reason == FailureReason::timeout);
}

TEST_CASE("climbing is impossible when the slope exceeds friction", "[simulator]") {
  const auto cfg = noise_free();
  const double limit = degrees(std::atan(cfg.mu_ice));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const double angle = std::uniform_real_distribution<double>(std::nextafter(limit, 31.0), 30.0)(rng);
    const auto theta = random_gains(rng);
    REQUIRE(run_trial(FeatureVector(1, angle), theta, k, cfg).record.y() == 0);
  }
}

TEST_CASE("difficulty is monotone in the ramp angle", "[simulator]") {
  const auto cfg = noise_free();
  std::mt19937_64 rng(3);
  for (int k = 0; k < 60; ++k) {
    const auto theta = random_gains(rng);
    const double ice = k % 2 ? 1.0 : 0.0;
    bool failed = false;
    for (int a = 0; a <= 30; ++a) {
      const auto r = run_trial(FeatureVector(ice, a), theta, 0, cfg);
      if (failed) REQUIRE(r.record.y() == 0);
      if (r.failure_reason == FailureReason::timeout) failed = true;
    }
  }
}

TEST_CASE("high kp slips on ice where low kp succeeds", "[simulator]") {
  const auto cfg = noise_free();
  bool witness = false;
  for (int a = 0; a < 16 && !witness; ++a) {
    const FeatureVector z(1, a);
    for (double lo = 0.05; lo < 2.0 && !witness; lo += 0.05) {
      if (run_trial(z, GainVector(lo, 0, 0), 0, cfg).record.y() != 1) continue;
      for (double hi = lo + 0.05; hi <= 2.0; hi += 0.05) {
        const auto r = run_trial(z, GainVector(hi, 0, 0), 0, cfg);
        if (r.record.y() == 0 && r.failure_reason == FailureReason::slip) {
          witness = true;
          break;
        }
      }
    }
  }
  CHECK(witness);
}

TEST_CASE("identical seeds reproduce traces bitwise", "[simulator]") {
  const FeatureVector z(1, 8);
  const GainVector theta(1.2, 0.05, 0.25);
  const auto a = run_trial(z, theta, 77, {}, true);
  const auto b = run_trial(z, theta, 77, {}, true);
  REQUIRE(a.trace);
  CHECK(*a.trace == *b.trace);
  CHECK(a.record == b.record);
  CHECK(a.trace->outcome == a.record.y());
  CHECK((a.trace->outcome == 1) == (a.trace->failure_reason == FailureReason::none));

  std::ostringstream sa, sb;
  write_trace_csv(*a.trace, sa);
  write_trace_csv(*b.trace, sb);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("time,position,velocity,pid_output,traction_limit,slip\n", 0) == 0);
}

TEST_CASE("traces are only kept on request", "[simulator]") {
  CHECK_FALSE(run_trial(FeatureVector(0, 0), GainVector(1, 0, 0), 1).trace.has_value());
}

TEST_CASE("one record per point and seed", "[simulator]") {
  const std::vector<FeatureParameterPoint> pts{{FeatureVector(0, 0), GainVector(1, 0, 0)}};
  const std::vector<std::int64_t> seeds{1, 2, 3};
  const auto recs = sample_dataset(cross_plan(pts, seeds), DomainBounds{});
  REQUIRE(recs.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(recs[i].x() == pts[0]);
    CHECK(recs[i].seed() == seeds[i]);
    CHECK(recs[i].source() == TrialSource::simulated);
  }
}

TEST_CASE("reference plan size and seeds", "[simulator]") {
  const auto plan = reference_plan(7);
  CHECK(plan.size() == 420);
  CHECK(plan.front().seed == 7);
  for (const auto& t : plan) CHECK(DomainBounds{}.contains(t.x.to_array()));
}

TEST_CASE("noise-free labels do not depend on the seed", "[simulator]") {
  const auto cfg = noise_free();
  const auto a = sample_dataset(reference_plan(1), DomainBounds{}, cfg);
  const auto b = sample_dataset(reference_plan(5000), DomainBounds{}, cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].y() == b[i].y());
}

TEST_CASE("ice lowers the success rate on the reference plan", "[simulator]") {
  const auto recs = sample_dataset(reference_plan(7), DomainBounds{});
  std::size_t n[2] = {0, 0}, ok[2] = {0, 0};
  for (const auto& r : recs) {
    const int ice = r.x().z.ice() >= 0.5 ? 1 : 0;
    ++n[ice];
    ok[ice] += static_cast<std::size_t>(r.y());
  }
  REQUIRE(n[0] > 0);
  REQUIRE(n[1] > 0);
  CHECK(static_cast<double>(ok[1]) / n[1] < static_cast<double>(ok[0]) / n[0]);
}

TEST_CASE("integral and derivative gains rarely change outcomes", "[simulator]") {
  // Full reference grid; each (ice, angle, kp) cell shares one seed so only the
  // varied gain differs between compared trials.
  const double kps[] = {0.05, 0.2, 0.5, 0.8, 1.1, 1.4, 1.7, 2.0};
  std::size_t cells = 0, ki_flips = 0, kd_flips = 0;
  std::int64_t seed = 100;
  for (double ice : {0.0, 1.0}) {
    for (int a = 0; a <= 30; a += 5) {
      for (double kp : kps) {
        ++seed;
        const FeatureVector z(ice, a);
        for (double kd : {0.0, 0.25}) {
          const int base = run_trial(z, GainVector(kp, 0, kd), seed).record.y();
          for (double ki : {1e-5, 0.05}) {
            ++cells;
            ki_flips += run_trial(z, GainVector(kp, ki, kd), seed).record.y() != base;
          }
        }
        for (double ki : {0.0, 1e-5, 0.05}) {
          const int base = run_trial(z, GainVector(kp, ki, 0), seed).record.y();
          kd_flips += run_trial(z, GainVector(kp, ki, 0.25), seed).record.y() != base;
        }
      }
    }
  }
  const std::size_t kd_cells = 2 * 7 * 8 * 3;
  CHECK(static_cast<double>(ki_flips) / cells < 0.10);
  CHECK(static_cast<double>(kd_flips) / kd_cells < 0.10);
}

TEST_CASE("invalid configurations are rejected", "[simulator]") {
  SimConfig c;
  c.dt = 0.0;
  CHECK_THROWS_AS(run_trial(FeatureVector(0, 0), GainVector(1, 0, 0), 0, c), ConfigError);
  c = {};
  c.horizon = 0.01;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.mu_ice = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.setpoint_fraction = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.friction_noise_std = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(sample_dataset(std::vector<PlannedTrial>{{{FeatureVector(0, 0), GainVector(3, 0, 0)}, 0}},
                                 DomainBounds{}),
                  BoundsError);
}
