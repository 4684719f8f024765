#pragma once

// Seedable 1-D surrogate of a PID-controlled wheeled robot climbing a ramp.
//
// The controller tracks a wheel-speed set-point. Commanded acceleration is
// capped by traction (mu * g * cos angle); demand above traction feeds a slip
// accumulator and the trial fails once it reaches 1. A trial succeeds when the
// robot covers the ramp length within the horizon.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attain/core.hpp"

namespace attain {

struct SimConfig {
  double ramp_length = 4.0;         // m
  double dt = 0.05;                 // s
  double horizon = 30.0;            // s
  double v_max = 1.0;               // m/s
  double setpoint_fraction = 0.4;   // of v_max
  double mu_metal = 0.9;
  double mu_ice = 0.3;
  double friction_noise_std = 0.05; // drawn once per trial
  double slip_gain = 12.0;
  /// Acceleration (m/s^2) per unit of proportional output kp * e. The integral
  /// and derivative channels act unscaled.
  double drive_gain = 10.0;
  double integral_clamp = 10.0;
  double g = 9.81;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!std::isfinite(v) || v <= 0.0) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(ramp_length, "ramp_length");
    positive(dt, "dt");
    positive(v_max, "v_max");
    positive(g, "g");
    positive(drive_gain, "drive_gain");
    positive(integral_clamp, "integral_clamp");
    if (!std::isfinite(horizon) || horizon < dt) throw ConfigError("horizon must be >= dt");
    if (!(setpoint_fraction > 0.0 && setpoint_fraction <= 1.0)) {
      throw ConfigError("setpoint_fraction must lie in (0, 1]");
    }
    if (!(mu_ice > 0.0 && mu_ice < mu_metal)) throw ConfigError("need 0 < mu_ice < mu_metal");
    if (!(friction_noise_std >= 0.0)) throw ConfigError("friction_noise_std must be >= 0");
    if (!(slip_gain >= 0.0)) throw ConfigError("slip_gain must be >= 0");
  }
};

enum class FailureReason { none, timeout, slip };

inline std::string_view to_string(FailureReason r) noexcept {
  switch (r) {
    case FailureReason::none: return "none";
    case FailureReason::timeout: return "timeout";
    case FailureReason::slip: return "slip";
  }
  return "none";
}

struct TraceStep {
  double time = 0.0;
  double position = 0.0;
  double velocity = 0.0;
  double pid_output = 0.0;
  double traction_limit = 0.0;
  double slip = 0.0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct TrialTrace {
  std::vector<TraceStep> steps;
  int outcome = 0;
  FailureReason failure_reason = FailureReason::timeout;
  double friction = 0.0;

  friend bool operator==(const TrialTrace&, const TrialTrace&) = default;
};

struct TrialResult {
  TrialRecord record;
  FailureReason failure_reason;
  std::optional<TrialTrace> trace;
};

inline bool ice_present(const FeatureVector& z) noexcept { return z.ice() >= 0.5; }

inline TrialResult run_trial(const FeatureVector& z, const GainVector& theta, std::int64_t seed,
                             const SimConfig& cfg = {}, bool keep_trace = false) {
  cfg.validate();
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  double noise = 0.0;
  if (cfg.friction_noise_std > 0.0) noise = std::normal_distribution<double>(0.0, cfg.friction_noise_std)(rng);
  const double mu = std::max(0.0, (ice_present(z) ? cfg.mu_ice : cfg.mu_metal) + noise);

  const double angle = z.angle_deg() * std::numbers::pi / 180.0;
  const double traction = mu * cfg.g * std::cos(angle);
  const double gravity = cfg.g * std::sin(angle);
  const double v_set = cfg.setpoint_fraction * cfg.v_max;
  const auto steps = static_cast<long>(std::llround(cfg.horizon / cfg.dt));

  TrialTrace trace;
  trace.friction = mu;
  double v = 0.0, x = 0.0, integral = 0.0, slip = 0.0;
  double e_prev = v_set - v;
  FailureReason reason = FailureReason::timeout;

  for (long k = 0; k < steps; ++k) {
    const double e = v_set - v;
    integral = std::clamp(integral + e * cfg.dt, -cfg.integral_clamp, cfg.integral_clamp);
    const double a_cmd =
        cfg.drive_gain * theta.kp() * e + theta.ki() * integral + theta.kd() * (e - e_prev) / cfg.dt;
    e_prev = e;
    slip += cfg.dt * cfg.slip_gain * std::max(0.0, a_cmd - traction) * (1.5 - mu);
    const double a = std::min(a_cmd, traction) - gravity;
    if (slip < 1.0) {
      v = std::clamp(v + a * cfg.dt, 0.0, cfg.v_max);
      x += v * cfg.dt;
    }
    if (keep_trace) trace.steps.push_back({(k + 1) * cfg.dt, x, v, a_cmd, traction, slip});
    if (slip >= 1.0) {
      reason = FailureReason::slip;
      break;
    }
    if (x >= cfg.ramp_length) {
      reason = FailureReason::none;
      break;
    }
  }

  const int y = reason == FailureReason::none ? 1 : 0;
  trace.outcome = y;
  trace.failure_reason = reason;
  TrialResult out{TrialRecord({z, theta}, y, seed, TrialSource::simulated), reason, std::nullopt};
  if (keep_trace) out.trace = std::move(trace);
  return out;
}

inline void write_trace_csv(const TrialTrace& t, std::ostream& out) {
  out << "time,position,velocity,pid_output,traction_limit,slip\n";
  char buf[192];
  for (const auto& s : t.steps) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.time, s.position, s.velocity,
                  s.pid_output, s.traction_limit, s.slip);
    out << buf;
  }
}

/// One planned trial: a point and the seed to run it with.
struct PlannedTrial {
  FeatureParameterPoint x;
  std::int64_t seed = 0;
};

/// ice {0,1} x angle {0,5,..,30} x kp {0.05,0.2,0.5,0.8,1.1,1.4,1.7,2.0} x
/// ki {0,1e-5,0.05} x kd {0,0.25} (672 points), keeping plan index i iff
/// i % 8 < 5, which leaves 420 points. Point i runs with seed base_seed + i.
inline std::vector<PlannedTrial> reference_plan(std::int64_t base_seed) {
  static constexpr double kIce[] = {0.0, 1.0};
  static constexpr double kKp[] = {0.05, 0.2, 0.5, 0.8, 1.1, 1.4, 1.7, 2.0};
  static constexpr double kKi[] = {0.0, 1e-5, 0.05};
  static constexpr double kKd[] = {0.0, 0.25};
  std::vector<PlannedTrial> plan;
  std::int64_t index = 0;
  for (double ice : kIce) {
    for (int a = 0; a <= 30; a += 5) {
      for (double kp : kKp) {
        for (double ki : kKi) {
          for (double kd : kKd) {
            if (index % 8 < 5) {
              plan.push_back({{FeatureVector(ice, a), GainVector(kp, ki, kd)}, base_seed + index});
            }
            ++index;
          }
        }
      }
    }
  }
  return plan;
}

/// Every point crossed with every seed, point-major.
inline std::vector<PlannedTrial> cross_plan(std::span<const FeatureParameterPoint> points,
                                            std::span<const std::int64_t> seeds) {
  std::vector<PlannedTrial> plan;
  plan.reserve(points.size() * seeds.size());
  for (const auto& p : points) {
    for (auto s : seeds) plan.push_back({p, s});
  }
  return plan;
}

/// Runs every planned trial in plan order.
inline std::vector<TrialRecord> sample_dataset(std::span<const PlannedTrial> plan, const DomainBounds& bounds,
                                               const SimConfig& cfg = {}) {
  cfg.validate();
  for (const auto& t : plan) bounds.check(t.x.to_array());
  std::vector<TrialRecord> out;
  out.reserve(plan.size());
  for (const auto& t : plan) out.push_back(run_trial(t.x.z, t.x.theta, t.seed, cfg).record);
  return out;
}

}  // namespace attain
