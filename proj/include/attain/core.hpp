#pragma once

// Domain types shared by every attain module: the 5-D feature-parameter
// point, its bounds, the unit-cube normalization and the error hierarchy.
//
// Coordinate order is fixed everywhere as [ice, angle, kp, ki, kd].

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace attain {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate fell outside its DomainBounds interval (or a fixed feature range).
class BoundsError : public Error {
 public:
  BoundsError(std::string dim, const std::string& what)
      : Error(what), dim_(std::move(dim)) {}
  const std::string& dim() const noexcept { return dim_; }

 private:
  std::string dim_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Dimensions
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDims = 5;

namespace dim {
inline constexpr std::size_t ice = 0;
inline constexpr std::size_t angle = 1;
inline constexpr std::size_t kp = 2;
inline constexpr std::size_t ki = 3;
inline constexpr std::size_t kd = 4;
}  // namespace dim

inline constexpr std::array<std::string_view, kDims> kDimNames{"ice", "angle", "kp", "ki", "kd"};

inline std::optional<std::size_t> dim_index(std::string_view name) {
  for (std::size_t d = 0; d < kDims; ++d) {
    if (kDimNames[d] == name) return d;
  }
  if (name == "angle_deg") return dim::angle;
  return std::nullopt;
}

/// Raw coordinates in canonical order.
using RawVector = std::array<double, kDims>;
/// Coordinates affinely mapped into [0,1]^5.
using UnitVector = std::array<double, kDims>;

namespace detail {

inline void require_finite(double v, std::string_view name) {
  if (!std::isfinite(v)) {
    throw BoundsError(std::string(name), std::string(name) + " must be finite");
  }
}

inline void require_in(double v, double lo, double hi, std::string_view name) {
  require_finite(v, name);
  if (v < lo || v > hi) {
    throw BoundsError(std::string(name), std::string(name) + " = " + std::to_string(v) +
                                             " outside [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "]");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Value types
// ---------------------------------------------------------------------------

/// Environment features: synthetic-ice indicator (continuous in [0,1]) and ramp angle in degrees.
class FeatureVector {
 public:
  static constexpr double kMaxAngleDeg = 30.0;

  FeatureVector() = default;
  FeatureVector(double ice, double angle_deg) : ice_(ice), angle_deg_(angle_deg) {
    detail::require_in(ice, 0.0, 1.0, "ice");
    detail::require_in(angle_deg, 0.0, kMaxAngleDeg, "angle");
  }

  double ice() const noexcept { return ice_; }
  double angle_deg() const noexcept { return angle_deg_; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  double ice_ = 0.0;
  double angle_deg_ = 0.0;
};

/// PID gains. Upper limits come from DomainBounds and are checked at normalization.
class GainVector {
 public:
  GainVector() = default;
  GainVector(double kp, double ki, double kd) : kp_(kp), ki_(ki), kd_(kd) {
    detail::require_finite(kp, "kp");
    detail::require_finite(ki, "ki");
    detail::require_finite(kd, "kd");
    if (kp < 0.0) throw BoundsError("kp", "kp must be >= 0");
    if (ki < 0.0) throw BoundsError("ki", "ki must be >= 0");
    if (kd < 0.0) throw BoundsError("kd", "kd must be >= 0");
  }

  double kp() const noexcept { return kp_; }
  double ki() const noexcept { return ki_; }
  double kd() const noexcept { return kd_; }

  friend bool operator==(const GainVector&, const GainVector&) = default;

 private:
  double kp_ = 0.0;
  double ki_ = 0.0;
  double kd_ = 0.0;
};

struct FeatureParameterPoint {
  FeatureVector z;
  GainVector theta;

  RawVector to_array() const noexcept {
    return {z.ice(), z.angle_deg(), theta.kp(), theta.ki(), theta.kd()};
  }

  static FeatureParameterPoint from_array(const RawVector& v) {
    return {FeatureVector(v[dim::ice], v[dim::angle]), GainVector(v[dim::kp], v[dim::ki], v[dim::kd])};
  }

  friend bool operator==(const FeatureParameterPoint&, const FeatureParameterPoint&) = default;
};

enum class TrialSource { simulated, physical };

inline std::string_view to_string(TrialSource s) noexcept {
  return s == TrialSource::simulated ? "simulated" : "physical";
}

inline std::optional<TrialSource> parse_source(std::string_view s) noexcept {
  if (s == "simulated") return TrialSource::simulated;
  if (s == "physical") return TrialSource::physical;
  return std::nullopt;
}

class TrialRecord {
 public:
  TrialRecord(FeatureParameterPoint x, int y, std::int64_t seed, TrialSource source)
      : x_(x), y_(y), seed_(seed), source_(source) {
    if (y != 0 && y != 1) throw ConfigError("trial outcome must be 0 or 1");
  }

  const FeatureParameterPoint& x() const noexcept { return x_; }
  int y() const noexcept { return y_; }
  std::int64_t seed() const noexcept { return seed_; }
  TrialSource source() const noexcept { return source_; }

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;

 private:
  FeatureParameterPoint x_;
  int y_;
  std::int64_t seed_;
  TrialSource source_;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

class DomainBounds {
 public:
  /// ice [0,1], angle [0,30], kp [0,2], ki [0,0.1], kd [0,0.5].
  DomainBounds() : DomainBounds(std::array<Interval, kDims>{{{0.0, 1.0}, {0.0, 30.0}, {0.0, 2.0}, {0.0, 0.1}, {0.0, 0.5}}}) {}

  explicit DomainBounds(const std::array<Interval, kDims>& dims) : dims_(dims) {
    for (std::size_t d = 0; d < kDims; ++d) {
      const auto& iv = dims_[d];
      if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
        throw ConfigError("bounds for " + std::string(kDimNames[d]) + " must satisfy lo < hi");
      }
    }
  }

  const Interval& operator[](std::size_t d) const noexcept { return dims_[d]; }
  const std::array<Interval, kDims>& intervals() const noexcept { return dims_; }

  bool contains(const RawVector& v) const noexcept {
    for (std::size_t d = 0; d < kDims; ++d) {
      if (!(v[d] >= dims_[d].lo && v[d] <= dims_[d].hi)) return false;
    }
    return true;
  }

  void check(const RawVector& v) const {
    for (std::size_t d = 0; d < kDims; ++d) {
      detail::require_in(v[d], dims_[d].lo, dims_[d].hi, kDimNames[d]);
    }
  }

  friend bool operator==(const DomainBounds&, const DomainBounds&) = default;

 private:
  std::array<Interval, kDims> dims_;
};

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

inline UnitVector normalize(const RawVector& v, const DomainBounds& b) {
  b.check(v);
  UnitVector u{};
  for (std::size_t d = 0; d < kDims; ++d) u[d] = (v[d] - b[d].lo) / b[d].width();
  return u;
}

inline UnitVector normalize(const FeatureParameterPoint& x, const DomainBounds& b) {
  return normalize(x.to_array(), b);
}

/// Inverse of normalize; results are clamped into the bounds to absorb rounding.
inline RawVector denormalize_array(const UnitVector& u, const DomainBounds& b) {
  RawVector v{};
  for (std::size_t d = 0; d < kDims; ++d) {
    detail::require_finite(u[d], kDimNames[d]);
    const double raw = b[d].lo + u[d] * b[d].width();
    v[d] = std::min(std::max(raw, b[d].lo), b[d].hi);
  }
  return v;
}

inline FeatureParameterPoint denormalize(const UnitVector& u, const DomainBounds& b) {
  return FeatureParameterPoint::from_array(denormalize_array(u, b));
}

}  // namespace attain
