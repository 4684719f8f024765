#pragma once

// Per-feature linear maps from raw encoder latents to model features, fitted
// exactly through two (raw, feature) endpoint readings.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "attain/core.hpp"
#include "attain/region.hpp"
#include "json.hpp"

namespace attain {

struct Endpoint {
  double raw = 0.0;
  double feature = 0.0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

class LinearMap {
 public:
  LinearMap(Endpoint p1, Endpoint p2, std::size_t feature_dim) : p1_(p1), p2_(p2), dim_(feature_dim) {
    if (feature_dim != dim::ice && feature_dim != dim::angle) {
      throw ConfigError("linear maps apply to feature dims (ice, angle) only");
    }
    for (double v : {p1.raw, p1.feature, p2.raw, p2.feature}) {
      if (!std::isfinite(v)) throw ConfigError("calibration endpoints must be finite");
    }
    if (p1.raw == p2.raw) throw ConfigError("degenerate calibration endpoints: raw readings are equal");
    slope_ = (p2.feature - p1.feature) / (p2.raw - p1.raw);
    intercept_ = p1.feature - slope_ * p1.raw;
  }

  static LinearMap identity(std::size_t feature_dim, const DomainBounds& b = {}) {
    return LinearMap({b[feature_dim].lo, b[feature_dim].lo}, {b[feature_dim].hi, b[feature_dim].hi}, feature_dim);
  }

  double slope() const noexcept { return slope_; }
  double intercept() const noexcept { return intercept_; }
  std::size_t feature_dim() const noexcept { return dim_; }
  const Endpoint& first() const noexcept { return p1_; }
  const Endpoint& second() const noexcept { return p2_; }

  /// Unclamped image of a raw reading. Endpoints map to their features exactly.
  double evaluate(double raw) const noexcept {
    if (raw == p1_.raw) return p1_.feature;
    if (raw == p2_.raw) return p2_.feature;
    return slope_ * raw + intercept_;
  }

 private:
  Endpoint p1_, p2_;
  std::size_t dim_;
  double slope_ = 0.0;
  double intercept_ = 0.0;
};

inline LinearMap fit_linear_map(Endpoint p1, Endpoint p2, std::size_t feature_dim) {
  return LinearMap(p1, p2, feature_dim);
}

struct MappedFeature {
  double value = 0.0;
  bool clamped = false;
};

inline MappedFeature apply_map(const LinearMap& m, double raw, const DomainBounds& b = {}) {
  if (!std::isfinite(raw)) throw ConfigError("raw latent reading must be finite");
  const double v = m.evaluate(raw);
  const auto& iv = b[m.feature_dim()];
  const double c = std::clamp(v, iv.lo, iv.hi);
  return {c, c != v};
}

enum class IcePresence { absent, present };

/// Midpoint rule in feature space: present iff value >= 0.5.
inline IcePresence decode_binary(double value) {
  if (!std::isfinite(value)) throw ConfigError("feature value must be finite");
  return value >= 0.5 ? IcePresence::present : IcePresence::absent;
}

/// One map per feature dimension: [ice, angle].
struct Calibration {
  LinearMap ice;
  LinearMap angle;

  static Calibration identity(const DomainBounds& b = {}) {
    return {LinearMap::identity(dim::ice, b), LinearMap::identity(dim::angle, b)};
  }
};

struct CalibratedPrediction {
  double probability = 0.0;
  bool attainable = false;
  FeatureParameterPoint x;
  bool clamped = false;
};

/// Maps raw latents [ice_raw, angle_raw] into features, then queries the region.
template <PosteriorModel M>
CalibratedPrediction calibrated_predict(const AttainmentQuery<M>& q, const Calibration& cal,
                                        const std::array<double, 2>& raw_latents, const GainVector& theta) {
  const auto ice = apply_map(cal.ice, raw_latents[0], q.bounds());
  const auto angle = apply_map(cal.angle, raw_latents[1], q.bounds());
  CalibratedPrediction out;
  out.x = {FeatureVector(ice.value, angle.value), theta};
  out.clamped = ice.clamped || angle.clamped;
  out.probability = success_probability(q, out.x);
  out.attainable = out.probability >= q.eta_p();
  return out;
}

// ---------------------------------------------------------------------------
// Calibration file
// ---------------------------------------------------------------------------

inline constexpr std::string_view kCalibrationSchema = "attainment-calibration-v1";

inline nlohmann::ordered_json calibration_to_json(const Calibration& c) {
  auto one = [](const LinearMap& m) {
    nlohmann::ordered_json j;
    j["dim"] = std::string(kDimNames[m.feature_dim()]);
    j["endpoints"] = {{{"raw", m.first().raw}, {"feature", m.first().feature}},
                      {{"raw", m.second().raw}, {"feature", m.second().feature}}};
    j["slope"] = m.slope();
    j["intercept"] = m.intercept();
    return j;
  };
  nlohmann::ordered_json j;
  j["schema"] = std::string(kCalibrationSchema);
  j["maps"] = {one(c.ice), one(c.angle)};
  return j;
}

inline Calibration calibration_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema")) throw ParseError(0, "calibration file has no schema");
  if (j["schema"] != kCalibrationSchema) {
    throw VersionError("unsupported calibration schema " + j["schema"].dump());
  }
  try {
    std::optional<LinearMap> ice, angle;
    for (const auto& m : j.at("maps")) {
      const auto d = dim_index(m.at("dim").get<std::string>());
      const auto& e = m.at("endpoints");
      if (!d || e.size() != 2) throw ParseError(0, "bad calibration map entry");
      LinearMap lm({e[0].at("raw").get<double>(), e[0].at("feature").get<double>()},
                   {e[1].at("raw").get<double>(), e[1].at("feature").get<double>()}, *d);
      (*d == dim::ice ? ice : angle) = lm;
    }
    if (!ice || !angle) throw ParseError(0, "calibration needs one map for ice and one for angle");
    return {*ice, *angle};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed calibration file: ") + e.what());
  }
}

inline void save_calibration(const Calibration& c, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << calibration_to_json(c).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

inline Calibration load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return calibration_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed calibration file: ") + e.what());
  }
}

}  // namespace attain
