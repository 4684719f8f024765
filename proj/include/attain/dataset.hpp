#pragma once

// Line-oriented trial dataset persistence.
//
//   {"schema":"attainment-v1","bounds":{"ice":[0,1],"angle":[0,30],...}}
//   {"x":[ice,angle,kp,ki,kd],"y":1,"seed":7,"source":"simulated"}
//   ...

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "attain/core.hpp"
#include "json.hpp"

namespace attain {

inline constexpr std::string_view kDatasetSchema = "attainment-v1";

struct Dataset {
  DomainBounds bounds;
  std::vector<TrialRecord> records;

  std::size_t success_count() const noexcept {
    std::size_t n = 0;
    for (const auto& r : records) n += static_cast<std::size_t>(r.y());
    return n;
  }
};

namespace detail {

inline nlohmann::ordered_json bounds_to_json(const DomainBounds& b) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t d = 0; d < kDims; ++d) {
    j[std::string(kDimNames[d])] = {b[d].lo, b[d].hi};
  }
  return j;
}

template <class Json>
DomainBounds bounds_from_json(const Json& j) {
  std::array<Interval, kDims> iv{};
  for (std::size_t d = 0; d < kDims; ++d) {
    const auto& e = j.at(std::string(kDimNames[d]));
    if (!e.is_array() || e.size() != 2) {
      throw ConfigError("bounds entry for " + std::string(kDimNames[d]) + " must be [lo, hi]");
    }
    iv[d] = {e[0].template get<double>(), e[1].template get<double>()};
  }
  return DomainBounds(iv);
}

inline nlohmann::ordered_json record_to_json(const TrialRecord& r) {
  nlohmann::ordered_json j;
  const auto x = r.x().to_array();
  j["x"] = {x[0], x[1], x[2], x[3], x[4]};
  j["y"] = r.y();
  j["seed"] = r.seed();
  j["source"] = std::string(to_string(r.source()));
  return j;
}

inline TrialRecord record_from_json(const nlohmann::json& j, const DomainBounds& b) {
  const auto& xs = j.at("x");
  if (!xs.is_array() || xs.size() != kDims) throw ConfigError("x must be an array of 5 numbers");
  RawVector x{};
  for (std::size_t d = 0; d < kDims; ++d) {
    if (!xs[d].is_number()) throw ConfigError("x[" + std::to_string(d) + "] is not a number");
    x[d] = xs[d].get<double>();
  }
  b.check(x);
  const auto& y = j.at("y");
  if (!y.is_number_integer()) throw ConfigError("y must be 0 or 1");
  const auto src = parse_source(j.at("source").get<std::string>());
  if (!src) throw ConfigError("source must be \"simulated\" or \"physical\"");
  return TrialRecord(FeatureParameterPoint::from_array(x), y.get<int>(), j.at("seed").get<std::int64_t>(),
                     *src);
}

}  // namespace detail

inline void save_dataset(std::span<const TrialRecord> records, const DomainBounds& bounds,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  nlohmann::ordered_json header;
  header["schema"] = std::string(kDatasetSchema);
  header["bounds"] = detail::bounds_to_json(bounds);
  out << header.dump() << '\n';
  for (const auto& r : records) out << detail::record_to_json(r).dump() << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

inline void save_dataset(const Dataset& d, const std::filesystem::path& path) {
  save_dataset(d.records, d.bounds, path);
}

inline Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header line");
  ++line_no;

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(line_no, std::string("malformed header: ") + e.what());
  }
  if (!header.is_object() || !header.contains("schema")) throw ParseError(line_no, "header has no schema");
  if (header["schema"] != kDatasetSchema) {
    throw VersionError("unsupported dataset schema " + header["schema"].dump() + ", expected " +
                       std::string(kDatasetSchema));
  }

  Dataset d;
  try {
    d.bounds = detail::bounds_from_json(header.at("bounds"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(line_no, std::string("bad bounds: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(line_no, e.what());
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      d.records.push_back(detail::record_from_json(nlohmann::json::parse(line), d.bounds));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const BoundsError& e) {
      throw ParseError(line_no, e.what());
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return d;
}

}  // namespace attain
