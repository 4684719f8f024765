#pragma once

// Shared fixtures for the unit tests.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "attain/core.hpp"

namespace attain::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("attain-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

inline RawVector random_raw(std::mt19937_64& rng, const DomainBounds& b = {}) {
  RawVector v{};
  for (std::size_t d = 0; d < kDims; ++d) v[d] = std::uniform_real_distribution<double>(b[d].lo, b[d].hi)(rng);
  return v;
}

inline UnitVector random_unit(std::mt19937_64& rng) {
  UnitVector u{};
  for (auto& c : u) c = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return u;
}

}  // namespace attain::testing
