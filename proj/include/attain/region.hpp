#pragma once

// Attainment-region membership and 2-D slice extraction.
//
// A point belongs to the region when the clamped posterior mean reaches the
// threshold eta_p (inclusive).

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "attain/core.hpp"

namespace attain {

/// Anything exposing a posterior mean over the unit cube of a DomainBounds.
template <class M>
concept PosteriorModel = requires(const M& m, const UnitVector& u) {
  { m.bounds() } -> std::convertible_to<const DomainBounds&>;
  { m.mean_unit(u) } -> std::convertible_to<double>;
};

/// Models that can evaluate their mean on a tensor grid in one pass.
template <class M>
concept GridEvaluable = PosteriorModel<M> && requires(const M& m, const UnitVector& u,
                                                      std::span<const std::size_t> dims,
                                                      std::span<const double> axis) {
  { m.mean_on_grid(u, dims, axis) } -> std::convertible_to<std::vector<double>>;
};

template <PosteriorModel M>
class AttainmentQuery {
 public:
  static constexpr double kDefaultEta = 0.8;

  explicit AttainmentQuery(const M& model, double eta_p = kDefaultEta) : model_(&model), eta_p_(eta_p) {
    if (!(eta_p > 0.0 && eta_p < 1.0)) throw ConfigError("eta_p must lie in (0, 1)");
  }

  const M& model() const noexcept { return *model_; }
  double eta_p() const noexcept { return eta_p_; }
  const DomainBounds& bounds() const noexcept { return model_->bounds(); }

  double probability_unit(const UnitVector& u) const { return std::clamp(model_->mean_unit(u), 0.0, 1.0); }
  bool attainable_unit(const UnitVector& u) const { return probability_unit(u) >= eta_p_; }

 private:
  const M* model_;
  double eta_p_;
};

template <PosteriorModel M>
double success_probability(const AttainmentQuery<M>& q, const FeatureParameterPoint& x) {
  return q.probability_unit(normalize(x, q.bounds()));
}

template <PosteriorModel M>
bool is_attainable(const AttainmentQuery<M>& q, const FeatureParameterPoint& x) {
  return success_probability(q, x) >= q.eta_p();
}

// ---------------------------------------------------------------------------
// Slices
// ---------------------------------------------------------------------------

struct SliceSpec {
  static constexpr std::size_t kUnrestrictedSubgrid = 9;

  std::array<std::size_t, 2> free_dims{dim::angle, dim::kp};
  /// Value per dimension; nullopt marks an unrestricted dim. Entries for free dims are ignored.
  std::array<std::optional<double>, kDims> fixed{};
  std::size_t resolution = 100;

  void validate(const DomainBounds& b) const {
    if (free_dims[0] >= kDims || free_dims[1] >= kDims) throw ConfigError("free dims must be in 0..4");
    if (free_dims[0] == free_dims[1]) throw ConfigError("free dims must be distinct");
    if (resolution < 2) throw ConfigError("slice resolution must be >= 2");
    for (std::size_t d = 0; d < kDims; ++d) {
      if (is_free(d) || !fixed[d]) continue;
      detail::require_in(*fixed[d], b[d].lo, b[d].hi, kDimNames[d]);
    }
  }

  bool is_free(std::size_t d) const noexcept { return d == free_dims[0] || d == free_dims[1]; }
};

struct SliceCell {
  double coord_i = 0.0;
  double coord_j = 0.0;
  double probability = 0.0;
  bool attainable = false;
};

struct SliceGrid {
  SliceSpec spec;
  std::vector<double> axis_i;
  std::vector<double> axis_j;
  /// Row-major: index = i * resolution + j, i along free_dims[0].
  std::vector<SliceCell> cells;

  const SliceCell& at(std::size_t i, std::size_t j) const { return cells.at(i * spec.resolution + j); }

  std::size_t attainable_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.attainable; }));
  }
};

/// Inclusive evenly spaced axis over a bounds interval.
inline std::vector<double> axis_values(const Interval& iv, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = k + 1 == n ? iv.hi : iv.lo + iv.width() * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return v;
}

template <PosteriorModel M>
SliceGrid slice_grid(const AttainmentQuery<M>& q, const SliceSpec& s) {
  const auto& b = q.bounds();
  s.validate(b);

  SliceGrid g;
  g.spec = s;
  g.axis_i = axis_values(b[s.free_dims[0]], s.resolution);
  g.axis_j = axis_values(b[s.free_dims[1]], s.resolution);

  std::vector<std::size_t> open;
  for (std::size_t d = 0; d < kDims; ++d) {
    if (!s.is_free(d) && !s.fixed[d]) open.push_back(d);
  }
  std::vector<std::vector<double>> open_axes;
  std::size_t combos = 1;
  for (auto d : open) {
    open_axes.push_back(axis_values(b[d], SliceSpec::kUnrestrictedSubgrid));
    combos *= SliceSpec::kUnrestrictedSubgrid;
  }

  RawVector raw{};
  for (std::size_t d = 0; d < kDims; ++d) {
    if (!s.is_free(d) && s.fixed[d]) raw[d] = *s.fixed[d];
  }

  g.cells.reserve(s.resolution * s.resolution);
  for (std::size_t i = 0; i < s.resolution; ++i) {
    for (std::size_t j = 0; j < s.resolution; ++j) {
      raw[s.free_dims[0]] = g.axis_i[i];
      raw[s.free_dims[1]] = g.axis_j[j];
      double best = 0.0;
      for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rem = c;
        for (std::size_t k = open.size(); k-- > 0;) {
          raw[open[k]] = open_axes[k][rem % SliceSpec::kUnrestrictedSubgrid];
          rem /= SliceSpec::kUnrestrictedSubgrid;
        }
        const double p = success_probability(q, FeatureParameterPoint::from_array(raw));
        if (c == 0 || p > best) best = p;
      }
      g.cells.push_back({g.axis_i[i], g.axis_j[j], best, best >= q.eta_p()});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline void write_slice_csv(const SliceGrid& g, std::ostream& out) {
  out << kDimNames[g.spec.free_dims[0]] << ',' << kDimNames[g.spec.free_dims[1]] << ",probability,attainable\n";
  char buf[128];
  for (const auto& c : g.cells) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.17g,%d\n", c.coord_i, c.coord_j, c.probability,
                  c.attainable ? 1 : 0);
    out << buf;
  }
}

/// A trial projected onto the slice plane, for plot overlays.
struct SlicePoint {
  double coord_i = 0.0;
  double coord_j = 0.0;
  int outcome = 0;
};

/// Filled cells mark the region (light blue); overlaid dots are successes (grey)
/// and failures (red). free_dims[0] runs along the horizontal axis.
inline void write_slice_svg(const SliceGrid& g, const DomainBounds& b, std::span<const SlicePoint> points,
                            std::ostream& out) {
  constexpr double kW = 480.0, kH = 480.0, kMargin = 56.0;
  const auto di = g.spec.free_dims[0];
  const auto dj = g.spec.free_dims[1];
  const std::size_t n = g.spec.resolution;
  const double cw = kW / static_cast<double>(n), ch = kH / static_cast<double>(n);
  auto px = [&](double v) { return kMargin + (v - b[di].lo) / b[di].width() * kW; };
  auto py = [&](double v) { return kMargin + kH - (v - b[dj].lo) / b[dj].width() * kH; };

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                kW + 2 * kMargin, kH + 2 * kMargin, kW + 2 * kMargin, kH + 2 * kMargin);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.at(i, j).attainable) continue;
      std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"#add8e6\"/>\n",
                    kMargin + static_cast<double>(i) * cw, kMargin + kH - static_cast<double>(j + 1) * ch, cw, ch);
      out << buf;
    }
  }
  out << "</g>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" stroke=\"black\"/>\n",
                kMargin, kMargin, kW, kH);
  out << buf;
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"%s\" fill-opacity=\"0.8\"/>\n",
                  px(p.coord_i), py(p.coord_j), p.outcome == 1 ? "#808080" : "#d62728");
    out << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.0f\" y=\"%.0f\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">%s</text>\n",
                kMargin + kW / 2, kMargin + kH + 40, std::string(kDimNames[di]).c_str());
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.0f\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
                "transform=\"rotate(-90 16 %.0f)\">%s</text>\n",
                kMargin + kH / 2, kMargin + kH / 2, std::string(kDimNames[dj]).c_str());
  out << buf;
  for (int t = 0; t <= 4; ++t) {
    const double fi = b[di].lo + b[di].width() * t / 4.0;
    const double fj = b[dj].lo + b[dj].width() * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.0f\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">%g</text>\n"
                  "<text x=\"%.0f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                  px(fi), kMargin + kH + 16, fi, kMargin - 6, py(fj) + 4, fj);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace attain
