#pragma once

// Nearest attainable point under a freeze mask.
//
// solve() runs sequential importance sampling with resampling (SIR): a
// Gaussian proposal over the free dims is reweighted by feasibility times an
// annealed distance kernel, elites are resampled, and the proposal is refit to
// them. brute_force_nearest() enumerates a grid and serves as the oracle.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "attain/core.hpp"
#include "attain/region.hpp"
#include "json.hpp"

namespace attain {

struct FreezeMask {
  std::array<bool, kDims> frozen{};

  /// Features frozen: search over controller gains.
  static FreezeMask adaptive() { return {{true, true, false, false, false}}; }
  /// Gains frozen: search over environment features.
  static FreezeMask counterfactual() { return {{false, false, true, true, true}}; }

  void validate() const {
    if (std::all_of(frozen.begin(), frozen.end(), [](bool f) { return f; })) {
      throw ConfigError("freeze mask must leave at least one dimension free");
    }
  }

  std::vector<std::size_t> free_dims() const {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < kDims; ++d) {
      if (!frozen[d]) out.push_back(d);
    }
    return out;
  }

  std::string mode_name() const {
    if (frozen == adaptive().frozen) return "adaptive";
    if (frozen == counterfactual().frozen) return "counterfactual";
    return "masked";
  }

  friend bool operator==(const FreezeMask&, const FreezeMask&) = default;
};

struct SolverConfig {
  std::size_t population = 512;
  double elite_fraction = 0.125;
  int max_iterations = 50;
  double convergence_tol = 1e-3;
  std::uint64_t seed = 0;

  void validate() const {
    if (population < 16) throw ConfigError("population must be >= 16");
    if (!(elite_fraction > 0.0 && elite_fraction < 1.0)) throw ConfigError("elite_fraction must lie in (0, 1)");
    if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (!(convergence_tol > 0.0)) throw ConfigError("convergence_tol must be positive");
  }
};

struct SolutionResult {
  FeatureParameterPoint x_star;
  double distance = 0.0;
  double predicted = 0.0;
  bool feasible = false;
  int iterations = 0;
  std::size_t samples_used = 0;

  friend bool operator==(const SolutionResult&, const SolutionResult&) = default;
};

namespace detail {

inline constexpr double kInitialSpread = 0.3;
inline constexpr double kTauStart = 0.5;
inline constexpr double kTauEnd = 0.05;
/// Annealing length is fixed so a larger iteration budget only extends the run.
inline constexpr int kAnnealSteps = 50;
inline constexpr int kBisectionSteps = 30;
inline constexpr int kStallLimit = 8;
inline constexpr int kPolishPasses = 2;

inline double unit_distance(const UnitVector& a, const UnitVector& b) {
  double s = 0.0;
  for (std::size_t d = 0; d < kDims; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return std::sqrt(s);
}

/// Raw point with frozen coordinates copied verbatim from `query`.
inline FeatureParameterPoint compose_point(const RawVector& query, const UnitVector& u, const FreezeMask& mask,
                                           const DomainBounds& b) {
  const RawVector from_unit = denormalize_array(u, b);
  RawVector raw = query;
  for (std::size_t d = 0; d < kDims; ++d) {
    if (!mask.frozen[d]) raw[d] = from_unit[d];
  }
  return FeatureParameterPoint::from_array(raw);
}

}  // namespace detail

template <PosteriorModel M>
SolutionResult solve(const AttainmentQuery<M>& q, const FeatureParameterPoint& x, const FreezeMask& mask,
                     const SolverConfig& cfg = {}) {
  cfg.validate();
  mask.validate();
  const auto& b = q.bounds();
  const RawVector query = x.to_array();
  const UnitVector origin = normalize(query, b);

  SolutionResult res;
  res.x_star = x;
  res.predicted = q.probability_unit(origin);
  res.samples_used = 1;
  if (res.predicted >= q.eta_p()) {
    res.feasible = true;
    return res;
  }

  const auto free = mask.free_dims();
  const std::size_t k = free.size();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  std::vector<double> center(k), spread(k, detail::kInitialSpread);
  for (std::size_t f = 0; f < k; ++f) center[f] = origin[free[f]];

  double best_distance = std::numeric_limits<double>::infinity();

  // Candidates are verified on the raw point actually returned, so a feasible
  // result always passes is_attainable.
  auto offer = [&](const UnitVector& u) {
    const auto point = detail::compose_point(query, u, mask, b);
    const UnitVector nu = normalize(point, b);
    const double dist = detail::unit_distance(nu, origin);
    if (!(dist < best_distance)) return;
    const double p = q.probability_unit(nu);
    if (p < q.eta_p()) return;
    best_distance = dist;
    res.x_star = point;
    res.distance = dist;
    res.predicted = p;
    res.feasible = true;
  };

  const std::size_t n = cfg.population;
  const auto n_elite = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(cfg.elite_fraction * n)));
  std::vector<UnitVector> cand(n);
  std::vector<double> dist(n), logw(n);
  std::vector<char> ok(n);
  int stall = 0;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    res.iterations = it + 1;
    const double frac = static_cast<double>(std::min(it, detail::kAnnealSteps - 1)) / (detail::kAnnealSteps - 1);
    const double tau = detail::kTauStart * std::pow(detail::kTauEnd / detail::kTauStart, frac);
    const double prev_best = best_distance;

    std::size_t feasible_count = 0;
    std::size_t nearest = n;
    for (std::size_t i = 0; i < n; ++i) {
      UnitVector u = origin;
      for (std::size_t f = 0; f < k; ++f) u[free[f]] = std::clamp(center[f] + spread[f] * normal(rng), 0.0, 1.0);
      cand[i] = u;
      dist[i] = detail::unit_distance(u, origin);
      ok[i] = q.attainable_unit(u) ? 1 : 0;
      if (ok[i]) {
        ++feasible_count;
        if (nearest == n || dist[i] < dist[nearest]) nearest = i;
      }
    }
    res.samples_used += n;

    if (feasible_count == 0) {
      for (auto& s : spread) s = std::min(s * 1.5, 1.0);
      for (std::size_t f = 0; f < k; ++f) center[f] = origin[free[f]];
      continue;
    }

    offer(cand[nearest]);

    // The query is infeasible and cand[nearest] feasible, so the segment between
    // them crosses the region boundary; bisect toward the query.
    {
      double lo = 0.0, hi = 1.0;
      UnitVector probe = origin;
      for (int s = 0; s < detail::kBisectionSteps; ++s) {
        const double mid = 0.5 * (lo + hi);
        for (auto d : free) probe[d] = origin[d] + mid * (cand[nearest][d] - origin[d]);
        if (q.attainable_unit(probe)) hi = mid; else lo = mid;
      }
      for (auto d : free) probe[d] = origin[d] + hi * (cand[nearest][d] - origin[d]);
      res.samples_used += detail::kBisectionSteps;
      offer(probe);
    }

    double max_logw = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      logw[i] = ok[i] ? -dist[i] * dist[i] / (2.0 * tau * tau) : -std::numeric_limits<double>::infinity();
      max_logw = std::max(max_logw, logw[i]);
    }
    std::vector<double> cdf(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += ok[i] ? std::exp(logw[i] - max_logw) : 0.0;
      cdf[i] = total;
    }

    // Systematic resampling of elites.
    std::vector<double> mean(k, 0.0), sq(k, 0.0);
    const double u0 = uniform(rng);
    std::size_t idx = 0;
    for (std::size_t e = 0; e < n_elite; ++e) {
      const double target = (u0 + static_cast<double>(e)) / static_cast<double>(n_elite) * total;
      while (idx + 1 < n && cdf[idx] < target) ++idx;
      for (std::size_t f = 0; f < k; ++f) {
        const double v = cand[idx][free[f]];
        mean[f] += v;
        sq[f] += v * v;
      }
    }
    double widest = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
      const double m = mean[f] / static_cast<double>(n_elite);
      const double var = std::max(0.0, sq[f] / static_cast<double>(n_elite) - m * m);
      center[f] = m;
      spread[f] = std::max(0.5 * spread[f] + 0.5 * std::sqrt(var), 0.25 * cfg.convergence_tol);
      widest = std::max(widest, spread[f]);
    }

    stall = prev_best - best_distance < cfg.convergence_tol ? stall + 1 : 0;
    if (widest < cfg.convergence_tol || stall >= detail::kStallLimit) break;
  }

  if (!res.feasible) {
    res.x_star = x;
    res.distance = 0.0;
    return res;
  }

  // Polish: pull each free coordinate of the best point back toward the query
  // while it stays feasible.
  for (int pass = 0; pass < detail::kPolishPasses; ++pass) {
    for (auto d : free) {
      const UnitVector best = normalize(res.x_star, b);
      if (best[d] == origin[d]) continue;
      UnitVector probe = best;
      probe[d] = origin[d];
      res.samples_used += 1;
      if (q.attainable_unit(probe)) {
        offer(probe);
        continue;
      }
      double lo = 0.0, hi = 1.0;
      for (int s = 0; s < detail::kBisectionSteps; ++s) {
        const double mid = 0.5 * (lo + hi);
        probe[d] = origin[d] + mid * (best[d] - origin[d]);
        if (q.attainable_unit(probe)) hi = mid; else lo = mid;
      }
      probe[d] = origin[d] + hi * (best[d] - origin[d]);
      res.samples_used += detail::kBisectionSteps;
      offer(probe);
    }
  }
  return res;
}

/// Exhaustive grid search over the free dims (grid_res points per dim spanning
/// the bounds). Ties resolve to the lowest row-major grid index.
template <PosteriorModel M>
SolutionResult brute_force_nearest(const AttainmentQuery<M>& q, const FeatureParameterPoint& x,
                                   const FreezeMask& mask, std::size_t grid_res) {
  mask.validate();
  if (grid_res < 2) throw ConfigError("grid_res must be >= 2");
  const auto& b = q.bounds();
  const RawVector query = x.to_array();
  const UnitVector origin = normalize(query, b);
  const auto free = mask.free_dims();
  const std::size_t k = free.size();

  std::vector<double> axis(grid_res);
  for (std::size_t g = 0; g < grid_res; ++g) axis[g] = static_cast<double>(g) / static_cast<double>(grid_res - 1);

  std::size_t total = 1;
  for (std::size_t f = 0; f < k; ++f) total *= grid_res;

  std::vector<double> means;
  if constexpr (GridEvaluable<M>) {
    means = q.model().mean_on_grid(origin, free, axis);
  } else {
    means.resize(total);
    UnitVector u = origin;
    for (std::size_t c = 0; c < total; ++c) {
      std::size_t rem = c;
      for (std::size_t f = k; f-- > 0;) {
        u[free[f]] = axis[rem % grid_res];
        rem /= grid_res;
      }
      means[c] = q.model().mean_unit(u);
    }
  }

  std::size_t best = total;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < total; ++c) {
    if (std::clamp(means[c], 0.0, 1.0) < q.eta_p()) continue;
    std::size_t rem = c;
    double s = 0.0;
    for (std::size_t f = k; f-- > 0;) {
      const double t = axis[rem % grid_res] - origin[free[f]];
      s += t * t;
      rem /= grid_res;
    }
    if (s < best_sq) {
      best_sq = s;
      best = c;
    }
  }

  SolutionResult res;
  res.iterations = 1;
  res.samples_used = total;
  res.x_star = x;
  if (best == total) {
    res.predicted = q.probability_unit(origin);
    return res;
  }
  UnitVector u = origin;
  std::size_t rem = best;
  for (std::size_t f = k; f-- > 0;) {
    u[free[f]] = axis[rem % grid_res];
    rem /= grid_res;
  }
  res.x_star = detail::compose_point(query, u, mask, b);
  res.distance = std::sqrt(best_sq);
  res.predicted = std::clamp(means[best], 0.0, 1.0);
  res.feasible = true;
  return res;
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json solution_to_json(const FeatureParameterPoint& query, const FreezeMask& mask,
                                               const SolutionResult& r, double eta_p, std::uint64_t seed) {
  nlohmann::ordered_json j;
  const auto qa = query.to_array();
  const auto xa = r.x_star.to_array();
  j["mode"] = mask.mode_name();
  j["query"] = qa;
  auto frozen = nlohmann::ordered_json::array();
  for (std::size_t d = 0; d < kDims; ++d) {
    if (mask.frozen[d]) frozen.push_back(std::string(kDimNames[d]));
  }
  j["frozen"] = std::move(frozen);
  j["x_star"] = xa;
  j["distance"] = r.distance;
  j["predicted"] = r.predicted;
  j["eta_p"] = eta_p;
  j["feasible"] = r.feasible;
  j["iterations"] = r.iterations;
  j["samples_used"] = r.samples_used;
  j["seed"] = seed;
  return j;
}

/// One-line summary, e.g. "adaptive solution: kp 1.30 → 0.80, predicted 0.81".
inline std::string summarize(const FeatureParameterPoint& query, const FreezeMask& mask, const SolutionResult& r) {
  char buf[96];
  std::string s = mask.mode_name() + " solution: ";
  if (!r.feasible) {
    std::snprintf(buf, sizeof buf, "none found, predicted %.2f", r.predicted);
    return s + buf;
  }
  const auto qa = query.to_array();
  const auto xa = r.x_star.to_array();
  std::string changes;
  for (std::size_t d = 0; d < kDims; ++d) {
    if (mask.frozen[d] || qa[d] == xa[d]) continue;
    if (!changes.empty()) changes += ", ";
    std::snprintf(buf, sizeof buf, "%s %.2f → %.2f", std::string(kDimNames[d]).c_str(), qa[d], xa[d]);
    changes += buf;
  }
  if (changes.empty()) changes = "no change";
  std::snprintf(buf, sizeof buf, ", predicted %.2f", r.predicted);
  return s + changes + buf;
}

}  // namespace attain
