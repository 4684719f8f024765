#pragma once

// Exact dense Gaussian-process regression over unit-cube inputs with an ARD
// squared-exponential (RBF) kernel, regressing 0/1 trial outcomes around a
// constant prior mean equal to the empirical success rate.

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "attain/core.hpp"
#include "attain/dataset.hpp"
#include "json.hpp"

namespace attain {

struct GpHyperparams {
  static constexpr double kMinLengthscale = 1e-3;
  static constexpr double kMaxLengthscale = 1e3;
  static constexpr double kNoiseFloor = 1e-6;

  std::array<double, kDims> lengthscales{0.5, 0.5, 0.5, 0.5, 0.5};
  double signal_variance = 1.0;
  double noise_variance = 1e-2;

  void validate() const {
    for (std::size_t d = 0; d < kDims; ++d) {
      const double l = lengthscales[d];
      if (!std::isfinite(l) || l < kMinLengthscale || l > kMaxLengthscale) {
        throw ConfigError("lengthscale for " + std::string(kDimNames[d]) + " must lie in [1e-3, 1e3]");
      }
    }
    if (!std::isfinite(signal_variance) || signal_variance <= 0.0) {
      throw ConfigError("signal_variance must be positive");
    }
    if (!std::isfinite(noise_variance) || noise_variance < kNoiseFloor) {
      throw ConfigError("noise_variance must be >= 1e-6");
    }
  }

  friend bool operator==(const GpHyperparams&, const GpHyperparams&) = default;
};

/// Multi-start log marginal likelihood maximization settings.
struct GpFitConfig {
  int starts = 8;
  int max_iterations = 200;
  std::uint64_t seed = 0;
  /// Relative LML change below which a start is considered converged.
  double tolerance = 1e-9;

  void validate() const {
    if (starts < 1) throw ConfigError("starts must be >= 1");
    if (max_iterations < 0) throw ConfigError("max_iterations must be >= 0");
    if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
  }
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

namespace detail {

/// Scaled squared distances beyond this give kernel values below 1e-130; they
/// are flushed to zero so dense algebra never touches subnormals.
inline constexpr double kNegligibleSqDistance = 600.0;

inline double rbf_profile(double sq) noexcept { return sq > kNegligibleSqDistance ? 0.0 : std::exp(-0.5 * sq); }

}  // namespace detail

/// Squared-exponential kernel with per-dimension lengthscales.
inline double rbf_kernel(const UnitVector& a, const UnitVector& b, const GpHyperparams& h) {
  double s = 0.0;
  for (std::size_t d = 0; d < kDims; ++d) {
    const double t = (a[d] - b[d]) / h.lengthscales[d];
    s += t * t;
  }
  return h.signal_variance * detail::rbf_profile(s);
}

namespace detail {

inline constexpr double kJitterCeiling = 1e-2;

/// Cholesky of K_f + (noise + jitter) I, escalating jitter by 10x from the noise
/// floor up to 1e-2. Returns the jitter used, or nullopt if every attempt failed.
inline std::optional<double> factorize_with_jitter(const Eigen::MatrixXd& k_f, double noise,
                                                   Eigen::LLT<Eigen::MatrixXd>& llt) {
  const Eigen::Index n = k_f.rows();
  double jitter = 0.0;
  while (true) {
    Eigen::MatrixXd k = k_f;
    k.diagonal().array() += noise + jitter;
    llt.compute(k);
    if (llt.info() == Eigen::Success) {
      bool ok = true;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double lii = llt.matrixLLT()(i, i);
        if (!(lii > 0.0) || !std::isfinite(lii)) {
          ok = false;
          break;
        }
      }
      if (ok) return jitter;
    }
    jitter = jitter == 0.0 ? GpHyperparams::kNoiseFloor * 10.0 : jitter * 10.0;
    if (jitter > kJitterCeiling * (1.0 + 1e-12)) return std::nullopt;
  }
}

inline Eigen::MatrixXd gram_noise_free(const Eigen::MatrixXd& x, const GpHyperparams& h) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = h.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < kDims; ++d) {
        const double t = (x(i, d) - x(j, d)) / h.lengthscales[d];
        s += t * t;
      }
      k(i, j) = k(j, i) = h.signal_variance * detail::rbf_profile(s);
    }
  }
  return k;
}

}  // namespace detail

/// Immutable GP posterior conditioned on a dataset at fixed hyperparameters.
class FittedModel {
 public:
  /// Conditions on normalized inputs `x` (n x 5) and 0/1 targets at fixed hyperparameters.
  static FittedModel condition(Eigen::MatrixXd x, Eigen::VectorXd y, const GpHyperparams& h,
                               double prior_mean, const DomainBounds& bounds, std::uint64_t seed = 0) {
    h.validate();
    if (x.rows() == 0) throw ConfigError("cannot fit a GP to an empty dataset");
    if (x.cols() != static_cast<Eigen::Index>(kDims) || y.size() != x.rows()) {
      throw ConfigError("input/target shape mismatch");
    }
    FittedModel m;
    m.x_ = std::move(x);
    m.y_ = std::move(y);
    m.h_ = h;
    m.prior_mean_ = prior_mean;
    m.bounds_ = bounds;
    m.seed_ = seed;
    m.degenerate_ = (m.y_.array() == m.y_(0)).all();
    m.refactor();
    return m;
  }

  static FittedModel condition(std::span<const TrialRecord> records, const DomainBounds& bounds,
                               const GpHyperparams& h, std::optional<double> prior_mean = std::nullopt) {
    auto [x, y] = design(records, bounds);
    const double pm = prior_mean.value_or(y.size() > 0 ? y.mean() : 0.0);
    return condition(std::move(x), std::move(y), h, pm, bounds);
  }

  /// Normalized design matrix and target vector for a dataset.
  static std::pair<Eigen::MatrixXd, Eigen::VectorXd> design(std::span<const TrialRecord> records,
                                                            const DomainBounds& bounds) {
    const auto n = static_cast<Eigen::Index>(records.size());
    Eigen::MatrixXd x(n, kDims);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto u = normalize(records[i].x(), bounds);
      for (std::size_t d = 0; d < kDims; ++d) x(i, d) = u[d];
      y(i) = records[i].y();
    }
    return {std::move(x), std::move(y)};
  }

  const DomainBounds& bounds() const noexcept { return bounds_; }
  const GpHyperparams& hyperparams() const noexcept { return h_; }
  double prior_mean() const noexcept { return prior_mean_; }
  /// Diagonal jitter added beyond noise_variance to make the factorization succeed.
  double jitter() const noexcept { return jitter_; }
  bool degenerate() const noexcept { return degenerate_; }
  std::uint64_t seed() const noexcept { return seed_; }
  Eigen::Index size() const noexcept { return x_.rows(); }
  const Eigen::MatrixXd& inputs() const noexcept { return x_; }
  const Eigen::VectorXd& targets() const noexcept { return y_; }
  /// Weights alpha = (K + sigma^2 I)^-1 (y - prior_mean).
  const Eigen::VectorXd& weights() const noexcept { return alpha_; }

  /// Half the log-determinant of the factorized Gram matrix; stored in model files to
  /// detect a corrupted or mismatched reload.
  double gram_checksum() const noexcept { return half_log_det_; }

  double mean_unit(const UnitVector& u) const noexcept {
    double acc = 0.0;
    const auto n = x_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t d = 0; d < kDims; ++d) {
        const double t = (u[d] - x_(i, d)) * inv_l_[d];
        s += t * t;
      }
      acc += alpha_(i) * detail::rbf_profile(s);
    }
    return prior_mean_ + h_.signal_variance * acc;
  }

  Prediction predict_unit(const UnitVector& u) const {
    const auto n = x_.rows();
    Eigen::VectorXd k(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t d = 0; d < kDims; ++d) {
        const double t = (u[d] - x_(i, d)) * inv_l_[d];
        s += t * t;
      }
      k(i) = h_.signal_variance * detail::rbf_profile(s);
    }
    Prediction p;
    p.mean = prior_mean_ + k.dot(alpha_);
    const Eigen::VectorXd v = llt_.matrixL().solve(k);
    double var = h_.signal_variance - v.squaredNorm();
    if (var < 0.0) {
      if (var < -1e-9) throw NumericalError("posterior variance is negative beyond tolerance");
      var = 0.0;
    }
    p.variance = var;
    return p;
  }

  Prediction predict(const FeatureParameterPoint& x) const { return predict_unit(normalize(x, bounds_)); }
  double mean(const FeatureParameterPoint& x) const { return mean_unit(normalize(x, bounds_)); }

  double log_marginal_likelihood() const noexcept {
    const Eigen::VectorXd r = y_.array() - prior_mean_;
    return -0.5 * r.dot(alpha_) - half_log_det_ -
           0.5 * static_cast<double>(x_.rows()) * std::log(2.0 * std::numbers::pi);
  }

  /// Posterior mean on a tensor grid over `free_dims` (ascending), all other
  /// coordinates taken from `base`. `axis` holds unit-cube grid values shared by
  /// every free dim. Output is row-major with the last free dim fastest.
  ///
  /// Uses the product structure of the kernel, so values agree with mean_unit
  /// to rounding rather than bitwise.
  std::vector<double> mean_on_grid(const UnitVector& base, std::span<const std::size_t> free_dims,
                                   std::span<const double> axis) const {
    const auto n = x_.rows();
    const auto res = static_cast<Eigen::Index>(axis.size());
    const std::size_t k = free_dims.size();
    if (k == 0 || res == 0) throw ConfigError("grid needs at least one free dim and one axis value");

    std::array<bool, kDims> is_free{};
    for (auto d : free_dims) is_free.at(d) = true;

    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t d = 0; d < kDims; ++d) {
        if (is_free[d]) continue;
        const double t = (base[d] - x_(i, d)) * inv_l_[d];
        s += t * t;
      }
      w(i) = alpha_(i) * detail::rbf_profile(s);
    }

    std::vector<Eigen::MatrixXd> factor(k, Eigen::MatrixXd(res, n));
    for (std::size_t f = 0; f < k; ++f) {
      const std::size_t d = free_dims[f];
      for (Eigen::Index g = 0; g < res; ++g) {
        for (Eigen::Index i = 0; i < n; ++i) {
          const double t = (axis[g] - x_(i, d)) * inv_l_[d];
          factor[f](g, i) = detail::rbf_profile(t * t);
        }
      }
    }

    std::size_t total = 1;
    for (std::size_t f = 0; f < k; ++f) total *= static_cast<std::size_t>(res);
    std::vector<double> out(total);
    const double scale = h_.signal_variance;

    if (k == 1) {
      const Eigen::VectorXd r = factor[0] * w;
      for (Eigen::Index g = 0; g < res; ++g) out[g] = prior_mean_ + scale * r(g);
      return out;
    }

    // Odometer over the leading k-2 dims, one GEMM for the trailing pair.
    const std::size_t outer_dims = k - 2;
    std::vector<Eigen::Index> idx(outer_dims, 0);
    const auto block = static_cast<std::size_t>(res * res);
    Eigen::VectorXd wo(n);
    Eigen::MatrixXd lhs(res, n);
    Eigen::MatrixXd r(res, res);
    for (std::size_t offset = 0; offset < total; offset += block) {
      wo = w;
      for (std::size_t f = 0; f < outer_dims; ++f) wo.array() *= factor[f].row(idx[f]).transpose().array();
      lhs = factor[k - 2] * wo.asDiagonal();
      r.noalias() = lhs * factor[k - 1].transpose();
      for (Eigen::Index a = 0; a < res; ++a) {
        for (Eigen::Index b = 0; b < res; ++b) {
          out[offset + static_cast<std::size_t>(a * res + b)] = prior_mean_ + scale * r(a, b);
        }
      }
      for (std::size_t f = outer_dims; f-- > 0;) {
        if (++idx[f] < res) break;
        idx[f] = 0;
      }
    }
    return out;
  }

 private:
  FittedModel() = default;

  void refactor() {
    for (std::size_t d = 0; d < kDims; ++d) inv_l_[d] = 1.0 / h_.lengthscales[d];
    const Eigen::MatrixXd k_f = detail::gram_noise_free(x_, h_);
    const auto jitter = detail::factorize_with_jitter(k_f, h_.noise_variance, llt_);
    if (!jitter) throw NumericalError("Gram matrix is not positive definite even with jitter 1e-2");
    jitter_ = *jitter;
    const Eigen::VectorXd r = y_.array() - prior_mean_;
    alpha_ = llt_.solve(r);
    half_log_det_ = llt_.matrixLLT().diagonal().array().log().sum();
  }

  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  GpHyperparams h_;
  double prior_mean_ = 0.0;
  DomainBounds bounds_;
  std::uint64_t seed_ = 0;
  bool degenerate_ = false;

  std::array<double, kDims> inv_l_{};
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
  double half_log_det_ = 0.0;
};

namespace detail {

// Log-space parameter vector: [log l_0..log l_4, log s^2, log sigma_n^2].
inline constexpr std::size_t kParams = kDims + 2;
using ParamVector = std::array<double, kParams>;

inline GpHyperparams params_to_hyper(const ParamVector& p) {
  GpHyperparams h;
  for (std::size_t d = 0; d < kDims; ++d) h.lengthscales[d] = std::exp(p[d]);
  h.signal_variance = std::exp(p[kDims]);
  h.noise_variance = std::exp(p[kDims + 1]);
  return h;
}

inline ParamVector hyper_to_params(const GpHyperparams& h) {
  ParamVector p{};
  for (std::size_t d = 0; d < kDims; ++d) p[d] = std::log(h.lengthscales[d]);
  p[kDims] = std::log(h.signal_variance);
  p[kDims + 1] = std::log(h.noise_variance);
  return p;
}

struct ParamBox {
  ParamVector lo{};
  ParamVector hi{};

  ParamBox() {
    for (std::size_t d = 0; d < kDims; ++d) {
      lo[d] = std::log(GpHyperparams::kMinLengthscale);
      hi[d] = std::log(GpHyperparams::kMaxLengthscale);
    }
    lo[kDims] = std::log(1e-4);
    hi[kDims] = std::log(1e2);
    lo[kDims + 1] = std::log(GpHyperparams::kNoiseFloor);
    hi[kDims + 1] = std::log(1e1);
  }

  ParamVector project(ParamVector p) const {
    for (std::size_t j = 0; j < kParams; ++j) p[j] = std::clamp(p[j], lo[j], hi[j]);
    return p;
  }
};

/// Log marginal likelihood and its gradient in log-parameter space, sharing
/// pairwise squared differences across evaluations.
class LmlObjective {
 public:
  LmlObjective(const Eigen::MatrixXd& x, const Eigen::VectorXd& r) : r_(r) {
    const auto n = x.rows();
    for (std::size_t d = 0; d < kDims; ++d) {
      sq_[d].resize(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
          const double t = x(i, d) - x(j, d);
          sq_[d](i, j) = sq_[d](j, i) = t * t;
        }
      }
    }
  }

  /// Returns nullopt when the Gram matrix cannot be factorized at these parameters.
  std::optional<double> value(const ParamVector& p) {
    const auto h = params_to_hyper(p);
    const auto n = r_.size();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t d = 0; d < kDims; ++d) s.noalias() += sq_[d] / (h.lengthscales[d] * h.lengthscales[d]);
    k_f_ = h.signal_variance * s.unaryExpr(&rbf_profile);
    const auto jitter = factorize_with_jitter(k_f_, h.noise_variance, llt_);
    if (!jitter) return std::nullopt;
    alpha_ = llt_.solve(r_);
    const double half_log_det = llt_.matrixLLT().diagonal().array().log().sum();
    last_ = p;
    return -0.5 * r_.dot(alpha_) - half_log_det - 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  }

  /// Gradient at the parameters of the most recent successful value() call.
  ParamVector gradient() const {
    const auto h = params_to_hyper(last_);
    const auto n = r_.size();
    Eigen::MatrixXd w = llt_.solve(Eigen::MatrixXd::Identity(n, n));
    w = alpha_ * alpha_.transpose() - w;
    ParamVector g{};
    const Eigen::MatrixXd wk = w.cwiseProduct(k_f_);
    for (std::size_t d = 0; d < kDims; ++d) {
      g[d] = 0.5 * wk.cwiseProduct(sq_[d]).sum() / (h.lengthscales[d] * h.lengthscales[d]);
    }
    g[kDims] = 0.5 * wk.sum();
    g[kDims + 1] = 0.5 * h.noise_variance * w.trace();
    return g;
  }

 private:
  Eigen::VectorXd r_;
  std::array<Eigen::MatrixXd, kDims> sq_;
  Eigen::MatrixXd k_f_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  ParamVector last_{};
};

inline constexpr int kScreenIterations = 30;
inline constexpr std::size_t kSurvivors = 2;

struct StartResult {
  ParamVector params{};
  double lml = -std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Projected gradient ascent with Barzilai-Borwein step sizes and Armijo backtracking.
inline StartResult ascend(LmlObjective& obj, const ParamBox& box, ParamVector p, const GpFitConfig& cfg) {
  StartResult res;
  p = box.project(p);
  auto f = obj.value(p);
  if (!f) return res;
  ParamVector g = obj.gradient();
  double step = 0.1;
  res.params = p;
  res.lml = *f;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    res.iterations = it + 1;
    bool accepted = false;
    ParamVector q{};
    double fq = 0.0;
    for (int bt = 0; bt < 30; ++bt) {
      for (std::size_t j = 0; j < kParams; ++j) q[j] = p[j] + step * g[j];
      q = box.project(q);
      double dir = 0.0;
      for (std::size_t j = 0; j < kParams; ++j) dir += g[j] * (q[j] - p[j]);
      if (dir <= 0.0) break;
      const auto v = obj.value(q);
      if (v && *v >= *f + 1e-4 * dir) {
        fq = *v;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const ParamVector gq = obj.gradient();
    double ss = 0.0, sy = 0.0;
    for (std::size_t j = 0; j < kParams; ++j) {
      const double s = q[j] - p[j];
      const double y = gq[j] - g[j];
      ss += s * s;
      sy += s * y;
    }
    // Ascent: curvature shows up as s.y < 0.
    step = sy < 0.0 ? std::clamp(ss / -sy, 1e-6, 1e3) : std::min(step * 2.0, 1e3);

    const double change = fq - *f;
    p = q;
    f = fq;
    g = gq;
    res.params = p;
    res.lml = fq;
    if (change <= cfg.tolerance * (1.0 + std::abs(fq))) break;
  }
  return res;
}

}  // namespace detail

/// Fits hyperparameters by maximizing the log marginal likelihood over
/// `cfg.starts` seeded starts, then conditions on the data. Start 0 is a fixed
/// default; ties between starts go to the lowest index.
inline FittedModel fit(std::span<const TrialRecord> records, const DomainBounds& bounds,
                       const GpFitConfig& cfg = {}) {
  cfg.validate();
  if (records.empty()) throw ConfigError("cannot fit a GP to an empty dataset");
  auto [x, y] = FittedModel::design(records, bounds);
  const double prior_mean = y.mean();
  const Eigen::VectorXd r = y.array() - prior_mean;

  detail::LmlObjective obj(x, r);
  const detail::ParamBox box;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return std::log(lo) + unit(rng) * (std::log(hi) - std::log(lo)); };

  // Every start gets a short screening budget; only the most promising ones
  // continue to convergence. Ties keep the lower start index.
  std::vector<detail::StartResult> screened;
  GpFitConfig screen = cfg;
  screen.max_iterations = std::min(cfg.max_iterations, detail::kScreenIterations);
  for (int s = 0; s < cfg.starts; ++s) {
    detail::ParamVector p{};
    if (s == 0) {
      p = detail::hyper_to_params(GpHyperparams{{0.5, 0.5, 0.5, 0.5, 0.5}, 0.25, 1e-2});
    } else {
      for (std::size_t d = 0; d < kDims; ++d) p[d] = log_uniform(0.05, 5.0);
      p[kDims] = log_uniform(0.02, 2.0);
      p[kDims + 1] = log_uniform(1e-4, 1e-1);
    }
    screened.push_back(detail::ascend(obj, box, p, screen));
  }
  std::vector<std::size_t> order(screened.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return screened[a].lml > screened[b].lml; });

  detail::StartResult best;
  const auto survivors = std::min<std::size_t>(order.size(), detail::kSurvivors);
  for (std::size_t k = 0; k < survivors; ++k) {
    auto res = screened[order[k]];
    if (!std::isfinite(res.lml)) continue;
    if (cfg.max_iterations > screen.max_iterations) {
      GpFitConfig rest = cfg;
      rest.max_iterations = cfg.max_iterations - res.iterations;
      if (rest.max_iterations > 0) {
        const auto more = detail::ascend(obj, box, res.params, rest);
        if (more.lml >= res.lml) res = more;
      }
    }
    if (res.lml > best.lml) best = res;
  }
  if (!std::isfinite(best.lml)) throw NumericalError("no start produced a factorizable Gram matrix");

  return FittedModel::condition(std::move(x), std::move(y), detail::params_to_hyper(best.params), prior_mean,
                                bounds, cfg.seed);
}

// ---------------------------------------------------------------------------
// Model file
// ---------------------------------------------------------------------------

inline constexpr std::string_view kModelSchema = "attainment-gp-v1";

inline nlohmann::ordered_json model_to_json(const FittedModel& m) {
  nlohmann::ordered_json j;
  j["schema"] = std::string(kModelSchema);
  j["bounds"] = detail::bounds_to_json(m.bounds());
  const auto& h = m.hyperparams();
  j["hyperparams"] = {{"lengthscales", h.lengthscales},
                      {"signal_variance", h.signal_variance},
                      {"noise_variance", h.noise_variance}};
  j["prior_mean"] = m.prior_mean();
  j["seed"] = m.seed();
  j["degenerate"] = m.degenerate();
  j["gram_checksum"] = m.gram_checksum();
  auto inputs = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    inputs.push_back({m.inputs()(i, 0), m.inputs()(i, 1), m.inputs()(i, 2), m.inputs()(i, 3), m.inputs()(i, 4)});
  }
  j["inputs"] = std::move(inputs);
  j["targets"] = std::vector<double>(m.targets().data(), m.targets().data() + m.size());
  return j;
}

inline FittedModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema")) throw ParseError(0, "model file has no schema");
  if (j["schema"] != kModelSchema) {
    throw VersionError("unsupported model schema " + j["schema"].dump() + ", expected " + std::string(kModelSchema));
  }
  try {
    const auto bounds = detail::bounds_from_json(j.at("bounds"));
    GpHyperparams h;
    const auto& hj = j.at("hyperparams");
    h.lengthscales = hj.at("lengthscales").get<std::array<double, kDims>>();
    h.signal_variance = hj.at("signal_variance").get<double>();
    h.noise_variance = hj.at("noise_variance").get<double>();
    const auto& in = j.at("inputs");
    const auto& tg = j.at("targets");
    if (in.size() != tg.size()) throw ParseError(0, "inputs and targets differ in length");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(in.size()), kDims);
    Eigen::VectorXd y(static_cast<Eigen::Index>(tg.size()));
    for (std::size_t i = 0; i < in.size(); ++i) {
      const auto row = in[i].get<std::array<double, kDims>>();
      for (std::size_t d = 0; d < kDims; ++d) x(static_cast<Eigen::Index>(i), d) = row[d];
      y(static_cast<Eigen::Index>(i)) = tg[i].get<double>();
    }
    auto m = FittedModel::condition(std::move(x), std::move(y), h, j.at("prior_mean").get<double>(), bounds,
                                    j.at("seed").get<std::uint64_t>());
    const double stored = j.at("gram_checksum").get<double>();
    if (std::abs(stored - m.gram_checksum()) > 1e-9 * (1.0 + std::abs(stored))) {
      throw NumericalError("model checksum mismatch: stored " + std::to_string(stored) + ", recomputed " +
                           std::to_string(m.gram_checksum()));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed model file: ") + e.what());
  }
}

inline void save_model(const FittedModel& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << model_to_json(m).dump(1) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

inline FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed model file: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace attain
