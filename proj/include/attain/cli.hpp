#pragma once

// Command-line front end: sample, fit, predict, region, solve, calibrate, replay.
//
// Exit codes: 0 ok, 2 configuration/bounds error, 3 I/O or unreadable input,
// 4 numerical failure. Every command that writes an output file also writes
// <output>.manifest.json recording how to reproduce it.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "attain/calibration.hpp"
#include "attain/core.hpp"
#include "attain/dataset.hpp"
#include "attain/gp.hpp"
#include "attain/region.hpp"
#include "attain/simulator.hpp"
#include "attain/solver.hpp"
#include "json.hpp"

namespace attain::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr const char* kSeedEnv = "ATTAIN_SEED";

enum ExitCode : int { kOk = 0, kConfig = 2, kIo = 3, kNumerical = 4 };

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string file_digest(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return "";
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(fnv1a(ss.str()));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_number(const std::string& s, std::string_view what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + std::string(what) + " value '" + s + "'");
  }
}

inline std::int64_t parse_integer(const std::string& s, std::string_view what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + std::string(what) + " value '" + s + "' as an integer");
  }
}

inline std::vector<double> parse_list(const std::string& s, std::string_view what) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_number(t, what));
  return out;
}

inline RawVector parse_point_vector(const std::string& s) {
  const auto v = parse_list(s, "x");
  if (v.size() != kDims) throw ConfigError("-x needs 5 comma-separated values: ice,angle,kp,ki,kd");
  return {v[0], v[1], v[2], v[3], v[4]};
}

/// "ice=0,angle=10,kp=1"; unnamed dims default to 0.
inline RawVector parse_named_point(const std::string& s) {
  RawVector v{};
  for (const auto& tok : split(s, ',')) {
    const auto kv = split(tok, '=');
    if (kv.size() != 2) throw ConfigError("expected name=value, got '" + tok + "'");
    const auto d = dim_index(kv[0]);
    if (!d) throw ConfigError("unknown dimension '" + kv[0] + "'");
    v[*d] = parse_number(kv[1], kv[0]);
  }
  return v;
}

inline std::size_t parse_dim(const std::string& name) {
  const auto d = dim_index(name);
  if (!d) throw ConfigError("unknown dimension '" + name + "'");
  return *d;
}

/// "raw:feature,raw:feature"
inline std::pair<Endpoint, Endpoint> parse_endpoints(const std::string& s, std::string_view what) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw ConfigError(std::string(what) + " needs two raw:feature pairs");
  std::array<Endpoint, 2> e{};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto rf = split(parts[i], ':');
    if (rf.size() != 2) throw ConfigError(std::string(what) + " pair must be raw:feature");
    e[i] = {parse_number(rf[0], what), parse_number(rf[1], what)};
  }
  return {e[0], e[1]};
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string(kSeedEnv) + " is not an unsigned integer");
    }
  }
  return 0;
}

/// Exclusive advisory lock beside an output file.
class OutputLock {
 public:
  explicit OutputLock(std::filesystem::path out) : path_(out.string() + ".lock") {
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (!f) throw IoError("output is locked by another run (or lock not writable): " + path_.string());
    std::fclose(f);
  }
  ~OutputLock() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  std::filesystem::path path_;
};

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  std::uint64_t seed = 0;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  void write(const std::filesystem::path& primary, double seconds) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["argv"] = argv;
    j["cwd"] = std::filesystem::current_path().string();
    std::string joined;
    for (const auto& a : argv) joined += a + '\x1f';
    j["config_hash"] = hex64(fnv1a(joined));
    auto files = [](const std::vector<std::filesystem::path>& ps) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& p : ps) arr.push_back({{"path", p.string()}, {"fnv1a64", file_digest(p)}});
      return arr;
    };
    j["inputs"] = files(inputs);
    j["outputs"] = files(outputs);
    j["seed"] = seed;
    j["tool_version"] = std::string(kToolVersion);
    j["wall_clock_s"] = seconds;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    std::ofstream out(primary.string() + ".manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write manifest for " + primary.string());
    out << j.dump(2) << '\n';
  }
};

/// Query points carry features produced by a calibration map, which may land
/// slightly outside the trained range; those are clamped (with a warning) the
/// same way apply_map clamps. Gains are checked strictly.
inline RawVector clamp_features(RawVector raw, const DomainBounds& b, std::ostream& err) {
  for (auto d : {dim::ice, dim::angle}) {
    attain::detail::require_finite(raw[d], kDimNames[d]);
    const double c = std::clamp(raw[d], b[d].lo, b[d].hi);
    if (c != raw[d]) {
      err << "warning: " << kDimNames[d] << " = " << raw[d] << " clamped to " << c << '\n';
      raw[d] = c;
    }
  }
  b.check(raw);
  return raw;
}

inline void require_file(const std::filesystem::path& p) {
  if (!std::filesystem::exists(p)) throw IoError("no such file: " + p.string());
}

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr);

namespace detail {

inline int replay(const std::filesystem::path& manifest_path, std::ostream& out, std::ostream& err) {
  require_file(manifest_path);
  nlohmann::json j;
  try {
    std::ifstream in(manifest_path);
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed manifest: ") + e.what());
  }
  auto argv = j.at("argv").get<std::vector<std::string>>();
  if (argv.empty() || argv[0] == "replay") throw ConfigError("manifest does not describe a replayable command");
  const std::filesystem::path cwd = j.value("cwd", std::string());
  const auto here = std::filesystem::current_path();
  if (!cwd.empty() && std::filesystem::exists(cwd)) std::filesystem::current_path(cwd);
  int code = kOk;
  try {
    code = run(argv, out, err);
  } catch (...) {
    std::filesystem::current_path(here);
    throw;
  }
  std::filesystem::current_path(here);
  return code;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  const auto t0 = Clock::now();

  CLI::App app{"Attainment regions: sample, fit, query, solve and calibrate", "attain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // sample
  auto* sample = app.add_subcommand("sample", "Run simulated ramp trials and write a dataset");
  bool reference = false;
  std::vector<std::string> point_specs;
  std::string seeds_list, sample_out, trace_out;
  std::optional<std::int64_t> sample_seed;
  double friction_noise = SimConfig{}.friction_noise_std;
  sample->add_flag("--reference-plan", reference, "Use the 420-point reference plan");
  sample->add_option("--point", point_specs, "Point as name=value pairs, e.g. ice=0,angle=5,kp=1");
  sample->add_option("--seeds", seeds_list, "Comma-separated seeds, one trial per point and seed");
  sample->add_option("--seed", sample_seed, "Base seed for the reference plan");
  sample->add_option("--friction-noise", friction_noise, "Std-dev of per-trial friction noise");
  sample->add_option("--trace", trace_out, "Write a per-step CSV trace (single trial only)");
  sample->add_option("-o,--out", sample_out, "Output dataset (.jsonl)")->required();

  // fit
  auto* fitc = app.add_subcommand("fit", "Fit a GP model to a dataset");
  std::string fit_data, fit_out;
  std::optional<std::uint64_t> fit_seed;
  GpFitConfig fit_cfg;
  fitc->add_option("-d,--dataset", fit_data, "Input dataset")->required();
  fitc->add_option("--seed", fit_seed, "Seed for multi-start hyperparameter search");
  fitc->add_option("--starts", fit_cfg.starts, "Number of optimizer starts");
  fitc->add_option("--max-iterations", fit_cfg.max_iterations, "Iteration cap per start");
  fitc->add_option("-o,--out", fit_out, "Output model (.json)")->required();

  // predict
  auto* predict = app.add_subcommand("predict", "Success probability at a point");
  std::string pred_model, pred_x, pred_cal, pred_raw, pred_gains;
  double pred_eta = AttainmentQuery<FittedModel>::kDefaultEta;
  predict->add_option("-m,--model", pred_model, "Model file")->required();
  predict->add_option("-x", pred_x, "Point ice,angle,kp,ki,kd");
  predict->add_option("--calibration", pred_cal, "Calibration file for raw latent readings");
  predict->add_option("--raw", pred_raw, "Raw latents ice_raw,angle_raw (needs --calibration)");
  predict->add_option("--gains", pred_gains, "Gains kp,ki,kd (with --raw)");
  predict->add_option("--eta", pred_eta, "Attainment threshold");

  // region
  auto* region = app.add_subcommand("region", "Evaluate a 2-D slice of the attainment region");
  std::string reg_model, reg_free, reg_out, reg_svg, reg_data;
  std::vector<std::string> reg_fix;
  double reg_eta = AttainmentQuery<FittedModel>::kDefaultEta;
  std::size_t reg_res = 100;
  region->add_option("-m,--model", reg_model, "Model file")->required();
  region->add_option("--free", reg_free, "Two free dims, e.g. angle,kp")->required();
  region->add_option("--fix", reg_fix, "Fixed dims name=value; others are unrestricted");
  region->add_option("--eta", reg_eta, "Attainment threshold");
  region->add_option("--resolution", reg_res, "Grid points per axis");
  region->add_option("--svg", reg_svg, "Also render an SVG plot");
  region->add_option("--dataset", reg_data, "Dataset to overlay on the SVG");
  region->add_option("-o,--out", reg_out, "Output CSV")->required();

  // solve
  auto* solvec = app.add_subcommand("solve", "Nearest attainable point under a freeze mask");
  std::string sol_model, sol_x, sol_mode, sol_mask, sol_out;
  double sol_eta = AttainmentQuery<FittedModel>::kDefaultEta;
  std::optional<std::uint64_t> sol_seed;
  SolverConfig sol_cfg;
  solvec->add_option("-m,--model", sol_model, "Model file")->required();
  solvec->add_option("-x", sol_x, "Query point ice,angle,kp,ki,kd")->required();
  auto* mode_opt = solvec->add_option("--mode", sol_mode, "adaptive | counterfactual")
                       ->check(CLI::IsMember({"adaptive", "counterfactual"}));
  solvec->add_option("--mask", sol_mask, "Comma list of frozen dims")->excludes(mode_opt);
  solvec->add_option("--eta", sol_eta, "Attainment threshold");
  solvec->add_option("--seed", sol_seed, "Solver seed");
  solvec->add_option("--population", sol_cfg.population, "Samples per iteration");
  solvec->add_option("--max-iterations", sol_cfg.max_iterations, "Iteration budget");
  solvec->add_option("-o,--out", sol_out, "Output solution JSON");

  // calibrate
  auto* calib = app.add_subcommand("calibrate", "Fit linear latent-to-feature maps from endpoint readings");
  std::string cal_ice, cal_angle, cal_out;
  calib->add_option("--ice", cal_ice, "raw:feature,raw:feature for ice, e.g. 0.35:0,1.26:1")->required();
  calib->add_option("--angle", cal_angle, "raw:feature,raw:feature for angle, e.g. 0.095:0,-1.63:30")->required();
  calib->add_option("-o,--out", cal_out, "Output calibration JSON")->required();

  // replay
  auto* replayc = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string replay_path;
  replayc->add_option("manifest", replay_path, "Manifest file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  }

  try {
    Manifest manifest;
    manifest.argv = args;

    if (*sample) {
      manifest.command = "sample";
      SimConfig cfg;
      cfg.friction_noise_std = friction_noise;
      cfg.validate();
      const DomainBounds bounds;
      std::vector<PlannedTrial> plan;
      const auto base = sample_seed.value_or(static_cast<std::int64_t>(default_seed()));
      manifest.seed = static_cast<std::uint64_t>(base);
      if (reference) plan = reference_plan(base);
      if (!point_specs.empty()) {
        std::vector<FeatureParameterPoint> pts;
        for (const auto& s : point_specs) {
          const auto raw = parse_named_point(s);
          bounds.check(raw);
          pts.push_back(FeatureParameterPoint::from_array(raw));
        }
        std::vector<std::int64_t> seeds;
        if (seeds_list.empty()) {
          seeds.push_back(base);
        } else {
          for (const auto& t : split(seeds_list, ',')) seeds.push_back(parse_integer(t, "seed"));
        }
        const auto extra = cross_plan(pts, seeds);
        plan.insert(plan.end(), extra.begin(), extra.end());
      }
      if (plan.empty()) throw ConfigError("nothing to sample: give --reference-plan or --point");
      if (!trace_out.empty() && plan.size() != 1) throw ConfigError("--trace needs exactly one trial");

      OutputLock lock(sample_out);
      const auto records = sample_dataset(plan, bounds, cfg);
      save_dataset(records, bounds, sample_out);
      manifest.outputs.push_back(sample_out);
      if (!trace_out.empty()) {
        const auto& t = plan.front();
        const auto res = run_trial(t.x.z, t.x.theta, t.seed, cfg, true);
        std::ofstream tf(trace_out, std::ios::binary | std::ios::trunc);
        if (!tf) throw IoError("cannot open " + trace_out);
        write_trace_csv(*res.trace, tf);
        manifest.outputs.push_back(trace_out);
      }
      std::size_t ok = 0;
      for (const auto& r : records) ok += static_cast<std::size_t>(r.y());
      manifest.extra["records"] = records.size();
      manifest.extra["successes"] = ok;
      manifest.write(sample_out, seconds_since(t0));
      out << "wrote " << records.size() << " records (" << ok << " successes) to " << sample_out << '\n';
      return kOk;
    }

    if (*fitc) {
      manifest.command = "fit";
      require_file(fit_data);
      fit_cfg.seed = fit_seed.value_or(default_seed());
      manifest.seed = fit_cfg.seed;
      const auto data = load_dataset(fit_data);
      OutputLock lock(fit_out);
      const auto model = fit(data.records, data.bounds, fit_cfg);
      save_model(model, fit_out);
      manifest.inputs.push_back(fit_data);
      manifest.outputs.push_back(fit_out);
      manifest.extra["degenerate"] = model.degenerate();
      manifest.extra["log_marginal_likelihood"] = model.log_marginal_likelihood();
      manifest.write(fit_out, seconds_since(t0));
      if (model.degenerate()) err << "warning: degenerate dataset (constant labels); model predicts the prior\n";
      out << "fitted " << model.size() << " points, log marginal likelihood "
          << model.log_marginal_likelihood() << '\n';
      return kOk;
    }

    if (*predict) {
      require_file(pred_model);
      const auto model = load_model(pred_model);
      const AttainmentQuery q(model, pred_eta);
      double p = 0.0;
      if (!pred_raw.empty()) {
        if (pred_cal.empty() || pred_gains.empty()) throw ConfigError("--raw needs --calibration and --gains");
        require_file(pred_cal);
        const auto cal = load_calibration(pred_cal);
        const auto raw = parse_list(pred_raw, "raw");
        const auto gains = parse_list(pred_gains, "gains");
        if (raw.size() != 2 || gains.size() != 3) throw ConfigError("--raw takes 2 values, --gains takes 3");
        const auto cp = calibrated_predict(q, cal, {raw[0], raw[1]}, GainVector(gains[0], gains[1], gains[2]));
        if (cp.clamped) err << "warning: mapped features were clamped into bounds\n";
        p = cp.probability;
      } else {
        if (pred_x.empty()) throw ConfigError("predict needs -x or --raw");
        const auto raw = clamp_features(parse_point_vector(pred_x), model.bounds(), err);
        p = success_probability(q, FeatureParameterPoint::from_array(raw));
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "p=%.6f", p);
      out << buf << '\n';
      return kOk;
    }

    if (*region) {
      manifest.command = "region";
      require_file(reg_model);
      const auto model = load_model(reg_model);
      const AttainmentQuery q(model, reg_eta);
      SliceSpec spec;
      const auto fr = split(reg_free, ',');
      if (fr.size() != 2) throw ConfigError("--free needs exactly two dims");
      spec.free_dims = {parse_dim(fr[0]), parse_dim(fr[1])};
      spec.resolution = reg_res;
      for (const auto& f : reg_fix) {
        for (const auto& tok : split(f, ',')) {
          const auto kv = split(tok, '=');
          if (kv.size() != 2) throw ConfigError("--fix expects name=value, got '" + tok + "'");
          spec.fixed[parse_dim(kv[0])] = parse_number(kv[1], kv[0]);
        }
      }
      spec.validate(model.bounds());

      std::optional<Dataset> overlay;
      if (!reg_data.empty()) {
        require_file(reg_data);
        overlay = load_dataset(reg_data);
      }

      OutputLock lock(reg_out);
      const auto grid = slice_grid(q, spec);
      {
        std::ofstream csv(reg_out, std::ios::binary | std::ios::trunc);
        if (!csv) throw IoError("cannot open " + reg_out);
        write_slice_csv(grid, csv);
      }
      manifest.inputs.push_back(reg_model);
      manifest.outputs.push_back(reg_out);
      if (!reg_svg.empty()) {
        std::vector<SlicePoint> pts;
        if (overlay) {
          for (const auto& r : overlay->records) {
            const auto a = r.x().to_array();
            bool match = true;
            for (std::size_t d = 0; d < kDims; ++d) {
              if (!spec.is_free(d) && spec.fixed[d] && std::abs(a[d] - *spec.fixed[d]) > 1e-9) match = false;
            }
            if (match) pts.push_back({a[spec.free_dims[0]], a[spec.free_dims[1]], r.y()});
          }
          manifest.inputs.push_back(reg_data);
        }
        std::ofstream svg(reg_svg, std::ios::binary | std::ios::trunc);
        if (!svg) throw IoError("cannot open " + reg_svg);
        write_slice_svg(grid, model.bounds(), pts, svg);
        manifest.outputs.push_back(reg_svg);
      }
      manifest.extra["attainable_cells"] = grid.attainable_count();
      manifest.write(reg_out, seconds_since(t0));
      out << "wrote " << grid.cells.size() << " cells (" << grid.attainable_count() << " attainable) to "
          << reg_out << '\n';
      return kOk;
    }

    if (*solvec) {
      manifest.command = "solve";
      require_file(sol_model);
      const auto model = load_model(sol_model);
      const AttainmentQuery q(model, sol_eta);
      const auto input = parse_point_vector(sol_x);
      const auto raw = clamp_features(input, model.bounds(), err);
      const auto x = FeatureParameterPoint::from_array(raw);
      FreezeMask mask = FreezeMask::adaptive();
      if (sol_mode == "counterfactual") mask = FreezeMask::counterfactual();
      if (!sol_mask.empty()) {
        mask = {};
        for (const auto& name : split(sol_mask, ',')) mask.frozen[parse_dim(name)] = true;
      }
      sol_cfg.seed = sol_seed.value_or(default_seed());
      manifest.seed = sol_cfg.seed;

      std::optional<OutputLock> lock;
      if (!sol_out.empty()) lock.emplace(sol_out);
      const auto res = solve(q, x, mask, sol_cfg);
      out << summarize(x, mask, res) << '\n';
      if (!sol_out.empty()) {
        std::ofstream js(sol_out, std::ios::binary | std::ios::trunc);
        if (!js) throw IoError("cannot open " + sol_out);
        auto doc = solution_to_json(x, mask, res, sol_eta, sol_cfg.seed);
        if (input != raw) doc["input"] = input;
        js << doc.dump(2) << '\n';
        js.close();
        manifest.inputs.push_back(sol_model);
        manifest.outputs.push_back(sol_out);
        manifest.write(sol_out, seconds_since(t0));
      }
      return kOk;
    }

    if (*calib) {
      manifest.command = "calibrate";
      const auto [i1, i2] = parse_endpoints(cal_ice, "--ice");
      const auto [a1, a2] = parse_endpoints(cal_angle, "--angle");
      const Calibration cal{fit_linear_map(i1, i2, dim::ice), fit_linear_map(a1, a2, dim::angle)};
      OutputLock lock(cal_out);
      save_calibration(cal, cal_out);
      manifest.outputs.push_back(cal_out);
      manifest.write(cal_out, seconds_since(t0));
      char buf[160];
      std::snprintf(buf, sizeof buf, "ice = %.4f * raw %+.4f\nangle = %.4f * raw %+.4f\n", cal.ice.slope(),
                    cal.ice.intercept(), cal.angle.slope(), cal.angle.intercept());
      out << buf;
      return kOk;
    }

    if (*replayc) return replay(replay_path, out, err);
  } catch (const BoundsError& e) {
    err << "error: bounds: " << e.what() << '\n';
    return kConfig;
  } catch (const ConfigError& e) {
    err << "error: config: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    err << "error: io: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << '\n';
    return kIo;
  } catch (const VersionError& e) {
    err << "error: version: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    err << "error: numerical: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: io: " << e.what() << '\n';
    return kIo;
  }
  return kConfig;
}

}  // namespace attain::cli
