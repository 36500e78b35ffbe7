// Copyright 2026 The mpseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpseg/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace mpseg::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    items.push_back(trim(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

[[noreturn]] void bad_value(const std::string& key, std::string_view text, const std::string& why) {
  throw UsageError("invalid value '" + std::string(text) + "' for " + key + ": " + why);
}

double parse_double(const std::string& key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    bad_value(key, text, "expected a finite number");
  }
  return value;
}

long long parse_integer(const std::string& key, std::string_view text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad_value(key, text, "expected an integer");
  return value;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& key, std::string_view text, Parse parse) {
  std::vector<T> out;
  for (std::string_view item : split_list(text)) out.push_back(static_cast<T>(parse(key, item)));
  return out;
}

template <class T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_number(items[i]);
    } else {
      out += std::to_string(items[i]);
    }
  }
  return out;
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw UsageError(key + ": " + message);
}

}  // namespace

KeyValues parse_key_values(std::string_view text, const std::string& origin) {
  KeyValues out;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string_view key = eq == std::string_view::npos ? std::string_view{} : trim(line.substr(0, eq));
    if (key.empty()) {
      throw UsageError(origin + ":" + std::to_string(line_no) + ": expected 'key = value', got '" +
                       std::string(line) + "'");
    }
    out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

KeyValues read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_key_values(buffer.str(), path.string());
}

std::string format_key_values(const KeyValues& values) {
  std::string out;
  for (const auto& [key, value] : values) out += key + " = " + value + "\n";
  return out;
}

KeyValues merge_key_values(KeyValues base, const KeyValues& top) {
  if (top.contains("k")) base.erase("estimate_omega");
  if (top.contains("estimate_omega")) base.erase("k");
  for (const auto& [key, value] : top) base[key] = value;
  return base;
}

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return ec == std::errc() ? std::string(buffer, ptr) : std::string("nan");
}

std::string to_string(FeatureChoice choice) {
  return choice == FeatureChoice::kFftModulus ? "fft-mod" : "spectral-hist";
}

const std::vector<std::string>& segment_config_keys() {
  static const std::vector<std::string> keys{
      "input",   "out",       "features",          "k",          "estimate_omega",     "lambda",
      "delta",   "s",         "weights",           "bins",       "gabor_sizes",        "gabor_orientations_deg",
      "gabor_intensity",      "padding",           "outer_iterations",   "sigma",       "tau",
      "theta",   "epsilon",   "max_iterations",    "seed",
  };
  return keys;
}

SegmentRunConfig resolve_segment_config(const KeyValues& values) {
  const auto& known = segment_config_keys();
  for (const auto& [key, value] : values) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("unknown key '" + key + "'");
  }
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  SegmentRunConfig cfg;
  if (const auto* v = get("input")) cfg.input = *v;
  if (const auto* v = get("out")) cfg.output_dir = *v;
  require(!cfg.input.empty(), "input", "an input image is required");
  require(!cfg.output_dir.empty(), "out", "an output directory is required");

  if (const auto* v = get("features")) {
    if (*v == "fft-mod") {
      cfg.features = FeatureChoice::kFftModulus;
    } else if (*v == "spectral-hist") {
      cfg.features = FeatureChoice::kSpectralHistogram;
    } else {
      bad_value("features", *v, "expected 'fft-mod' or 'spectral-hist'");
    }
  }
  const bool fft = cfg.features == FeatureChoice::kFftModulus;

  const auto* k = get("k");
  const auto* omega = get("estimate_omega");
  require(!(k && omega), "k", "k and estimate_omega are mutually exclusive");
  require(k || omega, "k", "either k or estimate_omega must be given");
  if (k) {
    const long long value = parse_integer("k", *k);
    require(value >= 2 && value <= 255, "k", "must lie in [2, 255], got " + *k);
    cfg.k = static_cast<int>(value);
  } else {
    cfg.estimate_omega = parse_double("estimate_omega", *omega);
    require(*cfg.estimate_omega > 0.0, "estimate_omega", "must be > 0");
  }

  cfg.lambda = fft ? 25.0 : 0.005;
  cfg.delta = fft ? 1.0 : 0.25;
  if (const auto* v = get("lambda")) cfg.lambda = parse_double("lambda", *v);
  if (const auto* v = get("delta")) cfg.delta = parse_double("delta", *v);
  require(cfg.lambda > 0.0, "lambda", "must be > 0");
  require(cfg.delta > 0.0, "delta", "must be > 0");

  if (const auto* v = get("s")) {
    cfg.s = parse_list<int>("s", *v, parse_integer);
  } else {
    cfg.s = fft ? std::vector<int>{15} : std::vector<int>{15, 30};
  }
  for (int s : cfg.s) require(s >= 1, "s", "window half-widths must be >= 1");
  require(!fft || cfg.s.size() == 1, "s", "fft-mod features take exactly one window scale");
  if (const auto* v = get("weights")) {
    cfg.weights = parse_list<double>("weights", *v, parse_double);
  } else if (!get("s") && !fft) {
    cfg.weights = {0.8, 0.2};
  } else {
    cfg.weights.assign(cfg.s.size(), 1.0 / static_cast<double>(cfg.s.size()));
  }
  require(cfg.weights.size() == cfg.s.size(), "weights", "need one weight per window scale");
  for (double w : cfg.weights) require(w > 0.0, "weights", "must be > 0");

  if (const auto* v = get("bins")) cfg.bins = static_cast<int>(parse_integer("bins", *v));
  require(cfg.bins >= 1 && cfg.bins <= 1024, "bins", "must lie in [1, 1024]");
  cfg.gabor_sizes = {5.0, 7.0, 9.0};
  cfg.gabor_orientations_deg = {0.0, 90.0, 45.0, -45.0};
  if (const auto* v = get("gabor_sizes")) {
    cfg.gabor_sizes = v->empty() ? std::vector<double>{} : parse_list<double>("gabor_sizes", *v, parse_double);
  }
  if (const auto* v = get("gabor_orientations_deg")) {
    cfg.gabor_orientations_deg = parse_list<double>("gabor_orientations_deg", *v, parse_double);
  }
  for (double g : cfg.gabor_sizes) require(g > 0.0, "gabor_sizes", "must be > 0");
  if (const auto* v = get("gabor_intensity")) {
    require(*v == "true" || *v == "false", "gabor_intensity", "expected true or false");
    cfg.gabor_intensity = *v == "true";
  }
  require(fft || cfg.gabor_intensity || !cfg.gabor_sizes.empty(), "gabor_sizes", "the filter bank would be empty");

  if (const auto* v = get("padding")) {
    if (*v == "mirror") {
      cfg.padding = Padding::kMirror;
    } else if (*v == "clamp") {
      cfg.padding = Padding::kClamp;
    } else {
      bad_value("padding", *v, "expected 'mirror' or 'clamp'");
    }
  }

  if (const auto* v = get("outer_iterations")) cfg.outer_iterations = static_cast<int>(parse_integer("outer_iterations", *v));
  require(cfg.outer_iterations >= 1, "outer_iterations", "must be >= 1");
  if (const auto* v = get("sigma")) cfg.solver.sigma = parse_double("sigma", *v);
  if (const auto* v = get("tau")) cfg.solver.tau = parse_double("tau", *v);
  if (const auto* v = get("theta")) cfg.solver.theta = parse_double("theta", *v);
  if (const auto* v = get("epsilon")) cfg.solver.epsilon = parse_double("epsilon", *v);
  if (const auto* v = get("max_iterations")) cfg.solver.max_iterations = static_cast<int>(parse_integer("max_iterations", *v));
  require(cfg.solver.sigma > 0.0, "sigma", "must be > 0");
  require(cfg.solver.tau > 0.0, "tau", "must be > 0");
  require(cfg.solver.sigma * cfg.solver.tau * SolverParams::kGradientNormSquaredBound <= 1.0, "sigma",
          "sigma * tau * 8 must not exceed 1");
  require(cfg.solver.theta >= 0.0 && cfg.solver.theta <= 1.0, "theta", "must lie in [0, 1]");
  require(cfg.solver.epsilon > 0.0, "epsilon", "must be > 0");
  require(cfg.solver.max_iterations >= 1, "max_iterations", "must be >= 1");
  if (const auto* v = get("seed")) {
    const long long seed = parse_integer("seed", *v);
    require(seed >= 0, "seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  cfg.solver.lambda = cfg.lambda;
  return cfg;
}

SegmentationConfig SegmentRunConfig::to_segmentation_config() const {
  SegmentationConfig out;
  out.k = k.value_or(0);
  out.omega = estimate_omega.value_or(out.omega);
  out.lambda = lambda;
  out.delta = delta;
  out.outer_iterations = outer_iterations;
  out.solver = solver;
  out.solver.lambda = lambda;
  out.seed = seed;
  out.features.kind = features == FeatureChoice::kFftModulus ? FeatureKind::kFftModulus : FeatureKind::kSpectralHistogram;
  out.features.padding = padding;
  out.features.scales.clear();
  for (std::size_t i = 0; i < s.size(); ++i) out.features.scales.emplace_back(s[i], weights[i]);
  if (features == FeatureChoice::kSpectralHistogram) {
    std::vector<double> radians;
    for (double deg : gabor_orientations_deg) radians.push_back(deg * std::numbers::pi / 180.0);
    out.features.bank = FilterBank::gabor_bank(gabor_sizes, radians, bins, gabor_intensity);
  }
  return out;
}

KeyValues SegmentRunConfig::to_key_values() const {
  KeyValues kv;
  kv["input"] = input;
  kv["out"] = output_dir;
  kv["features"] = to_string(features);
  if (k) kv["k"] = std::to_string(*k);
  if (estimate_omega) kv["estimate_omega"] = format_number(*estimate_omega);
  kv["lambda"] = format_number(lambda);
  kv["delta"] = format_number(delta);
  kv["s"] = join(s);
  kv["weights"] = join(weights);
  kv["bins"] = std::to_string(bins);
  kv["gabor_sizes"] = join(gabor_sizes);
  kv["gabor_orientations_deg"] = join(gabor_orientations_deg);
  kv["gabor_intensity"] = gabor_intensity ? "true" : "false";
  kv["padding"] = padding == Padding::kMirror ? "mirror" : "clamp";
  kv["outer_iterations"] = std::to_string(outer_iterations);
  kv["sigma"] = format_number(solver.sigma);
  kv["tau"] = format_number(solver.tau);
  kv["theta"] = format_number(solver.theta);
  kv["epsilon"] = format_number(solver.epsilon);
  kv["max_iterations"] = std::to_string(solver.max_iterations);
  kv["seed"] = std::to_string(seed);
  return kv;
}

}  // namespace mpseg::cli
