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

#include "mpseg/verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "mpseg/cli/commands.hpp"
#include "mpseg/cli/raster_io.hpp"
#include "mpseg/grid_ops.hpp"
#include "mpseg/metrics.hpp"
#include "mpseg/pca.hpp"
#include "mpseg/primal_dual.hpp"
#include "mpseg/segmentation.hpp"
#include "mpseg/simplex.hpp"
#include "mpseg/verify/oracles.hpp"

namespace mpseg::verify {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string fixed(double value, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << value;
  return os.str();
}

std::string sci(double value) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << value;
  return os.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CriterionResult make_result(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

struct PipelineRecord {
  std::string name;
  bool monotone = true;
  std::size_t updates = 0;
};

struct TextureRun {
  double accuracy = 0.0;
  double cs_rate = 0.0;
  int estimated_k = 0;
  double seconds = 0.0;
};

// State shared between criteria of one suite run.
struct Session {
  Session(fs::path dir, std::ostream& out) : work_dir(std::move(dir)), progress(out) {}

  fs::path work_dir;
  std::ostream& progress;
  std::vector<PipelineRecord> pipeline_runs;
  std::optional<SegMask> crystal_clean;        // criterion 6 mask
  std::optional<fs::path> crystal_labels;      // criterion 6 label map
  std::optional<cli::SegmentRunConfig> crystal_command;
  std::optional<std::vector<TextureRun>> texture_runs;

  void record(const std::string& name, const SegmentationResult& r) {
    pipeline_runs.push_back({name, r.diagnostics.mean_update_monotone, r.diagnostics.rounds.size()});
  }
};

SegMask as_mask(const LabelLayout& layout) { return SegMask{layout.extent, layout.labels}; }
SegMask as_mask(const SegmentationResult& r) { return SegMask{r.extent, r.mask}; }

// ---------------------------------------------------------------- criterion 1

CriterionResult operator_correctness(Session&) {
  CriterionResult res = make_result(1, "gradient/divergence adjoint and operator norm");
  const auto start = Clock::now();
  const GridExtent e{16, 16};
  std::mt19937_64 rng(101);
  std::normal_distribution<double> normal;
  std::vector<double> u(e.size()), px(e.size()), py(e.size()), gx(e.size()), gy(e.size()), div(e.size());
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      u[i] = normal(rng);
      px[i] = normal(rng);
      py[i] = normal(rng);
    }
    gradient(e, u, gx, gy);
    divergence(e, px, py, div);
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      lhs += gx[i] * px[i] + gy[i] * py[i];
      rhs -= u[i] * div[i];
    }
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
  }
  const double norm_sq = gradient_norm_squared_estimate(e, 2000, 7);
  res.seconds = seconds_since(start);
  res.passed = worst <= 1e-12 && norm_sq <= 8.0 + 1e-6 && res.seconds < 1.0;
  res.detail = "max relative adjoint gap " + sci(worst) + " over 50 pairs, power-iteration ||K||^2 = " +
               fixed(norm_sq, 6);
  return res;
}

// ---------------------------------------------------------------- criterion 2

CriterionResult simplex_projection(Session&) {
  CriterionResult res = make_result(2, "simplex projection vs enumerated QP oracle");
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> shift(-100, 100);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  double worst = 0.0;
  int idempotence_failures = 0;
  int shift_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = dim(rng);
    const double sc = scale(rng);
    std::vector<double> v(k);
    // Dyadic coordinates keep v + c exactly representable for integer c.
    for (double& x : v) x = std::round(normal(rng) * sc * 1048576.0) / 1048576.0;
    const std::vector<double> p = project_simplex(v);
    const std::vector<double> oracle = simplex_projection_by_enumeration(v);
    for (int j = 0; j < k; ++j) worst = std::max(worst, std::abs(p[j] - oracle[j]));
    if (project_simplex(p) != p) ++idempotence_failures;
    std::vector<double> shifted = v;
    const double c = shift(rng);
    for (double& x : shifted) x += c;
    if (project_simplex(shifted) != p) ++shift_failures;
  }
  res.seconds = seconds_since(start);
  res.passed = worst <= 1e-9 && idempotence_failures == 0 && shift_failures == 0 && res.seconds < 5.0;
  res.detail = "max deviation " + sci(worst) + " over 1000 points (k <= 6), idempotence failures " +
               std::to_string(idempotence_failures) + ", shift failures " + std::to_string(shift_failures);
  return res;
}

// ---------------------------------------------------------------- criterion 3

CriterionResult toy_optimality(Session&) {
  CriterionResult res = make_result(3, "solver vs exhaustive 4x4 Potts optimum");
  const auto start = Clock::now();
  const GridExtent e{4, 4};
  const double lambda = 0.3;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> noise(0.0, 0.6);
  std::uniform_int_distribution<int> cut(1, 3);
  double worst = 0.0;
  int optimal = 0;
  for (int trial = 0; trial < 20; ++trial) {
    // Planted two-block partition split by a random row or column.
    const bool vertical = rng() % 2 == 0;
    const int split = cut(rng);
    IndicatorField f{e, Eigen::MatrixXd(16, 2)};
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 4; ++x) {
        const int planted = (vertical ? x : y) < split ? 0 : 1;
        for (int l = 0; l < 2; ++l) f.f(static_cast<Eigen::Index>(e.index(x, y)), l) = (l != planted ? 1.0 : 0.0) + noise(rng);
      }
    }
    SolverParams params;
    params.lambda = lambda;
    const SolveResult solved = solve(f, params);
    const std::vector<int> hard = solved.u.hard_labels();
    const double got = potts_energy(e, f.f, hard, lambda);
    const PottsOptimum best = brute_force_potts(e, f.f, lambda);
    const double gap = (got - best.energy) / best.energy;
    worst = std::max(worst, gap);
    if (gap <= 1e-12) ++optimal;
  }
  res.seconds = seconds_since(start);
  res.passed = worst <= 0.02 && res.seconds < 60.0;
  res.detail = "worst relative energy gap " + fixed(100.0 * worst, 3) + "% over 20 instances (" +
               std::to_string(optimal) + " exactly optimal), lambda 0.3";
  return res;
}

// ---------------------------------------------------------------- criterion 4

FeatureMatrix random_features(std::mt19937_64& rng, int m, int n) {
  std::normal_distribution<double> normal;
  FeatureMatrix fm;
  fm.values.resize(m, n);
  // Decaying row scales give a spread-out spectrum.
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) fm.values(r, c) = normal(rng) * std::pow(0.7, r) + 0.5;
  fm.extent = GridExtent{n, 1};
  return fm;
}

CriterionResult pca_identities(Session&) {
  CriterionResult res = make_result(4, "PCA trace identity, fidelity bound, full-rank equivalence");
  const auto start = Clock::now();
  std::mt19937_64 rng(404);

  double trace_gap = 0.0;
  double recon_gap = 0.0;
  for (auto [m, n] : {std::pair{20, 50}, std::pair{50, 20}, std::pair{10, 40}}) {
    const FeatureMatrix fm = random_features(rng, m, n);
    const int full = std::min(m, n);
    const PcaModel model = fit_pca_model(fm, full, full);
    trace_gap = std::max(trace_gap, std::abs(model.eigenvalues.sum() - model.frobenius_sq) / model.frobenius_sq);
    const Eigen::MatrixXd centred = fm.values.colwise() - model.mean;
    for (int r = 1; r <= full; ++r) {
      const PcaModel part = model.truncated(r);
      const double err = (centred - part.basis * part.basis.transpose() * centred).squaredNorm();
      const double oracle = svd_tail(centred, r);
      recon_gap = std::max(recon_gap, std::abs(err - oracle) / model.frobenius_sq);
    }
  }

  int violations = 0;
  double tightest = 0.0;
  std::uniform_int_distribution<int> mdist(3, 12);
  std::uniform_int_distribution<int> ndist(10, 60);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int draw = 0; draw < 100; ++draw) {
    const int m = mdist(rng);
    const int n = ndist(rng);
    const FeatureMatrix fm = random_features(rng, m, n);
    const int full = std::min(m, n);
    const int r = std::uniform_int_distribution<int>(1, full)(rng);
    const PcaModel model = fit_pca_model(fm, r, full);
    const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
    // Region mean: a convex combination of data columns, as produced by
    // the mean update from any soft labeling.
    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) w(j) = unit(rng);
    w /= w.sum();
    const Eigen::VectorXd c = fm.values * w;
    const double f_exact = (fm.values.col(i) - c).squaredNorm();
    const Eigen::VectorXd alpha_i = model.basis.transpose() * (fm.values.col(i) - model.mean);
    const Eigen::VectorXd gamma = model.basis.transpose() * (c - model.mean);
    const double f_reduced = (alpha_i - gamma).squaredNorm();
    const double bound = fidelity_error_bound(model, r);
    const double gap = std::abs(f_exact - f_reduced);
    if (gap > bound + 1e-9 * model.frobenius_sq) ++violations;
    if (bound > 0.0) tightest = std::max(tightest, gap / bound);
  }

  double equivalence_gap = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const int m = 8;
    const FeatureMatrix fm = random_features(rng, m, 30);
    const PcaModel model = fit_pca_model(fm, m, m);
    std::normal_distribution<double> normal;
    Eigen::VectorXd c(m);
    for (int j = 0; j < m; ++j) c(j) = normal(rng);
    for (int i = 0; i < 30; ++i) {
      const double exact = (fm.values.col(i) - c).squaredNorm();
      const double reduced =
          (model.basis.transpose() * (fm.values.col(i) - model.mean) - model.basis.transpose() * (c - model.mean))
              .squaredNorm();
      equivalence_gap = std::max(equivalence_gap, std::abs(exact - reduced) / exact);
    }
  }

  res.seconds = seconds_since(start);
  res.passed = trace_gap <= 1e-8 && recon_gap <= 1e-8 && violations == 0 && equivalence_gap <= 1e-8 &&
               res.seconds < 10.0;
  res.detail = "trace gap " + sci(trace_gap) + ", reconstruction vs SVD " + sci(recon_gap) + ", bound violations " +
               std::to_string(violations) + "/100 (max gap/bound " + fixed(tightest, 3) + "), r=m gap " +
               sci(equivalence_gap);
  return res;
}

// ---------------------------------------------------------------- criterion 5

CriterionResult mean_update_monotonicity(Session& session) {
  CriterionResult res = make_result(5, "mean refresh never increases the data term");
  const auto start = Clock::now();
  if (session.pipeline_runs.empty()) {
    // No pipeline ran in this suite; run two small ones.
    cli::CrystalSceneOptions crystal;
    crystal.size = 96;
    crystal.noise = 0.5;
    SegmentationConfig cfg;
    cfg.features = FeatureSpec::crystal(15);
    session.record("crystal 96", segment(cli::make_crystal_scene(crystal).image, cfg));
    cli::TextureSceneOptions texture;
    texture.size = 128;
    texture.regions = 3;
    SegmentationConfig tcfg;
    tcfg.k = 3;
    tcfg.lambda = 0.005;
    tcfg.delta = 0.25;
    tcfg.features = FeatureSpec::texture();
    tcfg.features.scales = {{7, 1.0}};
    session.record("texture 128", segment(cli::make_texture_scene(texture).image, tcfg));
  }
  std::size_t updates = 0;
  std::vector<std::string> failed;
  for (const auto& run : session.pipeline_runs) {
    updates += run.updates;
    if (!run.monotone) failed.push_back(run.name);
  }
  res.seconds = seconds_since(start);
  res.passed = failed.empty() && updates > 0;
  res.detail = std::to_string(updates) + " mean updates in " + std::to_string(session.pipeline_runs.size()) +
               " pipeline runs, " + std::to_string(failed.size()) + " with an increase";
  for (const auto& name : failed) res.detail += " [" + name + "]";
  return res;
}

// ---------------------------------------------------------------- crystals

cli::SegmentRunConfig crystal_command(const fs::path& input, const fs::path& out, int s) {
  cli::KeyValues kv{{"input", input.string()}, {"out", out.string()}, {"features", "fft-mod"}, {"k", "2"},
                    {"s", std::to_string(s)},  {"lambda", "25"},      {"delta", "1.0"},        {"seed", "11"}};
  return cli::resolve_segment_config(kv);
}

void ensure_crystal_clean(Session& session) {
  if (session.crystal_clean) return;
  cli::CrystalSceneOptions opts;  // 256^2, two square grains, period 8, 30 degrees
  const SynthImage scene = cli::make_crystal_scene(opts);
  const fs::path dir = session.work_dir / "crystal_clean";
  std::ostringstream quiet;
  cli::write_synth_outputs(scene, dir, quiet);
  const auto command = crystal_command(dir / "image.pfm", dir / "run1", 15);
  const auto artifacts = cli::run_segment(command, quiet);
  session.record("crystal noise-free", artifacts.result);
  session.crystal_clean = as_mask(artifacts.result);
  session.crystal_labels = artifacts.labels;
  session.crystal_command = command;
}

CriterionResult crystal_clean(Session& session) {
  CriterionResult res = make_result(6, "noise-free two-grain crystal");
  const auto start = Clock::now();
  ensure_crystal_clean(session);
  res.seconds = seconds_since(start);
  cli::CrystalSceneOptions opts;
  const SegMask truth = as_mask(cli::make_crystal_scene(opts).truth);
  const double acc = pixel_accuracy(*session.crystal_clean, truth);
  const double dev = max_boundary_deviation(*session.crystal_clean, truth);
  res.passed = acc >= 0.98 && dev <= 8.0 && res.seconds < 180.0;
  res.detail = "pixel accuracy " + fixed(acc, 4) + ", max boundary deviation " + fixed(dev, 2) + " px (limit 8)";
  return res;
}

CriterionResult crystal_noisy(Session& session) {
  CriterionResult res = make_result(7, "crystal segmentation at 100% noise");
  const auto start = Clock::now();
  ensure_crystal_clean(session);

  cli::CrystalSceneOptions opts;
  opts.noise = 1.0;
  const SynthImage noisy = cli::make_crystal_scene(opts);
  SegmentationConfig cfg = crystal_command("unused", "unused", 15).to_segmentation_config();
  const SegmentationResult two = segment(noisy.image, cfg);
  session.record("crystal two-grain noisy", two);
  const double acc2 = pixel_accuracy(as_mask(two), as_mask(noisy.truth));
  const double dis = disagreement(as_mask(two), *session.crystal_clean);

  cli::CrystalSceneOptions five_opts;
  five_opts.grains = 5;
  five_opts.rotation_deg = 18.0;
  five_opts.noise = 1.0;
  const SynthImage five = cli::make_crystal_scene(five_opts);
  cfg.k = 5;
  const SegmentationResult five_run = segment(five.image, cfg);
  session.record("crystal five-grain noisy", five_run);
  const double acc5 = pixel_accuracy(as_mask(five_run), as_mask(five.truth));

  res.seconds = seconds_since(start);
  res.passed = acc2 >= 0.90 && dis <= 0.05 && acc5 >= 0.85;
  res.detail = "two-grain accuracy " + fixed(acc2, 4) + ", disagreement with noise-free " + fixed(dis, 4) +
               ", five-grain accuracy " + fixed(acc5, 4);
  return res;
}

CriterionResult crystal_lattices(Session& session) {
  CriterionResult res = make_result(8, "square vs hexagonal grains at 100% noise");
  const auto start = Clock::now();
  cli::CrystalSceneOptions opts;
  opts.lattice = cli::LatticeChoice::kMixed;
  opts.rotation_deg = 0.0;
  opts.noise = 1.0;
  const SynthImage scene = cli::make_crystal_scene(opts);
  const SegmentationConfig cfg = crystal_command("unused", "unused", 20).to_segmentation_config();
  const SegmentationResult run = segment(scene.image, cfg);
  session.record("crystal square/hexagonal", run);
  const double acc = pixel_accuracy(as_mask(run), as_mask(scene.truth));
  res.seconds = seconds_since(start);
  res.passed = acc >= 0.90;
  res.detail = "pixel accuracy " + fixed(acc, 4) + " with s = 20";
  return res;
}

std::optional<std::vector<char>> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

CriterionResult determinism(Session& session) {
  CriterionResult res = make_result(11, "repeated segment command gives identical label maps");
  const auto start = Clock::now();
  ensure_crystal_clean(session);
  cli::SegmentRunConfig again = *session.crystal_command;
  again.output_dir = (session.work_dir / "crystal_clean" / "run2").string();
  std::ostringstream quiet;
  const auto artifacts = cli::run_segment(again, quiet);
  session.record("crystal repeat", artifacts.result);
  const auto first = read_bytes(*session.crystal_labels);
  const auto second = read_bytes(artifacts.labels);
  res.seconds = seconds_since(start);
  res.passed = first && second && !first->empty() && *first == *second;
  res.detail = "labels.png " + std::to_string(first ? first->size() : 0) + " vs " +
               std::to_string(second ? second->size() : 0) + " bytes, " + (res.passed ? "identical" : "different");
  return res;
}

// ---------------------------------------------------------------- textures

constexpr int kTextureSeeds = 5;

void ensure_texture_runs(Session& session) {
  if (session.texture_runs) return;
  std::vector<TextureRun> runs;
  for (int seed = 1; seed <= kTextureSeeds; ++seed) {
    const auto start = Clock::now();
    cli::TextureSceneOptions opts;
    opts.seed = static_cast<std::uint64_t>(seed);
    const SynthImage scene = cli::make_texture_scene(opts);
    SegmentationConfig cfg;
    cfg.k = 5;
    cfg.lambda = 0.005;
    cfg.delta = 0.25;
    cfg.features = FeatureSpec::texture();
    cfg.seed = static_cast<std::uint64_t>(seed);
    const FeatureMatrix features = compute_features(scene.image, cfg.features);
    const SegmentationResult result = segment_features(features, scene.image.extent(), cfg);
    session.record("texture seed " + std::to_string(seed), result);
    TextureRun run;
    run.seconds = seconds_since(start);
    run.accuracy = pixel_accuracy(as_mask(result), as_mask(scene.truth));
    run.cs_rate = correct_segmentation_rate(as_mask(result), as_mask(scene.truth), 0.75);
    const PcaModel wide = fit_pca_model(features, kDefaultEigenvalueCap, kDefaultEigenvalueCap);
    run.estimated_k = estimate_segment_count(wide, features.pixels(), 0.05);
    session.progress << "  texture seed " << seed << ": accuracy " << fixed(run.accuracy, 4) << ", CS "
                     << fixed(run.cs_rate, 2) << ", estimated k " << run.estimated_k << " (" << fixed(run.seconds, 1)
                     << " s)\n"
                     << std::flush;
    runs.push_back(run);
  }
  session.texture_runs = std::move(runs);
}

CriterionResult texture_pipeline(Session& session) {
  CriterionResult res = make_result(9, "texture mosaics, spectral histograms, k = 5");
  const auto start = Clock::now();
  ensure_texture_runs(session);
  res.seconds = seconds_since(start);
  bool ok = true;
  std::string accs;
  std::string css;
  double slowest = 0.0;
  for (const auto& run : *session.texture_runs) {
    ok = ok && run.accuracy >= 0.90 && run.cs_rate >= 0.8 && run.seconds < 300.0;
    accs += (accs.empty() ? "" : " ") + fixed(run.accuracy, 4);
    css += (css.empty() ? "" : " ") + fixed(run.cs_rate, 2);
    slowest = std::max(slowest, run.seconds);
  }
  res.passed = ok;
  res.detail = "accuracy [" + accs + "], CS(0.75) [" + css + "], slowest mosaic " + fixed(slowest, 1) + " s";
  return res;
}

CriterionResult segment_count(Session& session) {
  CriterionResult res = make_result(10, "segment-count estimate at omega = 0.05");
  const auto start = Clock::now();
  ensure_texture_runs(session);
  res.seconds = seconds_since(start);
  int hits = 0;
  std::string ks;
  for (const auto& run : *session.texture_runs) {
    if (run.estimated_k >= 4 && run.estimated_k <= 6) ++hits;
    ks += (ks.empty() ? "" : " ") + std::to_string(run.estimated_k);
  }
  res.passed = hits >= 4;
  res.detail = "estimates [" + ks + "], " + std::to_string(hits) + "/5 in {4,5,6}";
  return res;
}

using CriterionFn = std::function<CriterionResult(Session&)>;

const std::map<int, CriterionFn>& registry() {
  static const std::map<int, CriterionFn> table{
      {1, operator_correctness}, {2, simplex_projection}, {3, toy_optimality}, {4, pca_identities},
      {5, mean_update_monotonicity}, {6, crystal_clean}, {7, crystal_noisy}, {8, crystal_lattices},
      {9, texture_pipeline},     {10, segment_count},    {11, determinism},
  };
  return table;
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "operators") return Suite::kOperators;
  if (name == "crystal") return Suite::kCrystal;
  if (name == "texture") return Suite::kTexture;
  if (name == "all") return Suite::kAll;
  throw cli::UsageError("suite: expected operators, crystal, texture or all, got '" + name + "'");
}

std::vector<int> suite_criteria(Suite suite) {
  switch (suite) {
    case Suite::kOperators: return {1, 2, 3, 4, 5};
    case Suite::kCrystal: return {5, 6, 7, 8, 11};
    case Suite::kTexture: return {5, 9, 10};
    case Suite::kAll: return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  }
  return {};
}

std::vector<CriterionResult> run_suite(Suite suite, const fs::path& work_dir, std::ostream& progress) {
  fs::create_directories(work_dir);
  Session session(work_dir, progress);
  std::vector<int> ids = suite_criteria(suite);
  // Criterion 5 inspects every pipeline run, so it goes last.
  std::stable_partition(ids.begin(), ids.end(), [](int id) { return id != 5; });
  std::vector<CriterionResult> results;
  for (int id : ids) {
    progress << "running criterion " << id << "\n" << std::flush;
    try {
      results.push_back(registry().at(id)(session));
    } catch (const std::exception& e) {
      CriterionResult failed = make_result(id, "criterion " + std::to_string(id));
      failed.detail = std::string("error: ") + e.what();
      results.push_back(failed);
    }
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  C" << std::left << std::setw(3) << r.id << r.title << ": " << r.detail
     << " (" << fixed(r.seconds, 2) << " s)";
  return os.str();
}

void write_summary(const fs::path& path, const std::vector<CriterionResult>& results) {
  std::ofstream out(path);
  out << "criterion\tstatus\tseconds\ttitle\tdetail\n";
  for (const auto& r : results) {
    out << r.id << '\t' << (r.passed ? "PASS" : "FAIL") << '\t' << fixed(r.seconds, 3) << '\t' << r.title << '\t'
        << r.detail << '\n';
  }
  if (!out) throw std::runtime_error("out: failed to write '" + path.string() + "'");
}

int run_reproduce(Suite suite, const fs::path& out_dir, std::ostream& out) {
  const auto results = run_suite(suite, out_dir, out);
  for (const auto& r : results) out << format_result(r) << "\n";
  write_summary(out_dir / "summary.tsv", results);
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  out << passed << "/" << results.size() << " criteria passed\n";
  return passed == static_cast<long>(results.size()) ? 0 : 1;
}

}  // namespace mpseg::verify
