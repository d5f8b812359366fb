#include "cmrf/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "cmrf/baselines.hpp"
#include "cmrf/error.hpp"
#include "cmrf/oracles.hpp"
#include "cmrf/problems.hpp"

namespace cmrf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Fixed-iteration runs: the tolerance only stops early on an exact fixed point.
SolveParams fixed_iterations(double p, int iterations, int threads) {
  SolveParams params;
  params.p = p;
  params.tol = std::numeric_limits<double>::min();
  params.max_iter = iterations;
  params.threads = threads;
  return params;
}

Labeling unary_argmin(const Model& model) {
  Labeling x(static_cast<std::size_t>(model.num_vertices()));
  for (int i = 0; i < model.num_vertices(); ++i) {
    const auto g = model.unary(i);
    x[i] = static_cast<Label>(std::min_element(g.begin(), g.end()) - g.begin());
  }
  return x;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::vector<BenchRow> run_grid_bench(const BenchSpec& spec) {
  require(spec.seeds >= 1, "need at least one seed");
  require(spec.iterations >= 1, "need at least one iteration");
  for (const auto& a : spec.algorithms) require(contains(kBenchAlgorithms, a), "unknown algorithm '" + a + "'");
  auto wanted = [&](const std::string& a) { return contains(spec.algorithms, a); };

  std::vector<BenchRow> rows;
  for (int s = 0; s < spec.seeds; ++s) {
    const std::uint64_t seed = spec.first_seed + static_cast<std::uint64_t>(s);
    const IsingInstance inst = random_grid({spec.size, spec.coupling, seed});
    const Model& model = inst.model;
    const int darts = model.graph().num_darts();

    auto start = Clock::now();
    const MinimumResult opt = column_dp_min(model, spec.size, spec.size);
    const double dp_seconds = seconds_since(start);

    std::map<std::string, BenchRow> out;
    auto record = [&](const std::string& name, const Labeling& x, double secs, int iters, int work) {
      out[name] = BenchRow{seed,  name, ising_energy(model.graph(), inst.alpha, inst.beta, x),
                           hamming(x, opt.labeling), secs, iters, work};
    };
    record("DP", opt.labeling, dp_seconds, 0, 0);

    if (wanted("ICM")) {
      start = Clock::now();
      const IcmResult r = icm_run(model, unary_argmin(model));
      record("ICM", r.labeling, seconds_since(start), r.sweeps, 0);
    }
    for (MapKind kind : {MapKind::Control, MapKind::Diffusion}) {
      const std::string name(to_string(kind));
      if (!wanted(name) && !wanted(name + "+ICM")) continue;
      start = Clock::now();
      const FixedPointReport rep = solve(model, kind, fixed_iterations(spec.p, spec.iterations, spec.threads));
      const Labeling x = decode(rep.field);
      const double base = seconds_since(start);
      record(name, x, base, rep.iterations, darts);
      start = Clock::now();
      record(name + "+ICM", icm(model, x), base + seconds_since(start), rep.iterations, darts);
    }
    if (wanted("BP") || wanted("BP+ICM")) {
      start = Clock::now();
      MinSumBp bp(model, spec.damping);
      bp.run(spec.iterations);
      const Labeling x = decode(bp.beliefs());
      const double base = seconds_since(start);
      record("BP", x, base, bp.iterations(), darts);
      start = Clock::now();
      record("BP+ICM", icm(model, x), base + seconds_since(start), bp.iterations(), darts);
    }

    for (const auto& a : spec.algorithms) rows.push_back(out.at(a));
  }
  return rows;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows, const std::vector<std::string>& algorithms) {
  std::vector<BenchSummary> out;
  for (const auto& a : algorithms) {
    std::vector<const BenchRow*> sel;
    for (const auto& r : rows)
      if (r.algorithm == a) sel.push_back(&r);
    if (sel.empty()) continue;
    const double n = static_cast<double>(sel.size());
    BenchSummary s;
    s.algorithm = a;
    for (const auto* r : sel) {
      s.energy_mean += r->energy / n;
      s.hamming_mean += r->hamming / n;
      s.seconds_mean += r->seconds / n;
    }
    if (sel.size() > 1) {
      double ve = 0.0, vh = 0.0;
      for (const auto* r : sel) {
        ve += (r->energy - s.energy_mean) * (r->energy - s.energy_mean);
        vh += (r->hamming - s.hamming_mean) * (r->hamming - s.hamming_mean);
      }
      s.energy_sd = std::sqrt(ve / (n - 1.0));
      s.hamming_sd = std::sqrt(vh / (n - 1.0));
    }
    out.push_back(std::move(s));
  }
  return out;
}

RestoreResult restore_image(const GrayImage& noisy, const RestoreParams& params) {
  require(params.iterations >= 1, "need at least one iteration");
  const Model model = restoration_model(noisy, params.lambda, params.cap, params.num_labels);
  for (auto px : noisy.pixels) require(px < params.num_labels, "pixel value exceeds the label range");
  const FixedPointReport rep = solve(model, params.kind, fixed_iterations(params.p, params.iterations, params.threads));
  const Labeling x = decode(rep.field);
  return {labeling_to_image(x, noisy.width, noisy.height), energy(model, x), rep.iterations, rep.residual};
}

StereoResult match_stereo(const ColorImage& left, const ColorImage& right, const StereoRunParams& params) {
  require(params.iterations >= 1, "need at least one iteration");
  const Model model =
      stereo_model(left, right, {params.max_disparity, params.step, params.jump, params.truncation});
  const FixedPointReport rep =
      solve(model, MapKind::Control, fixed_iterations(params.p, params.iterations, params.threads));
  Labeling x = decode(rep.field);
  const double e = energy(model, x);
  return {std::move(x), e, rep.iterations, rep.residual};
}

}  // namespace cmrf
