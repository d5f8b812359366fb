#include "cmrf/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmrf/error.hpp"

namespace cmrf {

double conditional_energy(const Model& model, const Labeling& x, int vertex, Label a) {
  const Graph& g = model.graph();
  double v = model.unary(vertex, a);
  for (int d = g.dart_begin(vertex); d < g.dart_end(vertex); ++d) v += model.dart_value(d, a, x[g.dart_head(d)]);
  return v;
}

IcmResult icm_run(const Model& model, Labeling x0, int max_sweeps) {
  model.check_labeling(x0);
  IcmResult result{std::move(x0), 0, 0};
  Labeling& x = result.labeling;
  const int k = model.num_labels();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    ++result.sweeps;
    bool changed = false;
    for (int i = 0; i < model.num_vertices(); ++i) {
      const double current = conditional_energy(model, x, i, x[i]);
      Label best = x[i];
      double best_v = current;
      for (Label a = 0; a < k; ++a) {
        const double v = conditional_energy(model, x, i, a);
        if (v < best_v) {
          best_v = v;
          best = a;
        }
      }
      if (best != x[i]) {
        x[i] = best;
        ++result.moves;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return result;
}

// ---------------------------------------------------------------------------

MinSumBp::MinSumBp(const Model& model, double damping)
    : model_(&model),
      damping_(damping),
      messages_(model.graph().num_darts(), model.num_labels()),
      next_(model.graph().num_darts(), model.num_labels()),
      base_(static_cast<std::size_t>(model.num_labels())),
      fresh_(static_cast<std::size_t>(model.num_labels())) {
  require(damping >= 0.0 && damping < 1.0, "damping must lie in [0,1)");
}

namespace {

void subtract_min(std::span<double> m) {
  const double lo = *std::min_element(m.begin(), m.end());
  for (double& v : m) v -= lo;
}

}  // namespace

void MinSumBp::step() {
  const Model& model = *model_;
  const Graph& g = model.graph();
  const int k = model.num_labels();
  for (int d = 0; d < g.num_darts(); ++d) {
    const int i = g.dart_tail(d);
    const int j = g.dart_head(d);
    // everything i knows except what j told it
    const auto gi = model.unary(i);
    std::copy(gi.begin(), gi.end(), base_.begin());
    for (int in = g.dart_begin(i); in < g.dart_end(i); ++in) {
      if (g.dart_head(in) == j) continue;
      const auto m = messages_.message(g.dart_reverse(in));
      for (int a = 0; a < k; ++a) base_[a] += m[a];
    }
    // m'(b) = min_a [ base(a) + h_ij(a, b) ], evaluated from j's side
    const int rev = g.dart_reverse(d);
    const MessageProblem problem{base_, 1.0, &model.pairwise(g.dart_edge(d)), model.dart_orientation(rev)};
    minconv(problem, fresh_, ws_);
    subtract_min(fresh_);
    const auto old = messages_.message(d);
    auto out = next_.message(d);
    for (int b = 0; b < k; ++b) out[b] = (1.0 - damping_) * fresh_[b] + damping_ * old[b];
    subtract_min(out);
    for (double v : out) {
      if (!std::isfinite(v)) {
        fail(ErrorKind::NumericalFailure, "non-finite BP message at iteration " + std::to_string(iterations_ + 1));
      }
    }
  }
  std::swap(messages_, next_);
  ++iterations_;
}

void MinSumBp::run(int iterations) {
  for (int t = 0; t < iterations; ++t) step();
}

BeliefField MinSumBp::beliefs() const {
  const Model& model = *model_;
  const Graph& g = model.graph();
  BeliefField b(model.num_vertices(), model.num_labels());
  for (int i = 0; i < model.num_vertices(); ++i) {
    auto row = b.row(i);
    const auto gi = model.unary(i);
    std::copy(gi.begin(), gi.end(), row.begin());
    for (int d = g.dart_begin(i); d < g.dart_end(i); ++d) {
      const auto m = messages_.message(g.dart_reverse(d));
      for (std::size_t a = 0; a < row.size(); ++a) row[a] += m[a];
    }
  }
  return b;
}

BeliefField min_sum_bp(const Model& model, double damping, int iterations) {
  MinSumBp bp(model, damping);
  bp.run(iterations);
  return bp.beliefs();
}

}  // namespace cmrf
