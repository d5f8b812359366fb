#include "cmrf/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cmrf/error.hpp"
#include "cmrf/rng.hpp"

namespace cmrf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void guard_enumeration(const Model& model) {
  double count = std::pow(static_cast<double>(model.num_labels()), model.num_vertices());
  if (count > static_cast<double>(kEnumerationLimit)) {
    fail(ErrorKind::Capacity, "enumeration needs k^n = " + std::to_string(model.num_labels()) + "^" +
                                  std::to_string(model.num_vertices()) + " labelings (limit 2^24)");
  }
}

// Odometer increment with the last vertex varying fastest, so labelings are
// visited in lexicographic order. Returns false after the last one.
bool advance(Labeling& x, int k) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (++x[i] < k) return true;
    x[i] = 0;
  }
  return false;
}

}  // namespace

MinimumResult brute_force_min(const Model& model) {
  guard_enumeration(model);
  Labeling x(static_cast<std::size_t>(model.num_vertices()), 0);
  MinimumResult best{x, kInf};
  do {
    const double v = energy(model, x);
    if (v < best.value) best = {x, v};
  } while (advance(x, model.num_labels()));
  return best;
}

BeliefField max_marginals(const Model& model) {
  guard_enumeration(model);
  BeliefField f(model.num_vertices(), model.num_labels(), kInf);
  Labeling x(static_cast<std::size_t>(model.num_vertices()), 0);
  do {
    const double v = energy(model, x);
    for (int i = 0; i < model.num_vertices(); ++i) f(i, x[i]) = std::min(f(i, x[i]), v);
  } while (advance(x, model.num_labels()));
  return f;
}

// ---------------------------------------------------------------------------

MinimumResult column_dp_min(const Model& model, int width, int height) {
  require(width >= 1 && height >= 1, "grid dimensions must be positive");
  require(model.num_labels() == 2, "column DP handles binary labels only");
  require(model.num_vertices() == width * height, "model size does not match the grid");
  if (height > 16) fail(ErrorKind::Capacity, "column DP limited to 16 rows (2^16 states per column)");
  const Graph& g = model.graph();
  const int expected_edges = height * (width - 1) + width * (height - 1);
  require(g.num_edges() == expected_edges, "model graph is not a 4-connected grid");
  auto vid = [width](int r, int c) { return r * width + c; };
  auto edge_between = [&](int a, int b) {
    const int e = g.find_edge(a, b);
    require(e >= 0, "model graph is not a 4-connected grid");
    return e;
  };

  const std::size_t states = std::size_t{1} << height;
  auto bit = [](std::size_t s, int r) { return static_cast<Label>((s >> r) & 1U); };

  // Cost of a column configuration: unary terms plus vertical edges.
  auto column_cost = [&](int c) {
    std::vector<double> cost(states, 0.0);
    std::vector<int> vertical(static_cast<std::size_t>(std::max(0, height - 1)));
    for (int r = 0; r + 1 < height; ++r) vertical[r] = edge_between(vid(r, c), vid(r + 1, c));
    for (std::size_t s = 0; s < states; ++s) {
      double v = 0.0;
      for (int r = 0; r < height; ++r) v += model.unary(vid(r, c), bit(s, r));
      for (int r = 0; r + 1 < height; ++r)
        v += pairwise_value(model.pairwise(vertical[r]), Orientation::Forward, bit(s, r), bit(s, r + 1));
      cost[s] = v;
    }
    return cost;
  };
  // Horizontal edges between column c-1 and c, one per row.
  auto horizontal = [&](int c) {
    std::vector<int> edges(static_cast<std::size_t>(height));
    for (int r = 0; r < height; ++r) edges[r] = edge_between(vid(r, c - 1), vid(r, c));
    return edges;
  };

  std::vector<std::vector<double>> value(static_cast<std::size_t>(width));
  value[0] = column_cost(0);
  for (int c = 1; c < width; ++c) {
    // min_s [ V(s) + sum_r h_r(s_r, t_r) ] is separable across rows, so the
    // rows of the previous column are replaced by the new ones one bit at a time.
    std::vector<double> acc = value[c - 1];
    std::vector<double> tmp(states);
    const auto hz = horizontal(c);
    for (int r = 0; r < height; ++r) {
      const auto& h = model.pairwise(hz[r]);
      const std::size_t mask = std::size_t{1} << r;
      for (std::size_t s = 0; s < states; ++s) {
        const Label t = bit(s, r);
        const double from0 = acc[s & ~mask] + pairwise_value(h, Orientation::Forward, 0, t);
        const double from1 = acc[s | mask] + pairwise_value(h, Orientation::Forward, 1, t);
        tmp[s] = std::min(from0, from1);
      }
      std::swap(acc, tmp);
    }
    const auto own = column_cost(c);
    for (std::size_t s = 0; s < states; ++s) acc[s] += own[s];
    value[c] = std::move(acc);
  }

  Labeling x(static_cast<std::size_t>(model.num_vertices()), 0);
  auto assign = [&](int c, std::size_t s) {
    for (int r = 0; r < height; ++r) x[vid(r, c)] = bit(s, r);
  };
  const auto& last = value[width - 1];
  std::size_t t = static_cast<std::size_t>(std::min_element(last.begin(), last.end()) - last.begin());
  assign(width - 1, t);
  for (int c = width - 1; c >= 1; --c) {
    const auto hz = horizontal(c);
    std::size_t best_s = 0;
    double best = kInf;
    for (std::size_t s = 0; s < states; ++s) {
      double v = value[c - 1][s];
      for (int r = 0; r < height; ++r)
        v += pairwise_value(model.pairwise(hz[r]), Orientation::Forward, bit(s, r), bit(t, r));
      if (v < best) {
        best = v;
        best_s = s;
      }
    }
    t = best_s;
    assign(c - 1, t);
  }
  return {x, energy(model, x)};
}

// ---------------------------------------------------------------------------

MdpInstance::MdpInstance(const Model& model, double p) : model_(&model), p_(p) {
  require(p > 0.0 && p < 1.0, "p must lie in (0,1)");
}

double MdpInstance::cost(int vertex, Label label, std::span<const Label> action) const {
  const Graph& g = model_->graph();
  require(action.size() == static_cast<std::size_t>(g.degree(vertex)), "action must label every neighbor");
  double c = p_ * model_->unary(vertex, label);
  int slot = 0;
  for (int d = g.dart_begin(vertex); d < g.dart_end(vertex); ++d, ++slot) {
    c += p_ * model_->weights()[d] * model_->dart_value(d, label, action[slot]);
  }
  return c;
}

std::vector<double> mdp_bellman(const MdpInstance& mdp, std::span<const double> values) {
  const Model& model = mdp.model();
  const Graph& g = model.graph();
  const int k = model.num_labels();
  require(values.size() == static_cast<std::size_t>(mdp.num_states()), "value table has wrong size");
  const double actions = std::pow(static_cast<double>(k), g.max_degree());
  if (actions > static_cast<double>(kActionLimit)) {
    fail(ErrorKind::Capacity, "explicit Bellman backup needs k^deg = " + std::to_string(actions) +
                                  " actions per state (limit 2^20)");
  }
  const double gamma = mdp.discount();
  std::vector<double> out(values.size());
  for (int i = 0; i < model.num_vertices(); ++i) {
    const int deg = g.degree(i);
    for (Label t = 0; t < k; ++t) {
      Labeling action(static_cast<std::size_t>(deg), 0);
      double best = kInf;
      do {
        double expected = 0.0;
        int slot = 0;
        for (int d = g.dart_begin(i); d < g.dart_end(i); ++d, ++slot) {
          expected += model.weights()[d] * values[mdp.state(g.dart_head(d), action[slot])];
        }
        best = std::min(best, mdp.cost(i, t, action) + gamma * expected);
      } while (advance(action, k));
      out[mdp.state(i, t)] = best;
    }
  }
  return out;
}

std::vector<double> mdp_value_iteration(const MdpInstance& mdp, double tol, int max_iter) {
  std::vector<double> v(static_cast<std::size_t>(mdp.num_states()), 0.0);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<double> next = mdp_bellman(mdp, v);
    double change = 0.0;
    for (std::size_t s = 0; s < v.size(); ++s) change = std::max(change, std::abs(next[s] - v[s]));
    v = std::move(next);
    if (change <= tol) break;
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

double prefix_value(const Model& model, double p, std::span<const int> walk, std::span<const Label> labels,
                    int horizon) {
  const Graph& g = model.graph();
  const double q = 1.0 - p;
  double discount = 1.0;
  double value = 0.0;
  for (int t = 0; t < horizon; ++t) {
    const int d = g.find_dart(walk[t], walk[t + 1]);
    require(d >= 0, "walk step " + std::to_string(t) + " is not an edge");
    value += p * discount * (model.unary(walk[t], labels[t]) + model.dart_value(d, labels[t], labels[t + 1]));
    discount *= q;
  }
  return value;
}

double tail_after(const Model& model, double p, int horizon) {
  return std::pow(1.0 - p, horizon) * (model.max_unary() + model.max_pairwise());
}

}  // namespace

WalkValue walk_energy_prefix(const Model& model, double p, std::span<const int> walk,
                             std::span<const Label> labels, int horizon) {
  require(p > 0.0 && p < 1.0, "p must lie in (0,1)");
  require(horizon >= 0, "horizon must be nonnegative");
  require(walk.size() >= static_cast<std::size_t>(horizon) + 1 &&
              labels.size() >= static_cast<std::size_t>(horizon) + 1,
          "walk and label sequences need horizon + 1 entries");
  return {prefix_value(model, p, walk, labels, horizon), tail_after(model, p, horizon)};
}

int horizon_for_tail(const Model& model, double p, double resolution) {
  require(resolution > 0.0, "resolution must be positive");
  const double scale = model.max_unary() + model.max_pairwise();
  if (scale <= resolution) return 0;
  return static_cast<int>(std::ceil(std::log(resolution / scale) / std::log(1.0 - p)));
}

WalkPolicy::WalkPolicy(const Graph& graph, int num_labels)
    : num_labels_(num_labels),
      table_(static_cast<std::size_t>(graph.num_darts()) * num_labels, 0) {}

WalkPolicy greedy_policy_from(const BeliefField& phi, const Model& model, double p) {
  require(phi.matches(model), "belief field shape does not match the model");
  const Graph& g = model.graph();
  const int k = model.num_labels();
  const double q = 1.0 - p;
  WalkPolicy policy(g, k);
  for (int d = 0; d < g.num_darts(); ++d) {
    const int j = g.dart_head(d);
    for (Label t = 0; t < k; ++t) {
      Label best = 0;
      double best_v = kInf;
      for (Label u = 0; u < k; ++u) {
        const double v = p * model.dart_value(d, t, u) + q * phi(j, u);
        if (v < best_v) {
          best_v = v;
          best = u;
        }
      }
      policy.set(d, t, best);
    }
  }
  return policy;
}

MonteCarloEstimate monte_carlo_value(const Model& model, double p, const WalkPolicy& policy,
                                     int start_vertex, Label start_label, int samples, int horizon,
                                     std::uint64_t seed) {
  require(samples >= 1, "need at least one sample");
  require(start_vertex >= 0 && start_vertex < model.num_vertices(), "start vertex out of range");
  require(start_label >= 0 && start_label < model.num_labels(), "start label out of range");
  const Graph& g = model.graph();
  Rng rng(seed);
  std::vector<int> walk(static_cast<std::size_t>(horizon) + 1);
  Labeling labels(static_cast<std::size_t>(horizon) + 1);
  // Welford running mean and variance
  double mean = 0.0, m2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    walk[0] = start_vertex;
    labels[0] = start_label;
    for (int t = 0; t < horizon; ++t) {
      const int i = walk[t];
      const double r = rng.uniform01();
      double acc = 0.0;
      int d = g.dart_end(i) - 1;
      for (int c = g.dart_begin(i); c < g.dart_end(i); ++c) {
        acc += model.weights()[c];
        if (r < acc) {
          d = c;
          break;
        }
      }
      walk[t + 1] = g.dart_head(d);
      labels[t + 1] = policy.next(d, labels[t]);
    }
    const double v = prefix_value(model, p, walk, labels, horizon);
    const double delta = v - mean;
    mean += delta / (s + 1);
    m2 += delta * (v - mean);
  }
  const double n = samples;
  const double var = samples > 1 ? m2 / (n - 1) : 0.0;
  return {mean, std::sqrt(var / n), tail_after(model, p, horizon)};
}

}  // namespace cmrf
