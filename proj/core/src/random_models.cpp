#include "cmrf/random_models.hpp"

#include <algorithm>

namespace cmrf {

Model random_model(Rng& rng, const RandomModelSpec& spec) {
  const int n = spec.min_vertices + rng.below(spec.max_vertices - spec.min_vertices + 1);
  const int k = spec.min_labels + rng.below(spec.max_labels - spec.min_labels + 1);
  const int cap = spec.max_degree > 0 ? spec.max_degree : n;

  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<Edge> edges;
  auto has = [&](int a, int b) {
    return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
      return (e.lo == a && e.hi == b) || (e.lo == b && e.hi == a);
    });
  };
  // random spanning tree: attach each vertex to an earlier one with spare degree
  for (int v = 1; v < n; ++v) {
    std::vector<int> open;
    for (int u = 0; u < v; ++u)
      if (degree[u] < cap) open.push_back(u);
    const int u = open.empty() ? v - 1 : open[static_cast<std::size_t>(rng.below(static_cast<int>(open.size())))];
    edges.push_back({u, v});
    ++degree[u];
    ++degree[v];
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (has(a, b) || degree[a] >= cap || degree[b] >= cap) continue;
      if (rng.uniform01() < spec.extra_edge_prob) {
        edges.push_back({a, b});
        ++degree[a];
        ++degree[b];
      }
    }
  }

  ModelBuilder builder(n, k);
  std::vector<double> g(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    for (double& v : g) v = rng.uniform(0.0, spec.max_cost);
    builder.set_unary(i, g);
  }
  for (const Edge& e : edges) {
    DenseTable t{k, std::vector<double>(static_cast<std::size_t>(k) * k)};
    for (double& v : t.values) v = rng.uniform(0.0, spec.max_cost);
    builder.add_edge(e.lo, e.hi, std::move(t));
  }
  if (!spec.uniform_weights) {
    for (const Edge& e : edges) {
      builder.set_weight(e.lo, e.hi, rng.uniform(0.05, 1.0));
      builder.set_weight(e.hi, e.lo, rng.uniform(0.05, 1.0));
    }
  }
  return builder.build();
}

BeliefField random_field(Rng& rng, int num_vertices, int num_labels, double lo, double hi) {
  BeliefField f(num_vertices, num_labels);
  for (double& v : f.values()) v = rng.uniform(lo, hi);
  return f;
}

Labeling random_labeling(Rng& rng, const Model& model) {
  Labeling x(static_cast<std::size_t>(model.num_vertices()));
  for (auto& v : x) v = rng.below(model.num_labels());
  return x;
}

}  // namespace cmrf
