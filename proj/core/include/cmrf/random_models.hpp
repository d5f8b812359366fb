#pragma once

#include "cmrf/maps.hpp"
#include "cmrf/model.hpp"
#include "cmrf/rng.hpp"

namespace cmrf {

struct RandomModelSpec {
  int min_vertices = 2;
  int max_vertices = 8;
  int min_labels = 1;
  int max_labels = 4;
  /// Probability of each non-tree edge.
  double extra_edge_prob = 0.3;
  /// Costs are drawn from U[0, max_cost].
  double max_cost = 10.0;
  bool uniform_weights = false;
  /// 0 means unlimited.
  int max_degree = 0;
};

/// Random connected graph (random spanning tree plus extra edges), dense
/// nonnegative costs and random positive walk weights.
Model random_model(Rng& rng, const RandomModelSpec& spec);

/// Entries U[lo, hi].
BeliefField random_field(Rng& rng, int num_vertices, int num_labels, double lo, double hi);
inline BeliefField random_field(Rng& rng, const Model& model, double lo, double hi) {
  return random_field(rng, model.num_vertices(), model.num_labels(), lo, hi);
}

Labeling random_labeling(Rng& rng, const Model& model);

}  // namespace cmrf
