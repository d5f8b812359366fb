#pragma once

#include <cmath>
#include <vector>

#include "cmrf/model.hpp"

namespace fixtures {

/// Five-cycle with two labels. Vertex 0 pays 1 for label 0; every other
/// unary cost is zero. Attractive edges charge 1 for disagreeing labels,
/// repulsive edges charge 1 for agreeing ones.
inline cmrf::Model five_cycle(bool attractive) {
  cmrf::ModelBuilder b(5, 2);
  const double g0[] = {1.0, 0.0};
  b.set_unary(0, g0);
  for (int i = 0; i < 5; ++i) {
    const int j = (i + 1) % 5;
    if (attractive) {
      b.add_edge(i, j, cmrf::Potts{1.0});
    } else {
      b.add_edge(i, j, cmrf::DenseTable{2, {1.0, 0.0, 0.0, 1.0}});
    }
  }
  return b.build();
}

/// Path 0-1-...-(n-1) with all costs zero.
inline cmrf::Model zero_path(int n, int k) {
  cmrf::ModelBuilder b(n, k);
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1, cmrf::DenseTable{k, std::vector<double>(k * k, 0.0)});
  return b.build();
}

/// Independent enumeration helper: calls f on every labeling in lexicographic order.
template <class F>
void for_each_labeling(int n, int k, F&& f) {
  cmrf::Labeling x(static_cast<std::size_t>(n), 0);
  while (true) {
    f(x);
    int i = n - 1;
    while (i >= 0 && x[i] == k - 1) x[i--] = 0;
    if (i < 0) return;
    ++x[i];
  }
}

/// Straight-from-the-definition energy, used to cross-check energy().
inline double naive_energy(const cmrf::Model& m, const cmrf::Labeling& x) {
  double e = 0.0;
  for (int i = 0; i < m.num_vertices(); ++i) e += m.unary(i, x[i]);
  const auto& g = m.graph();
  for (int e_id = 0; e_id < g.num_edges(); ++e_id) {
    const auto& ed = g.edge(e_id);
    e += cmrf::pairwise_value(m.pairwise(e_id), cmrf::Orientation::Forward, x[ed.lo], x[ed.hi]);
  }
  return e;
}

}  // namespace fixtures
