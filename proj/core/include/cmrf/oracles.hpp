#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cmrf/maps.hpp"
#include "cmrf/model.hpp"

namespace cmrf {

inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kActionLimit = std::uint64_t{1} << 20;

struct MinimumResult {
  Labeling labeling;
  double value = 0.0;
};

/// Exact minimum of F by enumeration; ties resolve to the lexicographically
/// smallest labeling. Capacity error when k^n > 2^24.
MinimumResult brute_force_min(const Model& model);

/// f_i(t) = min over labelings with x_i = t of F(x), by enumeration.
BeliefField max_marginals(const Model& model);

/// Exact minimum for a binary model on a width x height 4-connected grid
/// (vertex r * width + c) by dynamic programming over column configurations.
/// The reported value is recomputed with energy() on the returned labeling.
MinimumResult column_dp_min(const Model& model, int width, int height);

/// The discounted MDP whose value iteration the control map performs: states
/// (i, t), actions assign a label to each neighbor of i, the next vertex is
/// drawn with probability w_ij and the discount is q = 1 - p.
class MdpInstance {
 public:
  MdpInstance(const Model& model, double p);

  const Model& model() const noexcept { return *model_; }
  double p() const noexcept { return p_; }
  double discount() const noexcept { return 1.0 - p_; }
  int num_states() const noexcept { return model_->num_vertices() * model_->num_labels(); }
  int state(int vertex, Label label) const { return vertex * model_->num_labels() + label; }

  /// c((i,t), u) with u indexed like the neighbors of i.
  double cost(int vertex, Label label, std::span<const Label> action) const;

 private:
  const Model* model_;
  double p_;
};

/// One Bellman backup by explicit enumeration of every action tuple.
/// `values` is indexed by MdpInstance::state.
std::vector<double> mdp_bellman(const MdpInstance& mdp, std::span<const double> values);

/// Iterates mdp_bellman from zero until the sup-norm change is <= tol.
std::vector<double> mdp_value_iteration(const MdpInstance& mdp, double tol, int max_iter);

struct WalkValue {
  double value = 0.0;
  /// Upper bound on the discarded tail of the discounted sum.
  double tail_bound = 0.0;
};

/// sum_{t < horizon} p q^t [ g_{w_t}(z_t) + h_{w_t w_{t+1}}(z_t, z_{t+1}) ] along a walk.
WalkValue walk_energy_prefix(const Model& model, double p, std::span<const int> walk,
                             std::span<const Label> labels, int horizon);

/// Smallest horizon whose tail bound q^h (max g + max h) is <= resolution.
int horizon_for_tail(const Model& model, double p, double resolution);

/// pi(i, t, j): next label when moving from (i, t) to neighbor j.
class WalkPolicy {
 public:
  WalkPolicy(const Graph& graph, int num_labels);

  Label next(int dart, Label current) const {
    return table_[static_cast<std::size_t>(dart) * num_labels_ + current];
  }
  void set(int dart, Label current, Label next) {
    table_[static_cast<std::size_t>(dart) * num_labels_ + current] = next;
  }
  int num_labels() const noexcept { return num_labels_; }

 private:
  int num_labels_;
  std::vector<Label> table_;
};

/// pi(i, t, j) = argmin_u [ p h_ij(t,u) + q phi_j(u) ], ties to the smallest label.
WalkPolicy greedy_policy_from(const BeliefField& phi, const Model& model, double p);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  double tail_bound = 0.0;
};

/// Average discounted walk energy of `policy` from (vertex, label) over sampled random walks.
MonteCarloEstimate monte_carlo_value(const Model& model, double p, const WalkPolicy& policy,
                                     int start_vertex, Label start_label, int samples, int horizon,
                                     std::uint64_t seed);

}  // namespace cmrf
