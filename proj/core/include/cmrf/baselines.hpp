#pragma once

#include <vector>

#include "cmrf/fastmin.hpp"
#include "cmrf/maps.hpp"
#include "cmrf/model.hpp"

namespace cmrf {

struct IcmResult {
  Labeling labeling;
  int sweeps = 0;
  int moves = 0;
};

/// Iterated conditional modes: ascending-vertex sweeps, each vertex moves to
/// the label minimizing its conditional energy only on strict improvement.
/// Stops after a sweep without moves or after `max_sweeps`.
IcmResult icm_run(const Model& model, Labeling x0, int max_sweeps = 1000);

inline Labeling icm(const Model& model, Labeling x0, int max_sweeps = 1000) {
  return icm_run(model, std::move(x0), max_sweeps).labeling;
}

/// g_i(a) + sum_j h_ij(a, x_j)
double conditional_energy(const Model& model, const Labeling& x, int vertex, Label a);

/// Messages on darts: message(d) is the message sent from tail(d) to head(d).
class MessageSet {
 public:
  MessageSet() = default;
  MessageSet(int num_darts, int num_labels)
      : num_labels_(num_labels), values_(static_cast<std::size_t>(num_darts) * num_labels, 0.0) {}

  std::span<double> message(int dart) {
    return {values_.data() + static_cast<std::size_t>(dart) * num_labels_, static_cast<std::size_t>(num_labels_)};
  }
  std::span<const double> message(int dart) const {
    return {values_.data() + static_cast<std::size_t>(dart) * num_labels_, static_cast<std::size_t>(num_labels_)};
  }
  int num_labels() const noexcept { return num_labels_; }

 private:
  int num_labels_ = 0;
  std::vector<double> values_;
};

/// Synchronous damped min-sum belief propagation with zero-initialized,
/// min-normalized messages.
class MinSumBp {
 public:
  MinSumBp(const Model& model, double damping);

  /// One synchronous update of every message. Throws NumericalFailure on non-finite values.
  void step();
  void run(int iterations);

  int iterations() const noexcept { return iterations_; }
  const MessageSet& messages() const noexcept { return messages_; }
  /// b_i(a) = g_i(a) + sum_l m_{l->i}(a)
  BeliefField beliefs() const;

 private:
  const Model* model_;
  double damping_;
  int iterations_ = 0;
  MessageSet messages_;
  MessageSet next_;
  std::vector<double> base_;
  std::vector<double> fresh_;
  MinConvWorkspace ws_;
};

BeliefField min_sum_bp(const Model& model, double damping, int iterations);

}  // namespace cmrf
