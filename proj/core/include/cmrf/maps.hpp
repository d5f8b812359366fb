#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cmrf/fastmin.hpp"
#include "cmrf/model.hpp"

namespace cmrf {

/// One real vector of length k per vertex.
class BeliefField {
 public:
  BeliefField() = default;
  BeliefField(int num_vertices, int num_labels, double fill = 0.0)
      : num_vertices_(num_vertices),
        num_labels_(num_labels),
        values_(static_cast<std::size_t>(num_vertices) * num_labels, fill) {}

  static BeliefField zeros_like(const Model& model) {
    return BeliefField(model.num_vertices(), model.num_labels());
  }

  int num_vertices() const noexcept { return num_vertices_; }
  int num_labels() const noexcept { return num_labels_; }

  double& operator()(int i, Label a) { return values_[index(i, a)]; }
  double operator()(int i, Label a) const { return values_[index(i, a)]; }

  std::span<double> row(int i) {
    return {values_.data() + static_cast<std::size_t>(i) * num_labels_, static_cast<std::size_t>(num_labels_)};
  }
  std::span<const double> row(int i) const {
    return {values_.data() + static_cast<std::size_t>(i) * num_labels_, static_cast<std::size_t>(num_labels_)};
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool matches(const Model& model) const {
    return num_vertices_ == model.num_vertices() && num_labels_ == model.num_labels();
  }
  bool all_finite() const;

 private:
  std::size_t index(int i, Label a) const { return static_cast<std::size_t>(i) * num_labels_ + a; }

  int num_vertices_ = 0;
  int num_labels_ = 0;
  std::vector<double> values_;
};

/// sum_i max_t |a_i(t) - b_i(t)|
double distance_inf1(const BeliefField& a, const BeliefField& b);
/// max_{i,t} |a_i(t) - b_i(t)|
double distance_inf(const BeliefField& a, const BeliefField& b);
/// Per-vertex max_t |a_i(t) - b_i(t)|
std::vector<double> vertex_distances(const BeliefField& a, const BeliefField& b);

/// Diffusion: (T phi)_i(t) = p g_i(t) + sum_j min_u [ p/2 h_ij(t,u) + q w_ji phi_j(u) ].
/// Control:   (S phi)_i(t) = p g_i(t) + sum_j w_ij min_u [ p h_ij(t,u) + q phi_j(u) ].
enum class MapKind { Diffusion, Control };

std::string_view to_string(MapKind kind) noexcept;
/// Accepts "T"/"diffusion" and "S"/"control".
MapKind parse_map_kind(std::string_view name);

/// Distance in which the map contracts by q: the (inf,1) norm for diffusion,
/// the inf norm for control.
double contraction_distance(MapKind kind, const BeliefField& a, const BeliefField& b);

/// Evaluates one of the maps, parallel over vertex ranges. Results do not
/// depend on the thread count: each vertex sums its neighbors in adjacency order.
class MapEvaluator {
 public:
  MapEvaluator(const Model& model, MapKind kind, double p, int threads = 1);

  const Model& model() const noexcept { return *model_; }
  MapKind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  void apply(const BeliefField& in, BeliefField& out);
  BeliefField apply(const BeliefField& in);

 private:
  struct Scratch {
    std::vector<double> base;
    std::vector<double> message;
    MinConvWorkspace ws;
  };
  void apply_range(const BeliefField& in, BeliefField& out, int begin, int end, Scratch& scratch) const;

  const Model* model_;
  MapKind kind_;
  double p_;
  double q_;
  int threads_;
  std::vector<Scratch> scratch_;
};

BeliefField apply_diffusion(const Model& model, double p, const BeliefField& phi);
BeliefField apply_control(const Model& model, double p, const BeliefField& phi);
inline BeliefField apply_map(MapKind kind, const Model& model, double p, const BeliefField& phi) {
  return kind == MapKind::Diffusion ? apply_diffusion(model, p, phi) : apply_control(model, p, phi);
}

struct SolveParams {
  double p = 0.1;
  double tol = 1e-9;
  int max_iter = 1000;
  /// Defaults to zero, which gives monotone non-decreasing iterates.
  std::optional<BeliefField> initial;
  int threads = 1;

  double q() const { return 1.0 - p; }
  void validate() const;
};

struct FixedPointReport {
  MapKind kind = MapKind::Diffusion;
  double p = 0.0;
  BeliefField field;
  int iterations = 0;
  /// Contraction distance between the last two iterates.
  double residual = 0.0;
  /// residual / p; bounds the distance from `field` to the exact fixed point.
  double certified_distance = 0.0;
  bool converged = false;
};

/// Called after each iteration with (iteration, previous, next, residual).
using IterationObserver =
    std::function<void(int, const BeliefField&, const BeliefField&, double)>;

/// Synchronous fixed-point iteration until the residual drops to `tol` or
/// `max_iter` is reached. Throws NumericalFailure on non-finite values.
FixedPointReport solve(const Model& model, MapKind kind, const SolveParams& params,
                       const IterationObserver& observer = {});

/// argmin per vertex, ties to the smallest label.
Labeling decode(const BeliefField& phi);

/// H(x) = sum_i phi_i(x_i); a lower bound on F(x) at the diffusion fixed point.
double factored_bound(const BeliefField& phi, const Labeling& x);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  Labeling labeling;
};

/// lower <= min F <= upper, from a converged diffusion report.
Bracket bracket(const Model& model, const FixedPointReport& report);

/// True iff phi <= T phi + tol elementwise.
bool check_lp_feasible(const Model& model, double p, const BeliefField& phi, double tol);

/// The control fixed point as pointwise lower bounds on the max-marginals.
BeliefField value_lower_bounds(const Model& model, const FixedPointReport& report);

}  // namespace cmrf
