#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace cmrf {

using Label = int;

/// One label per vertex, 0-based.
using Labeling = std::vector<Label>;

/// Undirected edge in canonical orientation (lo < hi).
struct Edge {
  int lo = 0;
  int hi = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple, undirected, connected graph on vertices 0..n-1.
///
/// Edges are stored once in canonical orientation and sorted
/// lexicographically. Each vertex owns a contiguous range of darts (directed
/// half-edges i->j), one per neighbor, ordered by ascending neighbor index.
/// Darts are the unit that walk weights and messages are attached to.
class Graph {
 public:
  Graph() = default;

  /// Validates the edge list: no self-loops, no duplicates, connected, n >= 2.
  /// Edges may be given in either orientation.
  Graph(int num_vertices, std::vector<Edge> edges);

  /// 4-connected grid with vertex index row * width + col.
  static Graph grid(int width, int height);

  int num_vertices() const noexcept { return num_vertices_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  int num_darts() const noexcept { return static_cast<int>(heads_.size()); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const int> neighbors(int i) const {
    return {heads_.data() + offsets_[i], heads_.data() + offsets_[i + 1]};
  }
  int degree(int i) const { return offsets_[i + 1] - offsets_[i]; }
  int max_degree() const;

  int dart_begin(int i) const { return offsets_[i]; }
  int dart_end(int i) const { return offsets_[i + 1]; }
  int dart_tail(int d) const { return tails_[d]; }
  int dart_head(int d) const { return heads_[d]; }
  int dart_edge(int d) const { return dart_edges_[d]; }
  /// The dart pointing the other way along the same edge.
  int dart_reverse(int d) const { return reverse_[d]; }

  /// Edge index of {i,j}, or -1.
  int find_edge(int i, int j) const;
  /// Dart index of i->j, or -1.
  int find_dart(int i, int j) const;

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<int> tails_;
  std::vector<int> heads_;
  std::vector<int> dart_edges_;
  std::vector<int> reverse_;
};

// Pairwise cost forms. Structured forms depend only on the label difference
// and are symmetric; DenseTable is indexed [a * k + b] with a the label of the
// lower-indexed endpoint.

struct DenseTable {
  int num_labels = 0;
  std::vector<double> values;
};

/// scale * min((a - b)^2, cap)
struct TruncatedQuadratic {
  double scale = 0.0;
  double cap = 0.0;
};

/// scale * min(|a - b|, cap)
struct TruncatedLinear {
  double scale = 0.0;
  double cap = 0.0;
};

/// 0 if a == b, step if |a - b| == 1, jump otherwise. Requires step < jump.
struct StereoTwoStep {
  double step = 0.0;
  double jump = 0.0;
};

/// 0 if a == b, penalty otherwise.
struct Potts {
  double penalty = 0.0;
};

using PairwiseCost =
    std::variant<DenseTable, TruncatedQuadratic, TruncatedLinear, StereoTwoStep, Potts>;

/// Which endpoint the first label argument belongs to. Forward means the
/// lower-indexed vertex of the edge.
enum class Orientation : std::uint8_t { Forward, Reversed };

double pairwise_value(const PairwiseCost& cost, Orientation orientation, Label a, Label b);

/// Explicit k x k table (forward orientation) for any form.
DenseTable materialize(const PairwiseCost& cost, int num_labels);

/// Throws InvalidInput when parameters or table shape are invalid for k labels.
void validate_pairwise(const PairwiseCost& cost, int num_labels);

/// Row-stochastic weights on darts: w[d] is the probability of moving from
/// tail(d) to head(d).
class WalkWeights {
 public:
  WalkWeights() = default;

  /// w_ij = 1 / deg(i).
  static WalkWeights uniform(const Graph& graph);
  /// Per-dart values that must already be nonnegative and sum to 1 per vertex.
  static WalkWeights from_darts(const Graph& graph, std::vector<double> values);
  /// Nonnegative relative weights, divided by their per-vertex sum.
  static WalkWeights normalized(const Graph& graph, std::vector<double> relative);
  /// No validation. Only for fault injection in the verification suite.
  static WalkWeights unchecked(std::vector<double> values);

  double operator[](int dart) const { return values_[static_cast<std::size_t>(dart)]; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  explicit WalkWeights(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

inline constexpr double kWeightSumTolerance = 1e-12;

/// max_i |sum_{j in N(i)} w_ij - 1|.
double max_row_sum_error(const Graph& graph, std::span<const double> weights);

inline WalkWeights uniform_weights(const Graph& graph) { return WalkWeights::uniform(graph); }

/// Immutable problem instance.
class Model {
 public:
  Model() = default;

  /// `unary` is n * k row-major; `pairwise` is indexed by canonical edge.
  Model(Graph graph, int num_labels, std::vector<double> unary,
        std::vector<PairwiseCost> pairwise, WalkWeights weights);

  const Graph& graph() const noexcept { return graph_; }
  int num_vertices() const noexcept { return graph_.num_vertices(); }
  int num_labels() const noexcept { return num_labels_; }

  std::span<const double> unary(int i) const {
    return {unary_.data() + static_cast<std::size_t>(i) * num_labels_,
            static_cast<std::size_t>(num_labels_)};
  }
  double unary(int i, Label a) const {
    return unary_[static_cast<std::size_t>(i) * num_labels_ + a];
  }
  std::span<const double> unary_values() const noexcept { return unary_; }

  const PairwiseCost& pairwise(int edge) const { return pairwise_[static_cast<std::size_t>(edge)]; }
  const std::vector<PairwiseCost>& pairwise_costs() const noexcept { return pairwise_; }

  /// Orientation of the pairwise cost seen from the tail of dart d.
  Orientation dart_orientation(int dart) const {
    return graph_.dart_tail(dart) < graph_.dart_head(dart) ? Orientation::Forward
                                                           : Orientation::Reversed;
  }
  /// h_ij(a, b) with i = tail(dart), j = head(dart).
  double dart_value(int dart, Label a, Label b) const {
    return cmrf::pairwise_value(pairwise(graph_.dart_edge(dart)), dart_orientation(dart), a, b);
  }

  const WalkWeights& weights() const noexcept { return weights_; }
  Model with_weights(WalkWeights weights) const;

  bool is_nonnegative() const;
  double max_unary() const;
  double max_pairwise() const;

  void check_labeling(const Labeling& x) const;

 private:
  Graph graph_;
  int num_labels_ = 0;
  std::vector<double> unary_;
  std::vector<PairwiseCost> pairwise_;
  WalkWeights weights_;
};

/// Accumulates vertices, edges and optional weights in any order and
/// produces a validated Model.
class ModelBuilder {
 public:
  ModelBuilder(int num_vertices, int num_labels);

  void set_unary(int i, std::span<const double> costs);
  /// A DenseTable is read in (i, j) orientation and transposed if i > j.
  void add_edge(int i, int j, PairwiseCost cost);
  /// Relative weight for dart i->j. If any weight of a vertex is set, all of
  /// its darts must be set; rows are normalized to sum 1. Unset vertices are uniform.
  void set_weight(int i, int j, double weight);

  int num_vertices() const noexcept { return num_vertices_; }
  int num_labels() const noexcept { return num_labels_; }

  Model build() const;

 private:
  struct PendingEdge {
    Edge edge;
    PairwiseCost cost;
  };
  struct PendingWeight {
    int from;
    int to;
    double weight;
  };

  int num_vertices_;
  int num_labels_;
  std::vector<double> unary_;
  std::vector<PendingEdge> edges_;
  std::vector<PendingWeight> weights_;
};

/// F(x): unary terms by ascending vertex, then pairwise terms in canonical edge order.
double energy(const Model& model, const Labeling& x);

struct NormalizedModel {
  Model model;
  /// F'(x) = F(x) - offset.
  double offset = 0.0;
};

/// Shifts every unary vector and pairwise table so its minimum is 0.
NormalizedModel normalize_nonnegative(const Model& model);

}  // namespace cmrf
