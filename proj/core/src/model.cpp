#include "cmrf/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "cmrf/error.hpp"

namespace cmrf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int num_vertices, std::vector<Edge> edges) : num_vertices_(num_vertices) {
  require(num_vertices >= 2, "graph needs at least 2 vertices, got " + std::to_string(num_vertices));
  for (Edge& e : edges) {
    require(e.lo >= 0 && e.lo < num_vertices && e.hi >= 0 && e.hi < num_vertices,
            "edge endpoint out of range: {" + std::to_string(e.lo) + "," + std::to_string(e.hi) + "}");
    require(e.lo != e.hi, "self-loop at vertex " + std::to_string(e.lo));
    if (e.lo > e.hi) std::swap(e.lo, e.hi);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t e = 1; e < edges.size(); ++e) {
    require(edges[e] != edges[e - 1], "duplicate edge {" + std::to_string(edges[e].lo) + "," +
                                          std::to_string(edges[e].hi) + "}");
  }
  edges_ = std::move(edges);

  const auto n = static_cast<std::size_t>(num_vertices);
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.lo + 1];
    ++offsets_[e.hi + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

  const auto darts = static_cast<std::size_t>(offsets_[n]);
  tails_.resize(darts);
  heads_.resize(darts);
  dart_edges_.resize(darts);
  reverse_.resize(darts);

  // Canonical edges sorted by (lo, hi) give ascending heads per vertex when
  // the darts of each vertex are filled in two passes: first edges where the
  // vertex is `hi` (heads < vertex, ascending lo), then where it is `lo`.
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& edge = edges_[static_cast<std::size_t>(e)];
    const int d = fill[edge.hi]++;
    tails_[d] = edge.hi;
    heads_[d] = edge.lo;
    dart_edges_[d] = e;
  }
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& edge = edges_[static_cast<std::size_t>(e)];
    const int d = fill[edge.lo]++;
    tails_[d] = edge.lo;
    heads_[d] = edge.hi;
    dart_edges_[d] = e;
  }
  for (int d = 0; d < num_darts(); ++d) reverse_[d] = find_dart(heads_[d], tails_[d]);

  // connectivity
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  require(reached == num_vertices, "graph is not connected (" + std::to_string(reached) + " of " +
                                       std::to_string(num_vertices) + " vertices reachable)");
}

Graph Graph::grid(int width, int height) {
  require(width >= 1 && height >= 1 && width * height >= 2, "grid must have at least 2 cells");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(2 * width * height));
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const int v = r * width + c;
      if (c + 1 < width) edges.push_back({v, v + 1});
      if (r + 1 < height) edges.push_back({v, v + width});
    }
  }
  return Graph(width * height, std::move(edges));
}

int Graph::max_degree() const {
  int best = 0;
  for (int i = 0; i < num_vertices_; ++i) best = std::max(best, degree(i));
  return best;
}

int Graph::find_dart(int i, int j) const {
  if (i < 0 || i >= num_vertices_) return -1;
  const auto nbrs = neighbors(i);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
  if (it == nbrs.end() || *it != j) return -1;
  return offsets_[i] + static_cast<int>(it - nbrs.begin());
}

int Graph::find_edge(int i, int j) const {
  const int d = find_dart(i, j);
  return d < 0 ? -1 : dart_edges_[d];
}

// ---------------------------------------------------------------------------
// Pairwise costs

double pairwise_value(const PairwiseCost& cost, Orientation orientation, Label a, Label b) {
  return std::visit(
      overloaded{
          [&](const DenseTable& t) {
            const auto k = static_cast<std::size_t>(t.num_labels);
            return orientation == Orientation::Forward ? t.values[a * k + b] : t.values[b * k + a];
          },
          [&](const TruncatedQuadratic& c) {
            const double d = static_cast<double>(a - b);
            return c.scale * std::min(d * d, c.cap);
          },
          [&](const TruncatedLinear& c) {
            return c.scale * std::min(static_cast<double>(std::abs(a - b)), c.cap);
          },
          [&](const StereoTwoStep& c) {
            const int d = std::abs(a - b);
            return d == 0 ? 0.0 : (d == 1 ? c.step : c.jump);
          },
          [&](const Potts& c) { return a == b ? 0.0 : c.penalty; },
      },
      cost);
}

DenseTable materialize(const PairwiseCost& cost, int num_labels) {
  DenseTable table{num_labels, std::vector<double>(static_cast<std::size_t>(num_labels) * num_labels)};
  for (Label a = 0; a < num_labels; ++a)
    for (Label b = 0; b < num_labels; ++b)
      table.values[static_cast<std::size_t>(a) * num_labels + b] =
          pairwise_value(cost, Orientation::Forward, a, b);
  return table;
}

void validate_pairwise(const PairwiseCost& cost, int num_labels) {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  std::visit(overloaded{
                 [&](const DenseTable& t) {
                   require(t.num_labels == num_labels &&
                               t.values.size() == static_cast<std::size_t>(num_labels) * num_labels,
                           "dense pairwise table must be " + std::to_string(num_labels) + "x" +
                               std::to_string(num_labels));
                   require(all_finite(t.values), "dense pairwise table has non-finite entries");
                 },
                 [&](const TruncatedQuadratic& c) {
                   require(finite_nonneg(c.scale) && finite_nonneg(c.cap),
                           "truncated quadratic needs scale >= 0 and cap >= 0");
                 },
                 [&](const TruncatedLinear& c) {
                   require(finite_nonneg(c.scale) && finite_nonneg(c.cap),
                           "truncated linear needs scale >= 0 and cap >= 0");
                 },
                 [&](const StereoTwoStep& c) {
                   require(finite_nonneg(c.step) && finite_nonneg(c.jump) && c.step < c.jump,
                           "stereo cost needs 0 <= step < jump");
                 },
                 [&](const Potts& c) {
                   require(finite_nonneg(c.penalty), "Potts penalty must be >= 0");
                 },
             },
             cost);
}

// ---------------------------------------------------------------------------
// Walk weights

double max_row_sum_error(const Graph& graph, std::span<const double> weights) {
  double worst = 0.0;
  for (int i = 0; i < graph.num_vertices(); ++i) {
    double sum = 0.0;
    for (int d = graph.dart_begin(i); d < graph.dart_end(i); ++d) sum += weights[d];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

WalkWeights WalkWeights::uniform(const Graph& graph) {
  std::vector<double> w(static_cast<std::size_t>(graph.num_darts()));
  for (int i = 0; i < graph.num_vertices(); ++i) {
    const double v = 1.0 / graph.degree(i);
    for (int d = graph.dart_begin(i); d < graph.dart_end(i); ++d) w[d] = v;
  }
  return WalkWeights(std::move(w));
}

WalkWeights WalkWeights::from_darts(const Graph& graph, std::vector<double> values) {
  require(values.size() == static_cast<std::size_t>(graph.num_darts()),
          "weight vector size does not match dart count");
  for (double v : values) require(std::isfinite(v) && v >= 0.0, "walk weights must be finite and >= 0");
  const double err = max_row_sum_error(graph, values);
  require(err <= kWeightSumTolerance,
          "walk weights out of each vertex must sum to 1 (max deviation " + std::to_string(err) + ")");
  return WalkWeights(std::move(values));
}

WalkWeights WalkWeights::normalized(const Graph& graph, std::vector<double> relative) {
  require(relative.size() == static_cast<std::size_t>(graph.num_darts()),
          "weight vector size does not match dart count");
  for (int i = 0; i < graph.num_vertices(); ++i) {
    double sum = 0.0;
    for (int d = graph.dart_begin(i); d < graph.dart_end(i); ++d) {
      require(std::isfinite(relative[d]) && relative[d] >= 0.0, "relative weights must be finite and >= 0");
      sum += relative[d];
    }
    require(sum > 0.0, "relative weights of vertex " + std::to_string(i) + " sum to zero");
    for (int d = graph.dart_begin(i); d < graph.dart_end(i); ++d) relative[d] /= sum;
  }
  return from_darts(graph, std::move(relative));
}

WalkWeights WalkWeights::unchecked(std::vector<double> values) { return WalkWeights(std::move(values)); }

// ---------------------------------------------------------------------------
// Model

Model::Model(Graph graph, int num_labels, std::vector<double> unary,
             std::vector<PairwiseCost> pairwise, WalkWeights weights)
    : graph_(std::move(graph)),
      num_labels_(num_labels),
      unary_(std::move(unary)),
      pairwise_(std::move(pairwise)),
      weights_(std::move(weights)) {
  require(num_labels_ >= 1, "need at least one label");
  require(unary_.size() == static_cast<std::size_t>(graph_.num_vertices()) * num_labels_,
          "unary cost table has wrong size");
  require(all_finite(unary_), "unary costs must be finite");
  require(pairwise_.size() == static_cast<std::size_t>(graph_.num_edges()),
          "every edge needs exactly one pairwise cost");
  for (const auto& c : pairwise_) validate_pairwise(c, num_labels_);
  require(weights_.size() == static_cast<std::size_t>(graph_.num_darts()),
          "walk weights do not match the graph");
  const double err = max_row_sum_error(graph_, weights_.values());
  require(err <= kWeightSumTolerance,
          "walk weights out of each vertex must sum to 1 (max deviation " + std::to_string(err) + ")");
}

Model Model::with_weights(WalkWeights weights) const {
  return Model(graph_, num_labels_, unary_, pairwise_, std::move(weights));
}

bool Model::is_nonnegative() const {
  if (std::any_of(unary_.begin(), unary_.end(), [](double v) { return v < 0.0; })) return false;
  for (const auto& c : pairwise_) {
    if (const auto* t = std::get_if<DenseTable>(&c)) {
      if (std::any_of(t->values.begin(), t->values.end(), [](double v) { return v < 0.0; }))
        return false;
    }
  }
  return true;
}

double Model::max_unary() const {
  return unary_.empty() ? 0.0 : *std::max_element(unary_.begin(), unary_.end());
}

double Model::max_pairwise() const {
  double best = 0.0;
  for (const auto& c : pairwise_) {
    const DenseTable t = materialize(c, num_labels_);
    best = std::max(best, *std::max_element(t.values.begin(), t.values.end()));
  }
  return best;
}

void Model::check_labeling(const Labeling& x) const {
  require(x.size() == static_cast<std::size_t>(num_vertices()),
          "labeling has " + std::to_string(x.size()) + " entries, model has " +
              std::to_string(num_vertices()) + " vertices");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] >= 0 && x[i] < num_labels_,
            "label " + std::to_string(x[i]) + " out of range at vertex " + std::to_string(i));
  }
}

// ---------------------------------------------------------------------------
// Builder

ModelBuilder::ModelBuilder(int num_vertices, int num_labels)
    : num_vertices_(num_vertices), num_labels_(num_labels) {
  require(num_vertices >= 2, "model needs at least 2 vertices");
  require(num_labels >= 1, "model needs at least 1 label");
  unary_.assign(static_cast<std::size_t>(num_vertices) * num_labels, 0.0);
}

void ModelBuilder::set_unary(int i, std::span<const double> costs) {
  require(i >= 0 && i < num_vertices_, "vertex " + std::to_string(i) + " out of range");
  require(costs.size() == static_cast<std::size_t>(num_labels_), "unary cost vector has wrong length");
  std::copy(costs.begin(), costs.end(), unary_.begin() + static_cast<std::ptrdiff_t>(i) * num_labels_);
}

void ModelBuilder::add_edge(int i, int j, PairwiseCost cost) {
  validate_pairwise(cost, num_labels_);
  if (i > j) {
    if (auto* t = std::get_if<DenseTable>(&cost)) {
      const auto k = static_cast<std::size_t>(num_labels_);
      std::vector<double> transposed(t->values.size());
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) transposed[b * k + a] = t->values[a * k + b];
      t->values = std::move(transposed);
    }
    std::swap(i, j);
  }
  edges_.push_back({{i, j}, std::move(cost)});
}

void ModelBuilder::set_weight(int i, int j, double weight) { weights_.push_back({i, j, weight}); }

Model ModelBuilder::build() const {
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& pe : edges_) edges.push_back(pe.edge);
  Graph graph(num_vertices_, std::move(edges));

  std::vector<PairwiseCost> costs(static_cast<std::size_t>(graph.num_edges()));
  for (const auto& pe : edges_) costs[static_cast<std::size_t>(graph.find_edge(pe.edge.lo, pe.edge.hi))] = pe.cost;

  WalkWeights weights = WalkWeights::uniform(graph);
  if (!weights_.empty()) {
    std::vector<double> raw(weights.values().begin(), weights.values().end());
    std::vector<char> given(raw.size(), 0);
    std::vector<char> touched(static_cast<std::size_t>(num_vertices_), 0);
    for (const auto& pw : weights_) {
      const int d = graph.find_dart(pw.from, pw.to);
      require(d >= 0, "weight given for non-edge " + std::to_string(pw.from) + "->" + std::to_string(pw.to));
      raw[d] = pw.weight;
      given[d] = 1;
      touched[pw.from] = 1;
    }
    for (int i = 0; i < num_vertices_; ++i) {
      if (!touched[i]) continue;
      for (int d = graph.dart_begin(i); d < graph.dart_end(i); ++d) {
        require(given[d], "vertex " + std::to_string(i) + " has weights for some but not all neighbors");
      }
    }
    weights = WalkWeights::normalized(graph, std::move(raw));
  }
  return Model(std::move(graph), num_labels_, unary_, std::move(costs), std::move(weights));
}

// ---------------------------------------------------------------------------

double energy(const Model& model, const Labeling& x) {
  model.check_labeling(x);
  double total = 0.0;
  for (int i = 0; i < model.num_vertices(); ++i) total += model.unary(i, x[i]);
  const auto& edges = model.graph().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    total += pairwise_value(model.pairwise(static_cast<int>(e)), Orientation::Forward, x[edges[e].lo],
                            x[edges[e].hi]);
  }
  return total;
}

NormalizedModel normalize_nonnegative(const Model& model) {
  const int k = model.num_labels();
  double offset = 0.0;
  std::vector<double> unary(model.unary_values().begin(), model.unary_values().end());
  for (int i = 0; i < model.num_vertices(); ++i) {
    auto row = std::span<double>(unary).subspan(static_cast<std::size_t>(i) * k, k);
    const double lo = *std::min_element(row.begin(), row.end());
    for (double& v : row) v -= lo;
    offset += lo;
  }
  std::vector<PairwiseCost> pairwise = model.pairwise_costs();
  for (auto& c : pairwise) {
    // Structured forms all attain 0 on the diagonal and are nonnegative.
    if (auto* t = std::get_if<DenseTable>(&c)) {
      const double lo = *std::min_element(t->values.begin(), t->values.end());
      for (double& v : t->values) v -= lo;
      offset += lo;
    }
  }
  return {Model(model.graph(), k, std::move(unary), std::move(pairwise), model.weights()), offset};
}

}  // namespace cmrf
