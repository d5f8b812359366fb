#include "cmrf/maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "cmrf/error.hpp"

namespace cmrf {

bool BeliefField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void require_same_shape(const BeliefField& a, const BeliefField& b) {
  require(a.num_vertices() == b.num_vertices() && a.num_labels() == b.num_labels(),
          "belief fields have different shapes");
}

}  // namespace

std::vector<double> vertex_distances(const BeliefField& a, const BeliefField& b) {
  require_same_shape(a, b);
  std::vector<double> out(static_cast<std::size_t>(a.num_vertices()), 0.0);
  for (int i = 0; i < a.num_vertices(); ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    double m = 0.0;
    for (std::size_t t = 0; t < ra.size(); ++t) m = std::max(m, std::abs(ra[t] - rb[t]));
    out[i] = m;
  }
  return out;
}

double distance_inf1(const BeliefField& a, const BeliefField& b) {
  double total = 0.0;
  for (double d : vertex_distances(a, b)) total += d;
  return total;
}

double distance_inf(const BeliefField& a, const BeliefField& b) {
  double m = 0.0;
  for (double d : vertex_distances(a, b)) m = std::max(m, d);
  return m;
}

std::string_view to_string(MapKind kind) noexcept {
  return kind == MapKind::Diffusion ? "T" : "S";
}

MapKind parse_map_kind(std::string_view name) {
  if (name == "T" || name == "t" || name == "diffusion") return MapKind::Diffusion;
  if (name == "S" || name == "s" || name == "control") return MapKind::Control;
  fail(ErrorKind::InvalidInput, "unknown map '" + std::string(name) + "' (expected T or S)");
}

double contraction_distance(MapKind kind, const BeliefField& a, const BeliefField& b) {
  return kind == MapKind::Diffusion ? distance_inf1(a, b) : distance_inf(a, b);
}

// ---------------------------------------------------------------------------

MapEvaluator::MapEvaluator(const Model& model, MapKind kind, double p, int threads)
    : model_(&model), kind_(kind), p_(p), q_(1.0 - p), threads_(std::max(1, threads)) {
  require(p > 0.0 && p < 1.0, "p must lie in (0,1), got " + std::to_string(p));
  threads_ = std::min(threads_, model.num_vertices());
  scratch_.resize(static_cast<std::size_t>(threads_));
  for (auto& s : scratch_) {
    s.base.resize(static_cast<std::size_t>(model.num_labels()));
    s.message.resize(static_cast<std::size_t>(model.num_labels()));
  }
}

void MapEvaluator::apply_range(const BeliefField& in, BeliefField& out, int begin, int end,
                               Scratch& scratch) const {
  const Model& model = *model_;
  const Graph& graph = model.graph();
  const auto& w = model.weights();
  const int k = model.num_labels();
  const bool diffusion = kind_ == MapKind::Diffusion;
  const double scale = diffusion ? 0.5 * p_ : p_;

  for (int i = begin; i < end; ++i) {
    auto dst = out.row(i);
    const auto g = model.unary(i);
    for (int t = 0; t < k; ++t) dst[t] = p_ * g[t];

    for (int d = graph.dart_begin(i); d < graph.dart_end(i); ++d) {
      const int j = graph.dart_head(d);
      const auto src = in.row(j);
      // diffusion weighs the neighbor by w_ji inside the min; control by w_ij outside
      const double coef = diffusion ? q_ * w[graph.dart_reverse(d)] : q_;
      for (int u = 0; u < k; ++u) scratch.base[u] = coef * src[u];
      const MessageProblem problem{scratch.base, scale, &model.pairwise(graph.dart_edge(d)),
                                   model.dart_orientation(d)};
      minconv(problem, scratch.message, scratch.ws);
      if (diffusion) {
        for (int t = 0; t < k; ++t) dst[t] += scratch.message[t];
      } else {
        const double wij = w[d];
        for (int t = 0; t < k; ++t) dst[t] += wij * scratch.message[t];
      }
    }
  }
}

void MapEvaluator::apply(const BeliefField& in, BeliefField& out) {
  require(in.matches(*model_), "belief field shape does not match the model");
  if (!out.matches(*model_)) out = BeliefField::zeros_like(*model_);
  const int n = model_->num_vertices();
  if (threads_ == 1) {
    apply_range(in, out, 0, n, scratch_[0]);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(static_cast<std::size_t>(threads_));
  for (int t = 0; t < threads_; ++t) {
    const int begin = static_cast<int>(static_cast<long>(n) * t / threads_);
    const int end = static_cast<int>(static_cast<long>(n) * (t + 1) / threads_);
    workers.emplace_back([this, &in, &out, begin, end, t] {
      apply_range(in, out, begin, end, scratch_[static_cast<std::size_t>(t)]);
    });
  }
}

BeliefField MapEvaluator::apply(const BeliefField& in) {
  BeliefField out = BeliefField::zeros_like(*model_);
  apply(in, out);
  return out;
}

BeliefField apply_diffusion(const Model& model, double p, const BeliefField& phi) {
  return MapEvaluator(model, MapKind::Diffusion, p).apply(phi);
}

BeliefField apply_control(const Model& model, double p, const BeliefField& phi) {
  return MapEvaluator(model, MapKind::Control, p).apply(phi);
}

// ---------------------------------------------------------------------------

void SolveParams::validate() const {
  require(p > 0.0 && p < 1.0, "p must lie in (0,1), got " + std::to_string(p));
  require(tol > 0.0, "tol must be positive");
  require(max_iter >= 1, "max_iter must be at least 1");
  require(threads >= 1, "threads must be at least 1");
}

FixedPointReport solve(const Model& model, MapKind kind, const SolveParams& params,
                       const IterationObserver& observer) {
  params.validate();
  BeliefField current = params.initial ? *params.initial : BeliefField::zeros_like(model);
  require(current.matches(model), "initial field shape does not match the model");
  require(current.all_finite(), "initial field has non-finite entries");

  MapEvaluator evaluator(model, kind, params.p, params.threads);
  BeliefField next = BeliefField::zeros_like(model);

  FixedPointReport report;
  report.kind = kind;
  report.p = params.p;
  for (int iter = 1; iter <= params.max_iter; ++iter) {
    evaluator.apply(current, next);
    if (!next.all_finite()) {
      fail(ErrorKind::NumericalFailure, "non-finite belief at iteration " + std::to_string(iter));
    }
    const double r = contraction_distance(kind, next, current);
    if (observer) observer(iter, current, next, r);
    std::swap(current, next);
    report.iterations = iter;
    report.residual = r;
    if (r <= params.tol) {
      report.converged = true;
      break;
    }
  }
  report.certified_distance = report.residual / params.p;
  report.field = std::move(current);
  return report;
}

Labeling decode(const BeliefField& phi) {
  Labeling x(static_cast<std::size_t>(phi.num_vertices()));
  for (int i = 0; i < phi.num_vertices(); ++i) {
    const auto r = phi.row(i);
    x[i] = static_cast<Label>(std::min_element(r.begin(), r.end()) - r.begin());
  }
  return x;
}

double factored_bound(const BeliefField& phi, const Labeling& x) {
  require(x.size() == static_cast<std::size_t>(phi.num_vertices()), "labeling length mismatch");
  double total = 0.0;
  for (int i = 0; i < phi.num_vertices(); ++i) {
    require(x[i] >= 0 && x[i] < phi.num_labels(), "label out of range");
    total += phi(i, x[i]);
  }
  return total;
}

Bracket bracket(const Model& model, const FixedPointReport& report) {
  require(report.kind == MapKind::Diffusion, "bracket needs a diffusion (T) fixed point");
  require(report.field.matches(model), "report does not match the model");
  Bracket b;
  b.labeling = decode(report.field);
  b.lower = factored_bound(report.field, b.labeling);
  b.upper = energy(model, b.labeling);
  return b;
}

bool check_lp_feasible(const Model& model, double p, const BeliefField& phi, double tol) {
  const BeliefField image = apply_diffusion(model, p, phi);
  const auto a = phi.values();
  const auto b = image.values();
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    if (!(a[idx] <= b[idx] + tol)) return false;
  }
  return true;
}

BeliefField value_lower_bounds(const Model& model, const FixedPointReport& report) {
  require(report.kind == MapKind::Control, "max-marginal bounds need a control (S) fixed point");
  require(report.field.matches(model), "report does not match the model");
  return report.field;
}

}  // namespace cmrf
