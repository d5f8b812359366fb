#include "cmrf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "cmrf/baselines.hpp"
#include "cmrf/fastmin.hpp"
#include "cmrf/maps.hpp"
#include "cmrf/oracles.hpp"
#include "cmrf/problems.hpp"
#include "cmrf/random_models.hpp"

namespace cmrf::verify {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

/// Records lhs - rhs for inequalities lhs <= rhs + tol.
class Tracker {
 public:
  void check(double excess, double tol) {
    ++cases_;
    worst_ = std::max(worst_, excess);
    if (!(excess <= tol) && ok_) {
      ok_ = false;
      failure_ = "violation " + fmt(excess) + " > tol " + fmt(tol) + " at case " + std::to_string(cases_);
    }
  }
  void expect(bool cond, const std::string& what) {
    ++cases_;
    if (!cond && ok_) {
      ok_ = false;
      failure_ = what;
    }
  }

  CheckResult result(std::string name, std::string property) const {
    std::string detail = ok_ ? std::to_string(cases_) + " cases" : failure_;
    if (ok_ && worst_ > -std::numeric_limits<double>::infinity()) detail += ", worst excess " + fmt(worst_);
    return {std::move(name), std::move(property), ok_, std::move(detail)};
  }

 private:
  int cases_ = 0;
  bool ok_ = true;
  double worst_ = -std::numeric_limits<double>::infinity();
  std::string failure_;
};

constexpr double kPs[] = {0.9, 0.5, 0.1, 0.01};

struct Suite {
  Options opt;
  Rng rng;
  int models;

  explicit Suite(const Options& o) : opt(o), rng(o.seed), models(o.scale == Scale::Full ? 100 : 20) {}

  double random_p() { return kPs[rng.below(4)]; }

  Model small_model(int max_n = 8, int max_k = 4) {
    RandomModelSpec spec;
    spec.max_vertices = max_n;
    spec.max_labels = max_k;
    return random_model(rng, spec);
  }

  CheckResult weight_rows() {
    Tracker t;
    for (int m = 0; m < models; ++m) {
      const Model model = small_model();
      const Graph& g = model.graph();
      std::vector<double> w(model.weights().values().begin(), model.weights().values().end());
      if (opt.fault == Fault::WeightRowSum && m == 0) {
        for (int d = g.dart_begin(0); d < g.dart_end(0); ++d) w[d] *= 0.9;
      }
      t.check(max_row_sum_error(g, w), kWeightSumTolerance);
      // sum_i sum_{j in N(i)} w_ji a_j = sum_j a_j
      std::vector<double> a(static_cast<std::size_t>(g.num_vertices()));
      for (double& v : a) v = rng.uniform(-5.0, 5.0);
      double lhs = 0.0, rhs = 0.0;
      for (int i = 0; i < g.num_vertices(); ++i)
        for (int d = g.dart_begin(i); d < g.dart_end(i); ++d) lhs += w[g.dart_reverse(d)] * a[g.dart_head(d)];
      for (double v : a) rhs += v;
      t.check(std::abs(lhs - rhs), 1e-9);
    }
    return t.result("weight-rows", "walk weights out of each vertex sum to one; reordered double sum identity");
  }

  CheckResult contraction(MapKind kind) {
    Tracker t;
    for (int m = 0; m < models; ++m) {
      const Model model = small_model(10, 5);
      const double p = random_p();
      for (int r = 0; r < 5; ++r) {
        const BeliefField a = random_field(rng, model, -20.0, 20.0);
        const BeliefField b = random_field(rng, model, -20.0, 20.0);
        const BeliefField za = apply_map(kind, model, p, a);
        const BeliefField zb = apply_map(kind, model, p, b);
        const double q = 1.0 - p;
        t.check(contraction_distance(kind, za, zb) - q * contraction_distance(kind, a, b), 1e-12);
        if (kind == MapKind::Diffusion) {
          const auto in = vertex_distances(a, b);
          const auto out = vertex_distances(za, zb);
          const Graph& g = model.graph();
          for (int i = 0; i < g.num_vertices(); ++i) {
            double rhs = 0.0;
            for (int d = g.dart_begin(i); d < g.dart_end(i); ++d)
              rhs += model.weights()[g.dart_reverse(d)] * in[g.dart_head(d)];
            t.check(out[i] - q * rhs, 1e-12);
          }
        }
      }
    }
    return kind == MapKind::Diffusion
               ? t.result("contraction-T", "diffusion map is a q-contraction in the (inf,1) norm, per vertex and globally")
               : t.result("contraction-S", "control map is a q-contraction in the inf norm");
  }

  CheckResult order_preservation() {
    Tracker t;
    for (int m = 0; m < models; ++m) {
      const Model model = small_model();
      const double p = random_p();
      const BeliefField a = random_field(rng, model, -10.0, 10.0);
      BeliefField b = a;
      for (double& v : b.values()) v += rng.uniform(0.0, 3.0);
      for (MapKind kind : {MapKind::Diffusion, MapKind::Control}) {
        const BeliefField za = apply_map(kind, model, p, a);
        const BeliefField zb = apply_map(kind, model, p, b);
        for (std::size_t i = 0; i < za.values().size(); ++i) t.check(za.values()[i] - zb.values()[i], 1e-12);
      }
    }
    return t.result("order-preservation", "phi <= psi implies T phi <= T psi and S phi <= S psi");
  }

  CheckResult monotone_start() {
    Tracker t;
    for (int m = 0; m < models; ++m) {
      const Model model = small_model();
      const double p = random_p();
      for (MapKind kind : {MapKind::Diffusion, MapKind::Control}) {
        SolveParams params;
        params.p = p;
        params.tol = 1e-300;
        params.max_iter = 60;
        solve(model, kind, params, [&](int, const BeliefField& prev, const BeliefField& next, double) {
          for (std::size_t i = 0; i < prev.values().size(); ++i)
            t.check(prev.values()[i] - next.values()[i], 1e-12);
        });
      }
    }
    return t.result("monotone-start", "iterates from the zero field are elementwise non-decreasing");
  }

  CheckResult proposition_tf() {
    Tracker t;
    for (int m = 0; m < models; ++m) {
      const Model model = small_model();
      const double p = random_p();
      for (int r = 0; r < 10; ++r) {
        const BeliefField phi = random_field(rng, model, -10.0, 10.0);
        const Labeling x = random_labeling(rng, model);
        const BeliefField tphi = apply_diffusion(model, p, phi);
        t.check(factored_bound(tphi, x) - (p * energy(model, x) + (1.0 - p) * factored_bound(phi, x)), 1e-9);
      }
    }
    return t.result("diffusion-energy-relation", "sum_i (T phi)_i(x_i) <= p F(x) + q sum_i phi_i(x_i)");
  }

  FixedPointReport tight_solve(const Model& model, MapKind kind, double p, double tol = 1e-12) {
    SolveParams params;
    params.p = p;
    params.tol = tol;
    params.max_iter = 2000000;
    return solve(model, kind, params);
  }

  CheckResult bounds() {
    Tracker t;
    const int count = std::max(10, models / 2);
    for (int m = 0; m < count; ++m) {
      const Model model = small_model(7, 3);
      const double p = kPs[rng.below(3)];
      const auto tr = tight_solve(model, MapKind::Diffusion, p);
      for (int r = 0; r < 200; ++r) {
        const Labeling x = random_labeling(rng, model);
        t.check(factored_bound(tr.field, x) - energy(model, x), 1e-9);
      }
      const auto best = brute_force_min(model);
      const Bracket b = bracket(model, tr);
      t.check(b.lower - best.value, 1e-6);
      t.check(best.value - b.upper, 1e-6);
      for (double v : tr.field.values()) t.check(-v, 1e-12);
    }
    return t.result("factored-lower-bound", "H(x) <= F(x); bracket lower <= min F <= upper; T fixed point >= 0");
  }

  CheckResult max_marginal_bounds() {
    Tracker t;
    const int count = std::max(10, models / 2);
    for (int m = 0; m < count; ++m) {
      const Model model = small_model(6, 3);
      const double p = kPs[rng.below(3)];
      const auto sr = tight_solve(model, MapKind::Control, p);
      const BeliefField lower = value_lower_bounds(model, sr);
      const BeliefField f = max_marginals(model);
      for (std::size_t i = 0; i < f.values().size(); ++i) {
        t.check(lower.values()[i] - f.values()[i], 1e-9);
        t.check(-lower.values()[i], 1e-12);
      }
      const BeliefField sf = apply_control(model, p, f);
      for (std::size_t i = 0; i < f.values().size(); ++i) t.check(sf.values()[i] - f.values()[i], 1e-9);
      // per-edge form: f_i(a) >= p g_i(a) + min_b [p h_ij(a,b) + q f_j(b)]
      const Graph& g = model.graph();
      for (int d = 0; d < g.num_darts(); ++d) {
        const int i = g.dart_tail(d), j = g.dart_head(d);
        for (Label a = 0; a < model.num_labels(); ++a) {
          double best = std::numeric_limits<double>::infinity();
          for (Label b = 0; b < model.num_labels(); ++b)
            best = std::min(best, p * model.dart_value(d, a, b) + (1.0 - p) * f(j, b));
          t.check(p * model.unary(i, a) + best - f(i, a), 1e-9);
        }
      }
    }
    return t.result("max-marginal-bound", "0 <= S fixed point <= f; S f <= f; f_i bounded below through each neighbor");
  }

  CheckResult mdp_equivalence() {
    Tracker t;
    const int count = std::max(5, models / 4);
    for (int m = 0; m < count; ++m) {
      RandomModelSpec spec;
      spec.max_vertices = 5;
      spec.max_labels = 3;
      spec.max_degree = 3;
      const Model model = random_model(rng, spec);
      const double p = kPs[rng.below(3)];
      const MdpInstance mdp(model, p);
      const BeliefField phi = random_field(rng, model, 0.0, 20.0);
      const auto bell = mdp_bellman(mdp, phi.values());
      const BeliefField s = apply_control(model, p, phi);
      for (std::size_t i = 0; i < bell.size(); ++i) t.check(std::abs(bell[i] - s.values()[i]), 1e-12);
      const auto vi = mdp_value_iteration(mdp, 1e-13, 1000000);
      const auto sr = tight_solve(model, MapKind::Control, p, 1e-13);
      for (std::size_t i = 0; i < vi.size(); ++i) t.check(std::abs(vi[i] - sr.field.values()[i]), 1e-10);
    }
    return t.result("mdp-equivalence", "S equals the Bellman operator of the random-walk MDP");
  }

  CheckResult monte_carlo() {
    Tracker t;
    for (int m = 0; m < 4; ++m) {
      RandomModelSpec spec;
      spec.min_vertices = 3;
      spec.max_vertices = 4;
      spec.min_labels = 2;
      spec.max_labels = 2;
      const Model model = random_model(rng, spec);
      const double p = 0.1;
      const auto sr = tight_solve(model, MapKind::Control, p);
      const WalkPolicy policy = greedy_policy_from(sr.field, model, p);
      const int horizon = horizon_for_tail(model, p, 1e-4);
      const int v = rng.below(model.num_vertices());
      const Label a = rng.below(model.num_labels());
      const auto est = monte_carlo_value(model, p, policy, v, a, 100000, horizon, rng.next());
      t.check(std::abs(est.mean - sr.field(v, a)) - 3.0 * est.standard_error - est.tail_bound, 0.0);
    }
    return t.result("walk-value", "S fixed point equals the expected discounted walk energy of its greedy policy");
  }

  CheckResult lp_feasibility() {
    Tracker t;
    for (int m = 0; m < models; ++m) {
      const Model model = small_model();
      const double p = kPs[rng.below(3)];
      const auto tr = tight_solve(model, MapKind::Diffusion, p);
      t.expect(check_lp_feasible(model, p, BeliefField::zeros_like(model), 0.0), "zero field rejected");
      t.expect(check_lp_feasible(model, p, tr.field, 1e-8), "fixed point rejected");
      BeliefField up = tr.field;
      for (double& v : up.values()) v += 1.0;
      t.expect(!check_lp_feasible(model, p, up, 1e-8), "raised fixed point accepted");
    }
    return t.result("lp-constraints", "fixed point satisfies phi <= T phi; fields above it do not");
  }

  CheckResult a_posteriori() {
    Tracker t;
    for (int m = 0; m < models; ++m) {
      const Model model = small_model();
      const double p = kPs[rng.below(3)];
      for (MapKind kind : {MapKind::Diffusion, MapKind::Control}) {
        const auto ref = tight_solve(model, kind, p, 1e-13);
        SolveParams params;
        params.p = p;
        params.tol = 1e-10;
        params.max_iter = 100000;
        params.initial = random_field(rng, model, 0.0, 30.0);
        double prev_r = -1.0;
        solve(model, kind, params, [&](int, const BeliefField& prev, const BeliefField&, double r) {
          t.check(contraction_distance(kind, ref.field, prev) - r / p, 1e-9);
          if (prev_r >= 0.0) t.check(r - (1.0 - p + 1e-9) * prev_r, 1e-12);
          prev_r = r;
        });
        // uniqueness: another start lands on the same point
        const auto other = solve(model, kind, params);
        const double gap = distance_inf(other.field, ref.field);
        t.check(gap - 2.0 * std::max(other.certified_distance, ref.certified_distance), 1e-9);
      }
    }
    return t.result("a-posteriori-bound", "distance to the fixed point <= residual / p; residuals shrink by q");
  }

  CheckResult kernels() {
    Tracker t;
    std::vector<int> ks{1, 2, 3, 8, 64};
    if (opt.scale == Scale::Full) ks.push_back(256);
    MinConvWorkspace ws;
    for (int k : ks) {
      for (int r = 0; r < 40; ++r) {
        std::vector<double> c(static_cast<std::size_t>(k));
        for (double& v : c) v = rng.uniform(0.0, 100.0);
        const double scale = rng.uniform(0.0, 2.0);
        const double step = rng.uniform(0.0, 50.0);
        const PairwiseCost forms[] = {
            TruncatedQuadratic{rng.uniform(0.0, 5.0), rng.uniform(0.0, 400.0)},
            TruncatedLinear{rng.uniform(0.0, 5.0), rng.uniform(0.0, 40.0)},
            StereoTwoStep{step, step + rng.uniform(0.01, 50.0)},
            Potts{rng.uniform(0.0, 50.0)},
        };
        for (const auto& form : forms) {
          const MessageProblem prob{c, scale, &form, Orientation::Forward};
          std::vector<double> fast(c.size()), dense(c.size());
          minconv(prob, fast, ws);
          dense_minconv(prob, dense);
          for (std::size_t i = 0; i < c.size(); ++i) t.check(std::abs(fast[i] - dense[i]), 1e-9);
        }
      }
    }
    return t.result("kernel-oracle", "structured min-convolutions equal dense enumeration");
  }

  CheckResult column_dp() {
    Tracker t;
    for (int m = 0; m < 20; ++m) {
      const int side = 3 + (m % 2);
      const auto inst = random_grid({side, rng.uniform(0.0, 3.0), rng.next()});
      const auto dp = column_dp_min(inst.model, side, side);
      const auto bf = brute_force_min(inst.model);
      t.expect(dp.labeling == bf.labeling && dp.value == bf.value, "column DP disagrees with enumeration");
    }
    return t.result("column-dp", "column dynamic programming equals full enumeration on grids");
  }

  CheckResult baselines() {
    Tracker t;
    for (int m = 0; m < models; ++m) {
      const Model model = small_model(6, 3);
      const Labeling x0 = random_labeling(rng, model);
      const Labeling x = icm(model, x0);
      const double e = energy(model, x);
      t.check(e - energy(model, x0), 0.0);
      Labeling y = x;
      for (int i = 0; i < model.num_vertices(); ++i) {
        for (Label a = 0; a < model.num_labels(); ++a) {
          y[i] = a;
          t.check(e - energy(model, y), 1e-9);
        }
        y[i] = x[i];
      }
    }
    for (int m = 0; m < 10; ++m) {
      ModelBuilder b(4, 2);
      for (int i = 0; i < 4; ++i) {
        const double g[] = {rng.uniform(0.0, 5.0), rng.uniform(0.0, 5.0)};
        b.set_unary(i, g);
      }
      for (int i = 0; i + 1 < 4; ++i) {
        b.add_edge(i, i + 1, DenseTable{2, {rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5)}});
      }
      const Model path = b.build();
      t.expect(decode(min_sum_bp(path, 0.0, 10)) == brute_force_min(path).labeling, "BP on a path missed the optimum");
    }
    return t.result("baselines", "ICM returns single-flip local minima; BP is exact on trees");
  }

  std::vector<CheckResult> run() {
    std::vector<CheckResult> out;
    out.push_back(weight_rows());
    out.push_back(contraction(MapKind::Diffusion));
    out.push_back(contraction(MapKind::Control));
    out.push_back(order_preservation());
    out.push_back(monotone_start());
    out.push_back(proposition_tf());
    out.push_back(bounds());
    out.push_back(max_marginal_bounds());
    out.push_back(mdp_equivalence());
    out.push_back(lp_feasibility());
    out.push_back(a_posteriori());
    out.push_back(kernels());
    out.push_back(column_dp());
    out.push_back(baselines());
    if (opt.scale == Scale::Full) out.push_back(monte_carlo());
    return out;
  }
};

}  // namespace

std::vector<CheckResult> run_all(const Options& options) { return Suite(options).run(); }

}  // namespace cmrf::verify
