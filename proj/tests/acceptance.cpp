// Acceptance suite: one PASS/FAIL line per criterion, each with a runtime budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "cmrf/baselines.hpp"
#include "cmrf/experiments.hpp"
#include "cmrf/fastmin.hpp"
#include "cmrf/maps.hpp"
#include "cmrf/oracles.hpp"
#include "cmrf/problems.hpp"
#include "cmrf/random_models.hpp"
#include "fixtures.hpp"

using namespace cmrf;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void need(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

FixedPointReport converge(const Model& m, MapKind kind, double p, double tol) {
  SolveParams params;
  params.p = p;
  params.tol = tol;
  params.max_iter = 10000000;
  return solve(m, kind, params);
}

struct Enumerated {
  double min_value = std::numeric_limits<double>::infinity();
  Labeling argmin;
  BeliefField max_marginals;
};

// Full enumeration written independently of the library's oracles.
Enumerated enumerate(const Model& m) {
  Enumerated out;
  out.max_marginals = BeliefField(m.num_vertices(), m.num_labels(), std::numeric_limits<double>::infinity());
  fixtures::for_each_labeling(m.num_vertices(), m.num_labels(), [&](const Labeling& x) {
    const double e = fixtures::naive_energy(m, x);
    if (e < out.min_value) out.min_value = e, out.argmin = x;
    for (int i = 0; i < m.num_vertices(); ++i) {
      double& f = out.max_marginals(i, x[i]);
      f = std::min(f, e);
    }
  });
  return out;
}

const double kPs[] = {0.9, 0.5, 0.1, 0.01};

// ---------------------------------------------------------------------------

Outcome five_cycle_toys() {
  Outcome o;
  const struct {
    bool attractive;
    Labeling expect;
  } cases[] = {{true, {1, 1, 1, 1, 1}}, {false, {1, 0, 1, 1, 0}}};
  for (const auto& c : cases) {
    const Model m = fixtures::five_cycle(c.attractive);
    const FixedPointReport rep = converge(m, MapKind::Diffusion, 0.1, 1e-13);
    const Labeling x = decode(rep.field);
    o.need(rep.residual < 1e-12, "residual not below 1e-12");
    o.need(x == c.expect, std::string(c.attractive ? "attractive" : "repulsive") + " decode mismatch");
    o.need(fixtures::naive_energy(m, x) == enumerate(m).min_value, "decode is not a global minimizer");
  }
  if (o.ok) o.detail = "(2,2,2,2,2) and (2,1,2,2,1), both global minimizers";
  return o;
}

Outcome contraction_suites() {
  Outcome o;
  Rng rng(2024);
  double worst = -1e300;
  for (int t = 0; t < 100; ++t) {
    const Model m = random_model(rng, {.max_vertices = 10, .max_labels = 5});
    const double p = kPs[rng.below(4)], q = 1.0 - p;
    for (int r = 0; r < 5; ++r) {
      const BeliefField a = random_field(rng, m, -50, 50), b = random_field(rng, m, -50, 50);
      const BeliefField ta = apply_diffusion(m, p, a), tb = apply_diffusion(m, p, b);
      const double g = distance_inf1(ta, tb) - q * distance_inf1(a, b);
      worst = std::max(worst, g);
      o.need(g <= 1e-12, "global T contraction violated");
      const auto din = vertex_distances(a, b), dout = vertex_distances(ta, tb);
      const Graph& gr = m.graph();
      for (int i = 0; i < gr.num_vertices(); ++i) {
        double rhs = 0.0;
        for (int d = gr.dart_begin(i); d < gr.dart_end(i); ++d) rhs += m.weights()[gr.dart_reverse(d)] * din[gr.dart_head(d)];
        const double v = dout[i] - q * rhs;
        worst = std::max(worst, v);
        o.need(v <= 1e-12, "per-vertex T contraction violated");
      }
      const double s = distance_inf(apply_control(m, p, a), apply_control(m, p, b)) - q * distance_inf(a, b);
      worst = std::max(worst, s);
      o.need(s <= 1e-12, "S contraction violated");
    }
  }
  if (o.ok) o.detail = fmt("100 models x 5 pairs, worst excess %.2e", worst);
  return o;
}

Outcome bound_theorems() {
  Outcome o;
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const Model m = random_model(rng, {.max_vertices = 7, .max_labels = 3});
    const double p = kPs[rng.below(3)];
    const Enumerated ex = enumerate(m);
    const FixedPointReport tr = converge(m, MapKind::Diffusion, p, 1e-12);
    for (int r = 0; r < 1000; ++r) {
      const Labeling x = random_labeling(rng, m);
      o.need(factored_bound(tr.field, x) <= energy(m, x) + 1e-9, "(a) H(x) > F(x)");
    }
    const Bracket b = bracket(m, tr);
    o.need(b.lower <= ex.min_value + 1e-6 && ex.min_value <= b.upper + 1e-6, "(b) bracket misses the optimum");
    const FixedPointReport sr = converge(m, MapKind::Control, p, 1e-12);
    const BeliefField lower = value_lower_bounds(m, sr);
    const BeliefField sf = apply_control(m, p, ex.max_marginals);
    for (std::size_t i = 0; i < lower.values().size(); ++i) {
      o.need(lower.values()[i] >= -1e-12, "(c) negative lower bound");
      o.need(lower.values()[i] <= ex.max_marginals.values()[i] + 1e-9, "(c) lower bound above max-marginal");
      o.need(sf.values()[i] <= ex.max_marginals.values()[i] + 1e-9, "(d) Sf > f");
    }
  }
  if (o.ok) o.detail = "20 models: H<=F, bracket, 0<=phi<=f, Sf<=f";
  return o;
}

Outcome mdp_equivalence() {
  Outcome o;
  Rng rng(99);
  double worst_apply = 0.0, worst_fp = 0.0, worst_mc = -1e300;
  for (int t = 0; t < 10; ++t) {
    const Model m = random_model(rng, {.max_vertices = 5, .max_labels = 3, .max_degree = 3});
    const double p = 0.1;
    const MdpInstance mdp(m, p);
    for (int r = 0; r < 5; ++r) {
      const BeliefField phi = random_field(rng, m, 0, 30);
      const auto v = mdp_bellman(mdp, phi.values());
      const BeliefField s = apply_control(m, p, phi);
      for (std::size_t i = 0; i < v.size(); ++i) worst_apply = std::max(worst_apply, std::abs(v[i] - s.values()[i]));
    }
    const auto vi = mdp_value_iteration(mdp, 1e-13, 10000000);
    const FixedPointReport sr = converge(m, MapKind::Control, p, 1e-13);
    for (std::size_t i = 0; i < vi.size(); ++i) worst_fp = std::max(worst_fp, std::abs(vi[i] - sr.field.values()[i]));

    const WalkPolicy pi = greedy_policy_from(sr.field, m, p);
    const int h = horizon_for_tail(m, p, 1e-4);
    const int v0 = rng.below(m.num_vertices());
    const Label a0 = rng.below(m.num_labels());
    const auto est = monte_carlo_value(m, p, pi, v0, a0, 100000, h, rng.next());
    const double excess = std::abs(est.mean - sr.field(v0, a0)) - 3.0 * est.standard_error - est.tail_bound;
    worst_mc = std::max(worst_mc, excess);
  }
  o.need(worst_apply <= 1e-12, fmt("S vs Bellman differ by %.2e", worst_apply));
  o.need(worst_fp <= 1e-10, fmt("fixed points differ by %.2e", worst_fp));
  o.need(worst_mc <= 0.0, fmt("Monte-Carlo outside 3 SE + tail by %.2e", worst_mc));
  if (o.ok) o.detail = fmt("apply %.1e, fixed point %.1e, MC margin %.2e", worst_apply, worst_fp, -worst_mc);
  return o;
}

// Seconds per call of `f`, minimum over repeated timed batches.
double time_per_call(const std::function<void()>& f, int batch, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    for (int i = 0; i < batch; ++i) f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - start).count() / batch);
  }
  return best;
}

Outcome kernel_equivalence() {
  Outcome o;
  Rng rng(5);
  double worst = 0.0;
  for (int k : {1, 2, 3, 8, 64, 256}) {
    for (int t = 0; t < 50; ++t) {
      std::vector<double> c(static_cast<std::size_t>(k));
      for (double& v : c) v = rng.uniform(0, 500);
      const double scale = rng.uniform(0, 2), a = rng.uniform(0, 40);
      const PairwiseCost forms[] = {TruncatedQuadratic{rng.uniform(0, 3), rng.uniform(0, 1000)},
                                    TruncatedLinear{rng.uniform(0, 3), rng.uniform(0, 60)},
                                    StereoTwoStep{a, a + rng.uniform(0.01, 40)}, Potts{rng.uniform(0, 60)}};
      for (const auto& f : forms) {
        const auto fast = minconv({c, scale, &f, Orientation::Forward});
        for (int tau = 0; tau < k; ++tau) {
          double best = std::numeric_limits<double>::infinity();
          for (int u = 0; u < k; ++u) best = std::min(best, scale * pairwise_value(f, Orientation::Forward, tau, u) + c[u]);
          worst = std::max(worst, std::abs(best - fast[tau]));
        }
      }
    }
  }
  o.need(worst <= 1e-9, fmt("kernel differs from enumeration by %.2e", worst));

  const char* names[] = {"quadratic", "linear", "two-step", "potts"};
  const PairwiseCost forms[] = {TruncatedQuadratic{0.05, 100}, TruncatedLinear{1.0, 20}, StereoTwoStep{5, 10},
                                Potts{10}};
  std::string ratios;
  for (int f = 0; f < 4; ++f) {
    double t[2];
    for (int s = 0; s < 2; ++s) {
      const int k = s ? 256 : 128;
      std::vector<double> c(static_cast<std::size_t>(k)), out(c.size());
      for (double& v : c) v = rng.uniform(0, 500);
      MinConvWorkspace ws;
      const MessageProblem prob{c, 1.0, &forms[f], Orientation::Forward};
      t[s] = time_per_call([&] { minconv(prob, out, ws); }, 20000, 15);
    }
    const double ratio = t[1] / t[0];
    ratios += std::string(f ? ", " : "") + names[f] + fmt(" %.2f", ratio);
    o.need(ratio >= 1.6 && ratio <= 2.6, std::string(names[f]) + fmt(" timing ratio %.2f outside [1.6, 2.6]", ratio));
  }
  if (o.ok) o.detail = fmt("worst %.1e; ratios 256/128: ", worst) + ratios;
  else o.detail += "; ratios: " + ratios;
  return o;
}

Outcome lp_monotone() {
  Outcome o;
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const Model m = random_model(rng, {});
    const double p = kPs[rng.below(4)];
    for (MapKind kind : {MapKind::Diffusion, MapKind::Control}) {
      SolveParams params;
      params.p = p;
      params.tol = 1e-12;
      params.max_iter = 200;
      solve(m, kind, params, [&](int, const BeliefField& prev, const BeliefField& next, double) {
        for (std::size_t i = 0; i < prev.values().size(); ++i)
          o.need(next.values()[i] >= prev.values()[i] - 1e-12, "iterates decreased");
      });
    }
    const FixedPointReport tr = converge(m, MapKind::Diffusion, p, 1e-12);
    o.need(check_lp_feasible(m, p, tr.field, 1e-8), "fixed point rejected");
    BeliefField up = tr.field;
    for (double& v : up.values()) v += 1.0;
    o.need(!check_lp_feasible(m, p, up, 1e-8), "uniformly raised field accepted");
    BeliefField bump = tr.field;
    bump(static_cast<int>(rng.below(m.num_vertices())), 0) += 0.5;
    o.need(!check_lp_feasible(m, p, bump, 1e-8), "single-entry raise accepted");
  }
  if (o.ok) o.detail = "30 models, both maps";
  return o;
}

Outcome grid_ordering() {
  Outcome o;
  BenchSpec spec;
  spec.size = 10;
  spec.coupling = 10;
  spec.seeds = 20;
  spec.iterations = 1000;
  spec.p = 0.01;
  const auto summary = summarize(run_grid_bench(spec), spec.algorithms);
  auto get = [&](const std::string& a) {
    return *std::find_if(summary.begin(), summary.end(), [&](const BenchSummary& s) { return s.algorithm == a; });
  };
  const auto s_icm = get("S+ICM"), t_icm = get("T+ICM"), bp_icm = get("BP+ICM"), s = get("S"), t = get("T"),
             bp = get("BP");
  o.need(s_icm.hamming_mean < bp_icm.hamming_mean, "Hamming(S+ICM) not below Hamming(BP+ICM)");
  o.need(t_icm.hamming_mean < bp_icm.hamming_mean, "Hamming(T+ICM) not below Hamming(BP+ICM)");
  o.need(bp.energy_mean < s.energy_mean, "energy(BP) not below energy(S)");
  o.need(bp.energy_mean < t.energy_mean, "energy(BP) not below energy(T)");
  const std::string d = fmt("Hamming S+ICM %.2f T+ICM %.2f BP+ICM %.2f", s_icm.hamming_mean, t_icm.hamming_mean,
                            bp_icm.hamming_mean) +
                        fmt("; energy BP %.2f S %.2f T %.2f", bp.energy_mean, s.energy_mean, t.energy_mean);
  o.detail = o.ok ? d : o.detail + " (" + d + ")";
  return o;
}

Outcome column_dp_exact() {
  Outcome o;
  int count = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (int side : {3, 4}) {
      const IsingInstance inst = random_grid({side, 10.0, seed});
      const MinimumResult dp = column_dp_min(inst.model, side, side);
      const Enumerated ex = enumerate(inst.model);
      o.need(dp.labeling == ex.argmin && fixtures::naive_energy(inst.model, dp.labeling) == ex.min_value,
             fmt("mismatch at side %.0f seed %.0f", side, static_cast<double>(seed)));
      ++count;
    }
  }
  if (o.ok) o.detail = fmt("%.0f instances identical", count);
  return o;
}

Outcome restoration_smoke() {
  Outcome o;
  const GrayImage clean = piecewise_constant_image(64, 64);
  const GrayImage noisy = add_gaussian_noise(clean, 20.0, 1);
  RestoreParams params;  // lambda 0.05, cap 100, p 0.001, 100 iterations of T
  const RestoreResult r = restore_image(noisy, params);
  const double before = rmse(clean, noisy), after = rmse(clean, r.restored);
  o.need(after < before, fmt("RMSE %.4f not below noisy %.4f", after, before));

  GrayImage half = noisy;
  for (auto& px : half.pixels) px = static_cast<std::uint8_t>(px / 2);
  const Model m256 = restoration_model(noisy, 0.05, 100, 256);
  const Model m128 = restoration_model(half, 0.05, 100, 128);
  double t[2];
  for (int s = 0; s < 2; ++s) {
    const Model& m = s ? m256 : m128;
    MapEvaluator ev(m, MapKind::Diffusion, 0.001);
    BeliefField in = BeliefField::zeros_like(m), out = BeliefField::zeros_like(m);
    ev.apply(in, out);
    std::swap(in, out);
    t[s] = time_per_call([&] { ev.apply(in, out); }, 3, 7);
  }
  const double ratio = t[1] / t[0];
  o.need(ratio <= 2.6, fmt("per-iteration time ratio %.2f above 2.6", ratio));
  const std::string d = fmt("RMSE %.4f -> %.4f; per-iteration 256/128 ratio %.2f", before, after, ratio);
  o.detail = o.ok ? d : o.detail + " (" + d + ")";
  return o;
}

Outcome convergence_rate() {
  Outcome o;
  Rng rng(404);
  double worst_ratio = 0.0, worst_bound = -1e300;
  for (int t = 0; t < 20; ++t) {
    const Model m = random_model(rng, {});
    const double p = kPs[rng.below(3)], q = 1.0 - p;
    for (MapKind kind : {MapKind::Diffusion, MapKind::Control}) {
      const FixedPointReport ref = converge(m, kind, p, 1e-13);
      SolveParams params;
      params.p = p;
      params.tol = 1e-10;
      params.max_iter = 100000;
      params.initial = random_field(rng, m, 0, 40);
      double prev = -1.0;
      solve(m, kind, params, [&](int, const BeliefField& before, const BeliefField&, double r) {
        if (prev > 0.0) {
          worst_ratio = std::max(worst_ratio, r / prev);
          o.need(r <= (q + 1e-9) * prev + 1e-12, "residual ratio above q");
        }
        const double excess = contraction_distance(kind, ref.field, before) - r / p;
        worst_bound = std::max(worst_bound, excess);
        o.need(excess <= 1e-9, "distance to fixed point above residual / p");
        prev = r;
      });
    }
  }
  if (o.ok) o.detail = fmt("20 models x 2 maps; worst bound excess %.2e", worst_bound);
  return o;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"five-cycle toy fixed points", 1, five_cycle_toys},
      {"contraction suites", 10, contraction_suites},
      {"bound theorems", 30, bound_theorems},
      {"MDP equivalence", 60, mdp_equivalence},
      {"kernel oracle equivalence", 30, kernel_equivalence},
      {"LP feasibility and monotone iterates", 5, lp_monotone},
      {"grid benchmark ordering", 300, grid_ordering},
      {"column DP exactness", 10, column_dp_exact},
      {"restoration smoke", 60, restoration_smoke},
      {"convergence rate and a-posteriori bound", 10, convergence_rate},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (o.ok && secs > c.budget_seconds) {
      o.ok = false;
      o.detail += fmt("; took %.1f s, budget %.0f s", secs, c.budget_seconds);
    }
    failed += !o.ok;
    std::printf("%s %2d %-40s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", index, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}
