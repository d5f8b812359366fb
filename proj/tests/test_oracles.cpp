#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmrf/error.hpp"
#include "cmrf/maps.hpp"
#include "cmrf/oracles.hpp"
#include "cmrf/problems.hpp"
#include "cmrf/random_models.hpp"
#include "fixtures.hpp"

using namespace cmrf;

namespace {

FixedPointReport control_fixed_point(const Model& m, double p, double tol = 1e-13) {
  SolveParams params;
  params.p = p;
  params.tol = tol;
  params.max_iter = 1000000;
  return solve(m, MapKind::Control, params);
}

}  // namespace

TEST_CASE("brute force minimum") {
  SUBCASE("zero costs pick the all-zero labeling") {
    const MinimumResult r = brute_force_min(fixtures::zero_path(4, 3));
    CHECK(r.labeling == Labeling{0, 0, 0, 0});
    CHECK(r.value == 0.0);
  }
  SUBCASE("five-cycle toy problems") {
    const MinimumResult a = brute_force_min(fixtures::five_cycle(true));
    CHECK(a.value == 0.0);
    CHECK(a.labeling == Labeling{1, 1, 1, 1, 1});
    const Model rep = fixtures::five_cycle(false);
    const MinimumResult b = brute_force_min(rep);
    CHECK(energy(rep, {1, 0, 1, 1, 0}) == b.value);
  }
  SUBCASE("capacity guard") {
    const Model big = fixtures::zero_path(25, 2);
    try {
      brute_force_min(big);
      FAIL("expected a capacity error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Capacity);
    }
  }
}

TEST_CASE("max-marginals") {
  SUBCASE("zero costs") {
    const BeliefField f = max_marginals(fixtures::zero_path(3, 2));
    for (double v : f.values()) CHECK(v == 0.0);
  }
  SUBCASE("minimum over labels equals the global minimum") {
    Rng rng(6);
    for (int t = 0; t < 10; ++t) {
      const Model m = random_model(rng, {});
      const BeliefField f = max_marginals(m);
      const double best = brute_force_min(m).value;
      for (int i = 0; i < m.num_vertices(); ++i) {
        const auto r = f.row(i);
        CHECK(*std::min_element(r.begin(), r.end()) == best);
      }
    }
  }
  SUBCASE("single edge by hand") {
    ModelBuilder b(2, 2);
    const double g0[] = {1.0, 4.0}, g1[] = {3.0, 0.5};
    b.set_unary(0, g0);
    b.set_unary(1, g1);
    b.add_edge(0, 1, DenseTable{2, {0.0, 2.0, 6.0, 1.0}});
    const BeliefField f = max_marginals(b.build());
    CHECK(f(0, 0) == doctest::Approx(1.0 + std::min(0.0 + 3.0, 2.0 + 0.5)));
    CHECK(f(0, 1) == doctest::Approx(4.0 + std::min(6.0 + 3.0, 1.0 + 0.5)));
  }
}

TEST_CASE("column dynamic programming") {
  SUBCASE("zero grid") {
    const std::vector<double> alpha(9, 0.0), beta(12, 0.0);
    CHECK(column_dp_min(ising_to_model(alpha, beta, 3, 3).model, 3, 3).value == 0.0);
  }
  SUBCASE("agrees with enumeration on small grids") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      for (int side : {3, 4}) {
        const IsingInstance inst = random_grid({side, 2.0, seed});
        const MinimumResult dp = column_dp_min(inst.model, side, side);
        const MinimumResult bf = brute_force_min(inst.model);
        CHECK(dp.value == bf.value);
        CHECK(dp.labeling == bf.labeling);
      }
    }
  }
  SUBCASE("rectangular grids") {
    Rng rng(7);
    std::vector<double> alpha(12), beta(17);
    for (double& a : alpha) a = rng.uniform(-1, 1);
    for (double& b : beta) b = rng.uniform(-2, 2);
    const Model m = ising_to_model(alpha, beta, 4, 3).model;
    CHECK(column_dp_min(m, 4, 3).value == brute_force_min(m).value);
  }
  SUBCASE("10x10 optimum is not beaten by single flips") {
    const IsingInstance inst = random_grid({10, 10.0, 3});
    const MinimumResult dp = column_dp_min(inst.model, 10, 10);
    CHECK(dp.value == energy(inst.model, dp.labeling));
    Labeling x = dp.labeling;
    for (int i = 0; i < 100; ++i) {
      x[i] ^= 1;
      CHECK(energy(inst.model, x) >= dp.value);
      x[i] ^= 1;
    }
  }
  SUBCASE("non-binary model is rejected") {
    CHECK_THROWS_AS(column_dp_min(fixtures::zero_path(2, 3), 2, 1), Error);
  }
}

TEST_CASE("explicit Bellman operator matches the control map") {
  SUBCASE("zero costs") {
    const Model m = fixtures::zero_path(3, 2);
    const MdpInstance mdp(m, 0.3);
    const std::vector<double> zero(6, 0.0);
    for (double v : mdp_bellman(mdp, zero)) CHECK(v == 0.0);
  }
  SUBCASE("four-vertex path") {
    Rng rng(10);
    ModelBuilder b(4, 2);
    for (int i = 0; i < 4; ++i) {
      const double g[] = {rng.uniform(0, 5), rng.uniform(0, 5)};
      b.set_unary(i, g);
    }
    for (int i = 0; i < 3; ++i)
      b.add_edge(i, i + 1, DenseTable{2, {rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5)}});
    const Model m = b.build();
    const MdpInstance mdp(m, 0.25);
    for (int r = 0; r < 10; ++r) {
      const BeliefField phi = random_field(rng, m, 0, 10);
      const auto v = mdp_bellman(mdp, phi.values());
      const BeliefField s = apply_control(m, 0.25, phi);
      for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - s.values()[i]) <= 1e-12);
    }
    const auto vi = mdp_value_iteration(mdp, 1e-13, 1000000);
    const BeliefField fp = control_fixed_point(m, 0.25).field;
    for (std::size_t i = 0; i < vi.size(); ++i) CHECK(std::abs(vi[i] - fp.values()[i]) <= 1e-10);
  }
  SUBCASE("action cost by hand") {
    const Model m = fixtures::five_cycle(true);
    const MdpInstance mdp(m, 0.1);
    const Label action[] = {1, 0};  // neighbors of vertex 0 are 1 and 4
    CHECK(mdp.cost(0, 0, action) == doctest::Approx(0.1 * 1.0 + 0.1 * 0.5 * 1.0 + 0.1 * 0.5 * 0.0));
  }
}

TEST_CASE("walk energy prefix") {
  SUBCASE("zero costs") {
    const Model m = fixtures::zero_path(2, 2);
    const int walk[] = {0, 1, 0, 1};
    const Label labels[] = {0, 1, 1, 0};
    const WalkValue v = walk_energy_prefix(m, 0.5, walk, labels, 3);
    CHECK(v.value == 0.0);
    CHECK(v.tail_bound == 0.0);
  }
  SUBCASE("horizon zero keeps the whole bound") {
    const Model m = fixtures::five_cycle(true);
    const int walk[] = {0};
    const Label labels[] = {0};
    const WalkValue v = walk_energy_prefix(m, 0.1, walk, labels, 0);
    CHECK(v.value == 0.0);
    CHECK(v.tail_bound == doctest::Approx(1.0 + 1.0));
  }
  SUBCASE("constant costs follow the geometric series") {
    const double a = 2.0, bcost = 3.0, p = 0.2, q = 0.8;
    ModelBuilder b(2, 1);
    const double g[] = {a};
    b.set_unary(0, g);
    b.set_unary(1, g);
    b.add_edge(0, 1, DenseTable{1, {bcost}});
    const Model m = b.build();
    const int h = 7;
    std::vector<int> walk;
    std::vector<Label> labels(h + 1, 0);
    for (int t = 0; t <= h; ++t) walk.push_back(t % 2);
    const WalkValue v = walk_energy_prefix(m, p, walk, labels, h);
    CHECK(v.value == doctest::Approx((a + bcost) * p * (1 - std::pow(q, h)) / (1 - q)));
    CHECK(v.tail_bound == doctest::Approx(std::pow(q, h) * (a + bcost)));
  }
  SUBCASE("non-adjacent steps are rejected") {
    const Model m = fixtures::five_cycle(true);
    const int walk[] = {0, 2};
    const Label labels[] = {0, 0};
    CHECK_THROWS_AS(walk_energy_prefix(m, 0.1, walk, labels, 1), Error);
  }
}

TEST_CASE("greedy policy") {
  SUBCASE("single label") {
    const Model m = fixtures::zero_path(3, 1);
    const WalkPolicy pi = greedy_policy_from(BeliefField::zeros_like(m), m, 0.5);
    for (int d = 0; d < m.graph().num_darts(); ++d) CHECK(pi.next(d, 0) == 0);
  }
  SUBCASE("zero pairwise costs follow the neighbor belief") {
    const Model m = fixtures::zero_path(2, 3);
    BeliefField phi(2, 3);
    phi(1, 0) = 4;
    phi(1, 1) = 1;
    phi(1, 2) = 1;
    const WalkPolicy pi = greedy_policy_from(phi, m, 0.5);
    const int d01 = m.graph().find_dart(0, 1);
    for (Label t = 0; t < 3; ++t) CHECK(pi.next(d01, t) == 1);
  }
}

TEST_CASE("Monte-Carlo walk values") {
  SUBCASE("zero costs") {
    const Model m = fixtures::zero_path(3, 2);
    const WalkPolicy pi(m.graph(), 2);
    const auto est = monte_carlo_value(m, 0.5, pi, 0, 0, 100, 20, 1);
    CHECK(est.mean == 0.0);
    CHECK(est.standard_error == 0.0);
  }
  SUBCASE("two-vertex chain matches the closed form") {
    ModelBuilder b(2, 1);
    const double g0[] = {1.0}, g1[] = {4.0};
    b.set_unary(0, g0);
    b.set_unary(1, g1);
    b.add_edge(0, 1, DenseTable{1, {2.0}});
    const Model m = b.build();
    const double p = 0.3, q = 0.7;
    const int h = 400;
    const auto est = monte_carlo_value(m, p, WalkPolicy(m.graph(), 1), 0, 0, 50, h, 9);
    // even steps pay g0 + h, odd steps g1 + h: p (3 + 6q) / (1 - q^2)
    CHECK(est.mean == doctest::Approx(p * (3.0 + 6.0 * q) / (1.0 - q * q)).epsilon(1e-9));
    CHECK(est.standard_error == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("greedy policy value agrees with the control fixed point") {
    Rng rng(15);
    const Model m = random_model(rng, {.min_vertices = 4, .max_vertices = 4, .min_labels = 2, .max_labels = 2});
    const double p = 0.1;
    const BeliefField phi = control_fixed_point(m, p).field;
    const WalkPolicy pi = greedy_policy_from(phi, m, p);
    const int h = horizon_for_tail(m, p, 1e-4);
    const auto est = monte_carlo_value(m, p, pi, 2, 1, 100000, h, 77);
    CHECK(std::abs(est.mean - phi(2, 1)) <= 3.0 * est.standard_error + est.tail_bound);
  }
}
