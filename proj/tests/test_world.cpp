#include <cmath>
#include <numbers>

#include "doctest.h"

#include "activesep/world.hpp"

using namespace activesep;
using doctest::Approx;

TEST_CASE("unicycle step turns, then translates") {
  const double pi = std::numbers::pi;
  AgentState s = step({0, 0, 0}, {1, pi / 2});
  CHECK(s.x == Approx(0).epsilon(1e-12));
  CHECK(s.z == Approx(1));
  CHECK(s.theta == Approx(pi / 2));

  s = step({5, 5, 0.3}, {0, 0.2});
  CHECK(s.x == 5);
  CHECK(s.z == 5);
  CHECK(s.theta == Approx(0.5));

  s = step({2, 2, 0}, {2, 0.5});
  CHECK(s.x == Approx(3.7552).epsilon(1e-4));
  CHECK(s.z == Approx(2.9589).epsilon(1e-4));
  CHECK(s.theta == Approx(0.5));

  // Bit-for-bit reproducible.
  const AgentState a = step({1.1, 2.2, 3.0}, {1.7, 0.9});
  const AgentState b = step({1.1, 2.2, 3.0}, {1.7, 0.9});
  CHECK(a.x == b.x);
  CHECK(a.z == b.z);
  CHECK(a.theta == b.theta);
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  const double pi = std::numbers::pi;
  CHECK(wrap_angle(pi) == Approx(pi));
  CHECK(wrap_angle(-pi) == Approx(pi));
  CHECK(wrap_angle(3 * pi / 2) == Approx(-pi / 2));
  CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("true_label") {
  const TrueClassifier cl{0.41, 3.5};
  CHECK(true_label(cl, {2, 2}) == -1);
  CHECK(true_label(cl, {2, 10}) == 1);
  CHECK(true_label(cl, {10, 0.41 * 10 + 3.5}) == 0);
}

TEST_CASE("observe: trusted balls, no noise field, keep rate") {
  const TrueClassifier cl{0.41, 3.5};
  NoiseField nf{{{2, 2}}, 1.0, 0.7};
  const CounterRng rng(42);
  for (std::uint64_t k = 1; k <= 500; ++k) {
    const Observation o = observe(&nf, cl, {2.3, 2.4}, rng, k);
    CHECK(o.observed == o.truth);
  }
  for (std::uint64_t k = 1; k <= 100; ++k) {
    const Observation o = observe(nullptr, cl, {10, 1}, rng, k);
    CHECK(o.observed == o.truth);
  }
  int kept = 0;
  const int n = 10000;
  for (int k = 1; k <= n; ++k) {
    const Observation o = observe(&nf, cl, {10, 1}, rng, static_cast<std::uint64_t>(k));
    kept += o.observed == o.truth;
  }
  CHECK(std::abs(kept / double(n) - 0.7) <= 0.02);
}

TEST_CASE("CounterRng depends only on (seed, counter)") {
  const CounterRng a(9), b(9), c(10);
  CHECK(a.bits(5) == b.bits(5));
  CHECK(a.bits(5) != a.bits(6));
  CHECK(a.bits(5) != c.bits(5));
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = a.uniform(k);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("default scenarios") {
  const Scenario sc = Scenario::baseline();
  CHECK_NOTHROW(sc.validate());
  CHECK(sc.v_grid.size() == 21);
  CHECK(sc.w_grid.size() == 315);
  CHECK(sc.v_grid.front() == 0.0);
  CHECK(sc.v_grid.back() == Approx(2.0));
  CHECK(sc.w_grid.front() == Approx(-1.57));
  CHECK(sc.w_grid.back() == Approx(1.57));
  CHECK(sc.min_separation() == Approx(0.1 * std::sqrt(800.0)));
  for (const auto& a : sc.anchors) CHECK(true_label(sc.classifier, a.position()) == a.label);
  const Scenario noisy = Scenario::baseline_noisy();
  REQUIRE(noisy.noise);
  CHECK(noisy.noise->keep_prob == 0.7);
  CHECK(noisy.noise->trusted(sc.anchors[2].position()));
}

TEST_CASE("scenario validation rejects broken invariants") {
  Scenario sc = Scenario::baseline();
  sc.anchors[1].label = -1;
  CHECK_THROWS_AS(sc.validate(), ValidationError);

  sc = Scenario::baseline();
  sc.anchors[0] = {2, 8, -1};  // labeled -1 but above the line
  CHECK_THROWS_AS(sc.validate(), ValidationError);

  sc = Scenario::baseline();
  sc.anchors[2].x = 25;
  CHECK_THROWS_AS(sc.validate(), ValidationError);

  sc = Scenario::baseline_noisy();
  sc.noise->keep_prob = 0.5;
  CHECK_THROWS_AS(sc.validate(), ValidationError);

  sc = Scenario::baseline();
  sc.w_grid = {0.1, 0.0};
  CHECK_THROWS_AS(sc.validate(), ValidationError);

  sc = Scenario::baseline();
  sc.horizon = -1;
  CHECK_THROWS_AS(sc.validate(), ValidationError);

  sc = Scenario::baseline();
  sc.initial_box.c_max = 3.0;  // excludes c* = 3.5
  CHECK_THROWS_AS(sc.validate(), ValidationError);
}

TEST_CASE("lattice_grid") {
  const auto g = lattice_grid(-0.25, 0.25, 0.1);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == Approx(-0.2));
  CHECK(g[2] == 0.0);
  CHECK_THROWS_AS(lattice_grid(0, 1, 0), ValidationError);
}
