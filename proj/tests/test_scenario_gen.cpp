#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "mucfc/rng.hpp"
#include "mucfc/scenario_gen.hpp"
#include "mucfc/scenario_io.hpp"

using namespace mucfc;
using Catch::Matchers::WithinAbs;

TEST_CASE("generation is deterministic in the seed") {
  GenConfig cfg;
  cfg.n_uavs = 20;
  cfg.n_tasks = 5;
  cfg.seed = 42;
  const Scenario a = generate(cfg);
  const Scenario b = generate(cfg);
  CHECK(to_json(a).dump() == to_json(b).dump());

  cfg.seed = 43;
  const Scenario c = generate(cfg);
  CHECK(to_json(a).dump() != to_json(c).dump());
}

TEST_CASE("generated tasks respect every invariant") {
  std::mt19937_64 rng(900);
  for (int trial = 0; trial < 10000; ++trial) {
    GenConfig cfg;
    cfg.n_tasks = 1 + uniform_int(rng, 20);
    cfg.n_uavs = cfg.n_tasks + uniform_int(rng, 21 - cfg.n_tasks);
    cfg.r = uniform_real(rng, 0.004, 0.01);
    cfg.seed = rng();
    const Scenario s = generate(cfg);
    REQUIRE_NOTHROW(validate(s));
    for (const TaskSpec& t : s.tasks) {
      const double lb = threshold_lower_bound(t.value, t.workload, t.max_capacity, t.alpha);
      REQUIRE(t.threshold >= std::max(lb, kThresholdFloorFraction * t.max_capacity));
      REQUIRE(t.threshold < t.max_capacity);
      // Ratio parameters hold exactly, not just approximately.
      REQUIRE(t.alpha == cfg.r * t.value);
      const double xi = t.workload / t.value;
      REQUIRE(xi >= cfg.xi_range[0] - 1e-12);
      REQUIRE(xi <= cfg.xi_range[1] + 1e-12);
      REQUIRE(t.value >= cfg.value_range[0]);
      REQUIRE(t.value <= cfg.value_range[1]);
    }
  }
}

TEST_CASE("efficiencies center on the per-UAV threshold share") {
  // Across many seeds the draws must average to the documented center
  // beta * M / N within 1% relative error.
  double ratio_sum = 0.0;
  long draws = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.n_uavs = 20;
    cfg.n_tasks = 5;
    cfg.seed = seed;
    const Scenario s = generate(cfg);
    for (const UavSpec& u : s.uavs) {
      for (int i = 0; i < s.num_tasks(); ++i) {
        const double center = s.tasks[i].threshold * s.num_tasks() / s.num_uavs();
        ratio_sum += u.efficiency[i] / center;
        ++draws;
      }
    }
  }
  REQUIRE(draws >= 100000);
  CHECK_THAT(ratio_sum / draws, WithinAbs(1.0, 0.01));
}

TEST_CASE("config validation") {
  GenConfig cfg;
  SECTION("too many tasks") {
    cfg.n_tasks = 11;
    cfg.n_uavs = 10;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  }
  SECTION("bad ratio") {
    cfg.r = 0.0;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  }
  SECTION("inverted range") {
    cfg.value_range = {10.0, 5.0};
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  }
  SECTION("spread bounds") {
    cfg.efficiency_spread = 1.0;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  }
}
