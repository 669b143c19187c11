#include <catch2/catch_amalgamated.hpp>

#include "wangkit/entropy.hpp"

using namespace wangkit;

namespace {

RedBlueParams toy(int n) {
  RedBlueParams p;
  p.schedule = ZoomSchedule::constant(n);
  return p;
}

}  // namespace

TEST_CASE("density recursion on the N=3 toy") {
  RedBlueParams p = toy(3);
  auto traj = density_trajectory(p, 3);
  CHECK(traj[0].red == Rat(1));
  CHECK(traj[0].blue == Rat(0));
  CHECK(traj[1].red == Rat(8, 9));
  CHECK(traj[1].blue == Rat(1, 9));
  CHECK(traj[2].red == Rat(65, 81));
  SECTION("closed form nu_R(k) = 1/2 + (7/9)^k / 2") {
    Rat seven_ninth(7, 9);
    Rat pw(1);
    for (int k = 0; k <= 3; ++k) {
      CHECK(traj[std::size_t(k)].red == Rat(1, 2) + pw / 2);
      pw *= seven_ninth;
    }
  }
  SECTION("symmetric corners conserve nu_R + nu_B = 1") {
    for (const auto& d : traj) CHECK(d.red + d.blue == Rat(1));
  }
}

TEST_CASE("invalid corner parameters are rejected") {
  RedBlueParams p = toy(3);
  p.alpha = [](int) { return BigInt(0); };
  CHECK_THROWS_AS(density_recursion(p, 1), InputError);
  RedBlueParams q = toy(3);
  q.beta = [](int) { return BigInt(2); };  // alpha+beta = 3 = N
  CHECK_THROWS_AS(density_recursion(q, 1), InputError);
}

TEST_CASE("expansion oracle equals the recursion exactly") {
  for (int n : {3, 5}) {
    RedBlueParams p = toy(n);
    for (int k = 1; k <= 3; ++k) {
      auto d = density_recursion(p, k);
      ColorMap red = expand_colors(p, k, true);
      ColorMap blue = expand_colors(p, k, false);
      long long cells = (long long)(red.side) * red.side;
      INFO("N=" << n << " k=" << k);
      CHECK(Rat(red.count_red(), cells) == d.red);
      CHECK(Rat(blue.count_red(), cells) == d.blue);
    }
  }
  SECTION("frozen example: 8 of 9 red at k=1, 65 of 81 at k=2") {
    RedBlueParams p = toy(3);
    CHECK(expand_colors(p, 1, true).count_red() == 8);
    CHECK(expand_colors(p, 2, true).count_red() == 65);
  }
}

TEST_CASE("blue maps are the color-swapped mirror of red maps") {
  RedBlueParams p = toy(3);
  for (int k = 1; k <= 3; ++k) {
    ColorMap red = expand_colors(p, k, true);
    ColorMap blue = expand_colors(p, k, false);
    long s = red.side;
    bool dual = true;
    for (long y = 0; y < s && dual; ++y)
      for (long x = 0; x < s && dual; ++x)
        if (blue.at(x, y) != 1 - red.at(s - 1 - x, s - 1 - y)) dual = false;
    CHECK(dual);
  }
}

TEST_CASE("expansion refuses slotted or oversized schedules") {
  RedBlueParams p = toy(3);
  p.slot_fraction = [](int) { return Rat(1, 10); };
  CHECK_THROWS_AS(expand_colors(p, 1, true), InputError);
  RedBlueParams q = toy(5);
  CHECK_THROWS_AS(expand_colors(q, 7, true), SizingError);
}

TEST_CASE("slot overhead enters the recursion as a correction") {
  RedBlueParams p = toy(10);
  p.slot_fraction = [](int) { return Rat(1, 5); };
  auto d = density_recursion(p, 1);
  // by hand: red tile has 100 cells, 1 blue corner, 20 slot cells of
  // which 10 are pinned blue: red fraction (100-1-10)/100
  CHECK(d.red == Rat(89, 100));
  CHECK(d.blue == Rat(1 + 10, 100));
}

TEST_CASE("beta scheduler") {
  SECTION("constant h = 1/2 on the N=10 toy: monotone settling") {
    auto res = beta_schedule(constant_enumerator(Rat(1, 2)),
                             ZoomSchedule::constant(10), 200);
    // contraction prediction: reach < 0.01 when 0.98^k/2 < 0.01
    int predicted = 0;
    double err = 0.5;
    while (err >= 0.01) {
      err *= 0.98;
      ++predicted;
    }
    REQUIRE(predicted <= 200);
    Rat prev_err(1);
    bool reached = false;
    for (const auto& step : res.steps) {
      Rat e = step.nu_red - Rat(1, 2);
      if (e < 0) e = -e;
      CHECK(e <= prev_err);  // non-increasing after the first adjustment
      prev_err = e;
      if (step.level == predicted) reached = e < Rat(1, 100);
    }
    CHECK(reached);
  }
  SECTION("a stream 1, 7/8, 6/8, ... is chased monotonically") {
    RERealEnumerator stream = [](int k) {
      Rat v = Rat(8 - (k - 1), 8);
      return v < Rat(1, 2) ? Rat(1, 2) : v;
    };
    auto res = beta_schedule(stream, ZoomSchedule::constant(40), 60);
    Rat prev(1);
    for (const auto& step : res.steps) {
      CHECK(step.nu_red <= prev);  // the trajectory descends with the stream
      prev = step.nu_red;
      CHECK(step.beta >= 1);
      CHECK(step.beta <= BigInt(4));
    }
  }
  SECTION("h = 0 drives beta to the maximum and nu_R down") {
    auto res = beta_schedule(constant_enumerator(Rat(0)),
                             ZoomSchedule::constant(40), 30);
    Rat prev(1);
    for (const auto& step : res.steps) {
      CHECK(step.beta == BigInt(4));  // N/10
      CHECK(step.nu_red < prev);
      prev = step.nu_red;
    }
  }
  SECTION("the paper schedule stays within the beta range") {
    auto res = beta_schedule(constant_enumerator(Rat(3, 4)),
                             ZoomSchedule::paper(2), 4);
    for (const auto& step : res.steps) {
      BigInt n = ZoomSchedule::paper(2).N(step.level);
      CHECK(step.beta >= 1);
      BigInt cap = n / 10; if (cap < 1) cap = 1;
      CHECK(step.beta <= cap);
      CHECK(step.approx == Rat(3, 4));
    }
  }
}

TEST_CASE("doubled entropy") {
  CHECK(doubled_entropy(Rat(0)).contribution == Rat(0));
  CHECK(doubled_entropy(Rat(1)).contribution == Rat(1));
  CHECK(doubled_entropy(Rat(1, 2)).contribution == Rat(1, 2));
  CHECK_THROWS_AS(doubled_entropy(Rat(3, 2)), InputError);

  SECTION("pattern count over the doubled map matches the density") {
    RedBlueParams p = toy(3);
    auto d = density_recursion(p, 2);
    ColorMap map = expand_colors(p, 2, true);
    // 2 choices per red cell: log2(count) = #red; per-cell rate = density
    long long cells = (long long)(map.side) * map.side;
    double rate = double(map.count_red()) / double(cells);
    CHECK(std::abs(rate - double(d.red)) <= 0.05);
  }
  SECTION("the boundary bound decreases monotonically") {
    RedBlueParams p = toy(3);
    double prev = 1e9;
    for (int k = 1; k <= 4; ++k) {
      double b = doubled_boundary_bound(p, k);
      CHECK(b < prev);
      prev = b;
    }
  }
}
