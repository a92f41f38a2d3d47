#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cost.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "random_models.hpp"

using namespace valveuc;

namespace {

UnitParams unit(double a, double b, double c, double e, double f, double pmin, double pmax) {
  UnitParams u;
  u.id = "u";
  u.a = a;
  u.b = b;
  u.c = c;
  u.e = e;
  u.f = f;
  u.p_min = pmin;
  u.p_max = pmax;
  return u;
}

// Units whose chords between valve points stay under the cost: c <= e f^2 / pi
// and a whole number of valve intervals (a truncated last interval needs a
// smaller c).
UnitParams random_chord_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0, 1);
  const double e = 20 + 400 * U(rng);
  const double f = 0.02 + 0.1 * U(rng);
  const double pmin = 200 * U(rng);
  const int intervals = 1 + static_cast<int>(rng() % 6);
  return unit(100 + 900 * U(rng), 5 + 20 * U(rng), U(rng) * e * f * f / std::numbers::pi, e, f,
              pmin, pmin + intervals * std::numbers::pi / f);
}

}  // namespace

TEST_CASE("cost: value at pmin has no valve term") {
  auto u = unit(100, 2, 0.001, 10, 0.2, 50, 200);
  CHECK(fuel_cost(u, 50) == doctest::Approx(100 + 2 * 50 + 0.001 * 2500).epsilon(1e-15));
}

TEST_CASE("cost: zero amplitude is quadratic") {
  auto u = unit(7, 3, 0.5, 0, 0.3, 0, 10);
  for (double p : {0.0, 1.5, 4.0, 10.0}) CHECK(fuel_cost(u, p) == 7 + 3 * p + 0.5 * p * p);
}

TEST_CASE("cost: matches extended precision evaluation") {
  auto u = unit(100, 2, 0.001, 10, 0.2, 50, 200);
  const long double ref = oracle::fuel_cost_ld(u, 60);
  CHECK(std::abs(fuel_cost(u, 60) - static_cast<double>(ref)) <= 1e-9 * std::abs(static_cast<double>(ref)));
  // Frozen from a 40-digit mpmath evaluation.
  CHECK(fuel_cost(u, 60) == doctest::Approx(232.69297426825682).epsilon(1e-12));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto v = random_chord_unit(rng);
    const double p = std::uniform_real_distribution<double>(v.p_min, v.p_max)(rng);
    const double ref2 = static_cast<double>(oracle::fuel_cost_ld(v, p));
    CHECK(std::abs(fuel_cost(v, p) - ref2) <= 1e-9 * std::abs(ref2));
  }
}

TEST_CASE("cost: domain errors") {
  auto u = unit(100, 2, 0.001, 10, 0.2, 50, 200);
  CHECK_THROWS_AS(fuel_cost(u, 49.9), DomainError);
  CHECK_THROWS_AS(fuel_cost(u, 200.1), DomainError);
  CHECK_NOTHROW(fuel_cost(u, 200));
}

TEST_CASE("cost: valve points") {
  auto u = unit(0, 0, 0, 1, std::numbers::pi / 50, 50, 200);
  auto v = valve_points(u);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == 50);
  CHECK(v[1] == doctest::Approx(100));
  CHECK(v[2] == doctest::Approx(150));
  CHECK(v[3] == 200);

  u.e = 0;
  CHECK(valve_points(u) == std::vector<double>{50, 200});
  u = unit(0, 0, 0, 1, 0, 50, 200);
  CHECK(valve_points(u) == std::vector<double>{50, 200});

  u = unit(0, 0, 0, 1, 1, 0, 10);
  v = valve_points(u);
  REQUIRE(v.size() == 5);
  CHECK(v[1] == doctest::Approx(std::numbers::pi));
  CHECK(v[2] == doctest::Approx(2 * std::numbers::pi));
  CHECK(v[3] == doctest::Approx(3 * std::numbers::pi));
  CHECK(v[4] == 10);
}

TEST_CASE("cost: valve spacing is pi/f") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto u = random_chord_unit(rng);
    auto v = valve_points(u);
    for (std::size_t k = 1; k + 1 < v.size(); ++k)
      CHECK(v[k] - v[k - 1] == doctest::Approx(std::numbers::pi / u.f).epsilon(1e-12));
    CHECK(v.back() - v[v.size() - 2] <= std::numbers::pi / u.f * (1 + 1e-12));
    for (std::size_t k = 1; k < v.size(); ++k) CHECK(v[k] > v[k - 1]);
  }
}

TEST_CASE("cost: initial breakpoints") {
  auto u = unit(10, 1, 0.0001, 5, std::numbers::pi / 50, 0, 100);
  auto b = initial_breakpoints(u);
  REQUIRE(b.size() == 3);
  for (const auto& pt : b.points()) {
    CHECK(pt.is_valve);
    CHECK(pt.y == fuel_cost(u, pt.x));
  }
  for (std::size_t j = 0; j < b.interval_count(); ++j) CHECK(b.segments_in_interval(j) == 0);

  u.e = 0;
  u.c = -0.001;
  b = initial_breakpoints(u);
  REQUIRE(b.size() == 2);
  CHECK(b.points()[0].x == 0);
  CHECK(b.points()[1].x == 100);

  u.c = 1;
  CHECK_THROWS_AS(initial_breakpoints(u), InvalidInstance);
}

TEST_CASE("cost: refinement") {
  auto u = unit(10, 1, 0.0001, 5, std::numbers::pi / 50, 50, 150);
  auto b = initial_breakpoints(u);
  auto r = refine_breakpoints(b, 60, 2);
  REQUIRE(r.size() == 4);
  CHECK(r.points()[1].x == doctest::Approx(75));
  CHECK_FALSE(r.points()[1].is_valve);
  CHECK(r.points()[1].y == fuel_cost(u, r.points()[1].x));
  CHECK(r.segments_in_interval(0) == 2);
  CHECK(r.segments_in_interval(1) == 0);

  auto same = refine_breakpoints(b, 60, 1);
  CHECK(same.size() == b.size());

  // Doubling keeps the old midpoint and adds the quarter points.
  auto r4 = refine_breakpoints(r, 60, 4);
  CHECK(r4.size() == 6);
  for (const auto& p : r.points()) {
    bool kept = false;
    for (const auto& q : r4.points()) kept |= q.x == p.x;
    CHECK(kept);
  }
}

TEST_CASE("cost: envelope interpolation") {
  auto u = unit(0, 1, 0, 0, 0, 0, 10);
  auto b = initial_breakpoints(u);
  CHECK(envelope_value(b, 4) == doctest::Approx(4));
  CHECK_THROWS_AS(envelope_value(b, -1), DomainError);
  CHECK_THROWS_AS(envelope_value(b, 10.5), DomainError);

  std::mt19937_64 rng(5);
  auto v = random_chord_unit(rng);
  auto bb = refine_breakpoints(initial_breakpoints(v), 0.5 * (v.p_min + v.p_max), 4);
  for (const auto& pt : bb.points()) {
    CHECK(envelope_value(bb, pt.x) == pt.y);
    CHECK(pt.y == fuel_cost(v, pt.x));
  }
}

TEST_CASE("cost: coarse test and tie rule") {
  auto u = unit(10, 1, 0.0001, 5, std::numbers::pi / 50, 50, 150);
  auto b = initial_breakpoints(u);
  CHECK(coarse_in_solution(b, 70, 2));
  auto r = refine_breakpoints(b, 70, 2);
  CHECK_FALSE(coarse_in_solution(r, 70, 2));
  CHECK(coarse_in_solution(r, 70, 4));
  CHECK(coarse_in_solution(r, 120, 2));

  // A valve point belongs to the interval on its right, pmax to the last one.
  CHECK(b.interval_of(100) == 1);
  CHECK(b.interval_of(50) == 0);
  CHECK(b.interval_of(150) == 1);
  auto at_valve = refine_breakpoints(b, 100, 2);
  CHECK(at_valve.segments_in_interval(1) == 2);
  CHECK(at_valve.segments_in_interval(0) == 0);
  auto at_max = refine_breakpoints(b, 150, 2);
  CHECK(at_max.segments_in_interval(1) == 2);
}

// Width of the envelope segment holding p.
static double segment_width(const BreakpointSet& b, double p) {
  const auto& pts = b.points();
  auto it = std::upper_bound(pts.begin(), pts.end(), p,
                             [](double v, const Breakpoint& q) { return v < q.x; });
  if (it == pts.end()) --it;
  if (it == pts.begin()) ++it;
  return it->x - std::prev(it)->x;
}

TEST_CASE("cost: chords between valve points stay under the cost") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 300; ++i) {
    auto u = random_chord_unit(rng);
    auto b = initial_breakpoints(u);
    for (int s = 0; s < 2000; ++s) {
      const double p = std::min(u.p_max, u.p_min + (u.p_max - u.p_min) * s / 1999.0);
      const double F = fuel_cost(u, p);
      CHECK(envelope_value(b, p) <= F + 1e-9 * std::abs(F));
    }
  }
}

TEST_CASE("cost: refined envelopes are exact lower bounds without curvature") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    auto u = random_chord_unit(rng);
    u.c = -u.c;
    std::uniform_real_distribution<double> P(u.p_min, u.p_max);
    auto b = initial_breakpoints(u);
    for (int step = 0; step < 6; ++step) {
      auto next = refine_breakpoints(b, P(rng), 2 << (step % 3));
      for (int s = 0; s < 500; ++s) {
        const double p = P(rng);
        const double F = fuel_cost(u, p), old_env = envelope_value(b, p), env = envelope_value(next, p);
        CHECK(env <= F + 1e-9 * std::abs(F));
        CHECK(env >= old_env - 1e-9 * std::abs(old_env));
      }
      b = next;
    }
  }
}

TEST_CASE("cost: refined envelopes overshoot by at most c w^2 / 4") {
  // The valve term is concave on each interval, so only the quadratic's
  // chord gap c (p - x0)(x1 - p) can lift a sub-chord above the cost.
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    auto u = gen::accepted_unit(rng, "u");
    std::uniform_real_distribution<double> P(u.p_min, u.p_max);
    auto b = initial_breakpoints(u);
    for (int step = 0; step < 6; ++step) {
      auto next = refine_breakpoints(b, P(rng), 2 << (step % 3));
      CHECK(next.size() >= b.size());
      for (int s = 0; s < 500; ++s) {
        const double p = P(rng);
        const double F = fuel_cost(u, p);
        const double w = segment_width(next, p), w_old = segment_width(b, p);
        CHECK(envelope_value(next, p) <= F + u.c * w * w / 4 + 1e-9 * std::abs(F));
        CHECK(envelope_value(next, p) >=
              envelope_value(b, p) - u.c * w_old * w_old / 4 - 1e-9 * std::abs(F));
      }
      b = next;
    }
  }
}

TEST_CASE("cost: breakpoint csv") {
  auto u = unit(0, 1, 0, 0, 0, 0, 10);
  auto csv = breakpoints_csv(initial_breakpoints(u));
  CHECK(csv.rfind("x,y,is_valve\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
