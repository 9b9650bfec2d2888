#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "isbst/analysis/rank_tests.hpp"
#include "isbst/core/errors.hpp"
#include "isbst/core/rng.hpp"

using namespace isbst;
using namespace isbst::analysis;
using Catch::Approx;

namespace {

double u_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  }
  return u;
}

// Enumerates every way of choosing which n of the n + m ranks belong to the
// first sample and counts how many give a U at least as extreme.
double brute_force_p(std::size_t n, std::size_t m, double u) {
  const double centre = n * m / 2.0;
  const double dev = std::abs(u - centre);
  std::size_t extreme = 0, total = 0;
  const std::size_t bits = n + m;
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    std::vector<double> a, b;
    for (std::size_t r = 0; r < bits; ++r) ((mask >> r) & 1u ? a : b).push_back(static_cast<double>(r));
    ++total;
    if (std::abs(u_statistic(a, b) - centre) >= dev - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

std::vector<double> distinct_sample(Rng& rng, std::size_t n) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.uniform(0.0, 1.0));
  return v;
}

}  // namespace

TEST_CASE("fully separated samples of three", "[stats]") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const auto r = mann_whitney_u(a, b);
  CHECK(r.u == 0.0);
  CHECK(r.exact);
  CHECK(r.p_value == Approx(0.1).margin(1e-12));
  const auto e = vargha_delaney_a(a, b);
  CHECK(e.a == 0.0);
  CHECK(e.magnitude == EffectMagnitude::Large);
  CHECK(mann_whitney_u(b, a).u == 9.0);
}

TEST_CASE("exact p matches enumeration of all rank arrangements", "[stats][oracle]") {
  Rng rng(1);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (std::size_t m = 1; m <= 7; ++m) {
      for (int trial = 0; trial < 4; ++trial) {
        const auto a = distinct_sample(rng, n);
        const auto b = distinct_sample(rng, m);
        const auto r = mann_whitney_u_exact(a, b);
        REQUIRE(r.u == u_statistic(a, b));
        REQUIRE(r.p_value == Approx(std::min(1.0, brute_force_p(n, m, r.u))).margin(1e-12));
      }
    }
  }
}

TEST_CASE("normal approximation tracks the exact p for moderate samples", "[stats]") {
  Rng rng(2);
  for (std::size_t n = 8; n <= 12; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = distinct_sample(rng, n);
      auto b = distinct_sample(rng, n);
      for (auto& v : b) v += 0.3 * rng.uniform01();
      REQUIRE(std::abs(mann_whitney_u_normal(a, b).p_value - mann_whitney_u_exact(a, b).p_value) < 0.02);
    }
  }
}

TEST_CASE("method selection", "[stats]") {
  Rng rng(3);
  const auto small_a = distinct_sample(rng, 12), small_b = distinct_sample(rng, 12);
  CHECK(mann_whitney_u(small_a, small_b).exact);
  const auto big = distinct_sample(rng, 13);
  CHECK_FALSE(mann_whitney_u(small_a, big).exact);
  const std::vector<double> tied_a{1, 2, 2}, tied_b{2, 3, 4};
  CHECK_FALSE(mann_whitney_u(tied_a, tied_b).exact);
  CHECK_THROWS_AS(mann_whitney_u_exact(tied_a, tied_b), ValidationError);
  const std::vector<double> empty;
  CHECK_THROWS_AS(mann_whitney_u(empty, tied_b), ValidationError);
  CHECK_THROWS_AS(vargha_delaney_a(tied_a, empty), ValidationError);
}

TEST_CASE("identical constant samples give p = 1", "[stats]") {
  const std::vector<double> a(50, 3.0);
  const auto r = mann_whitney_u(a, a);
  CHECK(r.p_value == 1.0);
  CHECK(r.u == 1250.0);
}

TEST_CASE("large samples with a clear shift are significant", "[stats]") {
  Rng rng(4);
  std::vector<double> a, b;
  for (int i = 0; i < 100; ++i) {
    a.push_back(rng.uniform01());
    b.push_back(rng.uniform01() + 0.5);
  }
  const auto r = mann_whitney_u(a, b);
  CHECK(r.p_value < 1e-10);
  CHECK(vargha_delaney_a(a, b).a < 0.2);
}

TEST_CASE("Vargha-Delaney properties", "[stats][property]") {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> a, b;
    const std::size_t n = 1 + rng.index(30), m = 1 + rng.index(30);
    for (std::size_t i = 0; i < n; ++i) a.push_back(static_cast<double>(rng.index(10)));
    for (std::size_t i = 0; i < m; ++i) b.push_back(static_cast<double>(rng.index(10)));
    const double ab = vargha_delaney_a(a, b).a;
    REQUIRE(vargha_delaney_a(a, a).a == 0.5);
    REQUIRE(ab + vargha_delaney_a(b, a).a == Approx(1.0).margin(1e-12));
    REQUIRE(ab == Approx(u_statistic(a, b) / (n * m)).margin(1e-12));
    REQUIRE(mann_whitney_u(a, b).u == u_statistic(a, b));

    // Ranks, and so U, p and A, are unchanged by a strictly increasing map.
    std::vector<double> ta, tb;
    for (double v : a) ta.push_back(std::exp(v) * 3.0 - 7.0);
    for (double v : b) tb.push_back(std::exp(v) * 3.0 - 7.0);
    REQUIRE(vargha_delaney_a(ta, tb).a == ab);
    REQUIRE(mann_whitney_u(ta, tb).p_value == Approx(mann_whitney_u(a, b).p_value).margin(1e-12));
    const double p = mann_whitney_u(a, b).p_value;
    REQUIRE(p >= 0.0);
    REQUIRE(p <= 1.0);
  }
}

TEST_CASE("effect magnitude thresholds", "[stats]") {
  CHECK(effect_magnitude(0.673) == EffectMagnitude::Medium);
  CHECK(effect_magnitude(0.217) == EffectMagnitude::Large);
  CHECK(effect_magnitude(0.603) == EffectMagnitude::Small);
  CHECK(effect_magnitude(0.5) == EffectMagnitude::Negligible);
  CHECK(effect_magnitude(0.55) == EffectMagnitude::Negligible);
  CHECK(effect_magnitude(0.44) == EffectMagnitude::Small);
  CHECK(effect_magnitude(0.64) == EffectMagnitude::Medium);
  CHECK(effect_magnitude(0.71) == EffectMagnitude::Large);
  CHECK(to_string(EffectMagnitude::Medium) == "medium");
}
