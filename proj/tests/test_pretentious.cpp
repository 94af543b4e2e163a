#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "charlab/pretentious.hpp"

using namespace charlab;

namespace {

DirichletCharacter quad(u64 p) {
  return enumerate_characters(p, {.order = 2, .parity = {}, .primitive_only = true}).at(0);
}

}  // namespace

TEST_CASE("distance examples") {
  MultiplicativeModel one = MultiplicativeModel::one(100);
  CHECK(distance(one, one, 100) == 0.0);

  // distance(chi, chi; 10) for chi mod 3: only p = 3 contributes 1/3
  MultiplicativeModel m3 = MultiplicativeModel::from_character(quad(3), 10);
  CHECK(distance(m3, m3, 10) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // distance(1, Legendre mod 3; 5) = 1 + 1/3 + 2/5 = 26/15
  MultiplicativeModel one5 = MultiplicativeModel::one(5);
  MultiplicativeModel leg3 = MultiplicativeModel::from_character(quad(3), 5);
  CHECK(distance(one5, leg3, 5) == doctest::Approx(26.0 / 15.0).epsilon(1e-14));

  // symmetry
  CHECK(distance(leg3, one5, 5) == distance(one5, leg3, 5));

  // restricted distance drops p | exclude_r
  CHECK(distance(one5, leg3, 5, 6) == doctest::Approx(2.0 / 5.0).epsilon(1e-14));

  CHECK_THROWS_AS(distance(one5, leg3, 50), DomainError);
}

TEST_CASE("min distance over t") {
  MultiplicativeModel one = MultiplicativeModel::one(10'000);
  DistanceReport r1 = min_distance_over_t(one, 10'000, 1.0);
  CHECK(r1.t_star == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(r1.d_min_squared <= 1e-12);
  CHECK(r1.eta > 0);
  CHECK(r1.eta < 1);

  MultiplicativeModel tw = MultiplicativeModel::twisted(0.3, 10'000);
  DistanceReport r2 = min_distance_over_t(tw, 10'000, 1.0);
  CHECK(std::abs(r2.t_star - 0.3) <= 1e-3);
  CHECK(r2.d_min_squared <= 1e-4);
  CHECK(r2.d_min_squared <= r2.d0_squared);

  // T = 0 degenerates to the t = 0 distance
  MultiplicativeModel leg3 = MultiplicativeModel::from_character(quad(3), 10'000);
  MultiplicativeModel one2 = MultiplicativeModel::one(10'000);
  DistanceReport r3 = min_distance_over_t(leg3, 10'000, 0.0);
  CHECK(r3.d_min_squared == doctest::Approx(distance(leg3, one2, 10'000)).epsilon(1e-12));
  CHECK(r3.t_star == 0.0);
}

TEST_CASE("hmt bound") {
  MultiplicativeModel one = MultiplicativeModel::one(10'000);
  HmtResult r = hmt_bound(one, 10'000, 25.0);
  CHECK(r.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.bound == doctest::Approx(1.0 / 5.0).epsilon(1e-9));
  CHECK(r.ratio == doctest::Approx(5.0).epsilon(1e-6));  // ratio = sqrt(T) for trivial f

  MultiplicativeModel leg3 = MultiplicativeModel::from_character(quad(3), 100'000);
  HmtResult r2 = hmt_bound(leg3, 100'000, std::pow(std::log(1e5), 2));
  CHECK(r2.mean < 1e-3);  // huge cancellation in the character mean
  CHECK(r2.ratio >= 0);

  CHECK_THROWS_AS(hmt_bound(one, 20'000'000, 4.0), ResourceError);
}

TEST_CASE("equiv gap") {
  MultiplicativeModel one = MultiplicativeModel::one(10'000);
  EquivGap g = equiv_gap(one, 10'000, 10.0, 2);
  CHECK(g.lhs == doctest::Approx(0.0));
  CHECK(g.rhs_core == doctest::Approx(0.0));
  CHECK(g.gap == doctest::Approx(0.0));

  // character zeros are mapped to 1, so a quadratic character passes k = 2
  MultiplicativeModel leg7 = MultiplicativeModel::from_character(quad(7), 10'000);
  EquivGap g2 = equiv_gap(leg7, 10'000, 10.0, 2);
  CHECK(std::isfinite(g2.gap));

  // order violation: e(1/3) is not a square root of unity
  MultiplicativeModel cbrt = MultiplicativeModel::constant_root(UnitValue::root(1, 3), 1000);
  CHECK_THROWS_AS(equiv_gap(cbrt, 1000, 1.0, 2), DomainError);
  CHECK_NOTHROW(equiv_gap(cbrt, 1000, 1.0, 3));
  CHECK_NOTHROW(equiv_gap(cbrt, 1000, 1.0, 6));  // k multiple of the order is fine
}

TEST_CASE("orders report and twist scan") {
  DirichletCharacter chi = quad(101);
  DirichletCharacter odd4 = DirichletCharacter::from_exponents(4, {1});
  OrdersReport rep = orders_report(chi, odd4, 1.0);
  CHECK(rep.q == 101);
  CHECK(rep.g == 2);
  CHECK(rep.k_divides_g);
  // conductors <= log 101 ~ 4.6: only m = 3, 4 qualify
  CHECK(rep.scanned.size() == 2);
  CHECK(rep.count_below <= 1);
  CHECK(!rep.conductor_warning);
  CHECK(rep.nearest.has_value());

  // self-twist: chi induced from a small conductor sits close to its core
  DirichletCharacter big = quad(3).induced_to(3 * 9973);
  auto scan = twist_scan(big, 1.0);
  REQUIRE(!scan.empty());
  double best = 1e300;
  u64 best_cond = 0;
  for (const auto& e : scan) {
    if (e.dist < best) {
      best = e.dist;
      best_cond = e.conductor;
    }
  }
  CHECK(best_cond == 3);  // nearest twist is its own primitive part
  int below = 0;
  for (const auto& e : scan) below += e.below;
  CHECK(below <= 1);
}

TEST_CASE("triangle inequality, sampled") {
  std::vector<MultiplicativeModel> models;
  for (u64 q : {3, 4, 5, 7, 8, 9, 11, 12, 13})
    for (const auto& chi : enumerate_characters(q, {.order = {}, .parity = {}, .primitive_only = true}))
      if (!chi.is_principal()) models.push_back(MultiplicativeModel::from_character(chi, 10'000));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto& a = models[rng() % models.size()];
    const auto& b = models[rng() % models.size()];
    const auto& c = models[rng() % models.size()];
    double lhs = std::sqrt(distance(a, c, 10'000));
    double rhs = std::sqrt(distance(a, b, 10'000)) + std::sqrt(distance(b, c, 10'000));
    REQUIRE(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("model extension is completely multiplicative") {
  MultiplicativeModel leg5 = MultiplicativeModel::from_character(quad(5), 1000);
  std::vector<cplx> f = leg5.extend_to(1000);
  DirichletCharacter chi = quad(5);
  for (u64 n = 1; n <= 1000; ++n)
    REQUIRE(std::abs(f[n] - chi.eval_c((i64)n)) < 1e-12);
}
