#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "charlab/sums.hpp"

using namespace charlab;

namespace {

DirichletCharacter quad(u64 p) {
  return enumerate_characters(p, {.order = 2, .parity = {}, .primitive_only = true}).at(0);
}

}  // namespace

TEST_CASE("build_series prefixes: Legendre mod 3 and mod 7") {
  SumSeries s3 = build_series(quad(3), 3);
  CHECK(std::abs(s3.cesaro_at(1) - cplx{1, 0}) < 1e-15);
  CHECK(std::abs(s3.cesaro_at(2)) < 1e-15);
  CHECK(std::abs(s3.cesaro_at(3)) < 1e-15);
  CHECK(s3.pv_max == doctest::Approx(1.0));
  CHECK(s3.pv_argmax == 1);

  SumSeries s7 = build_series(quad(7), 7);
  double want[] = {0, 1, 2, 1, 2, 1, 0, 0};
  for (u64 t = 1; t <= 7; ++t) CHECK(std::abs(s7.cesaro_at(t) - cplx{want[t], 0}) < 1e-14);
  CHECK(s7.pv_max == doctest::Approx(2.0));
  CHECK(s7.pv_argmax == 2);  // tie with t = 4 resolves to the smaller index
}

TEST_CASE("full-period orthogonality: S(q) = 0 for non-principal chi") {
  for (u64 q : {5, 12, 36, 101}) {
    for (const auto& chi : enumerate_characters(q)) {
      if (chi.is_principal()) continue;
      SumSeries s = build_series(chi, q);
      CHECK(std::abs(s.cesaro_at(q)) < 1e-11);
    }
  }
}

TEST_CASE("exact path: periodicity S(t + q) = S(t), T = 3q") {
  for (u64 q = 3; q <= 30; ++q) {
    for (const auto& chi : enumerate_characters(q)) {
      if (chi.is_principal()) continue;
      auto pre = exact_prefix_sums(chi, 3 * q);
      for (u64 t = 1; t <= 2 * q; ++t) REQUIRE(pre[t + q] == pre[t]);
      CHECK(pre[q].is_zero());
    }
  }
}

TEST_CASE("gauss sums: pinned values and modulus law") {
  CHECK(std::abs(gauss_sum(DirichletCharacter::from_exponents(4, {1})) - cplx{0, 2}) < 1e-14);
  CHECK(std::abs(gauss_sum(quad(5)) - std::sqrt(5.0)) < 1e-14);
  CHECK(std::abs(gauss_sum(DirichletCharacter::principal(4))) < 1e-14);

  for (u64 q = 3; q <= 60; ++q) {
    for (const auto& chi : enumerate_characters(q, {.order = {}, .parity = {}, .primitive_only = true})) {
      double rel = std::abs(std::norm(gauss_sum(chi)) - (double)q) / (double)q;
      REQUIRE(rel < 1e-6);
    }
  }
}

TEST_CASE("polya expansion error stays under 10 log q") {
  for (u64 q = 3; q <= 60; ++q) {
    for (const auto& chi : enumerate_characters(q, {.order = {}, .parity = {}, .primitive_only = true})) {
      PolyaError e = polya_expansion_error(chi);
      REQUIRE(e.sup_error <= 10.0 * std::log((double)q));
    }
  }
  CHECK_THROWS_AS(polya_expansion_error(DirichletCharacter::principal(4)), DomainError);
  CHECK_THROWS_AS(polya_expansion_error(quad(3).induced_to(9)), DomainError);
}

TEST_CASE("twisted log sums") {
  DirichletCharacter leg3 = quad(3);
  // frozen oracle: 1 - 1/2 + 1/4 - 1/5 + 1/7 - 1/8 + 1/10 = 187/280
  cplx one_sided = twisted_log_sum(leg3, 0.0, 10, false);
  CHECK(std::abs(one_sided - cplx{187.0 / 280.0, 0}) < 1e-15);

  // odd chi: two-sided doubles the one-sided sum at alpha = 0
  cplx two_sided = twisted_log_sum(leg3, 0.0, 10, true);
  CHECK(std::abs(two_sided - 2.0 * one_sided) < 1e-15);

  // even chi: two-sided vanishes at alpha = 0
  DirichletCharacter leg5 = quad(5);
  CHECK(std::abs(twisted_log_sum(leg5, 0.0, 500, true)) < 1e-15);

  // rational path agrees with the generic path
  for (u64 b : {1, 3}) {
    cplx a = twisted_log_sum(leg3, (double)b / 7.0, 100, true);
    cplx r = twisted_log_sum_rational(leg3, b, 7, 100, true);
    CHECK(std::abs(a - r) < 1e-10);
  }
}

TEST_CASE("gs identity examples") {
  DirichletCharacter trivial;  // mod 1
  DirichletCharacter leg3 = quad(3), leg5 = quad(5);
  DirichletCharacter odd4 = DirichletCharacter::from_exponents(4, {1});

  // r = 1 collapses to the two-sided log sum
  IdentityCheck c1 = gs_identity_check(leg3, trivial, 0, 1, 200);
  CHECK(std::abs(c1.lhs - twisted_log_sum(leg3, 0.0, 200, true)) < 1e-14);
  CHECK(c1.abs_diff < 1e-12);

  IdentityCheck c2 = gs_identity_check(leg3, trivial, 1, 4, 500);
  CHECK(c2.abs_diff <= 1e-8 * (1.0 + std::abs(c2.lhs)));

  IdentityCheck c3 = gs_identity_check(leg5, odd4, 2, 3, 1000);
  CHECK(c3.abs_diff <= 1e-8 * (1.0 + std::abs(c3.lhs)));

  CHECK_THROWS_AS(gs_identity_check(leg3, odd4, 2, 4, 100), DomainError);
}

TEST_CASE("orthogonality twist identity") {
  DirichletCharacter odd4 = DirichletCharacter::from_exponents(4, {1});
  DirichletCharacter odd3 = quad(3);
  DirichletCharacter even5 = quad(5);

  IdentityCheck a = orthogonality_twist_check(odd4, even5, 200);
  CHECK(a.abs_diff <= 1e-9 * (1.0 + std::abs(a.lhs)));

  IdentityCheck b = orthogonality_twist_check(odd3, even5, 1000);
  CHECK(b.abs_diff <= 1e-9 * (1.0 + std::abs(b.lhs)));

  // N = 1 reduces to the Gauss relation sum_b psi-bar(b) e(b/l) = tau(psi-bar)
  IdentityCheck n1 = orthogonality_twist_check(odd4, even5, 1);
  CHECK(n1.abs_diff <= 1e-12);

  // chi psi even is rejected
  CHECK_THROWS_AS(orthogonality_twist_check(quad(5), even5, 10), DomainError);
}

TEST_CASE("dirichlet approximation") {
  RationalApprox z = dirichlet_approx(0.0, 10, 5);
  CHECK(z.b == 0);
  CHECK(z.r == 1);
  CHECK(z.major);

  RationalApprox third = dirichlet_approx(1.0 / 3.0, 10, 5);
  CHECK(third.b == 1);
  CHECK(third.r == 3);
  CHECK(third.major);

  // sqrt(2) - 1 = [0; 2, 2, 2, ...]; with R = 100 the first convergent
  // satisfying |alpha - b/r| <= 1/(rR) is 29/70 (12/29 misses by 22%)
  RationalApprox s = dirichlet_approx(std::sqrt(2.0) - 1.0, 100, 5);
  CHECK(s.b == 29);
  CHECK(s.r == 70);
  CHECK(!s.major);
  CHECK(s.err <= 1.0 / (70.0 * 100.0));
  CHECK(s.err == doctest::Approx(7.21519e-5).epsilon(1e-3));

  // the Dirichlet property holds across a grid
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    double alpha = (double)(rng() % 1'000'000) / 1e6;
    double R = 5 + (double)(rng() % 500);
    RationalApprox ap = dirichlet_approx(alpha, R, std::max(1.0, R / 10));
    REQUIRE(ap.r >= 1);
    REQUIRE((double)ap.r <= R);
    REQUIRE(ap.err <= 1.0 / ((double)ap.r * R) + 1e-15);
  }
}

TEST_CASE("savings profile") {
  SavingsProfile p3 = savings_profile(quad(3), {0.5, 1.0});
  CHECK(p3.pv_max == doctest::Approx(1.0));
  CHECK(p3.a_q == doctest::Approx(std::sqrt(3.0) * std::log(3.0)));
  CHECK(p3.delta_eps[1] == doctest::Approx(0.0));  // eps = 1: window empty, endpoint value

  SavingsProfile p7 = savings_profile(quad(7), {0.5});
  CHECK(p7.delta_eps[0] == doctest::Approx(0.5));  // attained at t = 4
  CHECK(p7.nchi == 3);

  // delta non-increasing in eps
  SavingsProfile p = savings_profile(quad(19), {0.1, 0.25, 0.5, 0.75, 1.0});
  for (size_t i = 1; i < p.delta_eps.size(); ++i)
    CHECK(p.delta_eps[i] <= p.delta_eps[i - 1] + 1e-15);

  CHECK_THROWS_AS(savings_profile(DirichletCharacter::principal(6), {0.5}), DomainError);
}

TEST_CASE("thmgen_rhs") {
  CHECK_THROWS_AS(thmgen_rhs(2, std::exp(std::exp(1.0))), DomainError);  // boundary
  double v = thmgen_rhs(2, 1e6);
  double la = std::log(1e6);
  CHECK(v == doctest::Approx(std::pow(std::log(la) / la, 1.0 / 76.0)));
  CHECK(v > 0);
  CHECK(v < 1);

  // decreasing in a for fixed g, a >= 100
  double prev = 2;
  for (double a = 100; a <= 1e8; a *= 1.7) {
    double cur = thmgen_rhs(3, a);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("delta_g") {
  const double pi = kTwoPi / 2;
  CHECK(delta_g(3) == doctest::Approx(1.0 - 3.0 * std::sqrt(3.0) / (2.0 * pi)).epsilon(1e-12));
  CHECK(delta_g(3) == doctest::Approx(0.17303).epsilon(1e-4));
  CHECK(delta_g(5) == doctest::Approx(0.06450).epsilon(1e-3));
  // decreasing toward 0
  double prev = 1;
  for (u64 g = 3; g < 200; g += 2) {
    double d = delta_g(g);
    CHECK(d > 0);
    CHECK(d < prev);
    prev = d;
  }
  CHECK_THROWS_AS(delta_g(4), DomainError);
  CHECK_THROWS_AS(delta_g(1), DomainError);
}

TEST_CASE("series options: streaming and the dense limit") {
  DirichletCharacter chi = quad(101);
  SeriesOptions small;
  small.dense_limit = 10;  // force streaming for a 101-period series
  SumSeries s = build_series(chi, 101, small);
  CHECK(!s.dense);
  CHECK(s.pv_max > 0);
  CHECK_THROWS_AS(s.cesaro_at(5), DomainError);  // no prefix data retained

  small.allow_streaming = false;
  CHECK_THROWS_AS(build_series(chi, 101, small), ResourceError);

  // streaming maxima agree with the dense path
  SumSeries d = build_series(chi, 101);
  CHECK(s.pv_max == d.pv_max);
  CHECK(s.pv_argmax == d.pv_argmax);
  CHECK(std::abs(s.logsum - d.logsum) < 1e-15);
}

TEST_CASE("series beyond one period reconstructs by periodicity") {
  DirichletCharacter chi = quad(7);
  SumSeries s = build_series(chi, 21);
  for (u64 t = 1; t <= 7; ++t) {
    CHECK(std::abs(s.cesaro_at(t + 7) - s.cesaro_at(t)) < 1e-13);
    CHECK(std::abs(s.cesaro_at(t + 14) - s.cesaro_at(t)) < 1e-13);
  }
}

TEST_CASE("default arc thresholds") {
  auto [R, M] = default_arc_thresholds(1e6, 8.0);
  CHECK(R == doctest::Approx(std::pow(std::log(1e6), 5.0)));
  CHECK(M == doctest::Approx(4.0));
  CHECK(M <= R);
  RationalApprox ap = dirichlet_approx(0.5, R, M);
  CHECK(ap.major);  // 1/2 has r = 2 <= M
}

TEST_CASE("gauss sum phase: classical sign for quadratic characters") {
  // tau = sqrt(p) for p = 1 mod 4, i sqrt(p) for p = 3 mod 4
  for (u64 p : {5, 13, 17, 29}) {
    cplx t = gauss_sum(quad(p));
    CHECK(std::abs(t - cplx{std::sqrt((double)p), 0}) < 1e-11);
  }
  for (u64 p : {3, 7, 11, 19, 23}) {
    cplx t = gauss_sum(quad(p));
    CHECK(std::abs(t - cplx{0, std::sqrt((double)p)}) < 1e-11);
  }
}

TEST_CASE("savings profile at a five-digit prime") {
  auto chars = enumerate_characters(99991, {.order = 2, .parity = {}, .primitive_only = true});
  REQUIRE(chars.size() == 1);
  SavingsProfile p = savings_profile(chars[0], {0.25, 0.5});
  CHECK(p.pv_max >= std::sqrt(99991.0) / kTwoPi);  // Schur floor
  CHECK(p.a_q > 0);
  CHECK(p.delta_eps[1] <= p.delta_eps[0] + 1e-15);
  CHECK(p.nchi.has_value());
}

TEST_CASE("prefix increments equal character values") {
  for (u64 q : {7, 12, 31}) {
    for (const auto& chi : enumerate_characters(q)) {
      SumSeries s = build_series(chi, 3 * q);
      for (u64 t = 1; t <= 3 * q; ++t)
        REQUIRE(std::abs((s.cesaro_at(t) - s.cesaro_at(t - 1)) - chi.eval_c((i64)t)) < 1e-10);
    }
  }
}
