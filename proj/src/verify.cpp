#include "charlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "charlab/convolution.hpp"
#include "charlab/families.hpp"
#include "charlab/parallel.hpp"
#include "charlab/sums.hpp"

namespace charlab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
  return {name, pass, detail};
}

// ---- fejer ----------------------------------------------------------------

void suite_fejer(SuiteResult& R) {
  bool ok = true;
  for (u64 N : {1, 2, 3, 5, 8, 17, 64})
    ok = ok && fejer_kernel(N, 0.0) == (double)N && fejer_kernel(N, 3.0) == (double)N;
  R.checks.push_back(check("fejer kernel at integers equals N", ok, "N in {1..64}"));

  R.checks.push_back(check("K_2(1/2) = 0", std::abs(fejer_kernel(2, 0.5)) <= 1e-10,
                           fmt(fejer_kernel(2, 0.5))));

  double worst = 0;
  for (u64 N : {1, 2, 3, 4, 5, 7, 12, 20, 32, 64}) {
    for (double t : {0.0, 0.17, 1.0 / 3.0, 0.5, 0.77, 0.999999999, 3.25, -0.4}) {
      worst = std::max(worst, std::abs(fejer_kernel(N, t) - fejer_kernel_sum_form(N, t)));
    }
  }
  R.checks.push_back(check("closed form matches the defining sum", worst <= 1e-10,
                           "worst |diff| = " + fmt(worst)));

  bool nonneg = true;
  for (double t = -0.5; t <= 1.5; t += 1e-3) nonneg = nonneg && fejer_kernel(9, t) >= 0;
  R.checks.push_back(check("kernel nonnegative", nonneg, "N = 9 sweep"));
}

// ---- gauss ----------------------------------------------------------------

void suite_gauss(SuiteResult& R, int threads) {
  {
    cplx t4 = gauss_sum(DirichletCharacter::from_exponents(4, {1}));
    cplx l5 = gauss_sum(primitive_family(5, 5, {2}).at(0));
    cplx p4 = gauss_sum(DirichletCharacter::principal(4));
    bool ok = std::abs(t4 - cplx{0, 2}) <= 1e-12 && std::abs(l5 - std::sqrt(5.0)) <= 1e-12 &&
              std::abs(p4) <= 1e-12;
    R.checks.push_back(check("pinned values: odd mod 4, Legendre mod 5, principal mod 4", ok,
                             "2i, sqrt5, 0"));
  }

  {
    auto fam = primitive_family(3, 200);
    std::vector<double> rel(fam.size());
    parallel_for(fam.size(), threads, [&](size_t i) {
      double q = (double)fam[i].modulus();
      rel[i] = std::abs(std::norm(gauss_sum(fam[i])) - q) / q;
    });
    double worst = 0;
    size_t wi = 0;
    for (size_t i = 0; i < rel.size(); ++i)
      if (rel[i] > worst) worst = rel[i], wi = i;
    R.checks.push_back(check("|tau|^2 = q for primitive chi, q <= 200", worst <= 1e-6,
                             "worst rel " + fmt(worst) + " at " +
                                 (fam.empty() ? "-" : fam[wi].label())));
  }

  {
    // documented tau = 0 cases: induced characters whose inducing gap is not
    // squarefree or shares a factor with the conductor
    std::vector<DirichletCharacter> zeros = {
        DirichletCharacter::principal(4),
        DirichletCharacter::principal(8),
        DirichletCharacter::principal(9),
        DirichletCharacter::principal(12),
        DirichletCharacter::from_exponents(4, {1}).induced_to(16),
        DirichletCharacter::from_exponents(4, {1}).induced_to(8),
        primitive_family(3, 3, {2}).at(0).induced_to(12),
        primitive_family(5, 5).at(0).induced_to(25),
    };
    double worst = 0;
    for (const auto& chi : zeros) worst = std::max(worst, std::abs(gauss_sum(chi)));
    R.checks.push_back(check("tau vanishes on the documented non-primitive list", worst <= 1e-9,
                             "worst |tau| = " + fmt(worst)));
  }

  {
    // Schur floor over primitive characters q <= 400
    auto fam = primitive_family(3, 400);
    std::vector<double> slack(fam.size());
    parallel_for(fam.size(), threads, [&](size_t i) {
      SumSeries s = build_series(fam[i], fam[i].modulus());
      slack[i] = s.pv_max - std::sqrt((double)fam[i].modulus()) / kTwoPi;
    });
    double worst = 1e300;
    size_t wi = 0;
    for (size_t i = 0; i < slack.size(); ++i)
      if (slack[i] < worst) worst = slack[i], wi = i;
    R.checks.push_back(check("Schur floor: pv_max >= sqrt(q)/(2pi), q <= 400", worst >= 0,
                             "min slack " + fmt(worst) + " at " + fam[wi].label()));
  }
}

// ---- polya (calibrated) ----------------------------------------------------

void suite_polya(SuiteResult& R, const Caps& caps, int threads) {
  double cp = caps.value("C_P");
  auto fam = primitive_family(3, 300);
  std::vector<double> ratio(fam.size());
  parallel_for(fam.size(), threads, [&](size_t i) {
    PolyaError e = polya_expansion_error(fam[i]);
    ratio[i] = e.sup_error / std::log((double)fam[i].modulus());
  });
  double worst = 0;
  size_t wi = 0;
  for (size_t i = 0; i < ratio.size(); ++i)
    if (ratio[i] > worst) worst = ratio[i], wi = i;
  R.checks.push_back(check("sup expansion error <= C_P log q, primitive chi, q <= 300",
                           worst <= cp,
                           "worst ratio " + fmt(worst) + " vs C_P " + fmt(cp) + " at " +
                               fam[wi].label()));
}

// ---- gs-identity ------------------------------------------------------------

void suite_gs_identity(SuiteResult& R, int threads) {
  auto chis = primitive_family(3, 50);
  std::vector<DirichletCharacter> psis;
  for (u64 l : {3, 4, 5})
    for (auto& psi : enumerate_characters(l)) psis.push_back(psi);

  struct Worst {
    double rel = 0;
    std::string which;
  };
  std::vector<Worst> worst(chis.size());
  std::vector<char> ok(chis.size(), 1);

  parallel_for(chis.size(), threads, [&](size_t i) {
    CharTableCache cache;
    for (const auto& psi : psis) {
      for (u64 r = 1; r <= 12; ++r) {
        for (u64 b = 0; b < std::max<u64>(r, 1); ++b) {
          if (r > 1 && gcd_u64(b, r) != 1) continue;
          if (r == 1 && b != 0) continue;
          for (u64 N : {10, 100, 1000}) {
            IdentityCheck c = gs_identity_check(chis[i], psi, b, r, N, &cache);
            double rel = c.abs_diff / (1.0 + std::abs(c.lhs));
            if (rel > worst[i].rel) {
              worst[i].rel = rel;
              std::ostringstream os;
              os << chis[i].label() << " x " << psi.label() << " b/r=" << b << "/" << r
                 << " N=" << N;
              worst[i].which = os.str();
            }
            if (rel > 1e-8) ok[i] = 0;
          }
        }
      }
    }
  });
  Worst w;
  bool pass = true;
  for (size_t i = 0; i < chis.size(); ++i) {
    pass = pass && ok[i];
    if (worst[i].rel > w.rel) w = worst[i];
  }
  R.checks.push_back(check("identity grid: q <= 50, psi mod 3/4/5, r <= 12, N <= 1000", pass,
                           "worst rel diff " + fmt(w.rel) + " at " + w.which));
}

// ---- orthogonality (twist identity + structure laws) -----------------------

void suite_orthogonality(SuiteResult& R, int threads) {
  {
    auto chis = primitive_family(3, 60);
    chis.erase(std::remove_if(chis.begin(), chis.end(),
                              [](const DirichletCharacter& c) { return c.parity() != -1; }),
               chis.end());
    DirichletCharacter psi = primitive_family(5, 5, {2}).at(0);  // even quadratic mod 5
    std::vector<double> rel(chis.size(), 0);
    parallel_for(chis.size(), threads, [&](size_t i) {
      for (u64 N : {1, 10, 100, 1000}) {
        IdentityCheck c = orthogonality_twist_check(chis[i], psi, N);
        rel[i] = std::max(rel[i], c.abs_diff / (1.0 + std::abs(c.lhs)));
      }
    });
    double worst = 0;
    size_t wi = 0;
    for (size_t i = 0; i < rel.size(); ++i)
      if (rel[i] > worst) worst = rel[i], wi = i;
    R.checks.push_back(check("twist identity: odd primitive chi q <= 60 vs even psi mod 5",
                             worst <= 1e-9,
                             "worst rel " + fmt(worst) + " at " +
                                 (chis.empty() ? "-" : chis[wi].label())));
  }

  {
    bool ok = true;
    std::string bad;
    for (u64 q = 1; q <= 500 && ok; ++q) {
      for (const auto& chi : enumerate_characters(q)) {
        if (chi.order() > 1 && chi.order() % 2 == 1 && chi.parity() != 1) {
          ok = false;
          bad = chi.label();
          break;
        }
      }
    }
    R.checks.push_back(check("odd order > 1 implies even parity, q <= 500", ok, bad));
  }

  {
    bool ok = true;
    std::string bad;
    for (u64 q = 1; q <= 300 && ok; ++q) {
      for (const auto& chi : enumerate_characters(q)) {
        DirichletCharacter back = chi.primitive_part().induced_to(q);
        if (back != chi) {
          ok = false;
          bad = chi.label();
          break;
        }
        if (chi.primitive_part().order() != chi.order()) {
          ok = false;
          bad = chi.label() + " (order)";
          break;
        }
      }
    }
    R.checks.push_back(check("conductor round-trip, q <= 300", ok, bad));
  }

  {
    bool ok = true;
    std::string bad;
    for (u64 q = 1; q <= 1000 && ok; ++q) {
      if (enumerate_characters(q).size() != factorize(q).phi) {
        ok = false;
        bad = "q = " + std::to_string(q);
      }
    }
    R.checks.push_back(check("character count equals phi(q), q <= 1000", ok, bad));
  }

  {
    // exact row orthogonality in cyclotomic integers
    bool ok = true;
    std::string bad;
    for (u64 q = 1; q <= 100 && ok; ++q) {
      auto chars = enumerate_characters(q);
      u64 lambda = 1;
      for (const auto& c : chars) lambda = lcm_u64(lambda, c.order());
      for (u64 n = 1; n <= q && ok; ++n) {
        if (q > 1 && gcd_u64(n, q) != 1) continue;
        CyclotomicSum acc((i64)lambda);
        for (const auto& c : chars) acc.add(c.eval((i64)n));
        CyclotomicSum want((i64)lambda);
        if (n % q == 1 % q) want.add(UnitValue::one(), (i64)chars.size());
        if (!(acc == want)) {
          ok = false;
          bad = "q = " + std::to_string(q) + ", n = " + std::to_string(n);
        }
      }
    }
    R.checks.push_back(check("exact orthogonality rows, q <= 100", ok, bad));
  }
}

// ---- convolution ------------------------------------------------------------

void suite_convolution(SuiteResult& R, int threads) {
  auto fam = convolution_family(kFamilySeed);
  const u64 X = 100'000;
  struct Stat {
    double gmin = 0, imag = 0, mult = 0, ppi = 0;
  };
  std::vector<Stat> st(fam.size());
  parallel_for(fam.size(), threads, [&](size_t i) {
    MultiplicativeModel m = MultiplicativeModel::from_character(fam[i], X);
    ConvolutionTable tab = build_convolution(m, X);
    Stat s;
    s.gmin = tab.g_min;
    s.imag = tab.max_imag;

    std::mt19937_64 rng(kFamilySeed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    u64 root = (u64)std::sqrt((double)X);
    double worst = 0;
    for (int k = 0; k < 10'000; ++k) {
      u64 a = rng() % root + 1, b = rng() % root + 1;
      if (gcd_u64(a, b) != 1) continue;
      double lhs = tab.g[a * b], rhs = tab.g[a] * tab.g[b];
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    s.mult = worst;

    double ppw = 0;
    for (u64 p : primes_up_to(100)) ppw = std::max(ppw, prime_power_identity_check(m, p, 10));
    s.ppi = ppw;
    st[i] = s;
  });

  Stat agg;
  agg.gmin = 1e300;
  std::string worst_label;
  for (size_t i = 0; i < st.size(); ++i) {
    if (st[i].gmin < agg.gmin) {
      agg.gmin = st[i].gmin;
      worst_label = fam[i].label();
    }
    agg.imag = std::max(agg.imag, st[i].imag);
    agg.mult = std::max(agg.mult, st[i].mult);
    agg.ppi = std::max(agg.ppi, st[i].ppi);
  }
  R.checks.push_back(check("g nonnegative over 50 seeded tables, x = 1e5", agg.gmin >= -1e-9,
                           "min g = " + fmt(agg.gmin) + " at " + worst_label));
  R.checks.push_back(check("g real", agg.imag <= 1e-9, "worst |Im| = " + fmt(agg.imag)));
  R.checks.push_back(check("g multiplicative on 1e4 coprime pairs per table", agg.mult <= 1e-9,
                           "worst rel " + fmt(agg.mult)));
  R.checks.push_back(check("prime-power closed form (triangular weights), p <= 100, k <= 10",
                           agg.ppi <= 1e-9, "worst " + fmt(agg.ppi)));

  {
    // the prime display used downstream: g(p) = 2 (1 + Re f(p))
    double worst = 0;
    for (size_t i = 0; i < std::min<size_t>(fam.size(), 8); ++i) {
      MultiplicativeModel m = MultiplicativeModel::from_character(fam[i], 1000);
      ConvolutionTable tab = build_convolution(m, 1000);
      for (size_t pi = 0; pi < m.primes().size(); ++pi) {
        u64 p = m.primes()[pi];
        if (p > 1000) break;
        worst = std::max(worst,
                         std::abs(tab.g[p] - 2.0 * (1.0 + m.values()[pi].real())));
      }
    }
    R.checks.push_back(check("g(p) = 2(1 + Re f(p))", worst <= 1e-12,
                             "worst |diff| = " + fmt(worst)));
  }

  {
    // |h| <= tau(n) on one table
    MultiplicativeModel m = MultiplicativeModel::from_character(fam.at(0), 10'000);
    ConvolutionTable tab = build_convolution(m, 10'000);
    std::vector<u32> tau(10'001, 0);
    for (u64 d = 1; d <= 10'000; ++d)
      for (u64 n = d; n <= 10'000; n += d) ++tau[n];
    bool ok = true;
    for (u64 n = 1; n <= 10'000 && ok; ++n) ok = std::abs(tab.h[n]) <= (double)tau[n] + 1e-9;
    R.checks.push_back(check("|h(n)| <= tau(n)", ok, fam.at(0).label() + ", x = 1e4"));
  }

  {
    bool ok = dickman_rho(0.5) == 1.0 && dickman_rho(1.0) == 1.0;
    double e2 = std::abs(dickman_rho(2.0) - (1.0 - std::log(2.0)));
    ok = ok && e2 <= 1e-6;
    R.checks.push_back(check("dickman: rho = 1 on [0,1], rho(2) = 1 - log 2", ok,
                             "|err(2)| = " + fmt(e2)));

    bool pos = true, dec = true;
    double prev = sigma_minus(1.0);
    for (double u = 1.01; u <= 50.0; u += 0.01) {
      double s = sigma_minus(u);
      pos = pos && s > 0;
      dec = dec && s <= prev + 1e-12;
      prev = s;
    }
    R.checks.push_back(check("sigma_-(u) positive and decreasing on [1, 50]", pos && dec,
                             "step 0.01"));
  }
}

// ---- pretentious ------------------------------------------------------------

void suite_pretentious(SuiteResult& R, const Caps& caps, int threads) {
  const u64 X = 10'000;

  {
    // triangle inequality over seeded character triples
    auto pool = primitive_family(3, 50);
    std::vector<MultiplicativeModel> models;
    models.reserve(pool.size());
    for (const auto& chi : pool) models.push_back(MultiplicativeModel::from_character(chi, X));
    std::mt19937_64 rng(kFamilySeed + 1);
    double worst = -1e300;
    for (int i = 0; i < 1000; ++i) {
      const auto& a = models[rng() % models.size()];
      const auto& b = models[rng() % models.size()];
      const auto& c = models[rng() % models.size()];
      double lhs = std::sqrt(distance(a, c, X));
      double rhs = std::sqrt(distance(a, b, X)) + std::sqrt(distance(b, c, X));
      worst = std::max(worst, lhs - rhs);
    }
    R.checks.push_back(check("triangle inequality on 1000 seeded triples, x = 1e4",
                             worst <= 1e-9, "worst violation " + fmt(worst)));
  }

  {
    // self distance equals the exact rational sum over vanishing primes
    auto pool = primitive_family(3, 40);
    double worst = 0;
    for (const auto& chi : pool) {
      MultiplicativeModel m = MultiplicativeModel::from_character(chi, X);
      double d = distance(m, m, X);
      Rat128 expect;
      for (auto [p, e] : chi.factored_modulus().factors) {
        (void)e;
        if (p <= X) expect += Rat128::reciprocal(p);
      }
      worst = std::max(worst, std::abs(d - expect.to_double()));
    }
    R.checks.push_back(check("distance(f, f) equals exact sum of 1/p over zeros", worst <= 1e-12,
                             "worst |diff| = " + fmt(worst)));
  }

  {
    MultiplicativeModel tw = MultiplicativeModel::twisted(0.3, X);
    DistanceReport rep = min_distance_over_t(tw, X, 1.0);
    bool ok = std::abs(rep.t_star - 0.3) <= 1e-3 && rep.d_min_squared <= 1e-4 &&
              rep.d_min_squared <= rep.d0_squared && rep.eta > 0 && rep.eta < 1;
    R.checks.push_back(check("planted twist t = 0.3 recovered", ok,
                             "t* = " + fmt(rep.t_star) + ", d_min^2 = " + fmt(rep.d_min_squared)));
  }

  {
    double ce = caps.value("C_E");
    auto fam = equiv_family();
    std::vector<double> gaps(fam.size());
    parallel_for(fam.size(), threads, [&](size_t i) {
      MultiplicativeModel m = MultiplicativeModel::from_character(fam[i], X);
      gaps[i] = equiv_gap(m, X, 10.0, fam[i].order()).gap;
    });
    double worst = 1e300;
    size_t wi = 0;
    for (size_t i = 0; i < gaps.size(); ++i)
      if (gaps[i] < worst) worst = gaps[i], wi = i;
    R.checks.push_back(check("equiv gap >= -C_E over quadratic/cubic family", worst >= -ce,
                             "min gap " + fmt(worst) + " vs -C_E = " + fmt(-ce) + " at " +
                                 fam[wi].label()));
  }

  {
    double cr = caps.value("c_R");
    double ch = caps.value("c_H");
    auto fam = mean_value_family();
    std::vector<double> rr(fam.size()), hh(fam.size());
    parallel_for(fam.size(), threads, [&](size_t i) {
      MultiplicativeModel m = MultiplicativeModel::from_character(fam[i], 100'000);
      rr[i] = revtonn_check(m, 100'000).ratio;
      hh[i] = hildebrand_lower(m, 100'000).ratio;
    });
    double wr = 1e300, wh = 1e300;
    for (size_t i = 0; i < fam.size(); ++i) {
      wr = std::min(wr, rr[i]);
      wh = std::min(wh, hh[i]);
    }
    R.checks.push_back(check("two-sided bound ratio >= c_R over the mean-value family",
                             wr >= cr, "min ratio " + fmt(wr) + " vs c_R " + fmt(cr)));
    R.checks.push_back(check("smooth lower-bound ratio >= c_H over the mean-value family",
                             wh >= ch, "min ratio " + fmt(wh) + " vs c_H " + fmt(ch)));
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "fejer", "gauss", "polya", "gs-identity", "orthogonality", "convolution", "pretentious"};
  return names;
}

bool suite_needs_caps(const std::string& suite) {
  return suite == "polya" || suite == "pretentious" || suite == "all";
}

SuiteResult run_suite(const std::string& suite, const Caps* caps, int threads) {
  SuiteResult R;
  R.suite = suite;
  if (suite_needs_caps(suite) && !caps)
    throw ConfigError("suite '" + suite + "' needs a caps file; run `charlab calibrate` first");
  auto t0 = std::chrono::steady_clock::now();
  if (suite == "fejer")
    suite_fejer(R);
  else if (suite == "gauss")
    suite_gauss(R, threads);
  else if (suite == "polya")
    suite_polya(R, *caps, threads);
  else if (suite == "gs-identity")
    suite_gs_identity(R, threads);
  else if (suite == "orthogonality")
    suite_orthogonality(R, threads);
  else if (suite == "convolution")
    suite_convolution(R, threads);
  else if (suite == "pretentious")
    suite_pretentious(R, *caps, threads);
  else
    throw ConfigError("unknown suite '" + suite + "'");
  R.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return R;
}

int run_verify(const std::string& suite, const Caps* caps, std::ostream& out, int threads) {
  std::vector<std::string> todo;
  if (suite == "all")
    todo = suite_names();
  else
    todo.push_back(suite);

  if (suite == "all" && !caps)
    throw ConfigError("`verify all` needs a caps file; run `charlab calibrate` first");

  int failures = 0;
  for (const auto& name : todo) {
    SuiteResult R = run_suite(name, caps, threads);
    for (const auto& c : R.checks) {
      out << (c.pass ? "[PASS] " : "[FAIL] ") << R.suite << ": " << c.name;
      if (!c.detail.empty()) out << "  (" << c.detail << ")";
      out << "\n";
      if (!c.pass) ++failures;
    }
    out << "suite " << R.suite << ": " << (R.pass() ? "ok" : "FAILED") << " in "
        << fmt(R.seconds) << " s\n";
  }
  out << (failures == 0 ? "all checks passed\n" : std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace charlab
