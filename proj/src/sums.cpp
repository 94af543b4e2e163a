#include "charlab/sums.hpp"

#include <algorithm>
#include <cmath>

namespace charlab {

namespace {

// e(j/m) for j = 0..m-1, with the axis values pinned exactly
std::vector<cplx> root_table(u64 m) {
  std::vector<cplx> t(m);
  for (u64 j = 0; j < m; ++j) {
    double a = kTwoPi * (double)j / (double)m;
    t[j] = {std::cos(a), std::sin(a)};
  }
  t[0] = 1.0;
  if (m % 2 == 0) t[m / 2] = -1.0;
  if (m % 4 == 0) {
    t[m / 4] = {0.0, 1.0};
    t[3 * m / 4] = {0.0, -1.0};
  }
  return t;
}

}  // namespace

cplx SumSeries::cesaro_at(u64 t) const {
  if (!dense) throw DomainError("SumSeries: prefix data not retained in streaming mode");
  if (t > limit) throw DomainError("SumSeries: t beyond the built limit");
  if (t < cesaro.size()) return cesaro[t];
  // full period stored: S(t) = S(t mod q) + (t/q) S(q)
  u64 q = chi.modulus();
  return cesaro[t % q] + (double)(t / q) * period_sum;
}

SumSeries build_series(const DirichletCharacter& chi, u64 T, const SeriesOptions& opts) {
  if (T == 0) throw DomainError("build_series: T >= 1");
  SumSeries s;
  s.chi = chi;
  s.limit = T;
  u64 q = chi.modulus();

  u64 stored = std::min(T, q);  // one period of prefixes determines the rest
  s.dense = stored <= opts.dense_limit;
  if (!s.dense && !opts.allow_streaming)
    throw ResourceError("build_series: T exceeds the dense limit and streaming is disabled");
  if (s.dense) s.cesaro.assign(stored + 1, cplx{0, 0});

  std::vector<cplx> tab = period_value_table(chi);
  KahanCplx ces, logs;
  s.pv_max = -1;
  s.log_max = -1;
  for (u64 t = 1; t <= T; ++t) {
    cplx v = tab[t % q];
    ces.add(v);
    logs.add(v / (double)t);
    cplx st = ces.value();
    if (s.dense && t <= stored) s.cesaro[t] = st;
    if (t == q) s.period_sum = st;
    double a = std::abs(st);
    if (a > s.pv_max) {
      s.pv_max = a;
      s.pv_argmax = t;
    }
    double l = std::abs(logs.value());
    if (l > s.log_max) {
      s.log_max = l;
      s.log_argmax = t;
    }
  }
  s.logsum = logs.value();
  return s;
}

std::vector<CyclotomicSum> exact_prefix_sums(const DirichletCharacter& chi, u64 T) {
  i64 m = (i64)chi.order();
  std::vector<CyclotomicSum> out;
  out.reserve(T + 1);
  CyclotomicSum acc(m);
  out.push_back(acc);
  for (u64 t = 1; t <= T; ++t) {
    acc.add(chi.eval((i64)t));
    out.push_back(acc);
  }
  return out;
}

cplx gauss_sum(const DirichletCharacter& chi) {
  u64 q = chi.modulus();
  if (q > 1'000'000) throw ResourceError("gauss_sum: direct summation supported for q <= 10^6");
  if (q == 1) return 1.0;
  std::vector<cplx> tab = period_value_table(chi);
  std::vector<cplx> e = root_table(q);
  KahanCplx acc;
  for (u64 a = 1; a < q; ++a) {
    if (tab[a] != cplx{0, 0}) acc.add(tab[a] * e[a]);
  }
  cplx tau = acc.value();
  if (chi.is_primitive() && q >= 3) {
    double rel = std::abs(std::norm(tau) - (double)q) / (double)q;
    if (rel > 1e-6) throw std::logic_error("gauss_sum: |tau|^2 = q violated for primitive chi");
  }
  return tau;
}

PolyaError polya_expansion_error(const DirichletCharacter& chi) {
  u64 q = chi.modulus();
  if (!chi.is_primitive() || q < 3)
    throw DomainError("polya_expansion_error: primitive character with q >= 3 required");

  std::vector<cplx> tab = period_value_table(chi);
  std::vector<cplx> e = root_table(q);

  std::vector<cplx> S(q + 1);
  KahanCplx acc;
  for (u64 t = 1; t <= q; ++t) {
    acc.add(tab[t % q]);
    S[t] = acc.value();
  }

  // weights chi-bar(n)/n, n = 1..q
  std::vector<cplx> w(q + 1);
  for (u64 n = 1; n <= q; ++n) w[n] = std::conj(tab[n % q]) / (double)n;

  cplx tau = gauss_sum(chi);
  cplx c0 = tau / (cplx{0, 1} * kTwoPi);
  bool odd = chi.parity() == -1;

  PolyaError res;
  res.sup_error = -1;
  for (u64 t = 1; t <= q; ++t) {
    // two-sided sum of chi-bar(n)/n (1 - e(-nt/q)), folded by parity:
    //   odd chi:  sum_n w_n (2 - 2 cos(2pi nt/q))
    //   even chi: sum_n w_n (2i sin(2pi nt/q))
    KahanCplx a;
    u64 j = 0;
    for (u64 n = 1; n <= q; ++n) {
      j += t;
      if (j >= q) j -= q;
      if (w[n] == cplx{0, 0}) continue;
      if (odd)
        a.add(w[n] * (2.0 - 2.0 * e[j].real()));
      else
        a.add(w[n] * cplx{0.0, 2.0 * e[j].imag()});
    }
    double err = std::abs(S[t] - c0 * a.value());
    if (err > res.sup_error) {
      res.sup_error = err;
      res.argmax_t = t;
    }
  }
  return res;
}

cplx twisted_log_sum(const DirichletCharacter& chi, double alpha, u64 N, bool two_sided) {
  if (N == 0) throw DomainError("twisted_log_sum: N >= 1");
  u64 q = chi.modulus();
  std::vector<cplx> tab = period_value_table(chi);
  double par = chi.parity();
  KahanCplx acc;
  for (u64 n = 1; n <= N; ++n) {
    cplx v = tab[n % q];
    if (v == cplx{0, 0}) continue;
    double ang = kTwoPi * std::fmod((double)n * alpha, 1.0);
    cplx en{std::cos(ang), std::sin(ang)};
    cplx term = v * en / (double)n;
    if (two_sided) term -= par * v * std::conj(en) / (double)n;
    acc.add(term);
  }
  return acc.value();
}

cplx twisted_log_sum_rational(const DirichletCharacter& chi, u64 b, u64 r, u64 N,
                              bool two_sided) {
  if (N == 0 || r == 0) throw DomainError("twisted_log_sum_rational: N, r >= 1");
  u64 q = chi.modulus();
  std::vector<cplx> tab = period_value_table(chi);
  std::vector<cplx> e = root_table(r);
  double par = chi.parity();
  b %= r;
  KahanCplx acc;
  u64 j = 0;
  for (u64 n = 1; n <= N; ++n) {
    j += b;
    if (j >= r) j -= r;
    cplx v = tab[n % q];
    if (v == cplx{0, 0}) continue;
    cplx term = v * e[j] / (double)n;
    if (two_sided) term -= par * v * std::conj(e[j]) / (double)n;
    acc.add(term);
  }
  return acc.value();
}

const std::vector<cplx>& CharTableCache::table(const DirichletCharacter& chi) {
  std::string key = chi.label();
  auto it = tables_.find(key);
  if (it == tables_.end()) it = tables_.emplace(key, period_value_table(chi)).first;
  return it->second;
}

cplx CharTableCache::gauss(const DirichletCharacter& chi) {
  std::string key = chi.label();
  auto it = gauss_.find(key);
  if (it == gauss_.end()) it = gauss_.emplace(key, gauss_sum(chi)).first;
  return it->second;
}

const DirichletCharacter& CharTableCache::product(const DirichletCharacter& a,
                                                  const DirichletCharacter& b) {
  std::string key = a.label() + "|" + b.label();
  auto it = products_.find(key);
  if (it == products_.end()) it = products_.emplace(key, multiply(a, b)).first;
  return it->second;
}

namespace {

// one-sided sum of f(n) e(bn/r)/n from a prebuilt value table
cplx log_sum_from_table(const std::vector<cplx>& tab, u64 b, u64 r, u64 N, bool two_sided,
                        double parity) {
  std::vector<cplx> e = root_table(r);
  b %= r;
  KahanCplx acc;
  u64 q = tab.size();
  u64 j = 0;
  for (u64 n = 1; n <= N; ++n) {
    j += b;
    if (j >= r) j -= r;
    cplx v = tab[n % q];
    if (v == cplx{0, 0}) continue;
    cplx term = v * e[j] / (double)n;
    if (two_sided) term -= parity * v * std::conj(e[j]) / (double)n;
    acc.add(term);
  }
  return acc.value();
}

}  // namespace

IdentityCheck gs_identity_check(const DirichletCharacter& chi, const DirichletCharacter& psi,
                                u64 b, u64 r, u64 N, CharTableCache* cache) {
  if (r == 0) throw DomainError("gs_identity_check: r >= 1");
  if (gcd_u64(b % r, r) != 1 && r != 1)
    throw DomainError("gs_identity_check: gcd(b, r) = 1 required");

  CharTableCache local;
  CharTableCache& C = cache ? *cache : local;

  const DirichletCharacter& f = C.product(chi, psi);
  double parf = f.parity();
  IdentityCheck out;
  out.lhs = log_sum_from_table(C.table(f), b % r, r, N, true, parf);

  KahanCplx rhs;
  for (u64 d = 1; d <= r; ++d) {
    if (r % d != 0) continue;
    u64 Nd = N / d;
    if (Nd == 0) continue;
    cplx fd = f.eval_c((i64)d);
    if (fd == cplx{0, 0}) continue;
    u64 s = r / d;
    double phis = (double)factorize(s).phi;
    for (const auto& psip : enumerate_characters(s)) {
      double factor = 1.0 - parf * (double)psip.parity();
      if (factor == 0.0) continue;
      cplx pb = std::conj(psip.eval_c((i64)b));
      if (pb == cplx{0, 0}) continue;
      cplx tau = C.gauss(psip);
      const DirichletCharacter& g = C.product(f, conjugate(psip));
      cplx inner = log_sum_from_table(C.table(g), 0, 1, Nd, false, (double)g.parity());
      rhs.add(fd / (double)d * factor / phis * tau * pb * inner);
    }
  }
  out.rhs = rhs.value();
  out.abs_diff = std::abs(out.lhs - out.rhs);
  return out;
}

IdentityCheck orthogonality_twist_check(const DirichletCharacter& chi,
                                        const DirichletCharacter& psi, u64 N) {
  DirichletCharacter prod = multiply(chi, psi);
  if (prod.parity() != -1)
    throw DomainError("orthogonality_twist_check: chi psi must be odd");
  if (!psi.is_primitive() || psi.is_principal())
    throw DomainError("orthogonality_twist_check: psi must be primitive non-principal");

  u64 l = psi.modulus();
  double phil = (double)psi.factored_modulus().phi;
  std::vector<cplx> psitab = period_value_table(psi);
  std::vector<cplx> chitab = period_value_table(chi);
  std::vector<cplx> e = root_table(l);
  u64 q = chi.modulus();
  double parchi = chi.parity();

  IdentityCheck out;
  KahanCplx lhs;
  for (u64 bb = 0; bb < l; ++bb) {
    cplx pb = std::conj(psitab[bb]);
    if (pb == cplx{0, 0}) continue;
    KahanCplx inner;
    u64 j = 0;
    for (u64 n = 1; n <= N; ++n) {
      j += bb;
      if (j >= l) j -= l;
      cplx v = chitab[n % q];
      if (v == cplx{0, 0}) continue;
      cplx pos = 1.0 - e[j];
      cplx neg = 1.0 - std::conj(e[j]);
      inner.add(v / (double)n * (pos - parchi * neg));
    }
    lhs.add(pb * inner.value());
  }
  out.lhs = lhs.value() / phil;

  cplx taub = gauss_sum(conjugate(psi));
  cplx logsum = twisted_log_sum_rational(prod, 0, 1, N, false);
  out.rhs = -2.0 * taub / phil * logsum;
  out.abs_diff = std::abs(out.lhs - out.rhs);
  return out;
}

RationalApprox dirichlet_approx(double alpha, double R, double M) {
  if (alpha < 0 || alpha > 1) throw DomainError("dirichlet_approx: alpha in [0, 1]");
  if (!(1 <= M && M <= R)) throw DomainError("dirichlet_approx: need 1 <= M <= R");

  std::vector<std::pair<u64, u64>> conv;
  double x = alpha;
  u64 h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int it = 0; it < 64; ++it) {
    double fa = std::floor(x);
    if (fa > 4e18 || (double)k1 * fa + (double)k2 > 4e18) break;
    u64 a = (u64)fa;
    u64 h = a * h1 + h2;
    u64 k = a * k1 + k2;
    if ((double)k > R) break;
    conv.emplace_back(h, k);
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    double frac = x - fa;
    if (frac < 1e-14) break;
    x = 1.0 / frac;
  }

  RationalApprox best;
  best.alpha = alpha;
  // scan in increasing r; the last convergent always qualifies, earlier ones
  // win only if already admissible (ties resolve toward smaller r)
  for (size_t i = 0; i < conv.size(); ++i) {
    auto [h, k] = conv[i];
    double err = std::abs(alpha - (double)h / (double)k);
    if (i + 1 == conv.size() || err <= 1.0 / ((double)k * R) + 1e-18) {
      best.b = h;
      best.r = k;
      best.err = err;
      best.major = (double)k <= M;
      return best;
    }
  }
  throw DomainError("dirichlet_approx: no convergent found");  // unreachable
}

SavingsProfile savings_profile(const DirichletCharacter& chi, const std::vector<double>& eps_grid) {
  if (chi.is_principal()) throw DomainError("savings_profile: non-principal character required");
  for (double e : eps_grid)
    if (!(e > 0 && e <= 1)) throw DomainError("savings_profile: eps in (0, 1]");

  u64 q = chi.modulus();
  SavingsProfile prof;
  prof.q = q;
  prof.eps_grid = eps_grid;
  prof.delta_eps.assign(eps_grid.size(), -1.0);

  // window is t > q^eps; precompute the integer thresholds
  std::vector<u64> thr(eps_grid.size());
  for (size_t i = 0; i < eps_grid.size(); ++i)
    thr[i] = (u64)std::floor(std::pow((double)q, eps_grid[i]));

  std::vector<cplx> tab = period_value_table(chi);
  KahanCplx acc;
  prof.pv_max = -1;
  double end_ratio = 0;
  for (u64 t = 1; t <= q; ++t) {
    acc.add(tab[t % q]);
    double a = std::abs(acc.value());
    if (a > prof.pv_max) {
      prof.pv_max = a;
      prof.pv_argmax = t;
    }
    double ratio = a / (double)t;
    for (size_t i = 0; i < thr.size(); ++i) {
      if (t > thr[i] && ratio > prof.delta_eps[i]) prof.delta_eps[i] = ratio;
    }
    if (t == q) end_ratio = ratio;
  }
  for (double& d : prof.delta_eps) {
    if (d < 0) d = end_ratio;  // empty window: value at t = q
  }
  prof.a_q = std::sqrt((double)q) * std::log((double)q) / prof.pv_max;
  prof.nchi = n_chi(chi);
  return prof;
}

double thmgen_rhs(u64 g, double a_of_t) {
  if (g < 2) throw DomainError("thmgen_rhs: g >= 2");
  const double ee = std::exp(std::exp(1.0));
  if (!(a_of_t > ee)) throw DomainError("thmgen_rhs: a must exceed e^e");
  double la = std::log(a_of_t);
  return std::pow(std::log(la) / la, 1.0 / (19.0 * (double)(g * g)));
}

double delta_g(u64 g) {
  if (g < 3 || g % 2 == 0) throw DomainError("delta_g: odd g >= 3 required");
  const double pi = kTwoPi / 2;
  return 1.0 - (double)g / pi * std::sin(pi / (double)g);
}

}  // namespace charlab
