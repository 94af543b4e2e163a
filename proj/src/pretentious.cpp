#include "charlab/pretentious.hpp"

#include <algorithm>
#include <cmath>

namespace charlab {

MultiplicativeModel MultiplicativeModel::from_character(const DirichletCharacter& chi,
                                                        u64 prime_limit) {
  MultiplicativeModel m;
  m.prov_ = Provenance::Character;
  m.prime_limit_ = prime_limit;
  m.char_modulus_ = chi.modulus();
  m.order_hint_ = chi.order();
  m.primes_ = primes_up_to(prime_limit);
  m.values_.reserve(m.primes_.size());
  m.units_.reserve(m.primes_.size());
  u64 ord = chi.order();
  std::vector<cplx> roots(ord);
  for (u64 j = 0; j < ord; ++j) roots[j] = UnitValue::root((i64)j, (i64)ord).to_complex();
  for (u64 p : m.primes_) {
    UnitValue v = chi.eval((i64)p);
    m.units_.push_back(v);
    m.values_.push_back(v.is_zero() ? cplx{0, 0} : roots[(u64)v.exponent_for_order((i64)ord)]);
  }
  return m;
}

MultiplicativeModel MultiplicativeModel::constant_root(const UnitValue& v, u64 prime_limit) {
  MultiplicativeModel m;
  m.prov_ = Provenance::Synthetic;
  m.prime_limit_ = prime_limit;
  m.order_hint_ = v.is_zero() ? 0 : (u64)v.den;
  m.primes_ = primes_up_to(prime_limit);
  m.values_.assign(m.primes_.size(), v.to_complex());
  m.units_.assign(m.primes_.size(), v);
  return m;
}

MultiplicativeModel MultiplicativeModel::twisted(double t, u64 prime_limit) {
  MultiplicativeModel m;
  m.prov_ = Provenance::Twisted;
  m.prime_limit_ = prime_limit;
  m.primes_ = primes_up_to(prime_limit);
  m.values_.reserve(m.primes_.size());
  for (u64 p : m.primes_) {
    double a = t * std::log((double)p);
    m.values_.emplace_back(std::cos(a), std::sin(a));
  }
  return m;
}

MultiplicativeModel MultiplicativeModel::zeros_to_one() const {
  MultiplicativeModel m = *this;
  for (size_t i = 0; i < m.values_.size(); ++i) {
    if (m.values_[i] == cplx{0, 0}) m.values_[i] = 1.0;
  }
  for (auto& u : m.units_) {
    if (u.is_zero()) u = UnitValue::one();
  }
  return m;
}

std::vector<cplx> MultiplicativeModel::extend_to(u64 x) const {
  if (x > prime_limit_)
    throw DomainError("MultiplicativeModel: extension beyond the prime limit");
  const auto& spf = spf_table();
  if (x >= spf.size()) throw ResourceError("MultiplicativeModel: x beyond the SPF sieve");

  // prime index lookup
  std::vector<u32> pidx(x + 1, 0);
  for (size_t i = 0; i < primes_.size(); ++i) {
    if (primes_[i] > x) break;
    pidx[primes_[i]] = (u32)i;
  }
  std::vector<cplx> f(x + 1);
  f[0] = 0;
  if (x >= 1) f[1] = 1;
  for (u64 n = 2; n <= x; ++n) {
    u64 p = spf[n];
    f[n] = f[n / p] * values_[pidx[p]];
  }
  return f;
}

// ---------------------------------------------------------------------------
// distances
// ---------------------------------------------------------------------------

double distance(const MultiplicativeModel& f1, const MultiplicativeModel& f2, double x,
                u64 exclude_r) {
  if ((double)f1.prime_limit() < x || (double)f2.prime_limit() < x)
    throw DomainError("distance: model not defined on all primes <= x");
  const auto& ps = f1.primes();
  const auto& qs = f2.primes();
  bool exact = f1.has_units() && f2.has_units();
  KahanReal acc;
  for (size_t i = 0; i < ps.size(); ++i) {
    u64 p = ps[i];
    if ((double)p > x) break;
    if (exclude_r % p == 0) continue;
    // the two prime lists agree by construction (same generator)
    if (i >= qs.size() || qs[i] != p) throw DomainError("distance: prime grids differ");
    double term;
    if (exact) {
      const UnitValue &a = f1.units()[i], &b = f2.units()[i];
      if (a.is_zero() || b.is_zero()) {
        term = 1.0;
      } else if (a == b) {
        continue;  // exactly zero contribution
      } else {
        term = 1.0 - (a * b.conj()).to_complex().real();
      }
    } else {
      term = 1.0 - (f1.values()[i] * std::conj(f2.values()[i])).real();
    }
    acc.add(term / (double)p);
  }
  return acc.value();
}

namespace {

// the objective t -> D(f, n^{it}; x)^2 with precomputed prime data
struct TwistObjective {
  std::vector<double> invp, logp, re, im;
  double base = 0;  // contribution of zero values: sum 1/p

  TwistObjective(const MultiplicativeModel& f, double x) {
    KahanReal zero_acc;
    const auto& ps = f.primes();
    for (size_t i = 0; i < ps.size(); ++i) {
      u64 p = ps[i];
      if ((double)p > x) break;
      cplx v = f.values()[i];
      if (v == cplx{0, 0}) {
        zero_acc.add(1.0 / (double)p);
        continue;
      }
      invp.push_back(1.0 / (double)p);
      logp.push_back(std::log((double)p));
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    base = zero_acc.value();
  }

  double operator()(double t) const {
    // sum (1 - Re(f(p) p^{-it})) / p
    KahanReal acc;
    for (size_t i = 0; i < invp.size(); ++i) {
      double a = t * logp[i];
      double c = std::cos(a), s = std::sin(a);
      acc.add((1.0 - (re[i] * c + im[i] * s)) * invp[i]);
    }
    return base + acc.value();
  }
};

}  // namespace

DistanceReport min_distance_over_t(const MultiplicativeModel& f, double x, double T,
                                   double c_gs) {
  if (T < 0) throw DomainError("min_distance_over_t: T >= 0");
  if ((double)f.prime_limit() < x)
    throw DomainError("min_distance_over_t: model not defined on all primes <= x");

  TwistObjective obj(f, x);
  DistanceReport rep;
  rep.x = x;
  rep.T = T;
  rep.c_gs = c_gs;
  rep.d0_squared = obj(0.0);
  rep.grid_spacing = 1.0 / (4.0 * std::log(std::max(x, 4.0)));

  double best_t = 0.0, best_v = rep.d0_squared;
  if (T > 0) {
    i64 K = (i64)std::floor(T / rep.grid_spacing);
    for (i64 k = -K; k <= K; ++k) {
      double t = (double)k * rep.grid_spacing;
      double v = obj(t);
      if (v < best_v) {
        best_v = v;
        best_t = t;
      }
    }
    for (double t : {-T, T}) {
      double v = obj(t);
      if (v < best_v) {
        best_v = v;
        best_t = t;
      }
    }

    // golden-section refinement inside the best bracket
    double lo = std::max(-T, best_t - rep.grid_spacing);
    double hi = std::min(T, best_t + rep.grid_spacing);
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = obj(c), fd = obj(d);
    int it = 0;
    while (b - a > 1e-6) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = obj(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = obj(d);
      }
      ++it;
    }
    rep.refine_iterations = it;
    double tm = (a + b) / 2;
    double vm = obj(tm);
    if (vm < best_v) {
      best_v = vm;
      best_t = tm;
    }
  }

  rep.t_star = best_t;
  rep.d_min_squared = best_v;
  rep.lambda = rep.d_min_squared + std::log(1.0 + std::abs(rep.t_star)) + c_gs;
  rep.eta = 1.0 / (rep.lambda * std::exp(rep.lambda));
  return rep;
}

HmtResult hmt_bound(const MultiplicativeModel& f, u64 x, double T) {
  if (x > 10'000'000) throw ResourceError("hmt_bound: sieve extension capped at 10^7");
  if (T < 1) throw DomainError("hmt_bound: T >= 1");
  HmtResult r;
  r.dist = min_distance_over_t(f, (double)x, T);
  double D = r.dist.d_min_squared;
  r.bound = D * std::exp(-D) + 1.0 / std::sqrt(T);
  std::vector<cplx> ext = f.extend_to(x);
  KahanCplx acc;
  for (u64 n = 1; n <= x; ++n) acc.add(ext[n]);
  r.mean = std::abs(acc.value()) / (double)x;
  r.ratio = r.mean / r.bound;
  return r;
}

EquivGap equiv_gap(const MultiplicativeModel& f, double x, double T, u64 k) {
  if (k < 1) throw DomainError("equiv_gap: k >= 1");
  MultiplicativeModel ft = f.zeros_to_one();
  // every value must be a k-th root of unity
  if (ft.has_units()) {
    for (const auto& u : ft.units()) {
      if (!u.pow((i64)k).is_one())
        throw DomainError("equiv_gap: model values are not k-th roots of unity");
    }
  } else {
    for (const auto& v : ft.values()) {
      if (std::abs(std::pow(v, (double)k) - cplx{1, 0}) > 1e-12)
        throw DomainError("equiv_gap: model values are not k-th roots of unity");
    }
  }
  EquivGap g;
  DistanceReport rep = min_distance_over_t(ft, x, T);
  g.lhs = std::sqrt(std::max(0.0, rep.d_min_squared));
  double d1 = std::sqrt(std::max(0.0, rep.d0_squared));
  g.rhs_core = std::min(std::sqrt(std::log(std::log(x))), d1) / (2.0 * (double)k);
  g.gap = g.lhs - g.rhs_core;
  return g;
}

namespace {

TwistEntry twist_entry(const DirichletCharacter& chi, const DirichletCharacter& psi, double T) {
  u64 q = chi.modulus();
  DirichletCharacter prod = multiply(chi, conjugate(psi));
  MultiplicativeModel m = MultiplicativeModel::from_character(prod, q);
  DistanceReport rep = min_distance_over_t(m, (double)q, T);
  TwistEntry e;
  e.conductor = psi.modulus();
  e.order = psi.order();
  e.label = psi.label();
  e.dist = rep.d_min_squared;
  u64 g = chi.order(), k = psi.order();
  e.threshold = std::log(std::log((double)q)) / (3.0 * (double)((g * k) * (g * k)));
  e.below = e.dist <= e.threshold;
  return e;
}

}  // namespace

std::vector<TwistEntry> twist_scan(const DirichletCharacter& chi, double T) {
  std::vector<TwistEntry> out;
  u64 q = chi.modulus();
  if (q < 3) return out;
  u64 climit = (u64)std::floor(std::log((double)q));
  for (u64 m = 3; m <= climit; ++m) {
    CharacterFilter filt;
    filt.primitive_only = true;
    for (const auto& psi : enumerate_characters(m, filt)) {
      if (psi.is_principal()) continue;
      out.push_back(twist_entry(chi, psi, T));
    }
  }
  return out;
}

OrdersReport orders_report(const DirichletCharacter& chi, const DirichletCharacter& psi,
                           double T) {
  OrdersReport rep;
  rep.q = chi.modulus();
  rep.g = chi.order();
  rep.T = T;
  rep.pair = twist_entry(chi, psi, T);
  rep.k_divides_g = psi.order() != 0 && rep.g % psi.order() == 0;
  rep.dichotomy_violated = rep.pair.below && !rep.k_divides_g;
  rep.conductor_warning = (double)psi.modulus() > std::log((double)rep.q);
  rep.scanned = twist_scan(chi, T);
  rep.count_below = 0;
  for (const auto& e : rep.scanned) {
    if (e.below) ++rep.count_below;
    if (!rep.nearest || e.dist < rep.nearest->dist) rep.nearest = e;
  }
  return rep;
}

}  // namespace charlab
