#include "charlab/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace charlab {

double ConvolutionTable::g_mean() const {
  KahanReal acc;
  for (u64 n = 1; n <= x; ++n) acc.add(g[n]);
  return acc.value() / (double)x;
}

ConvolutionTable build_convolution(const MultiplicativeModel& f, u64 x) {
  if (x > 10'000'000) throw ResourceError("build_convolution: dense tables capped at 10^7");
  if (x < 1) throw DomainError("build_convolution: x >= 1");

  ConvolutionTable t;
  t.x = x;
  t.f = f.extend_to(x);

  // h = 1 * f by divisor sieve
  t.h.assign(x + 1, cplx{0, 0});
  for (u64 d = 1; d <= x; ++d) {
    cplx fd = t.f[d];
    if (fd == cplx{0, 0}) continue;
    for (u64 m = d; m <= x; m += d) t.h[m] += fd;
  }

  // g = h * h-bar, second divisor sieve over ordered pairs (d, k)
  std::vector<cplx> gc(x + 1, cplx{0, 0});
  for (u64 d = 1; d <= x; ++d) {
    cplx hd = t.h[d];
    if (hd == cplx{0, 0}) continue;
    u64 lim = x / d;
    for (u64 k = 1; k <= lim; ++k) gc[d * k] += hd * std::conj(t.h[k]);
  }
  t.g.assign(x + 1, 0.0);
  t.g_min = 1e300;
  t.max_imag = 0;
  for (u64 n = 1; n <= x; ++n) {
    t.g[n] = gc[n].real();
    t.max_imag = std::max(t.max_imag, std::abs(gc[n].imag()));
    t.g_min = std::min(t.g_min, t.g[n]);
  }
  return t;
}

double fejer_kernel(u64 N, double t) {
  if (N < 1) throw DomainError("fejer_kernel: N >= 1");
  double u = t - std::nearbyint(t);
  if (u == 0.0) return (double)N;
  const double pi = kTwoPi / 2;
  double s = std::sin(pi * (double)N * u) / std::sin(pi * u);
  return s * s / (double)N;
}

double fejer_kernel_sum_form(u64 N, double t) {
  if (N < 1) throw DomainError("fejer_kernel: N >= 1");
  KahanReal acc;
  acc.add(1.0);
  for (u64 j = 1; j < N; ++j) {
    double w = 1.0 - (double)j / (double)N;
    acc.add(2.0 * w * std::cos(kTwoPi * (double)j * t));
  }
  return acc.value();
}

double prime_power_identity_check(const MultiplicativeModel& f, u64 p, u64 kmax) {
  // locate f(p)
  const auto& ps = f.primes();
  auto it = std::lower_bound(ps.begin(), ps.end(), p);
  if (it == ps.end() || *it != p)
    throw DomainError("prime_power_identity_check: p outside the model");
  size_t idx = (size_t)(it - ps.begin());
  cplx fp = f.values()[idx];
  bool zero = fp == cplx{0, 0};

  // direct side: h(p^j) = sum_{u<=j} f(p)^u; g(p^k) = sum_j h(p^j) conj(h(p^{k-j}))
  std::vector<cplx> hp(kmax + 1);
  cplx pw = 1, acc = 0;
  for (u64 j = 0; j <= kmax; ++j) {
    acc += pw;
    hp[j] = acc;
    pw *= fp;
  }
  double worst = 0;
  for (u64 k = 1; k <= kmax; ++k) {
    cplx gpk = 0;
    for (u64 j = 0; j <= k; ++j) gpk += hp[j] * std::conj(hp[k - j]);

    cplx ref;
    if (zero) {
      ref = (double)(k + 1);
    } else {
      // sum over |w| <= k of f^w floor((n+1)^2/4), n = k+1-|w|
      ref = (double)(((k + 2) * (k + 2)) / 4);  // w = 0 term
      cplx fw = 1;
      for (u64 w = 1; w <= k; ++w) {
        fw *= fp;
        u64 n = k + 1 - w;
        double T = (double)(((n + 1) * (n + 1)) / 4);
        ref += T * (fw + std::conj(fw));
      }
    }
    worst = std::max(worst, std::abs(gpk - ref));
  }
  return worst;
}

namespace {

// checkpoints for max over integer y in [lo, hi]: every integer when the
// range is small, geometric subsampling (10^4 points) otherwise
std::vector<u64> max_grid(u64 lo, u64 hi) {
  std::vector<u64> pts;
  if (hi < lo) return pts;
  u64 count = hi - lo + 1;
  if (count <= 10'000) {
    pts.reserve(count);
    for (u64 y = lo; y <= hi; ++y) pts.push_back(y);
    return pts;
  }
  double ratio = std::pow((double)hi / (double)lo, 1.0 / 9999.0);
  double y = (double)lo;
  u64 prev = 0;
  for (int i = 0; i < 10'000; ++i) {
    u64 yi = std::min(hi, (u64)std::llround(y));
    if (yi > prev && yi >= lo) {
      pts.push_back(yi);
      prev = yi;
    }
    y *= ratio;
  }
  if (pts.empty() || pts.back() != hi) pts.push_back(hi);
  return pts;
}

// max over checkpoints of |(1/log y) sum_{n<=y} f(n)/n|
double max_log_mean(const std::vector<cplx>& f, u64 lo, u64 hi) {
  std::vector<u64> pts = max_grid(lo, hi);
  KahanCplx acc;
  double best = 0;
  size_t pi = 0;
  for (u64 n = 1; n <= hi && pi < pts.size(); ++n) {
    acc.add(f[n] / (double)n);
    while (pi < pts.size() && pts[pi] == n) {
      best = std::max(best, std::abs(acc.value()) / std::log((double)n));
      ++pi;
    }
  }
  return best;
}

}  // namespace

RevtonnResult revtonn_check(const MultiplicativeModel& f, u64 t, u64 t0) {
  if (t < t0) throw ConfigError("revtonn_check: t below the configured floor");
  ConvolutionTable tab = build_convolution(f, t);
  RevtonnResult r;
  u64 lo = (u64)std::ceil(std::sqrt((double)t));
  r.lhs = max_log_mean(tab.f, lo, t) + 1.0 / std::log((double)t);
  double lt = std::log((double)t);
  r.rhs_core = tab.g_mean() / (lt * lt * lt);
  r.ratio = r.lhs / r.rhs_core;
  return r;
}

// ---------------------------------------------------------------------------
// Dickman rho
// ---------------------------------------------------------------------------

namespace {

// march u rho(u) = integral_{u-1}^{u} rho (the integrated form of the delay
// equation): trapezoid over the sliding window keeps every weight positive,
// so the table stays positive all the way down to rho(50) ~ 1e-90, where the
// subtractive form bottoms out at its absolute noise floor (~1e-8) and flips
// sign around u = 8.
std::vector<double> dickman_march(double h, double umax) {
  u64 n_per = (u64)std::llround(1.0 / h);
  u64 N = (u64)std::llround(umax / h);
  std::vector<double> rho(N + 1);
  for (u64 i = 0; i <= n_per && i <= N; ++i) rho[i] = 1.0;
  for (u64 i = n_per; i < N; ++i) {
    // solve u r = h (rho_{i+1-n}/2 + rho_{i+2-n} + ... + rho_i + r/2)
    u64 lo = i + 1 - n_per;
    KahanReal win;
    win.add(0.5 * rho[lo]);
    for (u64 j = lo + 1; j <= i; ++j) win.add(rho[j]);
    double u = (double)(i + 1) * h;
    rho[i + 1] = h * win.value() / (u - 0.5 * h);
  }
  return rho;
}

struct DickmanTable {
  double h = 1e-3;
  std::vector<double> grid;

  DickmanTable() {
    const double umax = 50.0;
    grid = dickman_march(h, umax);
    std::vector<double> fine = dickman_march(h / 2, 20.0);
    for (u64 i = 0; i < 20'000; ++i) {
      double d = std::abs(grid[i] - fine[2 * i]);
      if (d > 1e-7)
        throw ResourceError("dickman: Richardson cross-check failed at u = " +
                            std::to_string((double)i * h));
    }
  }
};

const DickmanTable& dickman_table() {
  static DickmanTable tab;
  return tab;
}

}  // namespace

double dickman_rho(double u) {
  if (u < 0) throw DomainError("dickman_rho: u >= 0");
  if (u > 50) throw DomainError("dickman_rho: supported up to u = 50");
  if (u <= 1) return 1.0;
  const DickmanTable& t = dickman_table();
  double pos = u / t.h;
  u64 i = (u64)pos;
  if (i + 1 >= t.grid.size()) return t.grid.back();
  double frac = pos - (double)i;
  return t.grid[i] * (1 - frac) + t.grid[i + 1] * frac;
}

double sigma_minus(double u) { return u * dickman_rho(u); }

HildebrandResult hildebrandLowerImpl(const MultiplicativeModel& f, u64 x,
                                     const ConvolutionTable& tab) {
  KahanReal main_term, sigma_arg;
  const auto& ps = f.primes();
  for (size_t i = 0; i < ps.size(); ++i) {
    u64 p = ps[i];
    if (p > x) break;
    double gp = 2.0 * (1.0 + f.values()[i].real());
    main_term.add((gp - 1.0) / (double)p);
    if (gp < 1.0) sigma_arg.add((1.0 - gp) / (double)p);
  }
  HildebrandResult r;
  r.lower = std::exp(main_term.value()) * sigma_minus(std::exp(sigma_arg.value()));
  r.actual = tab.g_mean();
  r.ratio = r.actual / r.lower;
  return r;
}

HildebrandResult hildebrand_lower(const MultiplicativeModel& f, u64 x) {
  ConvolutionTable tab = build_convolution(f, x);
  return hildebrandLowerImpl(f, x, tab);
}

// ---------------------------------------------------------------------------
// xi families and reporters
// ---------------------------------------------------------------------------

namespace {

double iterated_log(int k, double t) {
  double v = t;
  for (int i = 0; i < k; ++i) v = std::log(v);
  return v;
}

double parse_power_token(const std::string& s) {
  if (s == "quarter") return 0.25;
  if (s == "third") return 1.0 / 3.0;
  if (s == "half") return 0.5;
  if (s == "one") return 1.0;
  if (s == "two") return 2.0;
  if (!s.empty() && s[0] == 'p') return std::stod(s.substr(1));
  throw ConfigError("xi family: unknown power token '" + s + "'");
}

}  // namespace

double XiFamily::operator()(double t) const {
  if (kind == Kind::LogPower) {
    double v = iterated_log(k, t);
    if (!(v > 0)) throw DomainError("xi(t): log_k t not positive at t = " + std::to_string(t));
    return std::pow(v, A);
  }
  double a = std::pow(iterated_log(a_k, t), a_A);
  if (!(a > std::exp(1.0))) throw DomainError("xi(t): a(t) must exceed e");
  double la = std::log(a);
  double lla = std::log(la);
  if (!(lla > 0)) throw DomainError("xi(t): log_2 a(t) not positive");
  return std::pow(la / (13.0 * lla), 1.0 / (19.0 * (double)(g * g)));
}

std::string XiFamily::name() const {
  std::ostringstream os;
  if (kind == Kind::LogPower) {
    os << "log" << k << "-p" << A;
  } else {
    os << "paper-g" << g << "-a-log" << a_k << "-p" << a_A;
  }
  return os.str();
}

XiFamily XiFamily::parse(const std::string& spec) {
  XiFamily xi;
  if (spec.rfind("log", 0) == 0) {
    size_t dash = spec.find('-');
    if (dash == std::string::npos) throw ConfigError("xi family: expected log<k>-<power>");
    xi.kind = Kind::LogPower;
    xi.k = std::stoi(spec.substr(3, dash - 3));
    xi.A = parse_power_token(spec.substr(dash + 1));
    return xi;
  }
  if (spec.rfind("paper-g", 0) == 0) {
    // paper-g<g>-a-log<k>-<power>
    size_t alog = spec.find("-a-log");
    if (alog == std::string::npos) throw ConfigError("xi family: expected paper-g<g>-a-log<k>-<power>");
    xi.kind = Kind::PaperXi;
    xi.g = std::stoull(spec.substr(7, alog - 7));
    std::string rest = spec.substr(alog + 6);
    size_t dash = rest.find('-');
    if (dash == std::string::npos) throw ConfigError("xi family: expected paper-g<g>-a-log<k>-<power>");
    xi.a_k = std::stoi(rest.substr(0, dash));
    xi.a_A = parse_power_token(rest.substr(dash + 1));
    return xi;
  }
  throw ConfigError("xi family: unknown spec '" + spec + "'");
}

QClassResult q_class_membership(const FactoredModulus& q, const XiFamily& xi) {
  QClassResult r;
  double xiq = xi((double)q.q);
  if (!(xiq > 1)) throw DomainError("q_class_membership: xi(q) must exceed 1");
  r.recip_sum = q.prime_recip_sum.to_double();
  r.log_xi = std::log(xiq);
  r.member = r.recip_sum < r.log_xi;  // exact rational vs double boundary
  r.borderline = std::abs(r.recip_sum - r.log_xi) <= 1e-12;
  return r;
}

CestologReport cestolog_report(const MultiplicativeModel& f, u64 k, u64 x, const XiFamily& xi) {
  if (k < 2) throw DomainError("cestolog_report: k >= 2");
  CestologReport rep;
  rep.x = x;
  rep.k = k;
  rep.xi_x = xi((double)x);

  std::vector<cplx> ext = f.extend_to(x);
  KahanCplx mean_acc;
  for (u64 n = 1; n <= x; ++n) mean_acc.add(ext[n]);
  rep.mean = std::abs(mean_acc.value()) / (double)x;
  rep.hypothesis = rep.mean > 1.0 / rep.xi_x;

  u64 lo = (u64)std::floor(std::sqrt((double)x)) + 1;
  rep.lhs = max_log_mean(ext, lo, x) + 1.0 / std::log((double)x);

  double k2 = (double)(k * k);
  double lxi = std::log(rep.xi_x);
  double inner = 19.0 * k2 * lxi;  // log(xi^{19k^2})
  double log_rhs_a = inner > 700 ? -1e308 : -38.0 * k2 * std::exp(inner) * lxi;
  rep.log10_rhs_a = log_rhs_a / std::log(10.0);
  rep.rhs_a = log_rhs_a < -700 ? 0.0 : std::exp(log_rhs_a);
  rep.ratio_a = rep.rhs_a > 0 ? rep.lhs / rep.rhs_a : std::numeric_limits<double>::infinity();
  if (k % 2 == 1) {
    double log_rhs_b = -72.0 * k2 * lxi;
    rep.log10_rhs_b = log_rhs_b / std::log(10.0);
    rep.rhs_b = std::exp(log_rhs_b);
    rep.ratio_b = rep.lhs / *rep.rhs_b;
  }
  return rep;
}

}  // namespace charlab
