#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "charlab/pretentious.hpp"

namespace charlab {

// Dense tables of f, h = 1*f and g = h * h-bar up to x, built by divisor
// sieve. g is real nonnegative up to rounding; the construction keeps the
// worst imaginary part and the minimum as diagnostics.
struct ConvolutionTable {
  u64 x = 0;
  std::vector<cplx> f;   // f(n), complete multiplicative extension
  std::vector<cplx> h;   // (1*f)(n)
  std::vector<double> g; // (1*1*f*f-bar)(n)
  double g_min = 0;
  double max_imag = 0;   // largest |Im| dropped when collapsing g to real

  double g_mean() const;  // (1/x) sum_{n<=x} g(n)
};

ConvolutionTable build_convolution(const MultiplicativeModel& f, u64 x);

// Order-N Fejer kernel (1/N)(sin(pi N t)/sin(pi t))^2, value N at integers.
double fejer_kernel(u64 N, double t);
// The defining sum form, for cross-checks: sum_{|j|<=N-1} (1-|j|/N) e(jt).
double fejer_kernel_sum_form(u64 N, double t);

// Closed form for g = 1*1*f*f-bar on prime powers, f(p) = e(theta_p):
//   g(p^k) = sum_{|w| <= k} f(p)^w floor((k+2-|w|)^2 / 4)
// (the inner count of the double sum is floor((n+1)^2/4) with n = k+1-|w|,
// not the Fejer weight n: the u+v <= k constraint survives the regrouping;
// the two agree for k <= 1, where the Fejer form (k+1)K_{k+1}(theta_p) is
// exact). When f(p) = 0 the closed form is g(p^k) = k+1. Returns the max
// over k <= kmax of |direct convolution - closed form|.
double prime_power_identity_check(const MultiplicativeModel& f, u64 p, u64 kmax);

struct RevtonnResult {
  double lhs = 0;       // max_{sqrt t <= x <= t} |(1/log x) sum f(n)/n| + 1/log t
  double rhs_core = 0;  // (1/(log t)^3) (1/t) sum_{n<=t} g(n)
  double ratio = 0;
};

RevtonnResult revtonn_check(const MultiplicativeModel& f, u64 t, u64 t0 = 100);

// Dickman-de Bruijn rho on [0, 50]: fixed-step march of the integral form
// of u rho'(u) = -rho(u-1) at step 1e-3, cross-checked against the 5e-4
// grid (Richardson); disagreement above 1e-7 fails construction.
double dickman_rho(double u);
double sigma_minus(double u);  // u * rho(u)

struct HildebrandResult {
  double lower = 0;   // exp(sum (g(p)-1)/p) * sigma_-(exp(sum max(0,1-g(p))/p))
  double actual = 0;  // (1/x) sum_{n<=x} g(n)
  double ratio = 0;
};

HildebrandResult hildebrand_lower(const MultiplicativeModel& f, u64 x);

// Named xi(t) families: (log_k t)^A, or the short-sum shape
// (log a(t) / (13 log_2 a(t)))^{1/(19 g^2)} driven by a log-power a(t).
struct XiFamily {
  enum class Kind { LogPower, PaperXi };
  Kind kind = Kind::LogPower;
  int k = 2;        // iteration depth of log
  double A = 0.5;   // exponent (LogPower)
  u64 g = 2;        // order (PaperXi)
  int a_k = 1;      // a(t) = (log_{a_k} t)^{a_A} (PaperXi)
  double a_A = 1.0;

  double operator()(double t) const;
  std::string name() const;
  static XiFamily parse(const std::string& spec);  // "log2-quarter", "paper-g3-a-log1-one"
};

struct QClassResult {
  bool member = false;      // exact: sum_{p|q} 1/p < log xi(q)
  bool borderline = false;  // within 1e-12 of equality
  double recip_sum = 0;
  double log_xi = 0;
};

QClassResult q_class_membership(const FactoredModulus& q, const XiFamily& xi);

struct CestologReport {
  u64 x = 0;
  u64 k = 0;
  double xi_x = 0;
  double mean = 0;          // |(1/x) sum f(n)|
  bool hypothesis = false;  // mean > 1/xi(x)
  double lhs = 0;           // max_{sqrt x < y <= x} |(1/log y) sum_{n<=y} f(n)/n| + 1/log x
  double rhs_a = 0;         // xi^{-38 k^2 xi^{19 k^2}} (may underflow; see log10)
  double log10_rhs_a = 0;
  std::optional<double> rhs_b;  // xi^{-72 k^2}, odd k only
  std::optional<double> log10_rhs_b;
  double ratio_a = 0;
  std::optional<double> ratio_b;
};

CestologReport cestolog_report(const MultiplicativeModel& f, u64 k, u64 x, const XiFamily& xi);

}  // namespace charlab
