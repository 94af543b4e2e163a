#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charlab/characters.hpp"

namespace charlab {

struct SeriesOptions {
  u64 dense_limit = 1ULL << 24;  // keep full prefix arrays up to here
  bool allow_streaming = true;   // above dense_limit keep running maxima only
};

// Prefix data for the Cesaro sum S(t) = sum_{n<=t} chi(n) and the
// logarithmic sum L(N) = sum_{n<=N} chi(n)/n, with running maxima.
struct SumSeries {
  DirichletCharacter chi;
  u64 limit = 0;
  bool dense = false;
  std::vector<cplx> cesaro;        // S(t) at index t (0..limit) when dense
  cplx period_sum{};               // S(q)
  cplx logsum{};                   // L(limit)
  double pv_max = 0;               // max_t |S(t)|, t <= limit
  u64 pv_argmax = 0;               // smallest maximizing t
  double log_max = 0;              // max_N |L(N)|
  u64 log_argmax = 0;

  cplx cesaro_at(u64 t) const;     // uses periodicity when t exceeds storage
};

SumSeries build_series(const DirichletCharacter& chi, u64 T, const SeriesOptions& opts = {});

// Exact Cesaro prefixes as cyclotomic integers (index t, 0..T).
std::vector<CyclotomicSum> exact_prefix_sums(const DirichletCharacter& chi, u64 T);

// tau(chi) = sum_{a mod q} chi(a) e(a/q), direct summation (q <= 10^6).
cplx gauss_sum(const DirichletCharacter& chi);

struct PolyaError {
  double sup_error = 0;
  u64 argmax_t = 0;
};

// Sup over 1 <= t <= q of |S(t) - truncated Fourier expansion at theta=t/q|,
// truncation at |n| <= q. Primitive chi, q >= 3.
PolyaError polya_expansion_error(const DirichletCharacter& chi);

// sum over 1 <= n <= N (or 1 <= |n| <= N) of chi(n) e(n alpha) / n
cplx twisted_log_sum(const DirichletCharacter& chi, double alpha, u64 N, bool two_sided);
// same with alpha = b/r evaluated through an exact root table
cplx twisted_log_sum_rational(const DirichletCharacter& chi, u64 b, u64 r, u64 N, bool two_sided);

struct IdentityCheck {
  cplx lhs{};
  cplx rhs{};
  double abs_diff = 0;
};

// Scoped memo for the identity grids: period tables, Gauss sums and product
// characters recur across (b, r, N) tuples. One instance per thread.
class CharTableCache {
 public:
  const std::vector<cplx>& table(const DirichletCharacter& chi);
  cplx gauss(const DirichletCharacter& chi);
  const DirichletCharacter& product(const DirichletCharacter& a, const DirichletCharacter& b);

 private:
  std::map<std::string, std::vector<cplx>> tables_;
  std::map<std::string, cplx> gauss_;
  std::map<std::string, DirichletCharacter> products_;
};

// Both sides of the character-decomposition identity for
// sum_{1<=|n|<=N} chi psi(n) e(bn/r)/n; gcd(b, r) = 1 required.
IdentityCheck gs_identity_check(const DirichletCharacter& chi, const DirichletCharacter& psi,
                                u64 b, u64 r, u64 N, CharTableCache* cache = nullptr);

// Both sides of the orthogonality twist: averaging psi-bar(b) against the
// two-sided sums of chi(n)(1 - e(nb/l))/n collapses to the Gauss-sum twist.
// Requires chi psi odd and psi primitive non-principal.
IdentityCheck orthogonality_twist_check(const DirichletCharacter& chi,
                                        const DirichletCharacter& psi, u64 N);

struct RationalApprox {
  double alpha = 0;
  u64 b = 0;
  u64 r = 1;
  double err = 0;
  bool major = false;  // r <= M
};

// Continued-fraction convergent b/r with r <= R and |alpha - b/r| <= 1/(rR);
// smallest admissible r wins. Arc split at r <= M.
RationalApprox dirichlet_approx(double alpha, double R, double M);

// Default arc thresholds: R = (log q)^5, M = a(q)^{2/3}.
inline std::pair<double, double> default_arc_thresholds(double q, double a_q) {
  double R = std::pow(std::log(q), 5.0);
  double M = std::pow(std::max(a_q, 1.0), 2.0 / 3.0);
  return {R, std::min(std::max(M, 1.0), R)};
}

struct SavingsProfile {
  u64 q = 0;
  double pv_max = 0;
  u64 pv_argmax = 0;
  double a_q = 0;  // sqrt(q) log q / pv_max
  std::vector<double> eps_grid;
  std::vector<double> delta_eps;  // max over q^eps < t <= q of |S(t)|/t
  std::optional<u64> nchi;
};

SavingsProfile savings_profile(const DirichletCharacter& chi, const std::vector<double>& eps_grid);

// (log_2 a / log a)^{1/(19 g^2)}: the short-sum bound shape, divided by t.
// Requires a > e^e.
double thmgen_rhs(u64 g, double a_of_t);

// 1 - (g/pi) sin(pi/g) for odd g >= 3.
double delta_g(u64 g);

}  // namespace charlab
