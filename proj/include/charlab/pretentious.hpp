#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charlab/characters.hpp"

namespace charlab {

// A completely multiplicative function given by its values on primes up to a
// limit. Values are roots of unity or zero (held exactly when possible) or
// arbitrary unimodular complex numbers (the n^{it} twists).
class MultiplicativeModel {
 public:
  enum class Provenance { Character, Synthetic, Twisted };

  static MultiplicativeModel from_character(const DirichletCharacter& chi, u64 prime_limit);
  static MultiplicativeModel constant_root(const UnitValue& v, u64 prime_limit);
  static MultiplicativeModel twisted(double t, u64 prime_limit);  // f(p) = p^{it}
  static MultiplicativeModel one(u64 prime_limit) { return constant_root(UnitValue::one(), prime_limit); }

  Provenance provenance() const { return prov_; }
  u64 prime_limit() const { return prime_limit_; }
  u64 character_modulus() const { return char_modulus_; }
  u64 order_hint() const { return order_hint_; }

  const std::vector<u64>& primes() const { return primes_; }
  const std::vector<cplx>& values() const { return values_; }
  bool has_units() const { return !units_.empty(); }
  const std::vector<UnitValue>& units() const { return units_; }

  // zeros replaced by 1 (the f-tilde of the bounded-order machinery)
  MultiplicativeModel zeros_to_one() const;

  // complete multiplicative extension to 1..x through the SPF sieve
  std::vector<cplx> extend_to(u64 x) const;

 private:
  Provenance prov_ = Provenance::Synthetic;
  u64 prime_limit_ = 0;
  u64 char_modulus_ = 0;
  u64 order_hint_ = 0;  // value order for character/root models, else 0
  std::vector<u64> primes_;
  std::vector<cplx> values_;
  std::vector<UnitValue> units_;  // parallel to primes_ when exact
};

// Squared pretentious distance: sum over p <= x, p not dividing exclude_r,
// of (1 - Re f1(p) conj(f2(p))) / p. Models must cover primes <= x.
double distance(const MultiplicativeModel& f1, const MultiplicativeModel& f2, double x,
                u64 exclude_r = 1);

struct DistanceReport {
  double x = 0;
  double T = 0;
  double d0_squared = 0;     // distance to 1 (t = 0)
  double t_star = 0;         // minimizing t in [-T, T]
  double d_min_squared = 0;  // squared distance to n^{it_star}
  double grid_spacing = 0;
  int refine_iterations = 0;
  double c_gs = 2.0;
  double lambda = 0;  // d_min^2 + log(1 + |t*|) + c_gs
  double eta = 0;     // 1 / (lambda e^lambda)
};

// Grid search with spacing 1/(4 log x) plus golden-section refinement down
// to |t| resolution 1e-6. The grid cannot miss minima wider than ~1/log x,
// which covers these objectives at desk scale (heuristic, not a theorem).
DistanceReport min_distance_over_t(const MultiplicativeModel& f, double x, double T,
                                   double c_gs = 2.0);

struct HmtResult {
  DistanceReport dist;
  double bound = 0;  // D e^{-D} + 1/sqrt(T), D = d_min_squared
  double mean = 0;   // |(1/x) sum_{n<=x} f(n)|
  double ratio = 0;  // mean / bound, the observable implied constant
};

HmtResult hmt_bound(const MultiplicativeModel& f, u64 x, double T);

struct EquivGap {
  double lhs = 0;       // sqrt of min-distance over t
  double rhs_core = 0;  // (1/2k) min(sqrt(log log x), sqrt(distance(f,1)))
  double gap = 0;       // lhs - rhs_core; the O(1) lives in the calibrated cap
};

// Zeros are mapped to 1 first; every remaining value must be an exact k-th
// root of unity (1e-12 tolerance on the unimodular path).
EquivGap equiv_gap(const MultiplicativeModel& f, double x, double T, u64 k);

struct TwistEntry {
  u64 conductor = 0;
  u64 order = 0;
  std::string label;
  double dist = 0;       // min over |t| <= T of D(chi psi-bar, n^{it}; q)^2
  double threshold = 0;  // log log q / (3 (g k)^2)
  bool below = false;
};

struct OrdersReport {
  u64 q = 0;
  u64 g = 0;
  double T = 0;
  TwistEntry pair;            // the explicitly supplied psi
  bool k_divides_g = false;
  bool dichotomy_violated = false;  // distance below threshold while k does not divide g
  bool conductor_warning = false;   // m > log q
  int count_below = 0;              // over the conductor <= log q scan
  std::optional<TwistEntry> nearest;
  std::vector<TwistEntry> scanned;
};

// Scan all primitive psi with conductor <= log q; each entry gets its own
// order-dependent threshold. Deterministic order: (conductor, label).
std::vector<TwistEntry> twist_scan(const DirichletCharacter& chi, double T);

OrdersReport orders_report(const DirichletCharacter& chi, const DirichletCharacter& psi,
                           double T);

}  // namespace charlab
