#pragma once

#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "charlab/common.hpp"

namespace charlab {

// Exact element of {0} U {e(a/m)}: either Zero, or the root of unity e(a/m)
// with 0 <= a < m and a/m in lowest terms. All character values live here.
struct UnitValue {
  i64 num = 0;
  i64 den = 0;  // den == 0 encodes Zero; den >= 1 encodes e(num/den)

  static UnitValue zero() { return {0, 0}; }
  static UnitValue one() { return {0, 1}; }

  // e(a/m), canonicalized
  static UnitValue root(i64 a, i64 m) {
    if (m <= 0) throw DomainError("UnitValue::root: m must be positive");
    a %= m;
    if (a < 0) a += m;
    i64 g = std::gcd(a, m);
    return {a / g, m / g};
  }

  bool is_zero() const { return den == 0; }
  bool is_one() const { return den == 1 && num == 0; }

  bool operator==(const UnitValue& o) const { return num == o.num && den == o.den; }
  bool operator!=(const UnitValue& o) const { return !(*this == o); }

  UnitValue operator*(const UnitValue& o) const {
    if (is_zero() || o.is_zero()) return zero();
    return root(num * o.den + o.num * den, den * o.den);
  }

  UnitValue conj() const {
    if (is_zero()) return zero();
    return root(-num, den);
  }

  UnitValue pow(i64 k) const {
    if (is_zero()) return k == 0 ? one() : zero();
    i64 kk = (k % den + den) % den;
    i64 a = (i64)((u128)num * (u128)kk % (u128)den);
    return root(a, den);
  }

  // phase as an exact fraction of a turn, in [0, 1)
  double theta() const { return is_zero() ? 0.0 : (double)num / (double)den; }

  cplx to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (den == 1) return {1.0, 0.0};
    if (den == 2) return {-1.0, 0.0};
    if (den == 4) return num == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
    double t = kTwoPi * (double)num / (double)den;
    return {std::cos(t), std::sin(t)};
  }

  // exponent a with e(a/d) == *this, requiring den | d
  i64 exponent_for_order(i64 d) const {
    if (is_zero() || d % den != 0)
      throw DomainError("UnitValue: value is not a d-th root of unity");
    return num * (d / den);
  }
};

// Coefficients of the m-th cyclotomic polynomial (ascending degree).
std::vector<i64> cyclotomic_polynomial(i64 m);

// Exact accumulator for integer combinations of roots of unity of order
// dividing m, held as a vector in Z[x]/Phi_m(x). Canonical: two sums are
// equal as algebraic numbers iff their coefficient vectors match. The
// reduction basis is shared, so copies are cheap.
class CyclotomicSum {
 public:
  explicit CyclotomicSum(i64 m);

  i64 order() const { return m_; }
  void add(const UnitValue& v, i64 scale = 1);
  bool is_zero() const;
  bool operator==(const CyclotomicSum& o) const { return m_ == o.m_ && coeff_ == o.coeff_; }
  bool operator!=(const CyclotomicSum& o) const { return !(*this == o); }
  cplx to_complex() const;

 private:
  struct Basis {
    std::vector<std::vector<i64>> powers;  // x^j mod Phi_m, 0 <= j < m
  };
  static std::shared_ptr<const Basis> basis_for(i64 m);

  i64 m_ = 1;
  std::shared_ptr<const Basis> basis_;
  std::vector<i64> coeff_;
};

}  // namespace charlab
