#include "charlab/unitvalue.hpp"

#include <map>
#include <mutex>

namespace charlab {

namespace {

// remainder of a modulo monic b in Z[x]
std::vector<i64> poly_mod(std::vector<i64> a, const std::vector<i64>& b) {
  i64 db = (i64)b.size() - 1;
  while ((i64)a.size() - 1 >= db) {
    i64 da = (i64)a.size() - 1;
    i64 c = a.back();
    if (c != 0) {
      for (i64 i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// a / b for monic b, division known exact
std::vector<i64> poly_div_exact(const std::vector<i64>& a, const std::vector<i64>& b) {
  std::vector<i64> rem = a, q(a.size() - b.size() + 1, 0);
  i64 db = (i64)b.size() - 1;
  for (i64 i = (i64)rem.size() - 1; i >= db; --i) {
    i64 c = rem[i];
    q[i - db] = c;
    if (c != 0) {
      for (i64 j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
    }
  }
  return q;
}

std::mutex g_basis_mutex;

}  // namespace

std::vector<i64> cyclotomic_polynomial(i64 m) {
  if (m < 1) throw DomainError("cyclotomic_polynomial: m >= 1");
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
  std::vector<i64> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (i64 d = 1; d < m; ++d) {
    if (m % d == 0) num = poly_div_exact(num, cyclotomic_polynomial(d));
  }
  return num;
}

std::shared_ptr<const CyclotomicSum::Basis> CyclotomicSum::basis_for(i64 m) {
  static std::map<i64, std::shared_ptr<const Basis>> cache;
  std::lock_guard<std::mutex> lk(g_basis_mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  auto basis = std::make_shared<Basis>();
  std::vector<i64> phi = cyclotomic_polynomial(m);
  size_t deg = phi.size() - 1;
  basis->powers.resize(m);
  for (i64 j = 0; j < m; ++j) {
    std::vector<i64> xj(j + 1, 0);
    xj[j] = 1;
    std::vector<i64> r = poly_mod(std::move(xj), phi);
    r.resize(std::max<size_t>(deg, 1), 0);
    basis->powers[j] = std::move(r);
  }
  cache.emplace(m, basis);
  return cache[m];
}

CyclotomicSum::CyclotomicSum(i64 m) : m_(m) {
  if (m < 1) throw DomainError("CyclotomicSum: order >= 1");
  basis_ = basis_for(m);
  coeff_.assign(basis_->powers[0].size(), 0);
}

void CyclotomicSum::add(const UnitValue& v, i64 scale) {
  if (v.is_zero() || scale == 0) return;
  if (m_ % v.den != 0)
    throw DomainError("CyclotomicSum: value order does not divide accumulator order");
  i64 j = v.num * (m_ / v.den);
  const auto& row = basis_->powers[j];
  for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += scale * row[i];
}

bool CyclotomicSum::is_zero() const {
  for (i64 c : coeff_)
    if (c != 0) return false;
  return true;
}

cplx CyclotomicSum::to_complex() const {
  cplx z = 0;
  for (size_t i = 0; i < coeff_.size(); ++i) {
    if (coeff_[i] == 0) continue;
    double t = kTwoPi * (double)i / (double)m_;
    z += (double)coeff_[i] * cplx{std::cos(t), std::sin(t)};
  }
  return z;
}

}  // namespace charlab
