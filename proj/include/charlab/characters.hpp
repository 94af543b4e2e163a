#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "charlab/arith.hpp"
#include "charlab/unitvalue.hpp"

namespace charlab {

// One prime-power block of (Z/q)* with its canonical generators and discrete
// logs. Full log tables are built for q <= 10^6; larger moduli fall back to
// baby-step/giant-step per evaluation.
struct ComponentInfo {
  u64 p = 0;
  int e = 0;
  u64 pe = 1;                                // p^e
  std::vector<std::pair<u64, u64>> gens;     // (generator, order)
  bool has_table = false;
  std::vector<u32> table;                    // per coprime residue: packed exponents
};

// Immutable per-modulus data shared by every character mod q: factorization,
// component generators, log tables, the logs of -1. Built once, cached.
class ModulusContext {
 public:
  static std::shared_ptr<const ModulusContext> get(u64 q);

  const FactoredModulus& modulus() const { return fm_; }
  u64 q() const { return fm_.q; }
  const std::vector<ComponentInfo>& components() const { return comps_; }
  const std::vector<u64>& gen_orders() const { return gen_orders_; }
  const std::vector<u64>& minus_one_log() const { return minus1_log_; }

  // exponent vector of n (coprime to q) against the generator list;
  // returns false when gcd(n, q) > 1
  bool dlog(u64 n, std::vector<u64>& out) const;

  explicit ModulusContext(FactoredModulus fm);

 private:
  FactoredModulus fm_;
  std::vector<ComponentInfo> comps_;
  std::vector<u64> gen_orders_;   // flattened across components
  std::vector<u64> minus1_log_;
};

// A Dirichlet character mod q, identified by its exponent list against the
// canonical generator basis: the value on generator g_i of order d_i is
// e(exponents[i] / d_i). Immutable value type.
class DirichletCharacter {
 public:
  DirichletCharacter();  // trivial character mod 1
  DirichletCharacter(std::shared_ptr<const ModulusContext> ctx, std::vector<u64> exponents);

  static DirichletCharacter principal(u64 q);
  static DirichletCharacter from_exponents(u64 q, std::vector<u64> exponents);
  static DirichletCharacter parse(const std::string& label);  // "q=12;e=1,2"
  static DirichletCharacter from_conrey(u64 q, u64 index);

  u64 modulus() const { return ctx_->q(); }
  const FactoredModulus& factored_modulus() const { return ctx_->modulus(); }
  const std::shared_ptr<const ModulusContext>& context() const { return ctx_; }
  const std::vector<u64>& exponents() const { return exps_; }

  u64 order() const { return order_; }
  int parity() const { return parity_; }      // chi(-1): +1 even, -1 odd
  u64 conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == ctx_->q(); }
  bool is_principal() const { return order_ == 1; }

  UnitValue eval(i64 n) const;
  cplx eval_c(i64 n) const { return eval(n).to_complex(); }

  // primitive character of modulus conductor() inducing this one
  DirichletCharacter primitive_part() const;
  // the character mod M (q | M) induced by this one
  DirichletCharacter induced_to(u64 M) const;

  std::string label() const;
  u64 conrey_index() const;

  bool operator==(const DirichletCharacter& o) const {
    return modulus() == o.modulus() && exps_ == o.exps_;
  }
  bool operator!=(const DirichletCharacter& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const ModulusContext> ctx_;
  std::vector<u64> exps_;
  u64 order_ = 1;
  int parity_ = 1;
  u64 conductor_ = 1;
};

DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b);
DirichletCharacter conjugate(const DirichletCharacter& chi);

// Least n >= 1 with chi(n) not in {0, 1}; nullopt for principal characters.
std::optional<u64> n_chi(const DirichletCharacter& chi);

struct CharacterFilter {
  std::optional<u64> order;
  std::optional<int> parity;
  bool primitive_only = false;
};

// All characters mod q matching the filter, in lexicographic order of
// exponent lists. Without a filter, exactly phi(q) characters.
std::vector<DirichletCharacter> enumerate_characters(u64 q, const CharacterFilter& filter = {});

// chi(n) for n = 0..q-1 as complex doubles, one evaluation each.
std::vector<cplx> period_value_table(const DirichletCharacter& chi);

}  // namespace charlab
