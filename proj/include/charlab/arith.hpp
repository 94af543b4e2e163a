#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "charlab/common.hpp"

namespace charlab {

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

// Exact nonnegative rational with 128-bit numerator/denominator, kept in
// lowest terms. Wide enough for sums of 1/p over the distinct prime
// divisors of any 64-bit modulus (denominator divides the radical).
struct Rat128 {
  u128 num = 0;
  u128 den = 1;

  static Rat128 reciprocal(u64 n);
  Rat128& operator+=(const Rat128& o);
  bool operator==(const Rat128& o) const { return num == o.num && den == o.den; }
  double to_double() const;
};

struct FactoredModulus {
  u64 q = 1;
  std::vector<std::pair<u64, int>> factors;  // (prime, exponent), increasing p
  u64 phi = 1;
  u64 radical = 1;
  Rat128 prime_recip_sum;  // sum of 1/p over distinct prime factors, exact
};

// Complete factorization: SPF sieve below the cached bound, trial division
// by sieved primes, Pollard rho above 10^12. n = 0 is a domain error.
FactoredModulus factorize(u64 n);

// Least d >= 1 with a^d = 1 mod q, by stripping prime factors from phi(q).
// gcd(a, q) != 1 is a domain error.
u64 multiplicative_order(u64 a, const FactoredModulus& m);

// Canonical generators of (Z/p^e)* with their orders:
//   odd p      -> {(g, phi(p^e))} with g the smallest primitive root mod p^e
//   p^e = 2    -> {}
//   p^e = 4    -> {(3, 2)}
//   p^e = 2^e, e >= 3 -> {(2^e - 1, 2), (5, 2^{e-2})}   (the <-1, 5> basis)
// The choice is load-bearing: character labels are exponents against it.
std::vector<std::pair<u64, u64>> unit_group_generators(u64 p, int e);

// #{1 <= n <= t : gcd(n, q) = 1} by Legendre/Moebius over the radical.
u64 coprime_count(u64 t, const FactoredModulus& q);

// Sum of w(p)/p over primes p <= x (w = 1 if omitted). x up to 10^9 via
// segmented sieve; above that a resource error.
double mertens_prime_sum(double x);
double mertens_prime_sum(double x, const std::function<double(u64)>& weight);

// Smallest-prime-factor sieve, built lazily once and then read-only.
// Bound configurable before first use (default 10^7); optionally persisted
// under CHARLAB_CACHE_DIR.
const std::vector<u32>& spf_table();
void set_spf_limit(u32 bound);
u32 spf_limit();

std::vector<u64> primes_up_to(u64 x);
void for_each_prime(u64 x, const std::function<void(u64)>& fn);

}  // namespace charlab
