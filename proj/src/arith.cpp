#include "charlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <numeric>

namespace charlab {

u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 powmod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic witness set below 3.3e24, far beyond 2^64
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

static u128 gcd_u128(u128 a, u128 b) {
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat128 Rat128::reciprocal(u64 n) {
  Rat128 r;
  r.num = n == 0 ? 0 : 1;
  r.den = n == 0 ? 1 : n;
  return r;
}

Rat128& Rat128::operator+=(const Rat128& o) {
  u128 g = gcd_u128(den, o.den);
  u128 d = den / g * o.den;
  num = num * (o.den / g) + o.num * (den / g);
  den = d;
  g = gcd_u128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return *this;
}

double Rat128::to_double() const {
  return (double)((long double)num / (long double)den);
}

// ---------------------------------------------------------------------------
// SPF sieve cache
// ---------------------------------------------------------------------------

namespace {

u32 g_spf_bound = 10'000'000;
std::vector<u32> g_spf;
std::once_flag g_spf_once;

void build_spf() {
  u32 n = g_spf_bound;
  g_spf.assign(n + 1, 0);

  const char* dir = std::getenv("CHARLAB_CACHE_DIR");
  std::string path;
  if (dir && *dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    path = std::string(dir) + "/spf_" + std::to_string(n) + ".bin";
    if (FILE* f = std::fopen(path.c_str(), "rb")) {
      size_t got = std::fread(g_spf.data(), sizeof(u32), g_spf.size(), f);
      std::fclose(f);
      if (got == g_spf.size()) return;
    }
  }

  for (u64 i = 2; i <= n; ++i) {
    if (g_spf[i] == 0) {
      for (u64 j = i; j <= n; j += i) {
        if (g_spf[j] == 0) g_spf[j] = (u32)i;
      }
    }
  }

  if (!path.empty()) {
    if (FILE* f = std::fopen(path.c_str(), "wb")) {
      std::fwrite(g_spf.data(), sizeof(u32), g_spf.size(), f);
      std::fclose(f);
    }
  }
}

}  // namespace

const std::vector<u32>& spf_table() {
  std::call_once(g_spf_once, build_spf);
  return g_spf;
}

void set_spf_limit(u32 bound) {
  if (!g_spf.empty() && bound != g_spf_bound)
    throw ConfigError("spf sieve already built; set the limit before first use");
  g_spf_bound = std::max<u32>(bound, 16);
}

u32 spf_limit() { return g_spf_bound; }

std::vector<u64> primes_up_to(u64 x) {
  std::vector<u64> out;
  if (x < 2) return out;
  const auto& spf = spf_table();
  if (x < spf.size()) {
    for (u64 i = 2; i <= x; ++i)
      if (spf[i] == i) out.push_back(i);
    return out;
  }
  out.reserve((size_t)(x / std::log((double)x) * 1.15) + 16);
  for_each_prime(x, [&](u64 p) { out.push_back(p); });
  return out;
}

void for_each_prime(u64 x, const std::function<void(u64)>& fn) {
  if (x > 1'000'000'000ULL)
    throw ResourceError("prime enumeration supported up to 10^9");
  if (x < 2) return;

  const auto& spf = spf_table();
  u64 head = std::min<u64>(x, spf.size() - 1);
  for (u64 i = 2; i <= head; ++i)
    if (spf[i] == i) fn(i);
  if (head == x) return;

  // segmented sieve above the SPF table
  u64 root = (u64)std::sqrt((double)x) + 1;
  std::vector<u64> base = primes_up_to(std::min<u64>(root, spf.size() - 1));
  const u64 seg = 1 << 20;
  std::vector<char> mark(seg);
  for (u64 lo = head + 1; lo <= x; lo += seg) {
    u64 hi = std::min(x, lo + seg - 1);
    std::fill(mark.begin(), mark.end(), 0);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 j = start; j <= hi; j += p) mark[j - lo] = 1;
    }
    for (u64 i = lo; i <= hi; ++i)
      if (!mark[i - lo]) fn(i);
  }
}

double mertens_prime_sum(double x) { return mertens_prime_sum(x, nullptr); }

double mertens_prime_sum(double x, const std::function<double(u64)>& weight) {
  if (x < 2) throw DomainError("mertens_prime_sum needs x >= 2");
  KahanReal acc;
  for_each_prime((u64)x, [&](u64 p) {
    double w = weight ? weight(p) : 1.0;
    acc.add(w / (double)p);
  });
  return acc.value();
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

namespace {

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  u64 c = 1;
  while (true) {
    u64 x = 2, y = 2, d = 1;
    u64 saved = 1;
    int count = 0;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      u64 diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      saved = mulmod(saved, diff, n);
      if (++count == 64) {
        d = gcd_u64(saved, n);
        saved = 1;
        count = 0;
      }
    }
    if (d == 1) d = gcd_u64(saved, n);
    if (d != 1 && d != n) return d;
    ++c;
  }
}

void factor_rec(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

}  // namespace

FactoredModulus factorize(u64 n) {
  if (n == 0) throw DomainError("factorize(0)");
  FactoredModulus fm;
  fm.q = n;

  std::vector<u64> primes;
  const auto& spf = spf_table();
  u64 m = n;
  if (m < spf.size()) {
    while (m > 1) {
      primes.push_back(spf[m]);
      m /= spf[m];
    }
  } else {
    // trial division by sieved primes up to min(sqrt(m), 10^6), rho beyond
    for (u64 p = 2; p * p <= m && p <= 1'000'000; p = (p == 2 ? 3 : p + 2)) {
      if (p >= spf.size()) break;
      if (spf[p] != p) continue;
      while (m % p == 0) {
        primes.push_back(p);
        m /= p;
      }
    }
    if (m > 1) factor_rec(m, primes);
  }
  std::sort(primes.begin(), primes.end());

  fm.phi = 1;
  for (size_t i = 0; i < primes.size();) {
    u64 p = primes[i];
    int e = 0;
    while (i < primes.size() && primes[i] == p) ++e, ++i;
    fm.factors.emplace_back(p, e);
    fm.radical *= p;
    fm.prime_recip_sum += Rat128::reciprocal(p);
    fm.phi *= p - 1;
    for (int k = 1; k < e; ++k) fm.phi *= p;
  }
  return fm;
}

u64 multiplicative_order(u64 a, const FactoredModulus& m) {
  a %= m.q;
  if (m.q == 1) return 1;
  if (gcd_u64(a, m.q) != 1)
    throw DomainError("multiplicative_order: gcd(a, q) != 1");
  u64 d = m.phi;
  FactoredModulus pf = factorize(m.phi);
  for (auto [p, e] : pf.factors) {
    for (int k = 0; k < e; ++k) {
      if (powmod(a, d / p, m.q) == 1)
        d /= p;
      else
        break;
    }
  }
  return d;
}

std::vector<std::pair<u64, u64>> unit_group_generators(u64 p, int e) {
  if (e < 1 || !is_prime(p)) throw DomainError("unit_group_generators: p^e not a prime power");
  std::vector<std::pair<u64, u64>> gens;
  if (p == 2) {
    if (e == 1) return gens;
    if (e == 2) {
      gens.emplace_back(3, 2);
      return gens;
    }
    u64 q = 1ULL << e;
    gens.emplace_back(q - 1, 2);
    gens.emplace_back(5, q >> 2);
    return gens;
  }

  u64 pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  u64 phi = pe / p * (p - 1);

  // smallest primitive root mod p; for e >= 2 additionally require
  // g^{p-1} != 1 mod p^2 (then g generates mod every power)
  FactoredModulus fp1 = factorize(p - 1);
  u64 p2 = e >= 2 ? p * p : p;
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (auto [r, _] : fp1.factors) {
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok && e >= 2 && powmod(g, p - 1, p2) == 1) ok = false;
    if (ok) {
      gens.emplace_back(g, phi);
      return gens;
    }
  }
}

u64 coprime_count(u64 t, const FactoredModulus& q) {
  if (t == 0) return 0;
  std::vector<u64> ps;
  for (auto [p, _] : q.factors) ps.push_back(p);
  size_t k = ps.size();
  u64 total = 0;
  for (u64 mask = 0; mask < (1ULL << k); ++mask) {
    u64 d = 1;
    bool odd = __builtin_popcountll(mask) & 1;
    for (size_t i = 0; i < k; ++i)
      if (mask >> i & 1) d *= ps[i];
    if (odd)
      total -= t / d;
    else
      total += t / d;
  }
  return total;
}

}  // namespace charlab
