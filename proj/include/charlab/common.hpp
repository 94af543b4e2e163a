#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace charlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Bad argument (violated precondition).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input exceeds a documented size/memory limit.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken configuration, missing/tampered caps file, bad CLI usage.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Kahan-compensated accumulator.
template <typename T>
struct Kahan {
  T sum{};
  T comp{};
  void add(T v) {
    T y = v - comp;
    T t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  T value() const { return sum; }
};

using KahanReal = Kahan<double>;

struct KahanCplx {
  KahanReal re, im;
  void add(cplx v) {
    re.add(v.real());
    im.add(v.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// FNV-1a, used for config/caps hashes (stability matters, cryptography does not).
inline u64 fnv1a(const std::string& s) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace charlab
