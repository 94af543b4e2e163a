#pragma once

#include <random>

#include "charlab/characters.hpp"

namespace charlab {

// The fixed families behind calibration runs and the identity suites.
// Everything here is deterministic; the seeded pickers use mt19937_64 so a
// seed pins the family across runs and machines.

// All primitive non-principal characters with qmin <= q <= qmax, in
// (q, exponent-list) order, optionally restricted to a set of orders.
inline std::vector<DirichletCharacter> primitive_family(u64 qmin, u64 qmax,
                                                        const std::vector<u64>& orders = {}) {
  std::vector<DirichletCharacter> out;
  for (u64 q = qmin; q <= qmax; ++q) {
    CharacterFilter f;
    f.primitive_only = true;
    for (auto& chi : enumerate_characters(q, f)) {
      if (chi.is_principal()) continue;
      if (!orders.empty()) {
        bool ok = false;
        for (u64 o : orders) ok = ok || chi.order() == o;
        if (!ok) continue;
      }
      out.push_back(std::move(chi));
    }
  }
  return out;
}

// Seeded sample without replacement from a pool.
inline std::vector<DirichletCharacter> seeded_sample(std::vector<DirichletCharacter> pool,
                                                     std::size_t count, u64 seed) {
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  return pool;
}

// Character-derived f family for the convolution suite: 50 seeded primitive
// characters of order 2..6 with q <= 60.
inline std::vector<DirichletCharacter> convolution_family(u64 seed) {
  return seeded_sample(primitive_family(3, 60, {2, 3, 4, 5, 6}), 50, seed);
}

// Calibration family for the revtonn / hildebrand caps: the 12 smallest
// primitive characters of order 2..6 with q <= 50, in canonical order.
inline std::vector<DirichletCharacter> mean_value_family() {
  auto pool = primitive_family(3, 50, {2, 3, 4, 5, 6});
  if (pool.size() > 12) pool.resize(12);
  return pool;
}

// Calibration family for C_E: primitive quadratic and cubic characters with
// q <= 200.
inline std::vector<DirichletCharacter> equiv_family() {
  return primitive_family(3, 200, {2, 3});
}

inline constexpr u64 kFamilySeed = 0x5eeded;

}  // namespace charlab
