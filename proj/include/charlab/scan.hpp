#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "charlab/common.hpp"

namespace charlab {

struct ScanConfig {
  u64 qmin = 3;
  u64 qmax = 100;
  std::optional<u64> order;
  std::optional<int> parity;  // +1 even, -1 odd
  std::vector<std::string> eps_tokens = {"0.1", "0.25", "0.5"};
  double twist_T = 1.0;
  u64 q_cap = 2'000'000;  // guard for dense per-character tables
  int threads = 0;   // 0 = hardware concurrency
  u64 seed = 0;
  bool prime_q = false;  // restrict to prime moduli
  bool timings = false;  // real per-row wall times break byte-identity; off by default

  std::vector<double> eps_values() const;
  std::string canonical_string() const;
  u64 hash() const;
};

// Streams the CSV: config-hash header line, the fixed schema header, one row
// per primitive character in (q, label) order, and the rank-correlation
// footer. Byte-identical across runs and thread counts (with timings off).
void run_scan(const ScanConfig& cfg, std::ostream& out);

}  // namespace charlab
