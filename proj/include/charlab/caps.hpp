#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "charlab/common.hpp"

namespace charlab {

// One frozen calibration constant with its provenance. The caps file turns
// every unspecified implied constant into an auditable artifact: calibrate
// runs a fixed family, records the worst case, and freezes the cap with 50%
// headroom. Verification refuses tampered files (hash mismatch).
struct CapEntry {
  std::string name;        // C_P, C_E, c_R, c_H
  double value = 0;        // the frozen cap
  double raw = 0;          // worst observed value before headroom
  double headroom = 0.5;
  std::string family;      // the calibration family, human-readable
  std::string worst_case;  // which member attained the worst value
};

struct Caps {
  std::vector<CapEntry> entries;

  const CapEntry& get(const std::string& name) const;
  double value(const std::string& name) const { return get(name).value; }
  u64 hash() const;

  void save(const std::string& path) const;
  static Caps load(const std::string& path);  // ConfigError on missing/tampered
};

// Run the documented calibration families and freeze the four caps.
// Deterministic: rerunning yields an identical file.
Caps calibrate(std::ostream* progress = nullptr);

}  // namespace charlab
