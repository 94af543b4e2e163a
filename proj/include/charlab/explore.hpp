#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "charlab/common.hpp"

namespace charlab {

// Arguments for the exploratory reporters. These only record finite-scale
// observations of asymptotic statements; nothing here asserts.
struct ExploreArgs {
  std::string target;                  // cestolog | hmt | orders | hildebrand
  std::string char_spec;               // "q=..;e=.." (cestolog, hmt, hildebrand)
  std::string synthetic;               // "minus-one" | "root:a/m" alternative to char_spec
  u64 x = 100'000;
  std::optional<double> T;
  std::string xi = "log2-quarter";
  u64 q = 0;                           // orders target
  std::optional<u64> order;            // orders target: chi filter
  std::string psi_spec;                // orders target: explicit psi (optional)
};

// Emits the reporter's record as JSON with stable key order.
void run_explore(const ExploreArgs& args, std::ostream& out);

}  // namespace charlab
