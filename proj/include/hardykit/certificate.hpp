#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardykit/curves.hpp"

namespace hardykit {

// Uniform record of one inequality check: lhs <= rhs up to the additive
// tolerance, the constants that entered the computation, and optional
// witnesses (a path, a field). For inequality kinds pass <=> lhs <= rhs + eps.
struct Certificate {
  std::string kind;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double eps = kEpsNum;
  std::vector<std::pair<std::string, double>> constants;  // insertion order
  std::optional<PathRec> witness_path;
  std::optional<std::vector<double>> witness_values;
  std::vector<std::string> notes;

  void set_constant(const std::string& name, double value) {
    for (auto& kv : constants)
      if (kv.first == name) {
        kv.second = value;
        return;
      }
    constants.emplace_back(name, value);
  }

  double constant(const std::string& name) const;
  bool has_constant(const std::string& name) const;

  // Evaluates and stores pass = lhs <= rhs + eps.
  void certify() { pass = lhs <= rhs + eps; }

  std::string to_json_text(const Space& space) const;
};

}  // namespace hardykit
