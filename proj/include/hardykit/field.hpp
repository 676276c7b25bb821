#pragma once

#include <string>
#include <vector>

#include "hardykit/space.hpp"

namespace hardykit {

// A real value per vertex. Plays the roles of u (test function), g (gradient
// candidate) and h (potential weight); a field qualifying as a gradient
// candidate additionally has all values in [0,1].
struct Field {
  std::vector<double> values;

  Field() = default;
  explicit Field(std::vector<double> v) : values(std::move(v)) {}

  static Field constant(const Space& space, double c) {
    return Field(std::vector<double>(space.vertex_count(), c));
  }

  static Field zeros(const Space& space) { return constant(space, 0.0); }

  // Indicator of a vertex set.
  static Field indicator(const Space& space, const std::vector<int>& set);

  // Field file format: { "values": { vertexId: number, ... } }. Every vertex
  // must be present.
  static Field from_json_text(const Space& space, const std::string& text);

  double operator[](int v) const { return values[v]; }
  double& operator[](int v) { return values[v]; }
  size_t size() const { return values.size(); }

  std::string to_json_text(const Space& space) const;
};

void check_field(const Space& space, const Field& f);

// True iff all values lie in [0,1] (gradient-candidate subtype).
bool is_gradient_field(const Field& f);

// True iff all values are >= 0.
bool is_nonnegative(const Field& f);

}  // namespace hardykit
