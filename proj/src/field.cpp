#include "hardykit/field.hpp"

#include <cmath>

#include <json.hpp>

namespace hardykit {

Field Field::indicator(const Space& space, const std::vector<int>& set) {
  Field f = zeros(space);
  for (int v : set) {
    space.id_of(v);
    f.values[v] = 1.0;
  }
  return f;
}

Field Field::from_json_text(const Space& space, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("values") || !j.at("values").is_object())
    throw ParseError("field file: expected object with map 'values'");
  Field f = zeros(space);
  std::vector<char> have(space.vertex_count(), 0);
  for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it) {
    int v = space.index_of(it.key());
    f.values[v] = it.value().get<double>();
    have[v] = 1;
  }
  for (int v = 0; v < space.vertex_count(); ++v)
    if (!have[v]) throw ValidationError("field file: missing vertex " + space.id_of(v));
  return f;
}

std::string Field::to_json_text(const Space& space) const {
  check_field(space, *this);
  nlohmann::ordered_json vals;
  for (int v = 0; v < space.vertex_count(); ++v) vals[space.id_of(v)] = values[v];
  nlohmann::ordered_json j;
  j["values"] = vals;
  return j.dump(2);
}

void check_field(const Space& space, const Field& f) {
  if (static_cast<int>(f.values.size()) != space.vertex_count())
    throw ValidationError("field is not defined on every vertex");
  for (double x : f.values)
    if (!std::isfinite(x)) throw ValidationError("field has a non-finite value");
}

bool is_gradient_field(const Field& f) {
  for (double x : f.values)
    if (!(x >= 0.0 && x <= 1.0)) return false;
  return true;
}

bool is_nonnegative(const Field& f) {
  for (double x : f.values)
    if (!(x >= 0.0)) return false;
  return true;
}

}  // namespace hardykit
