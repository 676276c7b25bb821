#include "hardykit/certificate.hpp"

#include <json.hpp>

namespace hardykit {

double Certificate::constant(const std::string& name) const {
  for (const auto& kv : constants)
    if (kv.first == name) return kv.second;
  throw ValidationError("certificate has no constant named " + name);
}

bool Certificate::has_constant(const std::string& name) const {
  for (const auto& kv : constants)
    if (kv.first == name) return true;
  return false;
}

std::string Certificate::to_json_text(const Space& space) const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["pass"] = pass;
  j["eps"] = eps;
  nlohmann::ordered_json consts;
  for (const auto& kv : constants) consts[kv.first] = kv.second;
  j["constants"] = consts;
  if (witness_path) {
    nlohmann::ordered_json p;
    p["vertices"] = nlohmann::ordered_json::array();
    for (int v : witness_path->vertices) p["vertices"].push_back(space.id_of(v));
    p["length"] = witness_path->length;
    j["witness_path"] = p;
  }
  if (witness_values) {
    nlohmann::ordered_json vals;
    for (int v = 0; v < space.vertex_count(); ++v) vals[space.id_of(v)] = (*witness_values)[v];
    j["witness_values"] = vals;
  }
  if (!notes.empty()) j["notes"] = notes;
  return j.dump(2);
}

}  // namespace hardykit
