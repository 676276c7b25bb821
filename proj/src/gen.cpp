#include "hardykit/gen.hpp"

#include <sstream>

#include <json.hpp>

namespace hardykit {

namespace {

std::vector<std::string> seq_ids(int n) {
  std::vector<std::string> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = "v" + std::to_string(i);
  return ids;
}

}  // namespace

Space gen_path(int n) {
  if (n < 2) throw ValidationError("gen_path: n must be >= 2");
  std::vector<SpaceEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Space::from_parts(seq_ids(n), std::vector<double>(n, 1.0), std::move(edges));
}

Space gen_cycle(int n) {
  if (n < 3) throw ValidationError("gen_cycle: n must be >= 3");
  std::vector<SpaceEdge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Space::from_parts(seq_ids(n), std::vector<double>(n, 1.0), std::move(edges));
}

Space gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw ValidationError("gen_grid: need at least 2 vertices");
  std::vector<std::string> ids;
  ids.reserve(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      ids.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
  std::vector<SpaceEdge> edges;
  auto at = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({at(r, c), at(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({at(r, c), at(r + 1, c), 1.0});
    }
  return Space::from_parts(std::move(ids),
                           std::vector<double>(static_cast<size_t>(rows) * cols, 1.0),
                           std::move(edges));
}

std::vector<int> pattern_vertices(const Space& grid, int rows, int cols,
                                  const std::string& pattern) {
  std::vector<int> out;
  auto at = [&](int r, int c) { return grid.index_of("r" + std::to_string(r) + "c" + std::to_string(c)); };
  if (pattern == "center") {
    out.push_back(at(rows / 2, cols / 2));
  } else if (pattern == "corner") {
    out.push_back(at(0, 0));
  } else if (pattern == "cross") {
    int mr = rows / 2, mc = cols / 2;
    for (int c = 0; c < cols; ++c) out.push_back(at(mr, c));
    for (int r = 0; r < rows; ++r)
      if (r != mr) out.push_back(at(r, mc));
  } else {
    std::stringstream ss(pattern);
    std::string id;
    while (std::getline(ss, id, ',')) {
      if (!id.empty()) out.push_back(grid.index_of(id));
    }
    if (out.empty()) throw ValidationError("pattern_vertices: unknown pattern '" + pattern + "'");
  }
  return out;
}

std::string omega_json_text(const Space& space, const std::vector<int>& omega) {
  nlohmann::ordered_json j;
  j["omega"] = nlohmann::ordered_json::array();
  for (int v : omega) j["omega"].push_back(space.id_of(v));
  return j.dump(2);
}

GenResult gen_space_files(const std::string& kind, int n_or_rows, int cols,
                          const std::string& pattern, std::uint64_t /*seed*/) {
  GenResult out;
  if (kind == "path" || kind == "cycle") {
    Space s = kind == "path" ? gen_path(n_or_rows) : gen_cycle(n_or_rows);
    out.space_text = s.to_json_text();
    std::vector<int> omega;
    for (int v = 0; v + 1 < s.vertex_count(); ++v) omega.push_back(v);
    out.omega_text = omega_json_text(s, omega);
    return out;
  }
  if (kind == "grid" || kind == "grid-minus-set") {
    Space s = gen_grid(n_or_rows, cols);
    out.space_text = s.to_json_text();
    std::vector<int> removed;
    if (kind == "grid") {
      removed.push_back(s.vertex_count() - 1);
    } else {
      removed = pattern_vertices(s, n_or_rows, cols, pattern.empty() ? "center" : pattern);
    }
    std::vector<char> is_removed(s.vertex_count(), 0);
    for (int v : removed) is_removed[v] = 1;
    std::vector<int> omega;
    for (int v = 0; v < s.vertex_count(); ++v)
      if (!is_removed[v]) omega.push_back(v);
    out.omega_text = omega_json_text(s, omega);
    return out;
  }
  throw ValidationError("gen_space_files: unknown kind '" + kind + "'");
}

}  // namespace hardykit
