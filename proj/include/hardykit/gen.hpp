#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardykit/space.hpp"

namespace hardykit {

// Example space generators for experiments: unit measures and unit edge
// lengths unless noted. Vertex ids: paths/cycles v0..v{n-1}, grids r{i}c{j}.
Space gen_path(int n);
Space gen_cycle(int n);
Space gen_grid(int rows, int cols);

// Vertices matching a pattern on a rows x cols grid: "center", "cross"
// (the middle row and column), "corner", or a comma-separated id list.
std::vector<int> pattern_vertices(const Space& grid, int rows, int cols,
                                  const std::string& pattern);

struct GenResult {
  std::string space_text;
  std::string omega_text;
};

// kind: path | cycle | grid | grid-minus-set. For path/cycle/grid the omega
// file holds all vertices except the last; for grid-minus-set it holds the
// grid minus the pattern. The seed is accepted for forward compatibility
// with randomized variants; the current kinds are deterministic.
GenResult gen_space_files(const std::string& kind, int n_or_rows, int cols,
                          const std::string& pattern, std::uint64_t seed);

std::string omega_json_text(const Space& space, const std::vector<int>& omega);

}  // namespace hardykit
