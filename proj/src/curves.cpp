#include "hardykit/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace hardykit {

namespace {

double target_distance(const Space& space, const CurveFamilyQuery& q) {
  if (q.targets.empty()) throw ValidationError("curve query needs a nonempty target set");
  space.id_of(q.source);
  double d = std::numeric_limits<double>::infinity();
  for (int t : q.targets) d = std::min(d, space.dist(q.source, t));
  if (!(d > 0.0))
    throw ValidationError("curve query source lies in the target set (nonconstant curves only)");
  return d;
}

void require_nonnegative(const Space& space, const Field& g) {
  check_field(space, g);
  if (!is_nonnegative(g)) throw ValidationError("field must be nonnegative");
}

}  // namespace

PathRec make_path(const Space& space, std::vector<int> vertices) {
  if (vertices.size() < 2) throw ValidationError("a path needs at least two vertices");
  PathRec p;
  p.length = 0.0;
  for (size_t i = 0; i + 1 < vertices.size(); ++i)
    p.length += space.edge_length(vertices[i], vertices[i + 1]);
  p.vertices = std::move(vertices);
  return p;
}

bool path_valid(const Space& space, const PathRec& path) {
  if (path.vertices.size() < 2) return false;
  double len = 0.0;
  for (size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    if (!space.adjacent(path.vertices[i], path.vertices[i + 1])) return false;
    len += space.edge_length(path.vertices[i], path.vertices[i + 1]);
  }
  return std::abs(len - path.length) <= 1e-9 * std::max(1.0, len);
}

double path_integral(const Space& space, const Field& g, const PathRec& path) {
  check_field(space, g);
  if (path.vertices.size() < 2) throw ValidationError("invalid path: fewer than two vertices");
  double acc = 0.0;
  for (size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    int u = path.vertices[i], v = path.vertices[i + 1];
    acc += space.edge_length(u, v) * 0.5 * (g[u] + g[v]);
  }
  return acc;
}

namespace {

struct Label {
  double integral = 0.0;
  double length = 0.0;
  int vertex = -1;
  int parent = -1;  // arena index
  bool alive = true;
};

std::vector<int> reconstruct(const std::vector<Label>& arena, int idx) {
  std::vector<int> seq;
  for (int i = idx; i >= 0; i = arena[i].parent) seq.push_back(arena[i].vertex);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

// Lexicographic order on vertex-id sequences; used only to break exact
// (integral, length) ties so outputs are deterministic.
bool lex_less(const Space& space, const std::vector<int>& a, const std::vector<int>& b) {
  size_t m = std::min(a.size(), b.size());
  for (size_t i = 0; i < m; ++i) {
    if (a[i] != b[i]) return space.id_of(a[i]) < space.id_of(b[i]);
  }
  return a.size() < b.size();
}

}  // namespace

MinPathResult min_integral_path(const Space& space, const Field& g, const CurveFamilyQuery& q) {
  require_nonnegative(space, g);
  const double d = target_distance(space, q);
  const double budget = q.nu * d;
  const int n = space.vertex_count();
  std::vector<char> is_target(n, 0);
  for (int t : q.targets) {
    space.id_of(t);
    is_target[t] = 1;
  }

  std::vector<Label> arena;
  arena.push_back({0.0, 0.0, q.source, -1, true});

  auto cmp = [&](int a, int b) {  // true if a should pop after b
    const Label &la = arena[a], &lb = arena[b];
    if (la.integral != lb.integral) return la.integral > lb.integral;
    if (la.length != lb.length) return la.length > lb.length;
    return lex_less(space, reconstruct(arena, b), reconstruct(arena, a));
  };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> pq(cmp);
  pq.push(0);

  // Pareto front per vertex: arena indices of non-dominated labels.
  std::vector<std::vector<int>> front(n);
  front[q.source].push_back(0);

  auto try_insert = [&](Label cand) -> int {
    auto& fr = front[cand.vertex];
    for (int idx : fr) {
      const Label& ex = arena[idx];
      if (!ex.alive) continue;
      if (ex.length <= cand.length && ex.integral <= cand.integral) {
        if (ex.length == cand.length && ex.integral == cand.integral) {
          // Exact tie: keep the lexicographically smaller path.
          std::vector<int> exseq = reconstruct(arena, idx);
          // Candidate sequence = parent's sequence + vertex.
          std::vector<int> cseq = reconstruct(arena, cand.parent);
          cseq.push_back(cand.vertex);
          if (!lex_less(space, cseq, exseq)) return -1;
        } else {
          return -1;
        }
      }
    }
    int my = static_cast<int>(arena.size());
    arena.push_back(cand);
    // Drop entries the new label dominates.
    auto dominated = [&](int idx) {
      const Label& ex = arena[idx];
      return cand.length <= ex.length && cand.integral <= ex.integral;
    };
    for (int idx : fr)
      if (dominated(idx)) arena[idx].alive = false;
    fr.erase(std::remove_if(fr.begin(), fr.end(),
                            [&](int idx) { return !arena[idx].alive; }),
             fr.end());
    fr.push_back(my);
    return my;
  };

  while (!pq.empty()) {
    int cur = pq.top();
    pq.pop();
    if (!arena[cur].alive) continue;
    const Label lab = arena[cur];
    if (is_target[lab.vertex]) {
      MinPathResult res;
      res.path.vertices = reconstruct(arena, cur);
      res.path.length = lab.length;
      res.value = lab.integral;
      return res;
    }
    for (auto [w, len] : space.neighbors(lab.vertex)) {
      double nlen = lab.length + len;
      if (!within_budget(nlen, budget)) continue;
      double nint = lab.integral + len * 0.5 * (g[lab.vertex] + g[w]);
      Label cand{nint, nlen, w, cur, true};
      int idx = try_insert(cand);
      if (idx >= 0) pq.push(idx);
    }
  }
  throw InfeasibleError("no path to the target set within the length budget");
}

MinPathResult brute_force_min_path(const Space& space, const Field& g,
                                   const CurveFamilyQuery& q) {
  require_nonnegative(space, g);
  const int n = space.vertex_count();
  if (n > 12) throw ValidationError("brute_force_min_path is guarded to <= 12 vertices");
  const double d = target_distance(space, q);
  const double budget = q.nu * d;
  std::vector<char> is_target(n, 0);
  for (int t : q.targets) is_target[t] = 1;

  bool found = false;
  double best_int = std::numeric_limits<double>::infinity();
  double best_len = std::numeric_limits<double>::infinity();
  std::vector<int> best_seq;

  std::vector<int> seq{q.source};
  std::vector<char> visited(n, 0);
  visited[q.source] = 1;

  auto consider = [&](double integ, double len) {
    if (!found || integ < best_int ||
        (integ == best_int &&
         (len < best_len || (len == best_len && lex_less(space, seq, best_seq))))) {
      found = true;
      best_int = integ;
      best_len = len;
      best_seq = seq;
    }
  };

  // Simple paths only; with g >= 0 shortening a path never hurts, so the
  // optimum over simple paths equals the optimum over all walks.
  auto dfs = [&](auto&& self, int v, double len, double integ) -> void {
    for (auto [w, elen] : space.neighbors(v)) {
      if (visited[w]) continue;
      double nlen = len + elen;
      if (!within_budget(nlen, budget)) continue;
      double nint = integ + elen * 0.5 * (g[v] + g[w]);
      if (found && nint > best_int) continue;
      seq.push_back(w);
      if (is_target[w]) {
        consider(nint, nlen);
      } else {
        visited[w] = 1;
        self(self, w, nlen, nint);
        visited[w] = 0;
      }
      seq.pop_back();
    }
  };
  dfs(dfs, q.source, 0.0, 0.0);

  if (!found) throw InfeasibleError("no path to the target set within the length budget");
  MinPathResult res;
  res.path = make_path(space, best_seq);
  res.value = best_int;
  return res;
}

std::optional<bool> verify_upper_gradient(const Space& space, const Field& u, const Field& g,
                                          int max_vertices, double eps) {
  check_field(space, u);
  require_nonnegative(space, g);
  const int n = space.vertex_count();
  if (n > max_vertices) return std::nullopt;
  std::vector<char> visited(n, 0);
  bool ok = true;
  // DFS over simple paths from each start; every prefix is itself a path.
  auto dfs = [&](auto&& self, int start, int v, double integ) -> void {
    if (!ok) return;
    for (auto [w, len] : space.neighbors(v)) {
      if (visited[w]) continue;
      double ninteg = integ + len * 0.5 * (g[v] + g[w]);
      if (std::abs(u[start] - u[w]) > ninteg + eps) {
        ok = false;
        return;
      }
      visited[w] = 1;
      self(self, start, w, ninteg);
      visited[w] = 0;
    }
  };
  for (int s = 0; s < n && ok; ++s) {
    std::fill(visited.begin(), visited.end(), 0);
    visited[s] = 1;
    dfs(dfs, s, s, 0.0);
  }
  return ok;
}

Field inf_connection_potential(const Space& space, const Field& h, const DomainSet& domain) {
  require_nonnegative(space, h);
  const int n = space.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n, inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int c : domain.complement()) {
    u[c] = 0.0;
    pq.push({0.0, c});
  }
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv > u[v]) continue;
    for (auto [w, len] : space.neighbors(v)) {
      double cand = dv + len * 0.5 * (h[v] + h[w]);
      if (cand < u[w]) {
        u[w] = cand;
        pq.push({cand, w});
      }
    }
  }
  return Field(std::move(u));
}

}  // namespace hardykit
