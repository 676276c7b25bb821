#include "hardykit/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include <json.hpp>

namespace hardykit {

namespace {

long long edge_key(int u, int v, int n) {
  return static_cast<long long>(std::min(u, v)) * n + std::max(u, v);
}

}  // namespace

const std::string& Space::id_of(int v) const {
  check_vertex(v);
  return ids_[v];
}

int Space::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ValidationError("unknown vertex id: " + id);
  return it->second;
}

double Space::measure(int v) const {
  check_vertex(v);
  return measure_[v];
}

const std::vector<std::pair<int, double>>& Space::neighbors(int v) const {
  check_vertex(v);
  return adj_[v];
}

bool Space::adjacent(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return edge_len_.count(edge_key(u, v, vertex_count())) > 0;
}

double Space::edge_length(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  auto it = edge_len_.find(edge_key(u, v, vertex_count()));
  if (it == edge_len_.end())
    throw ValidationError("vertices " + ids_[u] + " and " + ids_[v] + " are not adjacent");
  return it->second;
}

double Space::dist(int x, int y) const {
  check_vertex(x);
  check_vertex(y);
  return dist_[x][y];
}

void Space::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count()) throw ValidationError("vertex index out of range");
}

Space Space::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("space file: ") + e.what());
  }
  std::vector<std::string> ids;
  std::vector<double> measures;
  std::vector<SpaceEdge> edges;
  try {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
      throw ParseError("space file: expected object with 'vertices' and 'edges'");
    std::unordered_map<std::string, int> index;
    for (const auto& jv : j.at("vertices")) {
      std::string id = jv.at("id").get<std::string>();
      double mu = jv.at("measure").get<double>();
      if (index.count(id)) throw ValidationError("duplicate vertex id: " + id);
      index[id] = static_cast<int>(ids.size());
      ids.push_back(id);
      measures.push_back(mu);
    }
    for (const auto& je : j.at("edges")) {
      std::string su = je.at("u").get<std::string>();
      std::string sv = je.at("v").get<std::string>();
      double len = je.at("length").get<double>();
      auto iu = index.find(su), iv = index.find(sv);
      if (iu == index.end()) throw ValidationError("edge references unknown vertex: " + su);
      if (iv == index.end()) throw ValidationError("edge references unknown vertex: " + sv);
      edges.push_back({iu->second, iv->second, len});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("space file: ") + e.what());
  }
  return from_parts(std::move(ids), std::move(measures), std::move(edges));
}

Space Space::from_parts(std::vector<std::string> ids, std::vector<double> measures,
                        std::vector<SpaceEdge> edges) {
  Space s;
  s.ids_ = std::move(ids);
  s.measure_ = std::move(measures);
  s.edges_ = std::move(edges);
  s.build();
  return s;
}

void Space::build() {
  const int n = vertex_count();
  if (n < 2) throw ValidationError("space needs at least 2 vertices");
  if (static_cast<int>(measure_.size()) != n)
    throw ValidationError("measure count does not match vertex count");
  index_.clear();
  for (int v = 0; v < n; ++v) {
    if (index_.count(ids_[v])) throw ValidationError("duplicate vertex id: " + ids_[v]);
    index_[ids_[v]] = v;
    if (!(measure_[v] > 0.0) || !std::isfinite(measure_[v]))
      throw ValidationError("vertex measure must be strictly positive: " + ids_[v]);
  }
  total_measure_ = 0.0;
  for (double m : measure_) total_measure_ += m;

  adj_.assign(n, {});
  edge_len_.clear();
  for (const SpaceEdge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw ValidationError("edge endpoint out of range");
    if (e.u == e.v) throw ValidationError("self-loop edge at vertex " + ids_[e.u]);
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw ValidationError("edge length must be strictly positive: " + ids_[e.u] + "-" +
                            ids_[e.v]);
    long long key = edge_key(e.u, e.v, n);
    if (edge_len_.count(key))
      throw ValidationError("duplicate edge: " + ids_[e.u] + "-" + ids_[e.v]);
    edge_len_[key] = e.length;
    adj_[e.u].push_back({e.v, e.length});
    adj_[e.v].push_back({e.u, e.length});
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  // All-pairs shortest paths, one Dijkstra per source.
  const double inf = std::numeric_limits<double>::infinity();
  dist_.assign(n, std::vector<double>(n, inf));
  for (int s = 0; s < n; ++s) {
    auto& d = dist_[s];
    d[s] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [dv, v] = pq.top();
      pq.pop();
      if (dv > d[v]) continue;
      for (auto [w, len] : adj_[v]) {
        double cand = dv + len;
        if (cand < d[w]) {
          d[w] = cand;
          pq.push({cand, w});
        }
      }
    }
  }
  diameter_ = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!std::isfinite(dist_[x][y])) throw ValidationError("graph is not connected");
      diameter_ = std::max(diameter_, dist_[x][y]);
    }

  order_.assign(n, {});
  odist_.assign(n, {});
  oprefix_.assign(n, {});
  for (int c = 0; c < n; ++c) {
    auto& ord = order_[c];
    ord.resize(n);
    for (int v = 0; v < n; ++v) ord[v] = v;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
      if (dist_[c][a] != dist_[c][b]) return dist_[c][a] < dist_[c][b];
      return a < b;
    });
    odist_[c].resize(n);
    oprefix_[c].resize(n + 1);
    oprefix_[c][0] = 0.0;
    for (int i = 0; i < n; ++i) {
      odist_[c][i] = dist_[c][ord[i]];
      oprefix_[c][i + 1] = oprefix_[c][i] + measure_[ord[i]];
    }
  }

  // Doubling constant over the critical radius set.
  double D = 1.0;
  std::vector<double> cand;
  for (int c = 0; c < n; ++c) {
    cand.clear();
    for (double d : odist_[c]) {
      if (d > 0.0) {
        cand.push_back(d);
        cand.push_back(d / 2.0);
      }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    size_t m = cand.size();
    for (size_t i = 0; i + 1 < m; ++i) cand.push_back(0.5 * (cand[i] + cand[i + 1]));
    if (!cand.empty()) cand.push_back(cand[m - 1] + 1.0);
    for (double r : cand) {
      double num = ball_measure(c, 2.0 * r);
      double den = ball_measure(c, r);
      if (den > 0.0) D = std::max(D, num / den);
    }
  }
  doubling_ = D;
}

double Space::ball_measure(int center, double radius) const {
  check_vertex(center);
  const auto& ds = odist_[center];
  auto it = std::lower_bound(ds.begin(), ds.end(), radius);
  return oprefix_[center][static_cast<size_t>(it - ds.begin())];
}

const std::vector<int>& Space::distance_order(int center) const {
  check_vertex(center);
  return order_[center];
}

const std::vector<double>& Space::ordered_distances(int center) const {
  check_vertex(center);
  return odist_[center];
}

Ball Space::ball(int center, double radius) const {
  check_vertex(center);
  if (!(radius > 0.0)) throw ValidationError("ball radius must be positive");
  Ball b;
  b.center = center;
  b.radius = radius;
  const auto& ds = odist_[center];
  size_t cnt = static_cast<size_t>(std::lower_bound(ds.begin(), ds.end(), radius) - ds.begin());
  b.members.assign(order_[center].begin(), order_[center].begin() + cnt);
  std::sort(b.members.begin(), b.members.end());
  b.measure = oprefix_[center][cnt];
  return b;
}

std::vector<Ball> Space::distinct_balls_containing(int x, double max_radius) const {
  check_vertex(x);
  if (!(max_radius > 0.0)) throw ValidationError("max_radius must be positive");
  std::vector<Ball> out;
  std::set<std::vector<int>> seen;
  const int n = vertex_count();
  std::vector<double> cuts;
  for (int y = 0; y < n; ++y) {
    double lo = dist_[y][x];
    if (!(lo < max_radius)) continue;
    // Breakpoints of t -> members(B(y, t)) inside (lo, max_radius).
    cuts.clear();
    cuts.push_back(lo);
    for (double d : odist_[y]) {
      if (d > lo && d < max_radius) {
        if (cuts.back() != d) cuts.push_back(d);
      }
    }
    cuts.push_back(max_radius);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      double t = 0.5 * (cuts[i] + cuts[i + 1]);
      if (!(t > lo && t < max_radius)) continue;
      Ball b = ball(y, t);
      if (seen.insert(b.members).second) out.push_back(std::move(b));
    }
  }
  return out;
}

std::string Space::to_json_text() const {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (int v = 0; v < vertex_count(); ++v)
    j["vertices"].push_back({{"id", ids_[v]}, {"measure", measure_[v]}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : edges_)
    j["edges"].push_back({{"u", ids_[e.u]}, {"v", ids_[e.v]}, {"length", e.length}});
  return j.dump(2);
}

DomainSet::DomainSet(const Space& space, std::vector<int> omega) : space_(&space) {
  const int n = space.vertex_count();
  in_omega_.assign(n, 0);
  for (int v : omega) {
    space.id_of(v);  // range check
    in_omega_[v] = 1;
  }
  omega_.clear();
  complement_.clear();
  for (int v = 0; v < n; ++v) (in_omega_[v] ? omega_ : complement_).push_back(v);
  if (omega_.empty()) throw ValidationError("omega must be nonempty");
  if (complement_.empty()) throw ValidationError("omega complement must be nonempty");
  dist_to_comp_.assign(n, 0.0);
  for (int v : omega_) {
    double best = std::numeric_limits<double>::infinity();
    for (int c : complement_) best = std::min(best, space.dist(v, c));
    dist_to_comp_[v] = best;
  }
}

DomainSet DomainSet::from_json_text(const Space& space, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("omega file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("omega") || !j.at("omega").is_array())
    throw ParseError("omega file: expected object with array 'omega'");
  std::vector<int> omega;
  for (const auto& jid : j.at("omega")) omega.push_back(space.index_of(jid.get<std::string>()));
  return DomainSet(space, std::move(omega));
}

bool DomainSet::in_omega(int v) const {
  space_->id_of(v);
  return in_omega_[v] != 0;
}

double DomainSet::dist_to_complement(int x) const {
  if (!in_omega(x)) throw ValidationError("vertex " + space_->id_of(x) + " is not in omega");
  return dist_to_comp_[x];
}

}  // namespace hardykit
