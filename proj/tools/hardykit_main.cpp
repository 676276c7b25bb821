// Command-line front end: subcommands binding the library modules, with
// deterministic seeding and byte-stable JSON/CSV reports.
//
// Exit codes: 0 = all certificates pass, 1 = at least one failed,
// 2 = usage or IO error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardykit/alpha.hpp"
#include "hardykit/gen.hpp"
#include "hardykit/hardy.hpp"
#include "hardykit/maximal.hpp"
#include "hardykit/poincare.hpp"
#include "hardykit/selfimprove.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hardykit::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw hardykit::ParseError("cannot write file: " + path);
  out << text;
}

bool wants_csv(const std::string& path) {
  return path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
}

std::string swap_ext(const std::string& path, const std::string& ext) {
  auto dot = path.find_last_of('.');
  auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + ext;
  return path.substr(0, dot) + ext;
}

void emit(const std::string& out_path, const ordered_json& json, const std::string& csv) {
  std::string text = wants_csv(out_path) ? csv : json.dump(2) + "\n";
  if (out_path == "-")
    std::cout << text;
  else
    write_file(out_path, text);
}

struct GlobalOpts {
  double eps = hardykit::kEpsNum;
  int threads = 1;
  std::uint64_t seed = 1;
};

int run_maximal(const std::string& space_path, const std::string& field_path, double p, double r,
                const std::string& x_id, const std::string& out_path) {
  hardykit::Space space = hardykit::Space::from_json_text(read_file(space_path));
  hardykit::Field f = hardykit::Field::from_json_text(space, read_file(field_path));
  std::vector<int> xs;
  if (!x_id.empty())
    xs.push_back(space.index_of(x_id));
  else
    for (int v = 0; v < space.vertex_count(); ++v) xs.push_back(v);
  ordered_json j;
  j["command"] = "maximal";
  j["p"] = p;
  j["r"] = r;
  std::ostringstream csv;
  csv << "x,value\n";
  ordered_json rows = ordered_json::array();
  for (int x : xs) {
    double v = hardykit::restricted_maximal(space, f, p, r, x);
    rows.push_back({{"x", space.id_of(x)}, {"value", v}});
    csv << space.id_of(x) << ',' << nlohmann::json(v).dump() << '\n';
  }
  j["values"] = rows;
  emit(out_path, j, csv.str());
  return 0;
}

int run_poincare(const GlobalOpts& g, const std::string& space_path, const std::string& g_path,
                 int trials, double p, double nu, double kappa, double c_a,
                 const std::string& out_path) {
  hardykit::Space space = hardykit::Space::from_json_text(read_file(space_path));
  ordered_json j;
  j["command"] = "poincare-check";
  j["params"] = {{"p", p}, {"nu", nu}, {"kappa", kappa}, {"C_A", c_a}};
  if (g_path.empty()) {
    double est = hardykit::estimate_CA(space, p, nu, kappa, trials, g.seed);
    j["trials"] = trials;
    j["seed"] = g.seed;
    j["estimate_C_A"] = std::isfinite(est) ? ordered_json(est) : ordered_json("infinity");
    std::ostringstream csv;
    csv << "estimate_C_A\n"
        << (std::isfinite(est) ? nlohmann::json(est).dump() : "infinity") << '\n';
    emit(out_path, j, csv.str());
    return 0;
  }
  hardykit::Field field = hardykit::Field::from_json_text(space, read_file(g_path));
  hardykit::CurveCharParams params{p, c_a, nu, kappa};
  std::ostringstream csv;
  csv << "x,y,lhs,rhs,ratio,witness_length,pass\n";
  ordered_json rows = ordered_json::array();
  bool all_pass = true;
  double max_ratio = 0.0;
  for (int x = 0; x < space.vertex_count(); ++x)
    for (int y = x + 1; y < space.vertex_count(); ++y) {
      hardykit::Certificate c = hardykit::two_point_char(space, field, x, y, params, g.eps);
      double denom = c.rhs / c_a;
      double ratio = denom > 0.0 ? c.lhs / denom : (c.lhs > 0.0 ? INFINITY : 0.0);
      max_ratio = std::max(max_ratio, ratio);
      all_pass = all_pass && c.pass;
      rows.push_back({{"x", space.id_of(x)},
                      {"y", space.id_of(y)},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"ratio", ratio},
                      {"witness_length", c.witness_path->length},
                      {"pass", c.pass}});
      csv << space.id_of(x) << ',' << space.id_of(y) << ',' << nlohmann::json(c.lhs).dump()
          << ',' << nlohmann::json(c.rhs).dump() << ',' << nlohmann::json(ratio).dump() << ','
          << nlohmann::json(c.witness_path->length).dump() << ',' << (c.pass ? 1 : 0) << '\n';
    }
  j["pairs"] = rows;
  j["max_ratio"] = max_ratio;
  j["all_pass"] = all_pass;
  emit(out_path, j, csv.str());
  return all_pass ? 0 : 1;
}

int run_hardy(const GlobalOpts& g, const std::string& space_path, const std::string& omega_path,
              const std::string& g_path, int trials, double p, double nu, double kappa,
              double c_gamma, const std::string& out_path) {
  hardykit::Space space = hardykit::Space::from_json_text(read_file(space_path));
  hardykit::DomainSet domain = hardykit::DomainSet::from_json_text(space, read_file(omega_path));
  ordered_json j;
  j["command"] = "hardy-check";
  j["params"] = {{"p", p}, {"nu", nu}, {"kappa", kappa}, {"C_Gamma", c_gamma}};
  if (g_path.empty()) {
    double est = hardykit::estimate_CH(domain, p, nu, kappa, trials, g.seed);
    j["trials"] = trials;
    j["seed"] = g.seed;
    j["estimate_C_Gamma"] = std::isfinite(est) ? ordered_json(est) : ordered_json("infinity");
    std::ostringstream csv;
    csv << "estimate_C_Gamma\n"
        << (std::isfinite(est) ? nlohmann::json(est).dump() : "infinity") << '\n';
    emit(out_path, j, csv.str());
    return 0;
  }
  hardykit::Field field = hardykit::Field::from_json_text(space, read_file(g_path));
  hardykit::HardyCharParams params{p, c_gamma, nu, kappa};
  std::ostringstream csv;
  csv << "x,lhs,rhs,ratio,witness_length,pass\n";
  ordered_json rows = ordered_json::array();
  bool all_pass = true;
  for (int x : domain.omega()) {
    hardykit::Certificate c = hardykit::hardy_curve_char(domain, field, params, x, g.eps);
    double denom = c.rhs / c_gamma;
    double ratio = denom > 0.0 ? c.lhs / denom : (c.lhs > 0.0 ? INFINITY : 0.0);
    all_pass = all_pass && c.pass;
    rows.push_back({{"x", space.id_of(x)},
                    {"lhs", c.lhs},
                    {"rhs", c.rhs},
                    {"ratio", ratio},
                    {"witness_length", c.witness_path->length},
                    {"pass", c.pass}});
    csv << space.id_of(x) << ',' << nlohmann::json(c.lhs).dump() << ','
        << nlohmann::json(c.rhs).dump() << ',' << nlohmann::json(ratio).dump() << ','
        << nlohmann::json(c.witness_path->length).dump() << ',' << (c.pass ? 1 : 0) << '\n';
  }
  j["points"] = rows;
  j["all_pass"] = all_pass;
  emit(out_path, j, csv.str());
  return all_pass ? 0 : 1;
}

int run_alpha(const GlobalOpts& g, const std::string& space_path, const std::string& omega_path,
              double p, double nu, double kappa, const std::vector<double>& taus,
              const std::string& x_id, double tol, int max_rounds, const std::string& out_path) {
  hardykit::Space space = hardykit::Space::from_json_text(read_file(space_path));
  hardykit::DomainSet domain = hardykit::DomainSet::from_json_text(space, read_file(omega_path));
  std::optional<int> x;
  if (!x_id.empty()) x = space.index_of(x_id);
  hardykit::AlphaOptions opt;
  opt.tol = tol;
  opt.max_rounds = max_rounds;
  opt.threads = g.threads;
  ordered_json j;
  j["command"] = "alpha";
  j["params"] = {{"p", p}, {"nu", nu}, {"kappa", kappa}, {"tol", tol},
                 {"max_rounds", max_rounds}};
  std::ostringstream csv;
  csv << "tau,value,gap,converged,witness_x\n";
  ordered_json rows = ordered_json::array();
  for (double tau : taus) {
    hardykit::AlphaEstimate est =
        hardykit::alpha_optimize(domain, {nu, kappa, tau, p, x}, opt);
    ordered_json row;
    row["tau"] = tau;
    row["value"] = est.value;
    row["gap"] = est.gap;
    row["converged"] = est.converged;
    row["witness_x"] = space.id_of(est.witness_x);
    ordered_json gvals;
    for (int v = 0; v < space.vertex_count(); ++v)
      gvals[space.id_of(v)] = est.witness_g.values.empty() ? 0.0 : est.witness_g[v];
    row["witness_g"] = gvals;
    ordered_json paths = ordered_json::array();
    for (const auto& pr : est.active_paths) {
      ordered_json pj;
      pj["vertices"] = ordered_json::array();
      for (int v : pr.vertices) pj["vertices"].push_back(space.id_of(v));
      pj["length"] = pr.length;
      pj["integral"] = hardykit::path_integral(space, est.witness_g, pr);
      paths.push_back(pj);
    }
    row["active_paths"] = paths;
    rows.push_back(row);
    csv << nlohmann::json(tau).dump() << ',' << nlohmann::json(est.value).dump() << ','
        << nlohmann::json(est.gap).dump() << ',' << (est.converged ? 1 : 0) << ','
        << space.id_of(est.witness_x) << '\n';
  }
  j["results"] = rows;
  emit(out_path, j, csv.str());
  return 0;
}

int run_self_improve(const GlobalOpts& g, const std::string& space_path,
                     const std::string& omega_path, double p, double p_prime,
                     std::optional<double> q, const std::vector<double>& taus, int trials,
                     int estimate_trials, std::optional<double> c_a, std::optional<double> c_gamma,
                     double nu, double kappa, const std::string& out_path) {
  hardykit::Space space = hardykit::Space::from_json_text(read_file(space_path));
  hardykit::DomainSet domain = hardykit::DomainSet::from_json_text(space, read_file(omega_path));
  hardykit::ExperimentConfig cfg;
  cfg.nu = nu;
  cfg.kappa = kappa;
  if (!taus.empty()) cfg.tau_grid = taus;
  cfg.g_trials = trials;
  cfg.estimate_trials = estimate_trials;
  cfg.seed = g.seed;
  cfg.c_a = c_a;
  cfg.c_gamma = c_gamma;
  cfg.q = q;
  cfg.eps = g.eps;
  cfg.alpha.threads = g.threads;
  hardykit::ExperimentReport rep = hardykit::self_improve_experiment(domain, p, p_prime, cfg);
  if (out_path == "-") {
    std::cout << rep.json_text << "\n";
  } else {
    write_file(out_path, rep.json_text + "\n");
    write_file(swap_ext(out_path, ".csv"), rep.csv_text);
  }
  return rep.all_pass ? 0 : 1;
}

int run_gen_space(const std::string& kind, int n, int rows, int cols, const std::string& pattern,
                  std::uint64_t seed, const std::string& out_path,
                  const std::string& omega_out_path) {
  int a = rows > 0 ? rows : n;
  hardykit::GenResult res = hardykit::gen_space_files(kind, a, cols, pattern, seed);
  write_file(out_path, res.space_text + "\n");
  std::string omega_path =
      omega_out_path.empty() ? swap_ext(out_path, ".omega.json") : omega_out_path;
  write_file(omega_path, res.omega_text + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pointwise Hardy inequality toolkit on finite metric measure graphs"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--eps-num", g.eps, "additive tolerance for inequality certification");
  app.add_option("--threads", g.threads, "worker threads for independent sub-runs");
  app.add_option("--seed", g.seed, "seed for all sampled computations");

  std::string space_path, omega_path, field_path, out_path = "-", x_id, kind = "path", pattern;
  std::string omega_out_path;
  double p = 1.0, r = 1.0, nu = 2.0, kappa = 1.0, c_a = 1.0, c_gamma = 1.0, p_prime = 1.0;
  double si_nu = 2.0, si_kappa = 2.0;  // self-improve defaults; kappa >= nu keeps the
                                       // characterization estimators finite
  double tol = 1e-4;
  int trials = 100, estimate_trials = 120, max_rounds = 100, n = 3, rows = 0, cols = 0;
  std::vector<double> taus;
  std::optional<double> q_opt, c_a_opt, c_gamma_opt;

  auto* cmd_max = app.add_subcommand("maximal", "restricted maximal function of a field");
  cmd_max->add_option("--space", space_path)->required();
  cmd_max->add_option("--field", field_path)->required();
  cmd_max->add_option("--p", p)->required();
  cmd_max->add_option("--r", r)->required();
  cmd_max->add_option("--x", x_id, "vertex id; all vertices when absent");
  cmd_max->add_option("--out", out_path);

  auto* cmd_poi = app.add_subcommand("poincare-check",
                                     "two-point curve characterization / C_A estimate");
  cmd_poi->add_option("--space", space_path)->required();
  cmd_poi->add_option("--g", field_path, "gradient field file; estimate mode when absent");
  cmd_poi->add_option("--p", p)->required();
  cmd_poi->add_option("--nu", nu)->required();
  cmd_poi->add_option("--kappa", kappa)->required();
  cmd_poi->add_option("--c-a", c_a);
  cmd_poi->add_option("--trials", trials);
  cmd_poi->add_option("--out", out_path);

  auto* cmd_hardy =
      app.add_subcommand("hardy-check", "curve characterization over omega / C_Gamma estimate");
  cmd_hardy->add_option("--space", space_path)->required();
  cmd_hardy->add_option("--omega", omega_path)->required();
  cmd_hardy->add_option("--g", field_path, "gradient field file; estimate mode when absent");
  cmd_hardy->add_option("--p", p)->required();
  cmd_hardy->add_option("--nu", nu)->required();
  cmd_hardy->add_option("--kappa", kappa)->required();
  cmd_hardy->add_option("--c-gamma", c_gamma);
  cmd_hardy->add_option("--trials", trials);
  cmd_hardy->add_option("--out", out_path);

  auto* cmd_alpha = app.add_subcommand("alpha", "alpha-function lower bounds");
  cmd_alpha->add_option("--space", space_path)->required();
  cmd_alpha->add_option("--omega", omega_path)->required();
  cmd_alpha->add_option("--p", p)->required();
  cmd_alpha->add_option("--nu", nu)->required();
  cmd_alpha->add_option("--kappa", kappa)->required();
  cmd_alpha->add_option("--tau", taus, "tau value (repeatable)")->required();
  cmd_alpha->add_option("--x", x_id, "vertex id; sup over omega when absent");
  cmd_alpha->add_option("--tol", tol);
  cmd_alpha->add_option("--max-rounds", max_rounds);
  cmd_alpha->add_option("--out", out_path);

  auto* cmd_self = app.add_subcommand("self-improve", "end-to-end self-improvement experiment");
  cmd_self->add_option("--space", space_path)->required();
  cmd_self->add_option("--omega", omega_path)->required();
  cmd_self->add_option("--p", p)->required();
  cmd_self->add_option("--p-prime", p_prime)->required();
  cmd_self->add_option("--q", q_opt);
  cmd_self->add_option("--tau", taus, "tau value (repeatable)");
  cmd_self->add_option("--trials", trials);
  cmd_self->add_option("--estimate-trials", estimate_trials);
  cmd_self->add_option("--c-a", c_a_opt);
  cmd_self->add_option("--c-gamma", c_gamma_opt);
  cmd_self->add_option("--nu", si_nu);
  cmd_self->add_option("--kappa", si_kappa);
  cmd_self->add_option("--out", out_path);

  auto* cmd_gen = app.add_subcommand("gen-space", "emit a space file plus an omega file");
  cmd_gen->add_option("--kind", kind, "path | cycle | grid | grid-minus-set")->required();
  cmd_gen->add_option("--n", n, "vertex count for path/cycle");
  cmd_gen->add_option("--rows", rows);
  cmd_gen->add_option("--cols", cols);
  cmd_gen->add_option("--pattern", pattern, "center | cross | corner | id,id,...");
  cmd_gen->add_option("--out", out_path)->required();
  cmd_gen->add_option("--omega-out", omega_out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_max->parsed()) return run_maximal(space_path, field_path, p, r, x_id, out_path);
    if (cmd_poi->parsed())
      return run_poincare(g, space_path, field_path, trials, p, nu, kappa, c_a, out_path);
    if (cmd_hardy->parsed())
      return run_hardy(g, space_path, omega_path, field_path, trials, p, nu, kappa, c_gamma,
                       out_path);
    if (cmd_alpha->parsed())
      return run_alpha(g, space_path, omega_path, p, nu, kappa, taus, x_id, tol, max_rounds,
                       out_path);
    if (cmd_self->parsed())
      return run_self_improve(g, space_path, omega_path, p, p_prime, q_opt, taus, trials,
                              estimate_trials, c_a_opt, c_gamma_opt, si_nu, si_kappa, out_path);
    if (cmd_gen->parsed())
      return run_gen_space(kind, n, rows, cols > 0 ? cols : n, pattern, g.seed, out_path,
                           omega_out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
