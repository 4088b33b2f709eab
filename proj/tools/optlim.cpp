// Command-line driver: solve, twist, verify, diagram. JSON on stdout.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "optlim/optlim.hpp"

using namespace optlim;

namespace {

void add_input(CLI::App* cmd, InputSpec& in) {
  cmd->add_option("--pd", in.pd, "PD code, e.g. \"X(4,2,5,1) X(8,6,1,5) ...\"");
  cmd->add_option("--builtin", in.builtin_name, "4_1, 5_2, T1..T5");
  cmd->add_option("--json", in.json_file, "diagram JSON file (crossing list)");
}

void add_solver(CLI::App* cmd, SolveConfig& cfg, std::string& config_file) {
  cmd->add_option("--restarts", cfg.restarts, "multistart count")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--tol", cfg.residual_tol, "residual tolerance")->capture_default_str();
  cmd->add_option("--max-iter", cfg.max_iter, "Newton iteration cap")->capture_default_str();
  cmd->add_option("--config", config_file, "JSON file with SolveConfig keys");
}

// Config file first, so explicit flags win.
void merge_config(CLI::App* cmd, SolveConfig& cfg, const std::string& file) {
  if (file.empty()) return;
  std::ifstream f(file);
  if (!f) throw InputError("cannot open config " + file);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  SolveConfig merged;
  apply_config_json(merged, j);
  for (const char* name : {"--restarts", "--seed", "--tol", "--max-iter"})
    if (cmd->count(name) == 0) {
      const std::string n = name;
      if (n == "--restarts") cfg.restarts = merged.restarts;
      if (n == "--seed") cfg.seed = merged.seed;
      if (n == "--tol") cfg.residual_tol = merged.residual_tol;
      if (n == "--max-iter") cfg.max_iter = merged.max_iter;
    }
  cfg.dedupe_tol = merged.dedupe_tol;
  cfg.essential_tol = merged.essential_tol;
  cfg.radius_min = merged.radius_min;
  cfg.radius_max = merged.radius_max;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimistic limits of link diagrams"};
  app.require_subcommand(1);

  SolveOptions so;
  std::string so_config;
  auto* solve_cmd = app.add_subcommand("solve", "solve the hyperbolicity equations and report W0/V0");
  add_input(solve_cmd, so.input);
  solve_cmd->add_option("--potential", so.potential, "w (regions) or v (sides)")->capture_default_str();
  solve_cmd->add_option("--log-form", so.log_form, "forward or inverted (negative crossings)")
      ->capture_default_str();
  add_solver(solve_cmd, so.cfg, so_config);
  solve_cmd->add_flag("--stable", so.stable, "omit timing for byte-stable output");

  TwistOptions to;
  int twist_n = 0;
  auto* twist_cmd = app.add_subcommand("twist", "twist-knot regression against the tabulated values");
  twist_cmd->add_option("--n", twist_n, "1..5");
  twist_cmd->add_flag("--all", to.all, "all n = 1..5");
  bool fixtures = false;
  twist_cmd->add_flag("--fixtures", fixtures, "print the tabulated values as a JSON fixture list");

  VerifyOptions vo;
  std::string vo_config;
  auto* verify_cmd = app.add_subcommand("verify", "W0 versus V0 on every nondegenerate solution");
  add_input(verify_cmd, vo.input);
  add_solver(verify_cmd, vo.cfg, vo_config);
  verify_cmd->add_flag("--sign-flip", vo.sign_flip, "also run random sign-flip checks");
  verify_cmd->add_option("--trials", vo.trials, "sign-flip trials")->capture_default_str();
  verify_cmd->add_flag("--stable", vo.stable, "omit timing");

  InputSpec pd_in;
  bool pd_potential = false;
  auto* pd_cmd = app.add_subcommand("diagram", "print the parsed diagram (and optionally W) as JSON");
  add_input(pd_cmd, pd_in);
  pd_cmd->add_flag("--potential", pd_potential, "include the W and V term lists");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    RunReport rep;
    if (*solve_cmd) {
      merge_config(solve_cmd, so.cfg, so_config);
      rep = cmd_solve(so);
    } else if (*twist_cmd) {
      if (fixtures) {
        rep.body = table3_fixtures_json();
      } else {
        if (twist_cmd->count("--n")) to.n = twist_n;
        rep = cmd_twist(to);
      }
    } else if (*verify_cmd) {
      merge_config(verify_cmd, vo.cfg, vo_config);
      rep = cmd_verify(vo);
    } else {
      const auto d = load_diagram(pd_in);
      rep.body = {{"diagram", diagram_to_json(d)}, {"stats", diagram_stats(d)}, {"pd", render_pd(d)}};
      if (pd_potential) {
        rep.body["W"] = potential_to_json(assemble_W(d));
        if (validate(d).kinks == 0) rep.body["V"] = potential_to_json(assemble_V(d));
      }
    }
    std::cout << rep.body.dump(2) << "\n";
    if (rep.exit_code == 2) std::cerr << "no solutions found\n";
    return rep.exit_code;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
