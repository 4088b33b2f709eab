#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "optlim/builtin.hpp"
#include "optlim/correspondence.hpp"
#include "optlim/optimistic.hpp"
#include "optlim/solver.hpp"
#include "optlim/twistknot.hpp"

namespace optlim {

using json = nlohmann::json;

/// Rounds to 15 significant digits so the shortest round-trip printing used
/// by the JSON writer never shows more.
inline double sig15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}
inline json cjson(cplx z) { return json::array({sig15(z.real()), sig15(z.imag())}); }

struct InputSpec {
  std::string pd, builtin_name, json_file;
};

struct SolveOptions {
  InputSpec input;
  std::string potential = "w";   // "w" or "v"
  std::string log_form = "forward";
  SolveConfig cfg;
  bool stable = false;
};

struct TwistOptions {
  std::optional<int> n;
  bool all = false;
  double tol = 5e-4;
};

struct VerifyOptions {
  InputSpec input;
  SolveConfig cfg;
  bool sign_flip = false;
  int trials = 20;
  bool stable = false;
};

/// Exit code (0 ok, 1 input error, 2 no solutions) and the JSON report.
struct RunReport {
  int exit_code = 0;
  json body;
};

inline LinkDiagram load_diagram(const InputSpec& in) {
  const int given = !in.pd.empty() + !in.builtin_name.empty() + !in.json_file.empty();
  if (given != 1) throw InputError("give exactly one of --pd, --builtin, --json");
  if (!in.pd.empty()) return diagram_from_pd(in.pd);
  if (!in.builtin_name.empty()) return builtin(in.builtin_name);
  std::ifstream f(in.json_file);
  if (!f) throw InputError("cannot open " + in.json_file);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON in ") + in.json_file + ": " + e.what());
  }
  return diagram_from_json(j);
}

/// Applies the keys of a JSON object onto a SolveConfig.
inline void apply_config_json(SolveConfig& cfg, const json& j) {
  try {
    if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
    if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<int>();
    if (j.contains("residual_tol")) cfg.residual_tol = j.at("residual_tol").get<double>();
    if (j.contains("dedupe_tol")) cfg.dedupe_tol = j.at("dedupe_tol").get<double>();
    if (j.contains("essential_tol")) cfg.essential_tol = j.at("essential_tol").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("radius_min")) cfg.radius_min = j.at("radius_min").get<double>();
    if (j.contains("radius_max")) cfg.radius_max = j.at("radius_max").get<double>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

inline json config_json(const SolveConfig& c) {
  return {{"restarts", c.restarts},         {"max_iter", c.max_iter},
          {"residual_tol", c.residual_tol}, {"dedupe_tol", c.dedupe_tol},
          {"essential_tol", c.essential_tol}, {"seed", c.seed},
          {"radius_min", c.radius_min},     {"radius_max", c.radius_max}};
}

inline json diagram_stats(const LinkDiagram& d) {
  const auto r = validate(d);
  return {{"C", r.C},   {"n", r.n},         {"g", r.g}, {"components", r.components},
          {"kinks", r.kinks}, {"euler_ok", r.euler_ok}};
}

/// Groups optimistic values that agree mod 4 pi^2; returns bucket ids in
/// order of decreasing volume (ties by cs).
inline std::vector<int> bucket_by_value(const std::vector<OptimisticResult>& rs, double tol = 1e-6) {
  std::vector<cplx> reps;
  std::vector<int> raw_id(rs.size());
  for (size_t i = 0; i < rs.size(); ++i) {
    int id = -1;
    for (size_t b = 0; b < reps.size(); ++b)
      if (mod_eq(rs[i].raw, reps[b], 4.0 * kPi2, tol)) {
        id = int(b);
        break;
      }
    if (id < 0) {
      id = int(reps.size());
      reps.push_back(rs[i].raw);
    }
    raw_id[i] = id;
  }
  std::vector<int> order(reps.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int b) {
    return std::pair{-sig15(reps[b].imag()),
                     sig15(reduce_centered(-reps[b].real(), 4.0 * kPi2))};
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  std::vector<int> rank(reps.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = int(i);
  std::vector<int> out(rs.size());
  for (size_t i = 0; i < rs.size(); ++i) out[i] = rank[raw_id[i]];
  return out;
}

inline json named_assignment(const std::vector<std::string>& names, const std::vector<cplx>& v) {
  json j = json::object();
  for (size_t i = 0; i < names.size(); ++i) j[names[i]] = cjson(v[i]);
  return j;
}

inline RunReport cmd_solve(const SolveOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  opt.cfg.check();
  if (opt.potential != "w" && opt.potential != "v")
    throw InputError("--potential must be w or v");
  if (opt.log_form != "forward" && opt.log_form != "inverted")
    throw InputError("--log-form must be forward or inverted");
  const LinkDiagram d = load_diagram(opt.input);
  const Potential P = opt.potential == "w"
                          ? assemble_W(d, opt.log_form == "forward" ? NegativeLogForm::Forward
                                                                    : NegativeLogForm::Inverted)
                          : assemble_V(d);
  const auto sys = build_system(P);
  const auto sols = solve(sys, opt.cfg);

  std::vector<OptimisticResult> vals;
  std::vector<const Solution*> kept;
  for (const auto& s : sols) {
    try {
      vals.push_back(w0(P, s.assignment));
      kept.push_back(&s);
    } catch (const Error&) {
    }
  }
  const auto bucket = bucket_by_value(vals);
  double vmax = 0.0;
  for (const auto& v : vals) vmax = std::max(vmax, v.vol);

  RunReport rep;
  json& j = rep.body;
  j["command"] = "solve";
  j["diagram"] = diagram_stats(d);
  j["potential"] = opt.potential == "w" ? "W" : "V";
  j["config"] = config_json(opt.cfg);
  j["solutions"] = json::array();
  std::vector<json> comps;
  for (size_t i = 0; i < kept.size(); ++i) {
    const auto& v = vals[i];
    const bool geo = vmax > 1e-6 && std::abs(v.vol - vmax) < 1e-6;
    j["solutions"].push_back({{"assignment", named_assignment(P.variables, kept[i]->assignment)},
                              {"residual", sig15(kept[i]->residual_norm)},
                              {"w0_raw", cjson(v.raw)},
                              {"vol", sig15(v.vol)},
                              {"cs_mod_pi2", sig15(v.cs_mod_pi2)},
                              {"bw_vol", sig15(v.bw_vol)},
                              {"component", bucket[i]},
                              {"geometric_heuristic", geo}});
    if (bucket[i] >= int(comps.size())) comps.resize(bucket[i] + 1);
    json& c = comps[bucket[i]];
    if (c.is_null())
      c = {{"id", bucket[i]},
           {"w0_raw", cjson(v.raw)},
           {"vol", sig15(v.vol)},
           {"cs_mod_pi2", sig15(v.cs_mod_pi2)},
           {"count", 0},
           {"geometric_heuristic", geo}};
    c["count"] = c["count"].get<int>() + 1;
  }
  j["components"] = comps;
  j["num_solutions"] = kept.size();
  if (!opt.stable)
    j["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.exit_code = kept.empty() ? 2 : 0;
  return rep;
}

inline RunReport cmd_twist(const TwistOptions& opt) {
  std::vector<int> ns;
  if (opt.all) {
    ns = {1, 2, 3, 4, 5};
  } else if (opt.n) {
    defining_poly(*opt.n);
    ns = {*opt.n};
  } else {
    throw InputError("give --n 1..5 or --all");
  }
  RunReport rep;
  json& j = rep.body;
  j["command"] = "twist";
  j["rows"] = json::array();
  bool all_pass = true;
  for (int n : ns) {
    const auto P = twist_potential(n);
    for (cplx t : twist_roots(n)) {
      const auto par = parametrize(n, t);
      const auto r = w0(P, par.regions());
      const auto& row = table3_match(n, t);
      const double cs = -r.raw.real();
      const bool pass = std::abs(r.vol - row.vol) <= opt.tol && std::abs(cs - row.cs) <= opt.tol;
      all_pass &= pass;
      j["rows"].push_back({{"n", n},
                           {"t", cjson(t)},
                           {"w0_raw", cjson(r.raw)},
                           {"vol", sig15(r.vol)},
                           {"cs", sig15(cs)},
                           {"printed", {{"vol", row.vol}, {"cs", row.cs}}},
                           {"pass", pass}});
    }
  }
  j["all_pass"] = all_pass;
  return rep;
}

inline RunReport cmd_verify(const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  opt.cfg.check();
  if (opt.trials < 0) throw InputError("--trials must be >= 0");
  const LinkDiagram d = load_diagram(opt.input);
  if (validate(d).kinks > 0) throw InputError("verify needs a kink-free diagram");
  const Potential P = assemble_W(d, NegativeLogForm::Inverted);
  const auto sols = solve(build_system(P), opt.cfg);

  RunReport rep;
  json& j = rep.body;
  j["command"] = "verify";
  j["diagram"] = diagram_stats(d);
  j["config"] = config_json(opt.cfg);
  j["records"] = json::array();
  int passes = 0, skips = 0, fails = 0;
  std::vector<std::vector<cplx>> good;
  for (const auto& s : sols) {
    json rec{{"w", named_assignment(P.variables, s.assignment)}};
    if (!check_w_nondegenerate(d, s.assignment)) {
      rec["skipped"] = "degenerate";
      ++skips;
    } else {
      try {
        const auto t = verify_theorem2(d, s.assignment);
        rec["z"] = named_assignment(d.side_names, t.z);
        rec["w0_raw"] = cjson(t.W.raw);
        rec["v0_raw"] = cjson(t.V.raw);
        rec["v_residual"] = sig15(t.v_residual);
        rec["roundtrip"] = sig15(t.roundtrip_dev);
        rec["congruent_mod_4pi2"] = t.congruent;
        (t.congruent ? passes : fails)++;
        good.push_back(s.assignment);
      } catch (const Error& e) {
        rec["skipped"] = e.what();
        ++skips;
      }
    }
    j["records"].push_back(rec);
  }
  j["passes"] = passes;
  j["fails"] = fails;
  j["skips"] = skips;

  if (opt.sign_flip && !sols.empty()) {
    const Potential F = assemble_W(d);
    std::mt19937_64 rng(opt.cfg.seed ^ 0x5eedf11bULL);
    std::uniform_int_distribution<int> coin(0, 1);
    int sf_pass = 0;
    j["sign_flip"] = json::array();
    for (int tr = 0; tr < opt.trials; ++tr) {
      const auto& w = sols[tr % sols.size()].assignment;
      std::vector<int> tau(w.size()), eps(w.size());
      for (auto& v : tau) v = coin(rng) ? 1 : -1;
      for (auto& v : eps) v = coin(rng) ? 1 : -1;
      json rec{{"tau", tau}, {"eps", eps}};
      try {
        const auto a = w0(F, w);
        const auto b = w0(sign_flip(F, tau, eps), sign_flip_point(w, tau, eps));
        const bool ok = mod_eq(a.raw, b.raw, 2.0 * kPi2, 1e-9);
        rec["w0_raw"] = cjson(a.raw);
        rec["flipped_w0_raw"] = cjson(b.raw);
        rec["congruent_mod_2pi2"] = ok;
        sf_pass += ok;
      } catch (const Error& e) {
        rec["error"] = e.what();
      }
      j["sign_flip"].push_back(rec);
    }
    j["sign_flip_passes"] = sf_pass;
  }
  if (!opt.stable)
    j["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.exit_code = sols.empty() ? 2 : 0;
  return rep;
}

}  // namespace optlim
