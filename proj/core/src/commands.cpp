#include "kwflow/commands.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "kwflow/builtins.hpp"
#include "kwflow/flow.hpp"
#include "kwflow/green.hpp"
#include "kwflow/io.hpp"
#include "kwflow/stationary.hpp"
#include "kwflow/verify.hpp"

namespace kwflow {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

Surface build_surface(const RunConfig& cfg) {
  Grid g = Grid::make(cfg.n);
  if (!cfg.phi_file.empty()) {
    ScalarField phi = read_kwf1(cfg.phi_file);
    if (phi.n() != cfg.n) throw GridMismatchError("phi file grid does not match n");
    return make_surface(g, phi);
  }
  return make_surface(g, builtin_phi(g, cfg.phi_name, cfg.phi_amplitude));
}

Weight build_weight(const RunConfig& cfg) {
  Grid g = Grid::make(cfg.n);
  if (!cfg.weight_file.empty()) {
    ScalarField h = read_kwf1(cfg.weight_file);
    if (h.n() != cfg.n) throw GridMismatchError("weight file grid does not match n");
    return Weight::make(h);
  }
  return builtin_weight(g, cfg.weight_name);
}

json to_json(const RunConfig& cfg) {
  return json{{"n", cfg.n},
              {"phi_name", cfg.phi_name},
              {"phi_amplitude", cfg.phi_amplitude},
              {"phi_file", cfg.phi_file},
              {"weight_name", cfg.weight_name},
              {"weight_file", cfg.weight_file},
              {"u0_file", cfg.u0_file},
              {"u0_from_seed", cfg.u0_from_seed},
              {"rho", cfg.rho},
              {"scheme", cfg.scheme},
              {"dt_init", cfg.dt_init},
              {"t_max", cfg.t_max},
              {"step_max", cfg.step_max},
              {"residual_tol", cfg.residual_tol},
              {"sample_every", cfg.sample_every},
              {"snapshot_interval", cfg.snapshot_interval},
              {"output_dir", cfg.output_dir},
              {"pole_stride", cfg.pole_stride},
              {"rng_seed", cfg.rng_seed}};
}

json to_json(const Diagnostics& d) {
  return json{{"t", d.t},
              {"mass", d.mass},
              {"weighted_mass", d.weighted_mass},
              {"J", d.j_value},
              {"dissipation", d.dissipation},
              {"fn_l2", d.fn_l2},
              {"residual_l2", d.residual_l2},
              {"max_u", d.max_u},
              {"h1", d.h1},
              {"h2", d.h2},
              {"tm_gap", d.tm_gap}};
}

json to_json(const ConditionReport& rep) {
  return json{{"p0", {rep.p0[0], rep.p0[1]}},
              {"lhs", rep.lhs},
              {"rhs", rep.rhs},
              {"simplified", rep.simplified},
              {"satisfied", rep.satisfied},
              {"k", {rep.k[0], rep.k[1]}},
              {"b", {rep.b[0], rep.b[1]}},
              {"A", rep.A},
              {"C0", rep.c0},
              {"h_at_p0", rep.h_at_p0}};
}

FlowConfig to_flow_config(const RunConfig& cfg) {
  FlowConfig fc;
  fc.rho = cfg.rho;
  if (cfg.scheme == "imex")
    fc.scheme = Scheme::imex;
  else if (cfg.scheme == "rk4")
    fc.scheme = Scheme::explicit_rk4;
  else
    throw Error("unknown scheme: " + cfg.scheme);
  fc.dt_init = cfg.dt_init;
  fc.t_max = cfg.t_max;
  fc.step_max = cfg.step_max;
  fc.residual_tol = cfg.residual_tol;
  fc.sample_every = cfg.sample_every;
  fc.snapshot_interval = cfg.snapshot_interval;
  fc.snapshot_dir = cfg.output_dir;
  return fc;
}

ScalarField build_u0(const RunConfig& cfg, const Surface& s, const Weight& w, json* seed_info) {
  Grid g = s.grid;
  if (cfg.u0_from_seed) {
    ConcentrationPotential cp = concentration_potential(s, w, cfg.pole_stride);
    GreenData gd = green_function(s, cp.p0);
    fit_regular_part(s, gd);
    auto eps = resolvable_eps_range(g);
    SeedResult sr = construct_subcritical_data(s, w, gd, cp.c0, eps);
    if (seed_info)
      *seed_info = json{{"J0", sr.j0}, {"C0", sr.c0}, {"eps", sr.eps},
                        {"margin", sr.c0 - sr.j0}, {"below_barrier", sr.ok}};
    return sr.u0;
  }
  if (!cfg.u0_file.empty()) {
    ScalarField u0 = read_kwf1(cfg.u0_file);
    if (u0.n() != cfg.n) throw GridMismatchError("u0 file grid does not match n");
    return u0;
  }
  return ScalarField(g, 0.0);
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string());
  os << j.dump(2) << "\n";
}

int fail(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return 1;
}

}  // namespace

int cmd_run(const RunConfig& cfg) try {
  Surface s = build_surface(cfg);
  Weight w = build_weight(cfg);
  fs::create_directories(cfg.output_dir);
  json seed_info;
  ScalarField u0 = build_u0(cfg, s, w, &seed_info);

  RunResult rr = run(s, w, u0, to_flow_config(cfg));
  write_series_csv(fs::path(cfg.output_dir) / "series.csv", rr.series);
  write_kwf1(fs::path(cfg.output_dir) / "u_final.kwf", rr.final.u);

  json summary;
  summary["termination"] = to_string(rr.termination);
  summary["final"] = to_json(rr.series.back());
  summary["t_final"] = rr.final.t;
  summary["steps"] = rr.final.step_index;
  summary["config"] = to_json(cfg);
  if (!seed_info.is_null()) summary["seed"] = seed_info;
  try {
    ConditionReport rep = check_condition(s, w, cfg.pole_stride);
    summary["condition"] = to_json(rep);
    summary["C0"] = rep.c0;
  } catch (const Error& e) {
    summary["condition"] = nullptr;
    summary["condition_error"] = e.what();
  }
  if (rr.blowup) {
    summary["blowup"] = json{{"suspected", rr.blowup->suspected},
                             {"peak_count", rr.blowup->peak_count},
                             {"quantization", rr.blowup->quantization}};
  }
  write_json(fs::path(cfg.output_dir) / "summary.json", summary);

  switch (rr.termination) {
    case Termination::converged: return 0;
    case Termination::blowup_suspected: return 2;
    case Termination::budget_exhausted: return 3;
    case Termination::numerical_failure: return 1;
  }
  return 1;
} catch (const std::exception& e) {
  return fail(e);
}

int cmd_green(const RunConfig& cfg, std::array<int, 2> pole, bool dump_field) try {
  Surface s = build_surface(cfg);
  GreenData gd = green_function(s, pole);
  fit_regular_part(s, gd);
  fs::create_directories(cfg.output_dir);
  json j{{"pole", {gd.pole[0], gd.pole[1]}},
         {"A", gd.A},
         {"b", {gd.b[0], gd.b[1]}},
         {"quad", {gd.quad[0], gd.quad[1], gd.quad[2]}},
         {"fit_residual", gd.fit_residual}};
  write_json(fs::path(cfg.output_dir) / "green.json", j);
  if (dump_field) write_kwf1(fs::path(cfg.output_dir) / "green.kwf", gd.G);
  std::cout << j.dump(2) << "\n";
  return 0;
} catch (const std::exception& e) {
  return fail(e);
}

int cmd_check(const RunConfig& cfg) try {
  Surface s = build_surface(cfg);
  Weight w = build_weight(cfg);
  ConditionReport rep = check_condition(s, w, cfg.pole_stride);
  fs::create_directories(cfg.output_dir);
  json j = to_json(rep);
  write_json(fs::path(cfg.output_dir) / "condition.json", j);
  std::cout << j.dump(2) << "\n";
  return rep.satisfied ? 0 : 4;
} catch (const std::exception& e) {
  return fail(e);
}

int cmd_stationary(const RunConfig& cfg) try {
  Surface s = build_surface(cfg);
  Weight w = build_weight(cfg);
  ScalarField u0 = build_u0(cfg, s, w, nullptr);
  NewtonResult nr = newton_solve(s, w, cfg.rho, u0);
  fs::create_directories(cfg.output_dir);
  json j{{"residual", nr.residual},
         {"iterations", nr.iterations},
         {"converged", nr.converged},
         {"linear_solver_breakdown", nr.linear_solver_breakdown}};
  write_json(fs::path(cfg.output_dir) / "stationary.json", j);
  write_kwf1(fs::path(cfg.output_dir) / "u_stationary.kwf", nr.u);
  std::cout << j.dump(2) << "\n";
  return nr.converged ? 0 : 1;
} catch (const std::exception& e) {
  return fail(e);
}

int cmd_seed(const RunConfig& cfg) try {
  Surface s = build_surface(cfg);
  Weight w = build_weight(cfg);
  ConcentrationPotential cp = concentration_potential(s, w, cfg.pole_stride);
  GreenData gd = green_function(s, cp.p0);
  fit_regular_part(s, gd);
  auto eps = resolvable_eps_range(s.grid);
  SeedResult sr = construct_subcritical_data(s, w, gd, cp.c0, eps);
  fs::create_directories(cfg.output_dir);
  json scan = json::array();
  for (auto [e, jv] : sr.scan) scan.push_back({{"eps", e}, {"J", jv}});
  // margin here is the headroom below the barrier: positive means usable data.
  json j{{"J0", sr.j0},
         {"C0", sr.c0},
         {"margin", sr.c0 - sr.j0},
         {"eps", sr.eps},
         {"below_barrier", sr.ok},
         {"p0", {cp.p0[0], cp.p0[1]}},
         {"scan", scan}};
  write_json(fs::path(cfg.output_dir) / "seed.json", j);
  write_kwf1(fs::path(cfg.output_dir) / "u0.kwf", sr.u0);
  std::cout << j.dump(2) << "\n";
  return sr.ok ? 0 : 1;
} catch (const std::exception& e) {
  return fail(e);
}

int cmd_verify(const std::string& level, bool emit_json) try {
  VerifyLevel lv;
  if (level == "quick")
    lv = VerifyLevel::quick;
  else if (level == "full")
    lv = VerifyLevel::full;
  else
    throw Error("unknown verify level: " + level);
  std::vector<CheckResult> results = run_invariant_suite(lv);
  int failures = 0;
  for (const CheckResult& r : results) {
    std::printf("%-45s %s  observed %.3e  bound %.3e\n", r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.observed, r.bound);
    if (!r.passed) ++failures;
  }
  if (emit_json) {
    json arr = json::array();
    for (const CheckResult& r : results)
      arr.push_back({{"name", r.name}, {"passed", r.passed}, {"observed", r.observed},
                     {"bound", r.bound}});
    std::cout << arr.dump(2) << "\n";
  }
  std::printf("%zu checks, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
} catch (const std::exception& e) {
  return fail(e);
}

}  // namespace kwflow
