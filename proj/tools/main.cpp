#include <CLI11.hpp>

#include <array>
#include <string>

#include "kwflow/commands.hpp"

namespace {

// Shared model options; every subcommand that builds a surface/weight takes
// these, with --config file values overridden by explicit flags.
void add_model_options(CLI::App* app, kwflow::RunConfig& cfg) {
  app->add_option("--n", cfg.n, "Grid points per side (power of two, >= 16)")
      ->capture_default_str();
  app->add_option("--phi", cfg.phi_name, "Builtin conformal factor: zero, cos_x1, cos_both")
      ->capture_default_str();
  app->add_option("--phi-amplitude", cfg.phi_amplitude, "Amplitude of the builtin phi")
      ->capture_default_str();
  app->add_option("--phi-file", cfg.phi_file, "KWF1 file with phi (overrides --phi)");
  app->add_option("--weight", cfg.weight_name,
                  "Builtin prescribed function: const, one_plus_half_cos, near_vanishing, "
                  "vanishing_patch")
      ->capture_default_str();
  app->add_option("--weight-file", cfg.weight_file, "KWF1 file with h (overrides --weight)");
  app->add_option("--rho", cfg.rho, "Parameter rho (8*pi is critical)")->capture_default_str();
  app->add_option("--out", cfg.output_dir, "Output directory")->capture_default_str();
  app->add_option("--pole-stride", cfg.pole_stride,
                  "Pole sub-lattice stride for the concentration potential")
      ->capture_default_str();
  app->add_option("--seed", cfg.rng_seed, "RNG seed for randomized checks")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field flow laboratory on conformally flat tori"};
  app.require_subcommand(1);
  // Keys live in a section named after the subcommand, e.g. [run] n=64.
  app.set_config("--config", "", "Read options from a TOML/INI config file");
  app.fallthrough();

  kwflow::RunConfig cfg;

  CLI::App* run = app.add_subcommand("run", "Integrate the flow and emit series/summary");
  add_model_options(run, cfg);
  run->add_option("--u0-file", cfg.u0_file, "KWF1 initial data (default: zero)");
  run->add_flag("--u0-seed", cfg.u0_from_seed,
                "Build initial data with the subcritical seed construction");
  run->add_option("--scheme", cfg.scheme, "Time stepping: imex or rk4")->capture_default_str();
  run->add_option("--dt", cfg.dt_init, "Initial time step")->capture_default_str();
  run->add_option("--t-max", cfg.t_max, "Time horizon")->capture_default_str();
  run->add_option("--step-max", cfg.step_max, "Step budget")->capture_default_str();
  run->add_option("--residual-tol", cfg.residual_tol, "Convergence threshold on ||M(u)||_L2")
      ->capture_default_str();
  run->add_option("--sample-every", cfg.sample_every, "Diagnostics sampling stride in steps")
      ->capture_default_str();
  run->add_option("--snapshot-interval", cfg.snapshot_interval,
                  "Emit KWF1 snapshots every this much flow time (0 = off)")
      ->capture_default_str();

  CLI::App* green = app.add_subcommand("green", "Green function data at one pole");
  add_model_options(green, cfg);
  std::array<int, 2> pole{0, 0};
  bool dump_field = false;
  green->add_option("--pole", pole, "Pole node indices i j");
  green->add_flag("--dump-field", dump_field, "Also write the Green field as KWF1");

  CLI::App* check = app.add_subcommand("check", "Evaluate the convergence condition at p0");
  add_model_options(check, cfg);

  CLI::App* stationary = app.add_subcommand("stationary", "Newton solve for a stationary state");
  add_model_options(stationary, cfg);
  stationary->add_option("--u0-file", cfg.u0_file, "KWF1 initial guess (default: zero)");

  CLI::App* seed = app.add_subcommand("seed", "Construct initial data below the energy barrier");
  add_model_options(seed, cfg);

  CLI::App* verify = app.add_subcommand("verify", "Run the cross-module invariant suite");
  std::string level = "quick";
  bool emit_json = false;
  verify->add_option("--level", level, "quick (n=64) or full (n=256)")->capture_default_str();
  verify->add_flag("--json", emit_json, "Also print machine-readable JSON");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return kwflow::cmd_run(cfg);
  if (green->parsed()) return kwflow::cmd_green(cfg, pole, dump_field);
  if (check->parsed()) return kwflow::cmd_check(cfg);
  if (stationary->parsed()) return kwflow::cmd_stationary(cfg);
  if (seed->parsed()) return kwflow::cmd_seed(cfg);
  if (verify->parsed()) return kwflow::cmd_verify(level, emit_json);
  return 1;
}
