#ifndef KWFLOW_COMMANDS_HPP
#define KWFLOW_COMMANDS_HPP

#include <array>
#include <cstdint>
#include <string>

namespace kwflow {

/** Resolved configuration for one CLI invocation. */
struct RunConfig {
  int n = 64;

  std::string phi_name = "zero";  ///< builtin name, ignored when phi_file set
  double phi_amplitude = 0.5;
  std::string phi_file;

  std::string weight_name = "const";
  std::string weight_file;

  std::string u0_file;      ///< KWF1 initial data; zero field when empty
  bool u0_from_seed = false;  ///< build u0 via the subcritical seed construction

  double rho = 8.0 * 3.14159265358979323846;
  std::string scheme = "imex";  ///< "imex" or "rk4"
  double dt_init = 1e-3;
  double t_max = 10.0;
  long step_max = 1000000;
  double residual_tol = 1e-6;
  int sample_every = 100;
  double snapshot_interval = 0;

  std::string output_dir = "out";
  int pole_stride = 4;
  std::uint64_t rng_seed = 1;
};

int cmd_run(const RunConfig& cfg);
int cmd_green(const RunConfig& cfg, std::array<int, 2> pole, bool dump_field);
int cmd_check(const RunConfig& cfg);
int cmd_stationary(const RunConfig& cfg);
int cmd_seed(const RunConfig& cfg);
int cmd_verify(const std::string& level, bool emit_json);

}  // namespace kwflow

#endif
