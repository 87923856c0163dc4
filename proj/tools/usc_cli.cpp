// usc: config-driven spectra, crossings, projections, oracle checks, fits
// and circuit quantization. Exit status: 0 when every internal check
// passes, 1 when a check fails, 2 on errors.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "usc.h"

int main(int argc, char** argv) {
  CLI::App app{"Two flux qubits ultrastrongly coupled to an LC resonator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", usc_version());

  std::string config, out = ".";
  int threads = 1;
  std::int64_t seed = -1;
  const char* commands[][2] = {
      {"sweep", "transition frequencies over the bias grid"},
      {"anticross", "locate and characterize an avoided crossing"},
      {"project", "bare-state projections of selected eigenstates"},
      {"oracle", "check the longitudinal limit against its closed form"},
      {"fit", "recover model parameters from peak data"},
      {"quantize", "charge-basis circuit quantization and two-level reduction"},
  };
  for (auto& c : commands) {
    auto* sub = app.add_subcommand(c[0], c[1]);
    sub->add_option("--config", config, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", seed, "override the [fit] seed")->check(CLI::NonNegativeNumber);
  }
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  usc_run* run = nullptr;
  const usc_status status =
      usc_run_command(command.c_str(), config.c_str(), out.c_str(), threads, seed, &run);
  if (status != USC_OK) {
    std::fprintf(stderr, "usc %s: %s: %s\n", command.c_str(), usc_status_name(status),
                 usc_last_error());
    return 2;
  }
  std::fputs(usc_run_summary(run), stdout);
  const int passed = usc_run_checks_passed(run);
  usc_run_destroy(run);
  return passed ? 0 : 1;
}
