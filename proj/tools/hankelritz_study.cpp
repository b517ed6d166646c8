// Convergence study runner: sweeps Krylov and CMX-LT orders for one
// problem and writes a CSV of ground-state estimates.

#include <fstream>
#include <iostream>

#include "hankelritz/errors.hpp"
#include "hankelritz/study.hpp"

int main(int argc, char** argv) {
  using namespace hankelritz;
  std::optional<StudyConfig> config;
  try {
    config = parse_config(argc, argv, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "hankelritz_study: " << e.what() << "\n";
    return 2;
  }
  if (!config) return 0;

  try {
    const auto records = run_study(*config);
    if (config->out) {
      emit_csv(records, *config->out);
    } else {
      emit_csv(records, std::cout);
    }
    if (config->roots_out) {
      std::ofstream out(*config->roots_out);
      if (!out) throw Error("cannot open '" + config->roots_out->string() + "' for writing");
      emit_roots_csv(records, out);
    }
    if (config->plot_script) {
      std::ofstream out(*config->plot_script);
      if (!out) throw Error("cannot open '" + config->plot_script->string() + "' for writing");
      emit_plot_script(config->out.value_or("study.csv"), out);
    }
  } catch (const Error& e) {
    std::cerr << "hankelritz_study: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
