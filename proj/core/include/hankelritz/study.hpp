#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hankelritz/big_real.hpp"
#include "hankelritz/gaussian_poly.hpp"
#include "hankelritz/krylov_solver.hpp"

namespace hankelritz {

inline constexpr int kCsvSignificantDigits = 30;

struct StudyConfig {
  Potential potential = Potential::monomial(8);
  Rational width = 8;
  std::size_t n_max = 12;
  std::size_t cmx_n_max = 11;
  long precision_bits = kDefaultPrecisionBits;
  // Reference energies, lowest first; the first one drives the error column.
  // Empty means the built-in registry entry for the potential, if any.
  std::vector<std::string> reference_energies;
  std::vector<Method> methods = {Method::kRrvm, Method::kCmpa, Method::kBishop, Method::kCmxLt};
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> dump_moments;
  std::optional<std::filesystem::path> roots_out;
  std::optional<std::filesystem::path> plot_script;
};

/// One row of the convergence study.
struct ConvergenceRecord {
  Method method = Method::kRrvm;
  std::size_t order = 0;
  std::size_t moments_used = 0;
  std::optional<BigReal> value;  // ground root; absent when the solve failed
  std::optional<BigReal> log10_abs_error;
  std::vector<BigReal> roots;    // every root of the estimate
  std::string flags;
};

// Parses --potential, --width, --nmax, --cmx-nmax, --precision, --reference,
// --methods, --out, --dump-moments (plus --roots-out and --plot-script).
// Throws ConfigError naming the offending flag. Returns nullopt when help
// was printed to `help_out`.
std::optional<StudyConfig> parse_config(int argc, const char* const* argv,
                                        std::ostream& help_out);

// "x^K" or "c0,c2,c4,..." (coefficients of even powers).
Potential parse_potential(const std::string& text);
// "8", "1/2", "0.25" as exact rationals.
Rational parse_rational(const std::string& text);

// Built-in reference energies: the x^8 ground state and the even levels of
// the harmonic oscillator x^2. Empty when the potential is not registered.
std::vector<std::string> builtin_references(const Potential& pot);

std::vector<ConvergenceRecord> run_study(const StudyConfig& config);

// CSV with header method,order,moments,value,log10_abs_error,flags.
void emit_csv(const std::vector<ConvergenceRecord>& records, std::ostream& os);
void emit_csv(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path);

// Long-format dump: method,order,moments,index,value.
void emit_roots_csv(const std::vector<ConvergenceRecord>& records, std::ostream& os);

// gnuplot commands plotting log10 error against M for each method.
void emit_plot_script(const std::filesystem::path& csv_path, std::ostream& os);

}  // namespace hankelritz
