#include "hankelritz/study.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <system_error>
#include <utility>

#include "CLI11.hpp"
#include "hankelritz/cmx_lt.hpp"
#include "hankelritz/errors.hpp"
#include "hankelritz/moment_engine.hpp"

namespace hankelritz {

namespace {

constexpr const char* kX8GroundState = "1.225820113800492191";

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string format_value(const BigReal& x) { return x.to_fixed(kCsvSignificantDigits); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot open '" + path.string() + "' for writing: " +
                std::error_code(errno, std::generic_category()).message());
  }
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw InvalidArgument("empty number");
  const auto dot = text.find('.');
  const auto exp_pos = text.find_first_of("eE");
  if (dot == std::string::npos && exp_pos == std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0 || sgn(r.get_den()) == 0) {
      throw InvalidArgument("not a rational number: '" + text + "'");
    }
    r.canonicalize();
    return r;
  }
  // Exact decimal: mantissa digits over a power of ten.
  std::string mantissa = text.substr(0, exp_pos);
  long exponent = 0;
  if (exp_pos != std::string::npos) {
    try {
      std::size_t used = 0;
      exponent = std::stol(text.substr(exp_pos + 1), &used);
      if (used != text.size() - exp_pos - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidArgument("not a decimal number: '" + text + "'");
    }
  }
  const auto mdot = mantissa.find('.');
  if (mdot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - mdot - 1);
    mantissa.erase(mdot, 1);
  }
  Integer digits;
  if (mantissa.empty() || mantissa == "-" || mantissa == "+" ||
      digits.set_str(mantissa.front() == '+' ? mantissa.substr(1) : mantissa, 10) != 0) {
    throw InvalidArgument("not a decimal number: '" + text + "'");
  }
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(digits * power) : Rational(digits, power);
  r.canonicalize();
  return r;
}

Potential parse_potential(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.rfind("x^", 0) == 0) {
    std::size_t used = 0;
    unsigned long power = 0;
    try {
      power = std::stoul(text.substr(2), &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad monomial potential '" + text + "'");
    }
    if (used != text.size() - 2) throw InvalidArgument("bad monomial potential '" + text + "'");
    if (power % 2 != 0) throw InvalidArgument("potential power must be even, got " + text);
    return Potential::monomial(power);
  }
  std::vector<Rational> coeffs;
  for (const auto& part : split(text, ',')) coeffs.push_back(parse_rational(part));
  return Potential::from_even_coeffs(coeffs);
}

std::vector<std::string> builtin_references(const Potential& pot) {
  if (pot == Potential::monomial(8)) return {kX8GroundState};
  if (pot == Potential::monomial(2)) return {"1", "5", "9"};
  return {};
}

std::optional<StudyConfig> parse_config(int argc, const char* const* argv,
                                        std::ostream& help_out) {
  CLI::App app{"Krylov-space moment methods: RRVM, CMPA, Bishop determinant and CMX-LT"};
  std::string potential = "x^8";
  std::string width = "8";
  std::size_t n_max = 12;
  std::optional<std::size_t> cmx_n_max;
  long precision = kDefaultPrecisionBits;
  std::string reference;
  std::string methods = "rrvm,cmpa,bishop,cmx_lt";
  std::string out;
  std::string dump_moments;
  std::string roots_out;
  std::string plot_script;

  app.add_option("--potential", potential, "x^K or even-power coefficients c0,c2,c4,...");
  app.add_option("--width", width, "Gaussian width a (rational, e.g. 8 or 1/2)");
  app.add_option("--nmax", n_max, "largest Krylov order N");
  app.add_option("--cmx-nmax", cmx_n_max, "largest CMX-LT order n (default nmax - 1)");
  app.add_option("--precision", precision, "working precision in bits");
  app.add_option("--reference", reference, "reference energies, comma separated");
  app.add_option("--methods", methods, "subset of rrvm,cmpa,bishop,cmx_lt");
  app.add_option("--out", out, "CSV output path (default stdout)");
  app.add_option("--dump-moments", dump_moments, "write reduced moments to this path");
  app.add_option("--roots-out", roots_out, "write every root to this CSV path");
  app.add_option("--plot-script", plot_script, "write a gnuplot script for the CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    help_out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  StudyConfig cfg;
  try {
    cfg.potential = parse_potential(potential);
  } catch (const Error& e) {
    throw ConfigError(std::string("--potential: ") + e.what());
  }
  try {
    cfg.width = parse_rational(width);
    GaussianWidth check(cfg.width);
  } catch (const Error& e) {
    throw ConfigError(std::string("--width: ") + e.what());
  }
  if (n_max < 1) throw ConfigError("--nmax: must be at least 1");
  if (2 * n_max - 1 > kDefaultMaxMoments) {
    throw ConfigError("--nmax: order " + std::to_string(n_max) + " exceeds the moment cap of " +
                      std::to_string(kDefaultMaxMoments));
  }
  cfg.n_max = n_max;
  cfg.cmx_n_max = cmx_n_max.value_or(n_max - 1);
  if (2 * cfg.cmx_n_max + 1 > kDefaultMaxMoments) {
    throw ConfigError("--cmx-nmax: order exceeds the moment cap");
  }
  if (precision < kMinPrecisionBits) {
    throw ConfigError("--precision: must be at least " + std::to_string(kMinPrecisionBits) +
                      " bits");
  }
  cfg.precision_bits = precision;

  if (!reference.empty()) {
    for (const auto& part : split(reference, ',')) {
      try {
        (void)BigReal::parse(part, precision);
      } catch (const Error& e) {
        throw ConfigError(std::string("--reference: ") + e.what());
      }
      cfg.reference_energies.push_back(part);
    }
  }

  cfg.methods.clear();
  for (const auto& part : split(methods, ',')) {
    const auto m = parse_method(part);
    if (!m) throw ConfigError("--methods: unknown method '" + part + "'");
    if (std::find(cfg.methods.begin(), cfg.methods.end(), *m) == cfg.methods.end()) {
      cfg.methods.push_back(*m);
    }
  }
  std::sort(cfg.methods.begin(), cfg.methods.end());

  if (!out.empty() && out != "-") cfg.out = out;
  if (!dump_moments.empty()) cfg.dump_moments = dump_moments;
  if (!roots_out.empty()) cfg.roots_out = roots_out;
  if (!plot_script.empty()) cfg.plot_script = plot_script;
  return cfg;
}

namespace {

ConvergenceRecord make_record(const SpectralEstimate& est,
                              const std::optional<BigReal>& reference) {
  ConvergenceRecord rec;
  rec.method = est.method;
  rec.order = est.order;
  rec.moments_used = est.moments_used;
  rec.roots = est.values;
  if (!est.values.empty()) {
    rec.value = est.values.front();
    if (reference) {
      rec.log10_abs_error = log10(abs(*rec.value - *reference));
    }
  }
  std::vector<std::string> flags;
  if (est.krylov_collapse) flags.push_back("krylov_collapse");
  if (est.rank_report) {
    const auto& r = *est.rank_report;
    if (!r.full_rank()) flags.push_back("rank=" + std::to_string(r.rank));
    if (r.precision_loss()) flags.push_back("precision_loss");
  }
  std::ostringstream joined;
  for (std::size_t i = 0; i < flags.size(); ++i) joined << (i ? ";" : "") << flags[i];
  rec.flags = joined.str();
  return rec;
}

ConvergenceRecord failed_record(Method method, std::size_t order, std::size_t moments,
                                const std::string& what) {
  ConvergenceRecord rec;
  rec.method = method;
  rec.order = order;
  rec.moments_used = moments;
  rec.flags = "error:" + what;
  return rec;
}

template <typename Fn>
ConvergenceRecord guarded(Method method, std::size_t order, std::size_t moments,
                          const std::optional<BigReal>& reference, Fn&& solve) {
  try {
    return make_record(solve(), reference);
  } catch (const SingularMomentMatrix&) {
    return failed_record(method, order, moments, "SingularMomentMatrix");
  } catch (const SingularConnectedMatrix&) {
    return failed_record(method, order, moments, "SingularConnectedMatrix");
  } catch (const RootCountMismatch&) {
    return failed_record(method, order, moments, "RootCountMismatch");
  } catch (const IndefiniteMatrix&) {
    return failed_record(method, order, moments, "IndefiniteMatrix");
  } catch (const NonConvergence&) {
    return failed_record(method, order, moments, "NonConvergence");
  }
}

}  // namespace

std::vector<ConvergenceRecord> run_study(const StudyConfig& config) {
  const PrecisionScope scope(config.precision_bits);
  const std::size_t max_index = std::max(2 * config.n_max - 1, 2 * config.cmx_n_max + 1);
  const MomentTable table = compute_moments(GaussianWidth(config.width), config.potential,
                                            max_index);
  if (config.dump_moments) {
    auto out = open_output(*config.dump_moments);
    write_moment_table(out, table);
    check_written(out, *config.dump_moments);
  }

  const auto references = config.reference_energies.empty()
                              ? builtin_references(config.potential)
                              : config.reference_energies;
  std::optional<BigReal> reference;
  if (!references.empty()) {
    reference = BigReal::parse(references.front(), config.precision_bits);
  }
  SolverOptions options;
  options.precision_bits = config.precision_bits;

  std::vector<ConvergenceRecord> records;
  for (Method method : config.methods) {
    if (method == Method::kCmxLt) {
      for (std::size_t n = 0; n <= config.cmx_n_max; ++n) {
        records.push_back(guarded(method, n, cmx_lt_moments_used(n), reference,
                                  [&] { return cmx_lt_estimate(table, n, options); }));
      }
      continue;
    }
    for (std::size_t n = 1; n <= config.n_max; ++n) {
      records.push_back(guarded(method, n, 2 * n, reference, [&] {
        switch (method) {
          case Method::kRrvm:
            return rrvm_eigenvalues(build_pencil(table, n, options), options);
          case Method::kCmpa:
            return cmpa_roots(cmpa_coefficients(table, n, options), options);
          default:
            return bishop_roots(table, n, options);
        }
      }));
    }
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const ConvergenceRecord& a, const ConvergenceRecord& b) {
                     if (a.method != b.method) return a.method < b.method;
                     return a.moments_used < b.moments_used;
                   });
  return records;
}

void emit_csv(const std::vector<ConvergenceRecord>& records, std::ostream& os) {
  os << "method,order,moments,value,log10_abs_error,flags\n";
  for (const auto& r : records) {
    os << method_name(r.method) << ',' << r.order << ',' << r.moments_used << ','
       << (r.value ? format_value(*r.value) : "") << ','
       << (r.log10_abs_error ? format_value(*r.log10_abs_error) : "") << ',' << r.flags
       << '\n';
  }
}

void emit_csv(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path) {
  auto out = open_output(path);
  emit_csv(records, out);
  check_written(out, path);
}

void emit_roots_csv(const std::vector<ConvergenceRecord>& records, std::ostream& os) {
  os << "method,order,moments,index,value\n";
  for (const auto& r : records) {
    for (std::size_t i = 0; i < r.roots.size(); ++i) {
      os << method_name(r.method) << ',' << r.order << ',' << r.moments_used << ',' << i << ','
         << format_value(r.roots[i]) << '\n';
    }
  }
}

void emit_plot_script(const std::filesystem::path& csv_path, std::ostream& os) {
  const std::string file = csv_path.string();
  os << "set datafile separator ','\n"
     << "set key top right\n"
     << "set xlabel 'M (moments used)'\n"
     << "set ylabel 'log10|E_approx - E_exact|'\n"
     << "plot '" << file
     << "' every ::1 using (strcol(1) eq 'CMX_LT' ? $3 : NaN):5 with linespoints pt 4 "
        "title 'CMX-LT', \\\n"
     << "     '" << file
     << "' every ::1 using (strcol(1) eq 'RRVM' ? $3 : NaN):5 with linespoints pt 7 "
        "title 'RRVM'\n";
}

}  // namespace hankelritz
