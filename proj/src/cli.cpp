#include "hardy/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "hardy/bounds.hpp"
#include "hardy/decay_fit.hpp"
#include "hardy/errors.hpp"
#include "hardy/report_io.hpp"
#include "hardy/spectral_oracle.hpp"
#include "hardy/symbols.hpp"

namespace hardy {

namespace {

constexpr double kSandwichSlack = 1e-6;

std::optional<double> theta_of(const SymbolSpec& phi) {
  if (phi.name() != "lens") return std::nullopt;
  return phi.parameter("theta");
}

OracleOptions oracle_options(const RunConfig& config) {
  OracleOptions opts;
  for (const auto& [key, text] : config.overrides) {
    if (!key.starts_with("oracle.")) continue;
    double value = 0.0;
    const char* last = text.data() + text.size();
    auto res = std::from_chars(text.data(), last, value);
    if (res.ec != std::errc() || res.ptr != last || !(value > 0.0)) {
      throw ConfigError("cannot parse value '" + text + "' for '" + key + "'");
    }
    if (key == "oracle.tolerance") {
      opts.tolerance = value;
    } else if (key == "oracle.max_truncation") {
      opts.max_truncation = std::size_t(value);
    } else {
      throw ConfigError("unknown setting '" + key + "'");
    }
  }
  return opts;
}

std::vector<std::size_t> index_range(const RunConfig& config) {
  std::vector<std::size_t> ns;
  for (std::size_t n = config.n_min; n <= config.n_max; ++n) ns.push_back(n);
  return ns;
}

struct LowerRun {
  BoundReport report;
  std::vector<Sequence> sequences;  // optimal u for each n
};

LowerRun optimized_lobo(const SymbolSpec& phi, const std::vector<std::size_t>& ns, const BoundConstants& c) {
  LowerRun run;
  run.report.bound_name = "lobo_optimized";
  run.report.constants = c;
  run.report.rigorous = c.lower_rigorous();
  for (std::size_t n : ns) {
    auto [u, single] = optimize_lobo_sequence(phi, n, c);
    run.report.append(n, single.log_values.front(), single.parameters.front());
    run.sequences.push_back(std::move(u));
  }
  return run;
}

// Blaschke zeros at the images of the first n - 1 points of u.
std::vector<Point> window_zeros(const SymbolSpec& phi, const Sequence& u) {
  std::vector<Point> zeros;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) zeros.push_back(phi.evaluate(u[j]));
  return zeros;
}

BoundReport carleson_report(const SymbolSpec& phi, const std::vector<std::size_t>& ns, const LowerRun* lower,
                            const RunConfig& config, const BoundConstants& c, const UpperConstants& upper) {
  BoundReport report;
  report.bound_name = "carleson_window";
  report.constants = c;
  report.rigorous = false;
  const WindowGrid grid = WindowGrid::standard();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::vector<Point> zeros;
    if (lower) zeros = window_zeros(phi, lower->sequences[i]);
    const auto est = carleson_window_upper_bound(phi, zeros, config.p, ns[i], grid, config.samples, config.seed, upper);
    report.append(ns[i], std::log(est.value),
                  {{"zeros", double(zeros.size())},
                   {"window_h", est.extremal_size},
                   {"window_angle", est.extremal_angle},
                   {"window_samples", double(est.extremal_samples)},
                   {"resolution_warning", est.resolution_warning ? 1.0 : 0.0}});
  }
  return report;
}

BoundReport regular_report(const SymbolSpec& phi, const std::vector<std::size_t>& ns, const BoundConstants& c,
                           const UpperConstants& upper) {
  BoundReport report;
  report.bound_name = "global_regular";
  report.constants = c;
  report.rigorous = false;
  const auto& modulus = *phi.modulus();
  for (std::size_t k : ns) {
    const auto r = global_regular_upper_bound(modulus.log_omega_inverse, modulus.contact_points, c.p, k, upper);
    report.append(k, r.log_value, {{"N_k", double(r.n_k)}, {"d_N", double(r.d_n)}});
  }
  return report;
}

std::vector<BoundReport> all_bounds(const SymbolSpec& phi, const RunConfig& config, const BoundConstants& c,
                                    const UpperConstants& upper) {
  const auto ns = index_range(config);
  std::vector<BoundReport> reports;
  std::optional<LowerRun> lower;
  if (phi.real()) {
    lower = optimized_lobo(phi, ns, c);
    reports.push_back(lower->report);
  }
  if (phi.modulus()) reports.push_back(radial_lower_bound(phi, ns, c));
  if (auto theta = theta_of(phi); theta && *theta < 1.0) {
    auto lens = lens_asymptotic_report(*theta, ns, c);
    if (!lens.n_values.empty()) reports.push_back(std::move(lens));
  }
  if (phi.analytic()) reports.push_back(carleson_report(phi, ns, lower ? &*lower : nullptr, config, c, upper));
  if (phi.modulus()) reports.push_back(regular_report(phi, ns, c, upper));
  return reports;
}

int run_sandwich(const SymbolSpec& phi, const RunConfig& config, const BoundConstants& c,
                 const UpperConstants& upper, std::ostream& out, std::ostream& err) {
  if (config.p != 2.0) throw ConfigError("sandwich compares against the H^2 oracle and needs --p 2");
  if (!phi.real() || !phi.analytic()) throw ConfigError("sandwich needs a real analytic symbol");
  const auto ns = index_range(config);
  const auto table = approximation_numbers(phi, config.truncation, config.n_max, oracle_options(config));
  const LowerRun lower = optimized_lobo(phi, ns, c);
  const BoundReport up = carleson_report(phi, ns, &lower, config, c, upper);

  int rigorous_violations = 0;
  std::ostringstream rows;
  const bool csv = parse_format(config.format) == Format::csv;
  if (csv) rows << "n,lower,lower_rigorous,oracle,oracle_converged,upper,upper_rigorous,lower_violation,upper_violation\n";
  std::vector<std::string> json_rows;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const std::size_t n = ns[i];
    const double oracle = table.values[n - 1];
    const double lo = lower.report.values[i];
    const double hi = up.values[i];
    const bool lower_bad = lo > oracle * (1.0 + kSandwichSlack);
    const bool upper_bad = hi < oracle * (1.0 - kSandwichSlack);
    if (lower_bad && lower.report.rigorous) ++rigorous_violations;
    if (upper_bad && up.rigorous) ++rigorous_violations;
    const bool converged = n <= table.converged_upto;
    if (csv) {
      rows << n << ',' << format_double(lo) << ',' << (lower.report.rigorous ? "true" : "false") << ','
           << format_double(oracle) << ',' << (converged ? "true" : "false") << ',' << format_double(hi) << ','
           << (up.rigorous ? "true" : "false") << ',' << (lower_bad ? "true" : "false") << ','
           << (upper_bad ? "true" : "false") << '\n';
    } else {
      std::ostringstream row;
      row << "    {\"n\": " << n << ", \"lower\": " << format_double(lo)
          << ", \"lower_rigorous\": " << (lower.report.rigorous ? "true" : "false")
          << ", \"oracle\": " << format_double(oracle) << ", \"oracle_converged\": " << (converged ? "true" : "false")
          << ", \"upper\": " << format_double(hi) << ", \"upper_rigorous\": " << (up.rigorous ? "true" : "false")
          << ", \"lower_violation\": " << (lower_bad ? "true" : "false")
          << ", \"upper_violation\": " << (upper_bad ? "true" : "false") << "}";
      json_rows.push_back(row.str());
    }
  }
  if (csv) {
    out << rows.str();
  } else {
    out << "{\n  \"symbol\": \"" << phi.to_string() << "\",\n  \"truncation\": " << table.truncation
        << ",\n  \"converged_upto\": " << table.converged_upto
        << ",\n  \"rigorous_violations\": " << rigorous_violations << ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < json_rows.size(); ++i) out << json_rows[i] << (i + 1 < json_rows.size() ? ",\n" : "\n");
    out << "  ]\n}\n";
  }
  if (rigorous_violations > 0) {
    err << "sandwich: " << rigorous_violations << " rigorous bound violation(s)\n";
    return kExitViolation;
  }
  return kExitOk;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Format format = parse_format(config.format);
  const SymbolSpec phi = parse_symbol(config.symbol);
  const BoundConstants constants = make_constants(config.p, theta_of(phi), config.overrides);
  const UpperConstants upper = make_upper_constants(config.overrides);

  if (config.command == "constants") {
    write_constants(out, constants, upper, format);
    return kExitOk;
  }
  if (config.command == "bounds") {
    write_reports(out, all_bounds(phi, config, constants, upper), format);
    return kExitOk;
  }
  if (config.command == "oracle" || config.command == "fit") {
    if (!phi.analytic()) throw ConfigError("the oracle needs a symbol defined on the whole disk");
    const auto table = approximation_numbers(phi, config.truncation, config.n_max, oracle_options(config));
    if (config.command == "oracle") {
      write_table(out, table, phi.to_string(), format);
      return kExitOk;
    }
    const NRange range{std::max<std::size_t>(config.n_min, 2), config.n_max};
    std::vector<DecayModel> models;
    for (DecayKind kind : {DecayKind::geometric, DecayKind::stretched, DecayKind::cusp}) {
      models.push_back(fit(table, kind, range));
    }
    write_models(out, models, phi.to_string());
    return kExitOk;
  }
  if (config.command == "sandwich") return run_sandwich(phi, config, constants, upper, out, err);
  throw ConfigError("unknown command '" + config.command + "'");
}

}  // namespace

void add_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + assignment + "'");
  config.overrides[assignment.substr(0, eq)] = assignment.substr(eq + 1);
}

void validate(const RunConfig& config) {
  static const std::vector<std::string> commands{"bounds", "oracle", "sandwich", "fit", "constants"};
  if (std::find(commands.begin(), commands.end(), config.command) == commands.end()) {
    throw ConfigError("unknown command '" + config.command + "'");
  }
  if (!(config.p >= 1.0) || !std::isfinite(config.p)) throw ConfigError("p must satisfy 1 <= p < inf");
  if (config.n_min < 1 || config.n_min > config.n_max) throw ConfigError("need 1 <= n_min <= n_max");
  if (config.n_max > config.truncation) throw ConfigError("n_max must not exceed the truncation");
  if (config.samples == 0) throw ConfigError("samples must be positive");
  parse_format(config.format);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.output_path.empty()) return dispatch(config, out, err);
    std::ostringstream buffer;
    const int status = dispatch(config, buffer, err);
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw ConfigError("cannot open '" + config.output_path + "' for writing");
    file << buffer.str();
    return status;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace hardy
