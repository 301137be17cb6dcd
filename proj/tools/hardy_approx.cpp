#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardy/cli.hpp"
#include "hardy/errors.hpp"

namespace {

constexpr const char* kFooter = R"(CSV columns:
  bounds     bound,n,value,rigorous,params   (params: key=value;...)
  oracle     n,sigma,truncation,converged
  sandwich   n,lower,lower_rigorous,oracle,oracle_converged,upper,upper_rigorous,
             lower_violation,upper_violation
  constants  key,value
fit always writes JSON.

Symbols: identity, constant:c=.., scale:c=.., automorphism:a=..[,a_im=..],
         lens:theta=.., cusp, shapiro_taylor:theta=..[,eps=..][,K=..]

--set keys: tau_p, tau_2, tau_rigorous, lambda, kappa_form, radial.sigma_exponent,
            upper.C, upper.K, upper.kappa, upper.chi,
            oracle.tolerance, oracle.max_truncation

Exit status: 0 ok, 1 configuration error, 2 rigorous bound violated, 3 numerical failure.)";

}  // namespace

int main(int argc, char** argv) {
  hardy::RunConfig config;
  std::vector<std::string> sets;

  CLI::App app{"Approximation numbers of composition operators on Hardy spaces"};
  app.footer(kFooter);
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--symbol", config.symbol, "symbol, name[:key=value,...]")->capture_default_str();
    sub->add_option("--p", config.p, "Hardy space exponent, >= 1")->capture_default_str();
    sub->add_option("--n-min", config.n_min, "first index")->capture_default_str();
    sub->add_option("--n-max", config.n_max, "last index")->capture_default_str();
    sub->add_option("--truncation", config.truncation, "oracle matrix size N")->capture_default_str();
    sub->add_option("--output", config.output_path, "output file (default: stdout)");
    sub->add_option("--format", config.format, "csv or json")->capture_default_str();
    sub->add_option("--set", sets, "override a constant, key=value (repeatable)");
    sub->add_option("--seed", config.seed, "seed for Monte-Carlo windows")->capture_default_str();
    sub->add_option("--samples", config.samples, "boundary samples for window estimates")->capture_default_str();
  };

  const std::vector<std::pair<std::string, std::string>> commands{
      {"bounds", "all applicable lower and upper bounds"},
      {"oracle", "singular values of the truncated H^2 matrix"},
      {"sandwich", "lower <= oracle <= upper at p = 2"},
      {"fit", "decay-law fits of the oracle values (JSON)"},
      {"constants", "constants ledger for p"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    sub->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hardy::kExitConfig;
  }

  try {
    for (const auto& s : sets) hardy::add_override(config, s);
  } catch (const hardy::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return hardy::kExitConfig;
  }
  return hardy::run(config, std::cout, std::cerr);
}
