#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/symbols.hpp"

namespace hardy {

/// Constants ledger for one exponent p. All exponent bookkeeping lives here.
struct BoundConstants {
  double p = 2.0;
  double p_tilde = 2.0;  // min(p, 2)
  double p_star = 2.0;   // conjugate exponent, +inf for p = 1
  double tau_p = 1.0;    // type constant entering c_p for 1 < p < 2
  double tau_2 = 1.0;    // type-2 constant used for p > 2
  bool tau_rigorous = true;
  double c_p = 0.0;
  double lambda_constant = 12.0;
  KappaForm kappa_form = KappaForm::vinogradov;
  double alpha = 0.0;  // pi^2 / 2
  std::optional<double> theta;
  std::optional<double> beta_theta;  // pi^2 / (2^theta theta)
  /// Exponent of (1 - sigma) in the radial minoration and its constant c'_p.
  double radial_sigma_exponent = 0.0;
  double radial_c_prime = 0.0;

  /// 1 / max(p*, 2) = 1 - 1/min(p, 2)
  double inverse_max_conjugate() const { return 1.0 - 1.0 / p_tilde; }
  /// True when every constant entering the lower bounds is quantified.
  bool lower_rigorous() const;
};

/// Constants of the upper-bound theorems; none is quantified, so every
/// report built from them is flagged non-rigorous.
struct UpperConstants {
  double carleson_c = 1.4142135623730951;  // sqrt(2)
  double regular_k = 1.0;
  double regular_kappa = 1.0;
  double regular_chi = 0.5;
};

/// c_p for each of the three regimes p = 1, 1 < p <= 2, p > 2.
double minoration_constant(double p, double tau_p = 1.0, double tau_2 = 1.0);

/// Ledger for p; theta adds the lens constant beta_theta. `overrides` keys:
/// tau_p, tau_2, tau_rigorous, lambda, kappa_form (vinogradov|lambda),
/// radial.sigma_exponent. Keys under "upper." and "oracle." are skipped.
BoundConstants make_constants(double p, std::optional<double> theta = std::nullopt,
                              const std::map<std::string, std::string>& overrides = {});

/// Reads upper.C, upper.K, upper.kappa, upper.chi; ignores other keys.
UpperConstants make_upper_constants(const std::map<std::string, std::string>& overrides = {});

struct BoundReport {
  std::string bound_name;
  std::vector<std::size_t> n_values;
  std::vector<double> values;
  std::vector<double> log_values;
  BoundConstants constants;
  bool rigorous = false;
  /// Free parameters per n (sigma, epsilon, ...), same length as n_values.
  std::vector<std::map<std::string, double>> parameters;

  void append(std::size_t n, double log_value, std::map<std::string, double> params = {});
};

/// Lower bound on a_n(C_phi), n = |u|, with kappa_v replaced by its upper
/// bound so that the result is a certified lower bound.
BoundReport lobo_lower_bound(const SymbolSpec& phi, const Sequence& u, const BoundConstants& constants);

/// Best lower bound over radial sequences u_j = 1 - sigma^j, sigma = e^{-eps},
/// searched on an eps grid (with the closed-form optimum for lens maps) and
/// refined locally.
std::pair<Sequence, BoundReport> optimize_lobo_sequence(const SymbolSpec& phi, std::size_t n,
                                                        const BoundConstants& constants);

/// beta_{p,theta} = sqrt(2 beta_theta (1 - theta) / p).
double lens_beta_p_theta(double theta, double p);
/// The same quantity through 2^{(1-theta)/2} pi sqrt((1-theta)/theta) / sqrt(p).
double lens_beta_p_theta_closed(double theta, double p);
/// eps* = sqrt(3 beta p / (1 - theta)) / sqrt(n).
double lens_optimal_epsilon(double theta, double p, std::size_t n);

/// alpha'_{p,theta} n^{-1/(2 p~)} exp(-beta_{p,theta} sqrt(n)); RangeError when eps* >= 1.
double lens_asymptotic_lower_bound(double theta, double p, std::size_t n, const BoundConstants& constants);
double log_lens_asymptotic_lower_bound(double theta, double p, std::size_t n, const BoundConstants& constants);
/// The displayed formula itself, evaluated without the eps* < 1 check.
double log_lens_asymptotic_formula(double theta, double p, std::size_t n, const BoundConstants& constants);
/// Report over the n for which the formula is valid.
BoundReport lens_asymptotic_report(double theta, std::span<const std::size_t> ns, const BoundConstants& constants);

/// Default sigma grid: 200 points with 1 - sigma log-spaced in [0.001, 0.99],
/// plus the closed-form choices for lens, cusp and Shapiro-Taylor symbols.
std::vector<double> default_radial_sigma_grid(const SymbolSpec& phi, std::size_t n, double p);

/// log of c'_p [(w^{-1}(a s^n) / (a s^n))^{1/p} (1 - s)^e exp(-5 / (1 - s))]
/// at a single sigma; -inf when the modulus is undefined there.
double log_radial_objective(const SymbolSpec& phi, double p, std::size_t n, double sigma,
                            const BoundConstants& constants);

/// Supremum of the radial objective over `sigma_grid` (default grid when empty).
BoundReport radial_lower_bound(const SymbolSpec& phi, std::span<const std::size_t> ns,
                               const BoundConstants& constants, std::span<const double> sigma_grid = {});

struct FloorEstimate {
  double value;  // grid sup of (phi#)^2
  bool degenerate;
};

FloorEstimate geometric_decay_floor(const SymbolSpec& phi, std::size_t grid_size = 10000);

/// a_{m+1} >= (prod_{j<=n} |lambda_j| / (16^n ||T||^m))^{1/(n-m)}.
double carl_triebel_lower_bound(std::span<const double> lambda_moduli, double norm, std::size_t n, std::size_t m);
double log_carl_triebel_lower_bound(std::span<const double> lambda_moduli, double norm, std::size_t n,
                                    std::size_t m);
/// log of the specialization a_n >= s^{2n-1} / (16^2 ||C||) obtained with
/// 2n eigenvalues s^{j-1} and m = n - 1.
double log_carl_triebel_specialized(double s, double norm, std::size_t n);

struct WindowGrid {
  std::vector<double> sizes;   // h
  std::vector<double> angles;  // arg xi
  static WindowGrid standard();
};

struct CarlesonWindowEstimate {
  double value = 0.0;       // C sqrt(n) (window sup)^{1/p}
  double window_sup = 0.0;  // sup (1/h) int_{S(xi,h)} |B|^p dm_phi
  double extremal_size = 0.0;
  double extremal_angle = 0.0;
  std::size_t extremal_samples = 0;
  bool resolution_warning = false;
};

/// Monte-Carlo estimate (stratified t samples, seeded jitter) of the
/// Carleson-window upper bound with the Blaschke product on `zeros`
/// (fewer than n of them; an empty list means B = 1).
CarlesonWindowEstimate carleson_window_upper_bound(const SymbolSpec& phi, const std::vector<Point>& zeros, double p,
                                                   std::size_t n, const WindowGrid& grid, std::size_t samples,
                                                   std::uint64_t seed, const UpperConstants& constants = {});

struct RegularUpperBound {
  double value;
  double log_value;
  long n_k;  // N_k
  long d_n;  // d_{N_k}
};

/// K [w^{-1}(kappa 2^{-N_k}) / (kappa 2^{-N_k})]^{1/p}, N_k the largest N with
/// l N d_N < k. `log_omega_inverse` maps log h to log w^{-1}(h).
RegularUpperBound global_regular_upper_bound(const std::function<double(double)>& log_omega_inverse, int l,
                                             double p, std::size_t k, const UpperConstants& constants = {});

}  // namespace hardy
