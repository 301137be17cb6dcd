#include "hardy/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double parse_override(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* last = text.data() + text.size();
  auto res = std::from_chars(text.data(), last, value);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
    throw ConfigError("cannot parse value '" + text + "' for '" + key + "'");
  }
  return value;
}

bool parse_flag(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("expected true or false for '" + key + "'");
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * double(i) / double(count - 1));
  return out;
}

std::optional<double> lens_theta(const SymbolSpec& phi) {
  if (phi.name() != "lens") return std::nullopt;
  return phi.parameter("theta");
}

double beta_theta_of(double theta) { return kPi * kPi / (std::exp2(theta) * theta); }

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must satisfy 1 <= p < inf");
}

}  // namespace

bool BoundConstants::lower_rigorous() const { return tau_rigorous; }

double minoration_constant(double p, double tau_p, double tau_2) {
  check_p(p);
  if (p == 1.0) return 1.0 / 12.0;
  if (p <= 2.0) return std::pow(12.0, -1.0 / p) / tau_p;
  return 1.0 / (std::sqrt(12.0) * tau_2);
}

BoundConstants make_constants(double p, std::optional<double> theta,
                              const std::map<std::string, std::string>& overrides) {
  check_p(p);
  BoundConstants c;
  c.p = p;
  c.p_tilde = std::min(p, 2.0);
  c.p_star = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  c.tau_rigorous = p == 1.0 || p == 2.0;
  c.alpha = kPi * kPi / 2.0;
  std::optional<double> sigma_exponent;

  for (const auto& [key, text] : overrides) {
    if (key.starts_with("upper.") || key.starts_with("oracle.")) continue;
    if (key == "tau_p") {
      c.tau_p = parse_override(key, text);
    } else if (key == "tau_2") {
      c.tau_2 = parse_override(key, text);
    } else if (key == "tau_rigorous") {
      c.tau_rigorous = parse_flag(key, text);
    } else if (key == "lambda") {
      c.lambda_constant = parse_override(key, text);
    } else if (key == "kappa_form") {
      if (text == "vinogradov") {
        c.kappa_form = KappaForm::vinogradov;
      } else if (text == "lambda") {
        c.kappa_form = KappaForm::lambda;
      } else {
        throw ConfigError("kappa_form must be vinogradov or lambda");
      }
    } else if (key == "radial.sigma_exponent") {
      sigma_exponent = parse_override(key, text);
    } else {
      throw ConfigError("unknown constant '" + key + "'");
    }
  }
  if (!(c.tau_p > 0.0) || !(c.tau_2 > 0.0)) throw ConfigError("type constants must be positive");
  if (!(c.lambda_constant > 0.0)) throw ConfigError("lambda must be positive");

  c.c_p = minoration_constant(p, c.tau_p, c.tau_2);
  if (theta) {
    if (!(*theta > 0.0) || *theta > 1.0) throw DomainError("theta must lie in (0, 1]");
    c.theta = theta;
    c.beta_theta = beta_theta_of(*theta);
  }
  // kappa_u <= 60 e^{5/(1-s)} / (1-s), 1 + log(1/delta_u) <= 6 / (1-s) and
  // the factor 1/2 of the ratio estimate.
  c.radial_sigma_exponent = sigma_exponent.value_or(1.0 + 1.0 / c.p_tilde);
  c.radial_c_prime = c.c_p * std::pow(2.0, -1.0 / p) * std::pow(6.0, -1.0 / c.p_tilde) / 60.0;
  return c;
}

UpperConstants make_upper_constants(const std::map<std::string, std::string>& overrides) {
  UpperConstants u;
  for (const auto& [key, text] : overrides) {
    if (!key.starts_with("upper.")) continue;
    const double value = parse_override(key, text);
    if (key == "upper.C") {
      u.carleson_c = value;
    } else if (key == "upper.K") {
      u.regular_k = value;
    } else if (key == "upper.kappa") {
      u.regular_kappa = value;
    } else if (key == "upper.chi") {
      if (!(value > 0.0 && value < 1.0)) throw ConfigError("upper.chi must lie in (0, 1)");
      u.regular_chi = value;
    } else {
      throw ConfigError("unknown constant '" + key + "'");
    }
    if (!(value > 0.0)) throw ConfigError("'" + key + "' must be positive");
  }
  return u;
}

void BoundReport::append(std::size_t n, double log_value, std::map<std::string, double> params) {
  n_values.push_back(n);
  log_values.push_back(log_value);
  values.push_back(std::exp(log_value));
  parameters.push_back(std::move(params));
}

namespace {

struct LoboParts {
  double log_value;
  double log_delta_u;
  double log_kappa_v;
  double log_mu;
};

LoboParts lobo_parts(const SymbolSpec& phi, const Sequence& u, const BoundConstants& c) {
  if (u.size() == 0) throw DomainError("lobo bound needs at least one point");
  std::vector<Point> images;
  images.reserve(u.size());
  double log_mu = std::numeric_limits<double>::infinity();
  for (const Point& z : u) {
    const Point w = phi.evaluate(z);
    images.push_back(w);
    log_mu = std::min(log_mu, std::log(z.one_minus_modulus_sq()) - std::log(w.one_minus_modulus_sq()));
  }
  const Sequence v(std::move(images));  // throws on colliding images
  const auto kappa = interpolation_constant_bounds(v, c.kappa_form, c.lambda_constant);
  const double log_delta_u = u.log_separation();
  const double log_value =
      std::log(c.c_p) - kappa.log_kappa_upper - std::log1p(-log_delta_u) / c.p_tilde + log_mu / c.p;
  return {log_value, log_delta_u, kappa.log_kappa_upper, log_mu};
}

Sequence radial_sequence(double eps, std::size_t n) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) pts.push_back(Point::from_polar_gap(std::exp(-eps * double(j)), 0.0));
  return Sequence(std::move(pts));
}

}  // namespace

BoundReport lobo_lower_bound(const SymbolSpec& phi, const Sequence& u, const BoundConstants& constants) {
  const LoboParts parts = lobo_parts(phi, u, constants);
  BoundReport report;
  report.bound_name = "lobo";
  report.constants = constants;
  report.rigorous = constants.lower_rigorous();
  report.append(u.size(), parts.log_value,
                {{"log_delta_u", parts.log_delta_u}, {"log_kappa_v_upper", parts.log_kappa_v}, {"log_mu", parts.log_mu}});
  return report;
}

std::pair<Sequence, BoundReport> optimize_lobo_sequence(const SymbolSpec& phi, std::size_t n,
                                                        const BoundConstants& constants) {
  if (n == 0) throw DomainError("n must be positive");
  if (!phi.real()) throw DomainError("radial sequences need a real symbol");

  // log value at eps, or -inf when the sequence or its image degenerates
  auto objective = [&](double eps) {
    try {
      return lobo_parts(phi, radial_sequence(eps, n), constants).log_value;
    } catch (const Error&) {
      return kNegInf;
    }
  };

  const double eps_max = std::min(20.0, 700.0 / double(n));
  std::vector<double> grid = log_spaced(1e-3, eps_max, 200);
  if (auto theta = lens_theta(phi); theta && *theta < 1.0) {
    const double star = lens_optimal_epsilon(*theta, constants.p, n);
    if (star <= eps_max) grid.push_back(star);
  }
  std::sort(grid.begin(), grid.end());

  std::size_t best_i = 0;
  double best = kNegInf;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = objective(grid[i]);
    if (values[i] > best) {
      best = values[i];
      best_i = i;
    }
  }
  double best_eps = grid[best_i];

  // golden-section refinement in log eps between the grid neighbours
  if (std::isfinite(best) && grid.size() > 2) {
    double lo = std::log(grid[best_i == 0 ? 0 : best_i - 1]);
    double hi = std::log(grid[std::min(best_i + 1, grid.size() - 1)]);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = objective(std::exp(x1));
    double f2 = objective(std::exp(x2));
    for (int it = 0; it < 40; ++it) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = objective(std::exp(x1));
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = objective(std::exp(x2));
      }
    }
    const double x = f1 > f2 ? x1 : x2;
    const double fx = std::max(f1, f2);
    if (fx > best) {
      best = fx;
      best_eps = std::exp(x);
    }
  }

  Sequence u = radial_sequence(best_eps, n);
  if (n == 1) {
    // a single point: the origin is a candidate the radial family misses
    Sequence origin(std::vector<Point>{Point()});
    try {
      if (lobo_parts(phi, origin, constants).log_value > best) {
        u = origin;
        best_eps = 0.0;
      }
    } catch (const Error&) {
    }
  }
  if (!std::isfinite(best) && best_eps != 0.0) throw DegenerateSequenceError("no admissible radial sequence");

  BoundReport report = lobo_lower_bound(phi, u, constants);
  report.bound_name = "lobo_optimized";
  report.parameters.front()["epsilon"] = best_eps;
  report.parameters.front()["sigma"] = std::exp(-best_eps);
  return {std::move(u), std::move(report)};
}

double lens_beta_p_theta(double theta, double p) {
  return std::sqrt(2.0 * beta_theta_of(theta) * (1.0 - theta) / p);
}

double lens_beta_p_theta_closed(double theta, double p) {
  return std::exp2((1.0 - theta) / 2.0) * kPi * std::sqrt((1.0 - theta) / theta) / std::sqrt(p);
}

double lens_optimal_epsilon(double theta, double p, std::size_t n) {
  return std::sqrt(3.0 * beta_theta_of(theta) * p / (1.0 - theta)) / std::sqrt(double(n));
}

double log_lens_asymptotic_formula(double theta, double p, std::size_t n, const BoundConstants& c) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("lens asymptotic bound needs 0 < theta < 1");
  check_p(p);
  if (n == 0) throw DomainError("n must be positive");
  const double beta = beta_theta_of(theta);
  const double pt = std::min(p, 2.0);
  const double log_alpha = std::log(c.c_p) - std::log(c.lambda_constant) - std::log(beta + 1.0) -
                           std::log(c.alpha + 1.0) / pt - (1.0 - theta) / p * std::log(2.0);
  const double log_alpha_prime = log_alpha + std::log(beta * p / (2.0 * (1.0 - theta))) / (2.0 * pt);
  return log_alpha_prime - std::log(double(n)) / (2.0 * pt) - lens_beta_p_theta(theta, p) * std::sqrt(double(n));
}

double log_lens_asymptotic_lower_bound(double theta, double p, std::size_t n, const BoundConstants& c) {
  if (n > 0 && theta > 0.0 && theta < 1.0 && p >= 1.0 && lens_optimal_epsilon(theta, p, n) >= 1.0) {
    throw RangeError("n too small: optimal epsilon is not below 1");
  }
  return log_lens_asymptotic_formula(theta, p, n, c);
}

double lens_asymptotic_lower_bound(double theta, double p, std::size_t n, const BoundConstants& c) {
  return std::exp(log_lens_asymptotic_lower_bound(theta, p, n, c));
}

BoundReport lens_asymptotic_report(double theta, std::span<const std::size_t> ns, const BoundConstants& c) {
  BoundReport report;
  report.bound_name = "lens_asymptotic";
  report.constants = c;
  report.rigorous = c.lower_rigorous();
  for (std::size_t n : ns) {
    if (lens_optimal_epsilon(theta, c.p, n) >= 1.0) continue;
    report.append(n, log_lens_asymptotic_lower_bound(theta, c.p, n, c),
                  {{"epsilon", lens_optimal_epsilon(theta, c.p, n)}});
  }
  return report;
}

namespace {

void add_closed_form_sigmas(const SymbolSpec& phi, std::size_t n, double p, std::vector<double>& out) {
  auto push = [&](double s) {
    if (s > 0.0 && s < 1.0 && std::isfinite(s)) out.push_back(s);
  };
  if (auto theta = lens_theta(phi); theta && *theta < 1.0) {
    const double k = std::sqrt((1.0 - *theta) / *theta) / (10.0 * std::sqrt(p));
    push(1.0 - 1.0 / (k * std::sqrt(double(n))));
  } else if (phi.name() == "cusp" && n >= 2) {
    push(1.0 - std::log(double(n)) / (4.0 * double(n)));
  } else if (phi.name() == "shapiro_taylor") {
    const double alpha = phi.radial_complement(1.0);
    push(1.0 / (std::numbers::e * std::pow(alpha, 1.0 / double(n))));
  }
}

}  // namespace

std::vector<double> default_radial_sigma_grid(const SymbolSpec& phi, std::size_t n, double p) {
  const double lo = std::min(1e-3, 0.1 / double(n));
  std::vector<double> grid;
  for (double gap : log_spaced(lo, 0.99, 200)) grid.push_back(1.0 - gap);
  add_closed_form_sigmas(phi, n, p, grid);
  return grid;
}

double log_radial_objective(const SymbolSpec& phi, double p, std::size_t n, double sigma, const BoundConstants& c) {
  if (!phi.modulus()) throw DomainError("radial bound needs a modulus of continuity");
  if (!(sigma > 0.0 && sigma < 1.0)) return kNegInf;
  const double a = phi.radial_complement(1.0);
  if (!(a > 0.0)) throw DomainError("radial bound needs phi(0) < 1");
  const double log_x = std::log(a) + double(n) * std::log(sigma);
  const double log_ratio = phi.modulus()->log_omega_inverse(log_x) - log_x;
  if (std::isnan(log_ratio)) return kNegInf;
  const double one_minus = 1.0 - sigma;
  return std::log(c.radial_c_prime) + log_ratio / p + c.radial_sigma_exponent * std::log(one_minus) -
         5.0 / one_minus;
}

BoundReport radial_lower_bound(const SymbolSpec& phi, std::span<const std::size_t> ns, const BoundConstants& c,
                               std::span<const double> sigma_grid) {
  if (!phi.modulus()) throw DomainError("radial bound needs a modulus of continuity");
  if (!(phi.radial_complement(1.0) > 0.0)) throw DomainError("radial bound needs phi(0) < 1");

  // one grid for every n, so the reported values are monotone in n
  std::vector<double> grid(sigma_grid.begin(), sigma_grid.end());
  if (grid.empty()) {
    const std::size_t n_max = ns.empty() ? 1 : *std::max_element(ns.begin(), ns.end());
    grid = default_radial_sigma_grid(phi, n_max, c.p);
    for (std::size_t n : ns) add_closed_form_sigmas(phi, n, c.p, grid);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }

  BoundReport report;
  report.bound_name = "radial";
  report.constants = c;
  report.rigorous = c.lower_rigorous() && phi.modulus()->rigorous;
  for (std::size_t n : ns) {
    if (n == 0) throw DomainError("n must be positive");
    double best = kNegInf;
    double best_sigma = 0.0;
    for (double s : grid) {
      const double v = log_radial_objective(phi, c.p, n, s, c);
      if (v > best) {
        best = v;
        best_sigma = s;
      }
    }
    if (!std::isfinite(best)) throw DomainError("radial objective undefined on the whole grid");
    report.append(n, best, {{"sigma", best_sigma}});
  }
  return report;
}

FloorEstimate geometric_decay_floor(const SymbolSpec& phi, std::size_t grid_size) {
  const double sup = pseudo_hyperbolic_derivative_sup(phi, grid_size);
  const double value = sup * sup;
  return {value, value < 1e-12};
}

double log_carl_triebel_lower_bound(std::span<const double> lambda_moduli, double norm, std::size_t n,
                                    std::size_t m) {
  if (m >= n) throw DomainError("Carl-Triebel bound needs m < n");
  if (lambda_moduli.size() < n) throw DomainError("fewer eigenvalues than n");
  if (!(norm > 0.0)) throw DomainError("operator norm must be positive");
  double log_prod = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (lambda_moduli[j] < 0.0) throw DomainError("eigenvalue moduli must be nonnegative");
    log_prod += std::log(lambda_moduli[j]);
  }
  return (log_prod - double(n) * std::log(16.0) - double(m) * std::log(norm)) / double(n - m);
}

double carl_triebel_lower_bound(std::span<const double> lambda_moduli, double norm, std::size_t n, std::size_t m) {
  return std::exp(log_carl_triebel_lower_bound(lambda_moduli, norm, n, m));
}

double log_carl_triebel_specialized(double s, double norm, std::size_t n) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0, 1]");
  if (n == 0) throw DomainError("n must be positive");
  return (2.0 * double(n) - 1.0) * std::log(s) - std::log(256.0) - std::log(norm);
}

WindowGrid WindowGrid::standard() {
  WindowGrid g;
  for (int k = 0; k <= 10; ++k) g.sizes.push_back(std::ldexp(1.0, -k));
  for (int j = 0; j < 128; ++j) g.angles.push_back(2.0 * kPi * j / 128.0);
  return g;
}

CarlesonWindowEstimate carleson_window_upper_bound(const SymbolSpec& phi, const std::vector<Point>& zeros, double p,
                                                   std::size_t n, const WindowGrid& grid, std::size_t samples,
                                                   std::uint64_t seed, const UpperConstants& constants) {
  check_p(p);
  if (n == 0 || zeros.size() >= n) throw DomainError("Blaschke product needs fewer than n zeros");
  if (!phi.analytic()) throw DomainError("boundary values need an analytic symbol");
  if (samples == 0) throw DomainError("samples must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::vector<Complex> images(samples);
  std::vector<double> weights(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * (double(i) + jitter(rng)) / double(samples);
    const Complex w = phi(std::polar(1.0, t));
    double b = 1.0;
    for (const Point& a : zeros) b *= std::abs(a.value() - w) / std::abs(1.0 - std::conj(a.value()) * w);
    images[i] = w;
    weights[i] = std::pow(b, p);
  }

  CarlesonWindowEstimate est;
  for (double h : grid.sizes) {
    for (double angle : grid.angles) {
      const Complex xi = std::polar(1.0, angle);
      double sum = 0.0;
      std::size_t hits = 0;
      for (std::size_t i = 0; i < samples; ++i) {
        if (std::abs(images[i] - xi) <= h) {
          sum += weights[i];
          ++hits;
        }
      }
      const double ratio = sum / double(samples) / h;
      if (ratio > est.window_sup) {
        est.window_sup = ratio;
        est.extremal_size = h;
        est.extremal_angle = angle;
        est.extremal_samples = hits;
      }
    }
  }
  est.resolution_warning = est.extremal_samples < 100;
  est.value = constants.carleson_c * std::sqrt(double(n)) * std::pow(est.window_sup, 1.0 / p);
  return est;
}

RegularUpperBound global_regular_upper_bound(const std::function<double(double)>& log_omega_inverse, int l,
                                             double p, std::size_t k, const UpperConstants& constants) {
  check_p(p);
  if (l < 1) throw DomainError("l must be positive");
  if (k == 0) throw DomainError("k must be positive");
  const double chi = constants.regular_chi;
  if (!(chi > 0.0 && chi < 1.0)) throw DomainError("chi must lie in (0, 1)");
  const double log_chi_inv_p = -p * std::log(chi);

  // log of x / omega^{-1}(x) at x = kappa 2^{-N}
  auto log_gap = [&](long N) {
    const double log_x = std::log(constants.regular_kappa) - double(N) * std::log(2.0);
    const double r = log_x - log_omega_inverse(log_x);
    if (r < 0.0) throw DomainError("omega^{-1}(x) > x: no decay");
    return r;
  };
  auto d_of = [&](long N) {
    const double q = std::floor(log_gap(N) / log_chi_inv_p) + 1.0;
    return std::isfinite(q) && q < 1e15 ? long(q) : -1L;
  };

  long n_k = 0;
  long d_best = d_of(0);
  for (long N = 1; N < 4096; ++N) {
    const long d = d_of(N);
    if (d < 0) break;
    if (double(l) * double(N) * double(d) >= double(k)) break;
    n_k = N;
    d_best = d;
  }
  RegularUpperBound out;
  out.n_k = n_k;
  out.d_n = d_best;
  out.log_value = std::log(constants.regular_k) - log_gap(n_k) / p;
  out.value = std::exp(out.log_value);
  return out;
}

}  // namespace hardy
