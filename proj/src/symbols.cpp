#include "hardy/symbols.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("cannot parse value '" + text + "' for key '" + key + "'");
  }
  return value;
}

Complex mobius(Complex a, Complex z) { return (a - z) / (1.0 - std::conj(a) * z); }

Complex mobius_derivative(Complex a, Complex z) {
  const Complex d = 1.0 - std::conj(a) * z;
  return (std::norm(a) - 1.0) / (d * d);
}

Complex principal_pow(Complex base, double exponent) {
  if (base == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
  return std::pow(base, exponent);
}

// f_theta(w) = w (-log w)^theta, principal logarithm.
Complex shapiro_taylor_f(Complex w, double theta) { return w * std::pow(-std::log(w), theta); }

Complex shapiro_taylor_f_derivative(Complex w, double theta) {
  const Complex l = -std::log(w);
  return std::pow(l, theta) - theta * std::pow(l, theta - 1.0);
}

Complex half_disk_map_derivative(Complex z) {
  const Complex w = (z - kI) / (kI * z - 1.0);
  const Complex s = std::sqrt(w);
  const Complex a = 1.0 - kI * s;
  const Complex b = kI * z - 1.0;
  return -2.0 / (a * a * s * b * b);
}

// Complex binary power, deterministic for a given exponent.
Complex int_pow(Complex base, std::size_t k) {
  Complex result(1.0, 0.0);
  while (k > 0) {
    if (k & 1U) result *= base;
    base *= base;
    k >>= 1U;
  }
  return result;
}

}  // namespace

SymbolSpec::SymbolSpec(Definition def) : def_(std::make_shared<const Definition>(std::move(def))) {
  if (!def_->raw) throw ConstructionError("symbol '" + def_->name + "' has no evaluation");
  value_at_zero_ = def_->raw(Complex(0.0, 0.0));
}

std::optional<double> SymbolSpec::parameter(const std::string& key) const {
  auto it = def_->parameters.find(key);
  if (it == def_->parameters.end()) return std::nullopt;
  return it->second;
}

Complex SymbolSpec::operator()(Complex z) const {
  if (!def_->analytic && (z.imag() != 0.0 || z.real() < 0.0)) {
    throw DomainError("symbol '" + def_->name + "' is only available on [0, 1)");
  }
  return def_->raw(z);
}

Complex SymbolSpec::derivative(Complex z) const {
  if (!def_->derivative) throw DomainError("symbol '" + def_->name + "' has no derivative");
  if (!def_->analytic && (z.imag() != 0.0 || z.real() < 0.0)) {
    throw DomainError("symbol '" + def_->name + "' is only available on [0, 1)");
  }
  return def_->derivative(z);
}

Point SymbolSpec::evaluate(const Point& z) const {
  if (def_->radial_complement && z.on_positive_axis()) {
    return Point::real_from_complement(def_->radial_complement(z.gap()));
  }
  return Point((*this)(z.value()));
}

double SymbolSpec::radial_complement(double h) const {
  if (!def_->radial_complement) {
    throw DomainError("symbol '" + def_->name + "' has no radial complement");
  }
  if (!(h > 0.0) || h > 1.0) throw DomainError("radial complement needs 0 < h <= 1");
  return def_->radial_complement(h);
}

std::string SymbolSpec::to_string() const {
  std::string out = def_->name;
  char sep = ':';
  for (const auto& [key, value] : def_->parameters) {
    out += sep;
    out += key + "=" + format_number(value);
    sep = ',';
  }
  return out;
}

SymbolSpec identity_symbol() {
  SymbolSpec::Definition def;
  def.name = "identity";
  def.raw = [](Complex z) { return z; };
  def.derivative = [](Complex) { return Complex(1.0, 0.0); };
  def.radial_complement = [](double h) { return h; };
  def.real = true;
  return SymbolSpec(std::move(def));
}

SymbolSpec constant_symbol(double c) {
  if (!(std::abs(c) < 1.0)) throw DomainError("constant symbol needs |c| < 1");
  SymbolSpec::Definition def;
  def.name = "constant";
  def.parameters = {{"c", c}};
  def.raw = [c](Complex) { return Complex(c, 0.0); };
  def.derivative = [](Complex) { return Complex(0.0, 0.0); };
  def.radial_complement = [c](double) { return 1.0 - c; };
  def.real = true;
  return SymbolSpec(std::move(def));
}

SymbolSpec scale_symbol(double c) {
  if (!(std::abs(c) < 1.0)) throw DomainError("scale symbol needs |c| < 1");
  SymbolSpec::Definition def;
  def.name = "scale";
  def.parameters = {{"c", c}};
  def.raw = [c](Complex z) { return c * z; };
  def.derivative = [c](Complex) { return Complex(c, 0.0); };
  def.radial_complement = [c](double h) { return (1.0 - c) + c * h; };
  def.real = true;
  return SymbolSpec(std::move(def));
}

SymbolSpec automorphism_symbol(Complex a) {
  if (!(std::abs(a) < 1.0)) throw DomainError("automorphism needs |a| < 1");
  SymbolSpec::Definition def;
  def.name = "automorphism";
  def.parameters = {{"a", a.real()}};
  if (a.imag() != 0.0) def.parameters["a_im"] = a.imag();
  def.raw = [a](Complex z) { return mobius(a, z); };
  def.derivative = [a](Complex z) { return mobius_derivative(a, z); };
  if (a.imag() == 0.0) {
    const double b = a.real();
    // 1 - Phi_b(1 - h) = (1 - b)(2 - h) / (1 - b + b h)
    def.radial_complement = [b](double h) { return (1.0 - b) * (2.0 - h) / (1.0 - b + b * h); };
    def.real = true;
  }
  return SymbolSpec(std::move(def));
}

double lens_modulus_constant(double theta) {
  double best = 0.0;
  constexpr int kPoints = 1000;
  for (int i = 0; i < kPoints; ++i) {
    const double log_h = std::log(10.0) * (-300.0 + 300.0 * i / (kPoints - 1));
    const double h = std::exp(log_h);
    const double complement = 2.0 * std::pow(h, theta) / (std::pow(2.0 - h, theta) + std::pow(h, theta));
    best = std::max(best, std::exp(std::log(complement) - theta * log_h));
  }
  return best;
}

SymbolSpec lens_symbol(double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw DomainError("lens map needs 0 < theta <= 1");
  SymbolSpec::Definition def;
  def.name = "lens";
  def.parameters = {{"theta", theta}};
  def.raw = [theta](Complex z) {
    const Complex a = principal_pow(1.0 + z, theta);
    const Complex b = principal_pow(1.0 - z, theta);
    return (a - b) / (a + b);
  };
  def.derivative = [theta](Complex z) {
    const Complex a = principal_pow(1.0 + z, theta);
    const Complex b = principal_pow(1.0 - z, theta);
    const Complex s = a + b;
    return 4.0 * theta * a * b / ((1.0 - z * z) * s * s);
  };
  def.radial_complement = [theta](double h) {
    const double ht = std::pow(h, theta);
    return 2.0 * ht / (std::pow(2.0 - h, theta) + ht);
  };
  const double c_theta = lens_modulus_constant(theta);
  RadialModulus modulus;
  modulus.omega = [c_theta, theta](double h) { return c_theta * std::pow(h, theta); };
  modulus.log_omega_inverse = [c_theta, theta](double log_h) { return (log_h - std::log(c_theta)) / theta; };
  modulus.contact_points = 2;
  modulus.rigorous = true;
  modulus.description = "omega(h) = C_theta h^theta, C_theta = " + format_number(c_theta);
  def.modulus = std::move(modulus);
  def.real = true;
  return SymbolSpec(std::move(def));
}

namespace {

// 1 - chi(1 - h) = 1 / (1 + (2/pi) log[1 / (2 arctan(h / (2 - h)))])
double cusp_complement(double h) {
  const double angle = std::atan(h / (2.0 - h));
  return 1.0 / (1.0 - (2.0 / kPi) * std::log(2.0 * angle));
}

}  // namespace

SymbolSpec cusp_symbol() {
  SymbolSpec::Definition def;
  def.name = "cusp";
  def.raw = [](Complex z) {
    const double r = z.real();
    if (z.imag() != 0.0 || r < 0.0 || r >= 1.0) throw DomainError("cusp profile needs r in [0, 1)");
    return Complex(1.0 - cusp_complement(1.0 - r), 0.0);
  };
  def.derivative = [](Complex z) {
    const double r = z.real();
    if (z.imag() != 0.0 || r < 0.0 || r >= 1.0) throw DomainError("cusp profile needs r in [0, 1)");
    const double x = (1.0 - r) / (1.0 + r);
    const double angle = std::atan(x);
    const double g = cusp_complement(1.0 - r);
    const double dlog = 2.0 / (angle * (1.0 + x * x) * (1.0 + r) * (1.0 + r));
    return Complex((2.0 / kPi) * g * g * dlog, 0.0);
  };
  def.radial_complement = cusp_complement;
  RadialModulus modulus;
  modulus.omega = [](double x) { return 2.0 / std::log(1.0 / x); };
  modulus.log_omega_inverse = [](double log_h) { return -2.0 / std::exp(log_h); };
  modulus.contact_points = 1;
  modulus.rigorous = true;
  modulus.description = "omega(x) = 2 / log(1/x), omega^{-1}(h) = exp(-2/h)";
  def.modulus = std::move(modulus);
  def.analytic = false;
  def.real = true;
  return SymbolSpec(std::move(def));
}

Complex half_disk_map(Complex z) {
  const Complex w = (z - kI) / (kI * z - 1.0);
  const Complex s = std::sqrt(w);
  return (s - kI) / (1.0 - kI * s);
}

double half_disk_map_radial(double h) {
  const double v = std::atan(h / (2.0 - h));
  return std::tan(v / 2.0);
}

namespace {

bool shapiro_taylor_positive(double theta, double eps) {
  // Polar grid reaching close to the circle; Re f(eps phi_0(z)) must stay > 0.
  constexpr int kRadii = 48;
  constexpr int kAngles = 256;
  for (int i = 0; i <= kRadii; ++i) {
    const double r = i == 0 ? 0.0 : 1.0 - std::pow(10.0, -4.0 * i / kRadii);
    for (int j = 0; j < kAngles; ++j) {
      const double t = 2.0 * kPi * (j + 0.5) / kAngles;
      const Complex w = eps * half_disk_map(std::polar(r, t));
      const Complex f = shapiro_taylor_f(w, theta);
      if (!std::isfinite(f.real()) || !std::isfinite(f.imag()) || !(f.real() > 0.0)) return false;
    }
  }
  return true;
}

}  // namespace

SymbolSpec shapiro_taylor_symbol(double theta, double eps, double k_theta) {
  if (!(theta > 0.0)) throw DomainError("Shapiro-Taylor map needs theta > 0");
  if (!(k_theta > 0.0)) throw DomainError("Shapiro-Taylor modulus constant must be positive");
  if (eps == 0.0) {
    for (double candidate : {0.5, 0.25, 0.1, 0.05, 0.025, 0.01, 0.005, 0.0025, 0.001}) {
      if (shapiro_taylor_positive(theta, candidate)) {
        eps = candidate;
        break;
      }
    }
    if (eps == 0.0) throw ConstructionError("no default eps passes the positivity check");
  } else {
    if (!(eps > 0.0) || !(eps < 1.0)) throw DomainError("Shapiro-Taylor map needs 0 < eps < 1");
    if (!shapiro_taylor_positive(theta, eps)) {
      throw ConstructionError("Re f_theta(g_theta(z)) is not positive for eps = " + format_number(eps));
    }
  }
  SymbolSpec::Definition def;
  def.name = "shapiro_taylor";
  def.parameters = {{"theta", theta}, {"eps", eps}, {"K", k_theta}};
  def.raw = [theta, eps](Complex z) { return std::exp(-shapiro_taylor_f(eps * half_disk_map(z), theta)); };
  def.derivative = [theta, eps](Complex z) {
    const Complex g = eps * half_disk_map(z);
    const Complex value = std::exp(-shapiro_taylor_f(g, theta));
    return -value * shapiro_taylor_f_derivative(g, theta) * eps * half_disk_map_derivative(z);
  };
  def.radial_complement = [theta, eps](double h) {
    const double w = eps * half_disk_map_radial(h);
    return -std::expm1(-w * std::pow(-std::log(w), theta));
  };
  RadialModulus modulus;
  // omega^{-1}(h) = K h (log(1/h))^{-theta}, defined for h < 1.
  modulus.log_omega_inverse = [theta, k_theta](double log_h) {
    if (!(log_h < 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::log(k_theta) + log_h - theta * std::log(-log_h);
  };
  modulus.omega = [inverse = modulus.log_omega_inverse](double x) {
    // Invert the increasing map log h -> log omega^{-1}(h) on (-inf, 0).
    const double target = std::log(x);
    double lo = -1e4;
    double hi = -1e-300;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (inverse(mid) < target) lo = mid; else hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
  };
  modulus.contact_points = 1;
  modulus.rigorous = false;
  modulus.description = "omega^{-1}(h) = K_theta h (log 1/h)^{-theta}, K_theta = " + format_number(k_theta);
  def.modulus = std::move(modulus);
  def.real = true;
  return SymbolSpec(std::move(def));
}

SymbolSpec parse_symbol(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("malformed symbol parameter '" + item + "'");
      const std::string key = item.substr(0, eq);
      if (params.count(key)) throw ConfigError("duplicate symbol parameter '" + key + "'");
      params[key] = parse_number(key, item.substr(eq + 1));
    }
  }
  auto take = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it == params.end()) {
      if (!fallback) throw ConfigError("symbol '" + name + "' needs parameter '" + key + "'");
      return *fallback;
    }
    const double v = it->second;
    params.erase(it);
    return v;
  };
  auto finish = [&](SymbolSpec spec) {
    if (!params.empty()) {
      throw ConfigError("unknown parameter '" + params.begin()->first + "' for symbol '" + name + "'");
    }
    return spec;
  };

  if (name == "identity") return finish(identity_symbol());
  if (name == "constant") return finish(constant_symbol(take("c")));
  if (name == "scale") return finish(scale_symbol(take("c")));
  if (name == "automorphism") {
    const double re = take("a");
    const double im = take("a_im", 0.0);
    return finish(automorphism_symbol(Complex(re, im)));
  }
  if (name == "lens") return finish(lens_symbol(take("theta")));
  if (name == "cusp") return finish(cusp_symbol());
  if (name == "shapiro_taylor") {
    const double theta = take("theta");
    const double eps = take("eps", 0.0);
    const double k = take("K", 1.0);
    return finish(shapiro_taylor_symbol(theta, eps, k));
  }
  throw ConfigError("unknown symbol '" + name + "'");
}

SymbolSpec normalize_at(const SymbolSpec& phi, const Point& a) {
  if (!phi.analytic()) throw DomainError("normalize_at needs an analytic symbol");
  const Complex av = a.value();
  const Complex b = phi(av);
  SymbolSpec::Definition def;
  def.name = "normalized";
  def.parameters = phi.parameters();
  def.parameters["at_re"] = av.real();
  if (av.imag() != 0.0) def.parameters["at_im"] = av.imag();
  def.raw = [phi, av, b](Complex z) { return mobius(b, phi(mobius(av, z))); };
  def.derivative = [phi, av, b](Complex z) {
    const Complex inner = mobius(av, z);
    return mobius_derivative(b, phi(inner)) * phi.derivative(inner) * mobius_derivative(av, z);
  };
  def.real = phi.real() && av.imag() == 0.0;
  return SymbolSpec(std::move(def));
}

double pseudo_hyperbolic_derivative(const SymbolSpec& phi, const Point& z) {
  const Point w = phi.evaluate(z);
  return std::abs(phi.derivative(z.value())) * z.one_minus_modulus_sq() / w.one_minus_modulus_sq();
}

double pseudo_hyperbolic_derivative_sup(const SymbolSpec& phi, std::size_t grid_size) {
  const std::size_t radii = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(double(grid_size))));
  const std::size_t angles = phi.analytic() ? std::max<std::size_t>(1, grid_size / radii) : 1;
  double best = 0.0;
  for (std::size_t i = 0; i < radii; ++i) {
    const double gap = std::pow(10.0, -6.0 * double(i) / double(radii - 1));
    for (std::size_t j = 0; j < angles; ++j) {
      const double t = 2.0 * kPi * double(j) / double(angles);
      const Point z = Point::from_polar_gap(gap, t);
      best = std::max(best, pseudo_hyperbolic_derivative(phi, z));
    }
  }
  return best;
}

namespace {

struct SamplingPlan {
  std::size_t count;
  std::size_t samples;
  double radius;
  std::vector<Complex> nodes;      // phi at r e^{2 pi i j / S}
  std::vector<Complex> midpoints;  // phi at r e^{2 pi i (j + 1/2) / S}
  std::vector<Complex> shift;      // e^{i pi m / S}
  std::vector<double> inverse_radius_powers;
};

SamplingPlan make_plan(const SymbolSpec& phi, std::size_t count, std::size_t oversample) {
  SamplingPlan plan;
  plan.count = count;
  plan.samples = count * oversample;
  plan.radius = std::exp(-4.0 / double(count));
  const std::size_t s = plan.samples;
  plan.nodes.resize(s);
  plan.midpoints.resize(s);
  plan.shift.resize(s);
  for (std::size_t j = 0; j < s; ++j) {
    plan.nodes[j] = phi(std::polar(plan.radius, 2.0 * kPi * double(j) / double(s)));
    plan.midpoints[j] = phi(std::polar(plan.radius, 2.0 * kPi * (double(j) + 0.5) / double(s)));
    plan.shift[j] = std::polar(1.0, kPi * double(j) / double(s));
  }
  plan.inverse_radius_powers.resize(count);
  for (std::size_t m = 0; m < count; ++m) plan.inverse_radius_powers[m] = std::exp(4.0 * double(m) / double(count));
  return plan;
}

// Extracts one column given the sampled powers; returns the midpoint residual.
double extract_column(Eigen::FFT<double>& fft, const SamplingPlan& plan, const std::vector<Complex>& at_nodes,
                      const std::vector<Complex>& at_midpoints, std::vector<Complex>& spectrum,
                      std::vector<Complex>& scratch, Complex* out) {
  const std::size_t s = plan.samples;
  fft.fwd(spectrum, at_nodes);
  for (std::size_t m = 0; m < plan.count; ++m) {
    out[m] = spectrum[m] / double(s) * plan.inverse_radius_powers[m];
  }
  for (std::size_t m = 0; m < s; ++m) spectrum[m] *= plan.shift[m];
  fft.inv(scratch, spectrum);
  double residual = 0.0;
  for (std::size_t j = 0; j < s; ++j) residual = std::max(residual, std::abs(scratch[j] - at_midpoints[j]));
  return residual;
}

void check_count(std::size_t count) {
  if (count < 2 || (count & (count - 1)) != 0) throw DomainError("coefficient count must be a power of two >= 2");
}

}  // namespace

TaylorCoefficients taylor_coefficients(const SymbolSpec& phi, std::size_t count, std::size_t power,
                                       const TaylorOptions& options) {
  check_count(count);
  if (!phi.analytic()) throw DomainError("symbol '" + phi.name() + "' has no Taylor expansion here");
  for (std::size_t over = options.oversample; over <= options.max_oversample; over *= 2) {
    const SamplingPlan plan = make_plan(phi, count, over);
    std::vector<Complex> at_nodes(plan.samples);
    std::vector<Complex> at_mid(plan.samples);
    for (std::size_t j = 0; j < plan.samples; ++j) {
      at_nodes[j] = int_pow(plan.nodes[j], power);
      at_mid[j] = int_pow(plan.midpoints[j], power);
    }
    Eigen::FFT<double> fft;
    std::vector<Complex> spectrum;
    std::vector<Complex> scratch;
    TaylorCoefficients result;
    result.coefficients.resize(Eigen::Index(count));
    result.residual = extract_column(fft, plan, at_nodes, at_mid, spectrum, scratch, result.coefficients.data());
    result.radius_used = plan.radius;
    result.samples = plan.samples;
    if (result.residual <= options.tolerance) return result;
  }
  throw AccuracyError("Taylor extraction for '" + phi.to_string() + "' exceeds the residual tolerance");
}

Eigen::MatrixXcd taylor_power_table(const SymbolSpec& phi, std::size_t count, const TaylorOptions& options,
                                    double* max_residual) {
  check_count(count);
  if (!phi.analytic()) throw DomainError("symbol '" + phi.name() + "' has no Taylor expansion here");
  constexpr std::size_t kChunk = 32;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), chunks));

  for (std::size_t over = options.oversample; over <= options.max_oversample; over *= 2) {
    const SamplingPlan plan = make_plan(phi, count, over);
    Eigen::MatrixXcd table(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
    std::vector<double> chunk_residual(chunks, 0.0);

    auto worker = [&](std::size_t first_chunk) {
      Eigen::FFT<double> fft;
      std::vector<Complex> at_nodes(plan.samples), at_mid(plan.samples), spectrum, scratch;
      for (std::size_t c = first_chunk; c < chunks; c += threads) {
        const std::size_t k0 = c * kChunk;
        const std::size_t k1 = std::min(count, k0 + kChunk);
        for (std::size_t j = 0; j < plan.samples; ++j) {
          at_nodes[j] = int_pow(plan.nodes[j], k0);
          at_mid[j] = int_pow(plan.midpoints[j], k0);
        }
        for (std::size_t k = k0; k < k1; ++k) {
          const double r = extract_column(fft, plan, at_nodes, at_mid, spectrum, scratch, &table(0, Eigen::Index(k)));
          chunk_residual[c] = std::max(chunk_residual[c], r);
          for (std::size_t j = 0; j < plan.samples; ++j) {
            at_nodes[j] *= plan.nodes[j];
            at_mid[j] *= plan.midpoints[j];
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();

    const double residual = *std::max_element(chunk_residual.begin(), chunk_residual.end());
    if (residual <= options.tolerance) {
      if (max_residual) *max_residual = residual;
      return table;
    }
  }
  throw AccuracyError("Taylor power table for '" + phi.to_string() + "' exceeds the residual tolerance");
}

}  // namespace hardy
