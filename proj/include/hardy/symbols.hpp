#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "hardy/disk_geometry.hpp"

namespace hardy {

using Complex = std::complex<double>;
using Point = DiskPoint<double>;
using Sequence = PointSequence<double>;

/// Modulus of continuity omega of an omega-radial symbol:
/// 1 - phi(r) <= omega(1 - r) on [0, 1).
struct RadialModulus {
  std::function<double(double)> omega;
  /// log h -> log omega^{-1}(h); kept in log form because omega^{-1} of the
  /// cusp map underflows for moderate h.
  std::function<double(double)> log_omega_inverse;
  /// Number of boundary contact points of phi(closed disk).
  int contact_points = 1;
  /// False when the modulus carries an unquantified constant.
  bool rigorous = true;
  std::string description;

  double omega_inverse(double h) const { return std::exp(log_omega_inverse(std::log(h))); }
};

/// An analytic self-map of the disk, addressable by a name and parameters.
///
/// `raw` evaluates the defining formula on the closed disk without checks;
/// `evaluate` maps a DiskPoint to a DiskPoint, keeping the boundary gap exact
/// on the positive axis whenever a radial complement h -> 1 - phi(1 - h) is
/// known. Symbols that are only known along [0, 1) (the cusp map) are not
/// analytic() and refuse complex arguments.
class SymbolSpec {
 public:
  struct Definition {
    std::string name;
    std::map<std::string, double> parameters;
    std::function<Complex(Complex)> raw;
    std::function<Complex(Complex)> derivative;
    std::function<double(double)> radial_complement;
    std::optional<RadialModulus> modulus;
    bool analytic = true;
    bool real = false;
  };

  explicit SymbolSpec(Definition def);

  const std::string& name() const { return def_->name; }
  const std::map<std::string, double>& parameters() const { return def_->parameters; }
  std::optional<double> parameter(const std::string& key) const;

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  Point evaluate(const Point& z) const;

  /// 1 - phi(1 - h) for 0 < h <= 1; requires a real symbol.
  double radial_complement(double h) const;
  bool has_radial_complement() const { return static_cast<bool>(def_->radial_complement); }

  const std::optional<RadialModulus>& modulus() const { return def_->modulus; }
  bool analytic() const { return def_->analytic; }
  bool real() const { return def_->real; }
  Complex value_at_zero() const { return value_at_zero_; }

  /// name:key=value,... in the grammar accepted by parse_symbol.
  std::string to_string() const;

 private:
  std::shared_ptr<const Definition> def_;
  Complex value_at_zero_;
};

SymbolSpec identity_symbol();
SymbolSpec constant_symbol(double c);
/// z -> c z, 0 <= c < 1.
SymbolSpec scale_symbol(double c);
/// Phi_a(z) = (a - z) / (1 - conj(a) z).
SymbolSpec automorphism_symbol(Complex a);
/// ((1+z)^theta - (1-z)^theta) / ((1+z)^theta + (1-z)^theta), 0 < theta <= 1.
SymbolSpec lens_symbol(double theta);
/// Radial profile of the cusp map; only evaluable on [0, 1).
SymbolSpec cusp_symbol();
/// exp(-f_theta(eps phi_0(z))) with f_theta(w) = w (-log w)^theta and phi_0
/// the conformal map of the disk onto the right half-disk. eps = 0 picks the
/// largest default eps passing the positivity check. K_theta scales the
/// (non-rigorous) radial modulus.
SymbolSpec shapiro_taylor_symbol(double theta, double eps = 0.0, double k_theta = 1.0);

/// Parses name[:key=value[,key=value...]].
SymbolSpec parse_symbol(const std::string& text);

/// Lens-map constant C_theta with 1 - lambda_theta(1 - h) <= C_theta h^theta,
/// calibrated as the supremum over a 1000-point log grid of h in [1e-300, 1].
double lens_modulus_constant(double theta);

/// Conformal map of the disk onto {Re w > 0, |w| < 1}.
Complex half_disk_map(Complex z);

/// Same map restricted to (-1, 1), in a cancellation-free form:
/// phi_0(x) = tan(v / 2) with v = arctan((1 - x) / (1 + x)). Takes h = 1 - x.
double half_disk_map_radial(double h);

/// psi_a = Phi_{phi(a)} o phi o Phi_a, which fixes 0 with |psi_a'(0)| = phi#(a).
SymbolSpec normalize_at(const SymbolSpec& phi, const Point& a);

/// phi#(z) = |phi'(z)| (1 - |z|^2) / (1 - |phi(z)|^2).
double pseudo_hyperbolic_derivative(const SymbolSpec& phi, const Point& z);

/// Grid supremum of phi# over a polar grid of about grid_size points whose
/// radii approach the circle to within 1e-6.
double pseudo_hyperbolic_derivative_sup(const SymbolSpec& phi, std::size_t grid_size);

struct TaylorCoefficients {
  Eigen::VectorXcd coefficients;
  double radius_used = 0.0;
  /// Max deviation between the oversampled reconstruction and direct
  /// evaluation at the midpoints of the sampling grid.
  double residual = 0.0;
  std::size_t samples = 0;
};

struct TaylorOptions {
  std::size_t oversample = 8;
  std::size_t max_oversample = 64;
  double tolerance = 1e-9;
};

/// First `count` Taylor coefficients of phi^power, by FFT of samples of
/// phi(r e^{it})^power on a circle of radius r = exp(-4 / count).
TaylorCoefficients taylor_coefficients(const SymbolSpec& phi, std::size_t count, std::size_t power,
                                       const TaylorOptions& options = {});

/// Column k holds the first `count` Taylor coefficients of phi^k,
/// k = 0..count-1. Columns are processed in parallel; results do not depend
/// on the thread count.
Eigen::MatrixXcd taylor_power_table(const SymbolSpec& phi, std::size_t count,
                                    const TaylorOptions& options = {},
                                    double* max_residual = nullptr);

}  // namespace hardy
