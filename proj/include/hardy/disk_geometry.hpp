#pragma once

// Pseudo-hyperbolic geometry of the unit disk.
//
// Points are stored together with their distance to the unit circle so that
// sequences accumulating at the boundary (1 - sigma^j for j in the hundreds)
// keep full relative precision. Every quantity below that involves 1 - |z|
// is computed from that stored gap, never from the rounded value.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "hardy/errors.hpp"

namespace hardy {

template <typename Scalar>
class DiskPoint {
 public:
  using Complex = std::complex<Scalar>;

  DiskPoint() = default;

  explicit DiskPoint(Complex z) : value_(z) {
    const Scalar modulus = std::abs(z);
    if (!std::isfinite(modulus) || modulus >= Scalar(1)) {
      std::ostringstream msg;
      msg << "point " << z << " is not inside the unit disk";
      throw DomainError(msg.str());
    }
    gap_ = Scalar(1) - modulus;
    angle_ = modulus > Scalar(0) ? std::arg(z) : Scalar(0);
  }

  explicit DiskPoint(Scalar x) : DiskPoint(Complex(x, Scalar(0))) {}

  /// The point (1 - gap) e^{i angle}; gap is 1 - |z| and must lie in (0, 1].
  static DiskPoint from_polar_gap(Scalar gap, Scalar angle) {
    if (!(gap > Scalar(0)) || gap > Scalar(1)) {
      std::ostringstream msg;
      msg << "boundary gap " << gap << " outside (0, 1]";
      throw DomainError(msg.str());
    }
    DiskPoint p;
    p.gap_ = gap;
    p.angle_ = gap == Scalar(1) ? Scalar(0) : angle;
    p.value_ = std::polar(Scalar(1) - gap, p.angle_);
    return p;
  }

  /// The real point x = 1 - complement, complement in (0, 2).
  static DiskPoint real_from_complement(Scalar complement) {
    if (!(complement > Scalar(0)) || !(complement < Scalar(2))) {
      std::ostringstream msg;
      msg << "real point 1 - " << complement << " is not inside the unit disk";
      throw DomainError(msg.str());
    }
    if (complement <= Scalar(1)) return from_polar_gap(complement, Scalar(0));
    return from_polar_gap(Scalar(2) - complement, std::numbers::pi_v<Scalar>);
  }

  Complex value() const { return value_; }
  Scalar gap() const { return gap_; }
  Scalar angle() const { return angle_; }
  Scalar modulus() const { return Scalar(1) - gap_; }

  /// 1 - |z|^2
  Scalar one_minus_modulus_sq() const { return gap_ * (Scalar(2) - gap_); }

  bool on_positive_axis() const { return angle_ == Scalar(0); }

 private:
  Complex value_{Scalar(0), Scalar(0)};
  Scalar gap_ = Scalar(1);
  Scalar angle_ = Scalar(0);
};

namespace detail {

// Numerator and denominator of rho(z, w)^2, plus the exact complement
// 1 - rho^2 = t s (2 - t)(2 - s) / den with t, s the two boundary gaps.
template <typename Scalar>
struct RhoParts {
  Scalar num;
  Scalar den;
  Scalar one_minus_sq;
};

template <typename Scalar>
RhoParts<Scalar> rho_parts(const DiskPoint<Scalar>& z, const DiskPoint<Scalar>& w) {
  const Scalar t = z.gap();
  const Scalar s = w.gap();
  const Scalar half = std::sin((z.angle() - w.angle()) / Scalar(2));
  // sqrt(prod) |e^{ia} - e^{ib}|, everything below is divided by a common scale
  // so that gaps near the underflow limit still give finite ratios
  const Scalar chord = Scalar(2) * std::abs(half) * std::sqrt((Scalar(1) - t) * (Scalar(1) - s));
  const Scalar q = t + s - t * s;
  const Scalar m = std::max(q, chord);
  if (m == Scalar(0)) return {Scalar(0), Scalar(1), Scalar(1)};
  const Scalar a = (t - s) / m;
  const Scalar b = chord / m;
  const Scalar c = q / m;
  const Scalar num = a * a + b * b;
  const Scalar den = b * b + c * c;
  return {num, den, (t / m) * (s / m) * (Scalar(2) - t) * (Scalar(2) - s) / den};
}

}  // namespace detail

/// rho(z, w) = |z - w| / |1 - conj(w) z|
template <typename Scalar>
Scalar pseudo_hyperbolic_distance(const DiskPoint<Scalar>& z, const DiskPoint<Scalar>& w) {
  const auto parts = detail::rho_parts(z, w);
  return std::sqrt(parts.num / parts.den);
}

/// log rho(z, w), accurate both for nearby and for well separated points.
template <typename Scalar>
Scalar log_pseudo_hyperbolic_distance(const DiskPoint<Scalar>& z, const DiskPoint<Scalar>& w) {
  const auto parts = detail::rho_parts(z, w);
  if (parts.one_minus_sq < Scalar(0.5)) return std::log1p(-parts.one_minus_sq) / Scalar(2);
  return std::log(parts.num / parts.den) / Scalar(2);
}

/// Disk automorphism Phi_a(z) = (a - z) / (1 - conj(a) z); an involution.
template <typename Scalar>
DiskPoint<Scalar> mobius_automorphism(const DiskPoint<Scalar>& a, const DiskPoint<Scalar>& z) {
  using Complex = std::complex<Scalar>;
  const Complex av = a.value();
  const Complex zv = z.value();
  const Complex image = (av - zv) / (Scalar(1) - std::conj(av) * zv);
  // |Phi_a(z)| = rho(a, z), so 1 - |Phi_a(z)| = (1 - rho^2) / (1 + rho).
  const auto parts = detail::rho_parts(a, z);
  const Scalar rho = std::sqrt(parts.num / parts.den);
  const Scalar gap = parts.one_minus_sq / (Scalar(1) + rho);
  if (gap >= Scalar(1)) return DiskPoint<Scalar>();
  return DiskPoint<Scalar>::from_polar_gap(gap, std::arg(image));
}

/// Norm of the evaluation functional at a on H^p: (1 / (1 - |a|^2))^{1/p}.
template <typename Scalar>
Scalar evaluation_norm(const DiskPoint<Scalar>& a, Scalar p) {
  if (!(p >= Scalar(1)) || !std::isfinite(p)) throw DomainError("evaluation_norm needs 1 <= p < inf");
  return std::pow(Scalar(1) / a.one_minus_modulus_sq(), Scalar(1) / p);
}

template <typename Scalar>
Scalar log_evaluation_norm(const DiskPoint<Scalar>& a, Scalar p) {
  if (!(p >= Scalar(1)) || !std::isfinite(p)) throw DomainError("evaluation_norm needs 1 <= p < inf");
  return -std::log(a.one_minus_modulus_sq()) / p;
}

/// Two points closer than this in the pseudo-hyperbolic metric are coincident.
template <typename Scalar>
constexpr Scalar coincidence_tolerance() {
  return Scalar(1e-14);
}

/// Ordered finite list of pairwise distinct disk points.
///
/// Construction checks distinctness and caches the log of the uniform
/// separation constant, inf_j sum_{k != j} log rho(z_j, z_k).
template <typename Scalar>
class PointSequence {
 public:
  using Point = DiskPoint<Scalar>;

  explicit PointSequence(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw DomainError("a point sequence needs at least one point");
    const std::size_t n = points_.size();
    std::vector<Scalar> row_sums(n, Scalar(0));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto parts = detail::rho_parts(points_[j], points_[k]);
        const Scalar rho = std::sqrt(parts.num / parts.den);
        if (rho < coincidence_tolerance<Scalar>()) {
          std::ostringstream msg;
          msg << "points " << j << " and " << k << " coincide (rho = " << rho << ")";
          throw DegenerateSequenceError(msg.str());
        }
        const Scalar log_rho = parts.one_minus_sq < Scalar(0.5)
                                   ? std::log1p(-parts.one_minus_sq) / Scalar(2)
                                   : std::log(rho);
        row_sums[j] += log_rho;
        row_sums[k] += log_rho;
      }
    }
    log_separation_ = *std::min_element(row_sums.begin(), row_sums.end());
  }

  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// log delta, where delta is the uniform separation constant.
  Scalar log_separation() const { return log_separation_; }

 private:
  std::vector<Point> points_;
  Scalar log_separation_ = Scalar(0);
};

/// delta = inf_j prod_{k != j} rho(z_j, z_k). Underflows to zero for very
/// badly separated sequences; log_uniform_separation_constant does not.
template <typename Scalar>
Scalar uniform_separation_constant(const PointSequence<Scalar>& seq) {
  return std::exp(seq.log_separation());
}

template <typename Scalar>
Scalar log_uniform_separation_constant(const PointSequence<Scalar>& seq) {
  return seq.log_separation();
}

enum class KappaForm {
  vinogradov,  // kappa <= (2e / delta)(1 + 2 log(1/delta))
  lambda       // kappa <= (Lambda / delta)(1 + log(1/delta))
};

template <typename Scalar>
struct SeparationData {
  Scalar delta;
  Scalar log_delta;
  Scalar kappa_lower;
  Scalar kappa_upper;
  Scalar log_kappa_lower;
  Scalar log_kappa_upper;
  Scalar lambda_constant;
};

/// Two-sided bounds on the interpolation constant kappa in terms of delta:
/// 1/delta <= kappa <= kappa_upper.
template <typename Scalar>
SeparationData<Scalar> interpolation_constant_bounds(const PointSequence<Scalar>& seq,
                                                     KappaForm form = KappaForm::vinogradov,
                                                     Scalar lambda_constant = Scalar(12)) {
  const Scalar log_delta = seq.log_separation();
  const Scalar log_inv = -log_delta;  // log(1/delta) >= 0
  Scalar log_upper;
  if (form == KappaForm::vinogradov) {
    log_upper = std::log(Scalar(2) * std::numbers::e_v<Scalar>) + log_inv +
                std::log1p(Scalar(2) * log_inv);
  } else {
    log_upper = std::log(lambda_constant) + log_inv + std::log1p(log_inv);
  }
  return {std::exp(log_delta), log_delta, std::exp(log_inv), std::exp(log_upper),
          log_inv, log_upper, lambda_constant};
}

/// 12 (1 + log(1/delta)): the embedding constant for the discrete measure
/// sum_j (1 - |z_j|^2) delta_{z_j} into H^p.
template <typename Scalar>
Scalar carleson_embedding_constant(const PointSequence<Scalar>& seq) {
  return Scalar(12) * (Scalar(1) - seq.log_separation());
}

/// Upper bound 1 + 2 log(1/delta) on the kernel test constant gamma_mu.
template <typename Scalar>
Scalar discrete_measure_gamma_bound(const PointSequence<Scalar>& seq) {
  return Scalar(1) - Scalar(2) * seq.log_separation();
}

/// gamma_mu = max_i sum_j (1 - |z_j|^2) |k_{z_i}(z_j)|^2 for the discrete
/// measure; each term equals 1 - rho(z_i, z_j)^2.
template <typename Scalar>
Scalar discrete_measure_gamma(const PointSequence<Scalar>& seq) {
  Scalar best = Scalar(0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Scalar sum = Scalar(0);
    for (std::size_t j = 0; j < seq.size(); ++j) {
      sum += i == j ? Scalar(1) : detail::rho_parts(seq[i], seq[j]).one_minus_sq;
    }
    best = std::max(best, sum);
  }
  return best;
}

/// u_j = 1 - sigma^j, j = 1..n.
template <typename Scalar>
PointSequence<Scalar> geometric_test_sequence(Scalar sigma, std::size_t n) {
  if (!(sigma > Scalar(0)) || !(sigma < Scalar(1))) throw DomainError("sigma must lie in (0, 1)");
  if (n == 0) throw DomainError("geometric_test_sequence needs n >= 1");
  std::vector<DiskPoint<Scalar>> points;
  points.reserve(n);
  const Scalar log_sigma = std::log(sigma);
  for (std::size_t j = 1; j <= n; ++j) {
    const Scalar gap = std::exp(Scalar(j) * log_sigma);
    if (!(gap > std::numeric_limits<Scalar>::min())) {
      throw DomainError("sigma^j underflows; the sequence is not representable");
    }
    points.push_back(DiskPoint<Scalar>::from_polar_gap(gap, Scalar(0)));
  }
  return PointSequence<Scalar>(std::move(points));
}

/// int |f|^p dm over the unit circle by the uniform trapezoid rule, starting
/// at `initial_nodes` and doubling until the relative change drops below
/// `tolerance`. Returns ||f||_p^p.
template <typename Scalar, typename BoundaryFunction>
Scalar hardy_norm_pow(BoundaryFunction&& f, Scalar p, std::size_t initial_nodes = 4096,
                      Scalar tolerance = Scalar(1e-10), std::size_t max_nodes = std::size_t(1) << 22) {
  if (!(p >= Scalar(1))) throw DomainError("hardy_norm_pow needs p >= 1");
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  auto integrate = [&](std::size_t nodes, std::size_t start, std::size_t stride) {
    Scalar sum = Scalar(0);
    for (std::size_t j = start; j < nodes; j += stride) {
      const Scalar t = two_pi * Scalar(j) / Scalar(nodes);
      sum += std::pow(std::abs(f(std::polar(Scalar(1), t))), p);
    }
    return sum;
  };
  std::size_t nodes = initial_nodes;
  Scalar sum = integrate(nodes, 0, 1);
  Scalar estimate = sum / Scalar(nodes);
  while (nodes < max_nodes) {
    // Reuse the previous nodes; only the odd ones of the refined rule are new.
    sum += integrate(2 * nodes, 1, 2);
    nodes *= 2;
    const Scalar refined = sum / Scalar(nodes);
    const Scalar change = std::abs(refined - estimate);
    estimate = refined;
    if (change <= tolerance * std::abs(refined)) return refined;
  }
  throw AccuracyError("trapezoid rule for ||f||_p did not converge");
}

}  // namespace hardy
