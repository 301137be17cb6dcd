#include "hardy/spectral_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

template <typename MatrixType>
std::vector<double> singular_values_of(const MatrixType& m) {
  Eigen::BDCSVD<MatrixType> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

std::vector<double> singular_values(const TruncatedMatrix& m) {
  if (m.real) return singular_values_of<Eigen::MatrixXd>(m.entries.real());
  return singular_values_of<Eigen::MatrixXcd>(m.entries);
}

std::size_t converged_prefix(const std::vector<double>& coarse, const std::vector<double>& fine, std::size_t max_n,
                             double tolerance) {
  std::size_t n = 0;
  while (n < max_n && std::abs(fine[n] - coarse[n]) <= tolerance * fine[n]) ++n;
  return n;
}

}  // namespace

TruncatedMatrix TruncatedMatrix::leading_block(std::size_t n) const {
  if (n > truncation) throw DomainError("leading block larger than the matrix");
  TruncatedMatrix block;
  block.entries = entries.topLeftCorner(Eigen::Index(n), Eigen::Index(n));
  block.truncation = n;
  block.symbol_name = symbol_name;
  block.real = real;
  return block;
}

double composition_norm_bound(const SymbolSpec& phi) {
  const double b = std::abs(phi.value_at_zero());
  return std::sqrt((1.0 + b) / (1.0 - b));
}

TruncatedMatrix build_matrix(const SymbolSpec& phi, std::size_t truncation) {
  TruncatedMatrix m;
  m.entries = taylor_power_table(phi, truncation);
  m.truncation = truncation;
  m.symbol_name = phi.to_string();
  m.real = phi.real();
  return m;
}

SingularValueTable approximation_numbers(const TruncatedMatrix& matrix, std::size_t max_n) {
  if (max_n == 0 || max_n > matrix.truncation) throw DomainError("approximation_numbers needs 1 <= max_n <= N");
  auto values = singular_values(matrix);
  values.resize(max_n);
  SingularValueTable table;
  table.values = std::move(values);
  table.truncation = matrix.truncation;
  return table;
}

SingularValueTable approximation_numbers(const SymbolSpec& phi, std::size_t truncation, std::size_t max_n,
                                         const OracleOptions& options) {
  if (max_n == 0 || max_n > truncation) throw DomainError("approximation_numbers needs 1 <= max_n <= N");
  const std::size_t largest = std::min(4 * truncation, std::max(truncation, options.max_truncation));
  const TruncatedMatrix full = build_matrix(phi, largest);

  SingularValueTable table;
  table.truncation = truncation;
  auto base = singular_values(full.leading_block(truncation));
  if (2 * truncation <= largest) {
    const auto doubled = singular_values(full.leading_block(2 * truncation));
    table.converged_upto = converged_prefix(base, doubled, max_n, options.tolerance);
    if (table.converged_upto < max_n) {
      if (4 * truncation <= largest) {
        const auto quadrupled = singular_values(full);
        const std::size_t last = max_n - 1;
        table.non_converged = std::abs(quadrupled[last] - doubled[last]) > options.tolerance * quadrupled[last];
      } else {
        table.non_converged = true;
      }
    }
  }
  base.resize(max_n);
  table.values = std::move(base);
  return table;
}

EigenvalueResult eigenvalues_normalized(const SymbolSpec& phi, const Point& a, std::size_t count,
                                        std::size_t truncation) {
  if (count == 0 || count > truncation) throw DomainError("eigenvalue count must lie in [1, N]");
  const SymbolSpec psi = normalize_at(phi, a);
  const double slope = std::abs(psi.derivative(Complex(0.0, 0.0)));
  if (slope == 0.0) throw DomainError("phi#(a) = 0: the normalized operator has no simple eigenvalues");

  const TruncatedMatrix m = build_matrix(psi, truncation);
  // psi(0) = 0 makes the matrix lower triangular; the transpose is already
  // in Schur form up to rounding, which keeps the QR iteration stable.
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.entries.transpose(), false);
  if (solver.info() != Eigen::Success) throw AccuracyError("eigenvalue iteration failed");
  std::vector<Complex> values(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::stable_sort(values.begin(), values.end(), [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
  values.resize(count);

  EigenvalueResult result;
  result.values = std::move(values);
  result.ill_conditioned = std::pow(slope, double(count)) < 1e-12;
  return result;
}

namespace {

using Eigen::MatrixXcd;

MatrixXcd gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  MatrixXcd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

MatrixXcd orthonormal_columns(const MatrixXcd& m) {
  Eigen::HouseholderQR<MatrixXcd> qr(m);
  return qr.householderQ() * MatrixXcd::Identity(m.rows(), m.cols());
}

// Randomized search over k-dimensional subspaces: global draws first, then a
// local walk around the incumbent with an adaptive step.
template <typename Objective>
double subspace_search(const MatrixXcd& matrix, Eigen::Index k, std::size_t draws, std::mt19937_64& rng,
                       Objective&& better, bool maximize) {
  const Eigen::Index d = matrix.cols();
  auto score = [&](const MatrixXcd& basis) {
    Eigen::JacobiSVD<MatrixXcd> svd(matrix * basis);
    const auto& s = svd.singularValues();
    return maximize ? s(s.size() - 1) : s(0);
  };
  const std::size_t global = std::max<std::size_t>(1, draws / 5);
  MatrixXcd best_basis = orthonormal_columns(gaussian(rng, d, k));
  double best = score(best_basis);
  for (std::size_t i = 1; i < global; ++i) {
    MatrixXcd q = orthonormal_columns(gaussian(rng, d, k));
    const double value = score(q);
    if (better(value, best)) {
      best = value;
      best_basis = std::move(q);
    }
  }
  double step = 0.3;
  for (std::size_t i = global; i < draws; ++i) {
    MatrixXcd q = orthonormal_columns(best_basis + step * gaussian(rng, d, k));
    const double value = score(q);
    if (better(value, best)) {
      best = value;
      best_basis = std::move(q);
      step = std::min(1.0, step * 1.3);
    } else {
      step = std::max(1e-9, step * 0.93);
    }
  }
  return best;
}

}  // namespace

SNumberEstimate snumber_cross_check(const Eigen::MatrixXcd& matrix, std::size_t n, std::size_t draws,
                                    std::uint64_t seed) {
  const auto d = std::size_t(matrix.cols());
  if (d == 0 || d > 8 || matrix.rows() > 8) throw DomainError("snumber_cross_check is limited to dimension <= 8");
  if (n == 0 || n > d) throw DomainError("s-number index must lie in [1, dim]");

  Eigen::JacobiSVD<MatrixXcd> svd(matrix);
  const auto& s = svd.singularValues();
  SNumberEstimate est{};
  est.approximation = Eigen::Index(n) <= s.size() ? s(Eigen::Index(n) - 1) : 0.0;

  std::mt19937_64 rng(seed);
  est.bernstein = subspace_search(matrix, Eigen::Index(n), draws, rng, [](double v, double b) { return v > b; }, true);
  est.gelfand = subspace_search(matrix, Eigen::Index(d - n + 1), draws, rng, [](double v, double b) { return v < b; },
                                false);
  est.gap = est.gelfand - est.bernstein;
  return est;
}

double adjoint_kernel_check(const SymbolSpec& phi, const Point& a, std::size_t truncation) {
  const TruncatedMatrix m = build_matrix(phi, truncation);
  const Complex image = phi(a.value());
  Eigen::VectorXcd kernel(static_cast<Eigen::Index>(truncation));
  Eigen::VectorXcd target(static_cast<Eigen::Index>(truncation));
  Complex pa(1.0, 0.0);
  Complex pb(1.0, 0.0);
  for (std::size_t k = 0; k < truncation; ++k) {
    kernel(Eigen::Index(k)) = pa;
    target(Eigen::Index(k)) = pb;
    pa *= std::conj(a.value());
    pb *= std::conj(image);
  }
  const Eigen::VectorXcd mapped = m.entries.adjoint() * kernel;
  return (mapped - target).norm() / target.norm();
}

double kernel_tail_bound(const Point& a, std::size_t truncation) {
  return std::pow(a.modulus(), double(truncation)) / a.one_minus_modulus_sq();
}

double functional_norm(const Sequence& points, const Eigen::VectorXcd& lambda) {
  if (Eigen::Index(points.size()) != lambda.size()) throw DomainError("coefficient count differs from point count");
  Complex sum(0.0, 0.0);
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      const Complex gram = j == k ? Complex(1.0 / points[j].one_minus_modulus_sq(), 0.0)
                                  : 1.0 / (1.0 - std::conj(points[j].value()) * points[k].value());
      sum += std::conj(lambda(Eigen::Index(j))) * lambda(Eigen::Index(k)) * gram;
    }
  }
  return std::sqrt(std::max(0.0, sum.real()));
}

}  // namespace hardy
