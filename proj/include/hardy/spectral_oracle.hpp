#pragma once

// Ground truth at p = 2: the matrix of C_phi on the monomial basis of H^2,
// truncated to N x N, and the finite-dimensional s-number machinery around it.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hardy/symbols.hpp"

namespace hardy {

/// Entry (m, k) is the m-th Taylor coefficient of phi^k, so column k is
/// C_phi z^k = phi^k.
struct TruncatedMatrix {
  Eigen::MatrixXcd entries;
  std::size_t truncation = 0;
  std::string symbol_name;
  /// All Taylor coefficients are real (real symbol); enables the real SVD.
  bool real = false;

  /// Leading n x n block, which is the truncation-n matrix of the same symbol.
  TruncatedMatrix leading_block(std::size_t n) const;
};

struct SingularValueTable {
  std::vector<double> values;  // s_1 >= s_2 >= ... >= 0
  std::size_t truncation = 0;
  /// s_n is stable under doubling the truncation for every n <= converged_upto;
  /// 0 when no comparison was made.
  std::size_t converged_upto = 0;
  /// Set when doubling twice still moved s_{max_n} by more than the tolerance.
  bool non_converged = false;
};

/// Littlewood bound ||C_phi|| <= ((1 + |phi(0)|) / (1 - |phi(0)|))^{1/2}.
double composition_norm_bound(const SymbolSpec& phi);

TruncatedMatrix build_matrix(const SymbolSpec& phi, std::size_t truncation);

/// Singular values of a single truncated matrix, first max_n of them.
SingularValueTable approximation_numbers(const TruncatedMatrix& matrix, std::size_t max_n);

struct OracleOptions {
  /// Relative change under doubling below which s_n counts as converged.
  double tolerance = 1e-6;
  /// Largest truncation the doubling schedule may reach.
  std::size_t max_truncation = 2048;
};

/// Singular values at truncation N with per-n convergence metadata, comparing
/// N against 2N (and 2N against 4N when s_{max_n} has not settled), within
/// the schedule cap.
SingularValueTable approximation_numbers(const SymbolSpec& phi, std::size_t truncation, std::size_t max_n,
                                         const OracleOptions& options = {});

struct EigenvalueResult {
  std::vector<Complex> values;  // descending modulus
  bool ill_conditioned = false;
};

/// Leading eigenvalues of the truncated matrix of C_{psi_a}, psi_a the
/// normalization of phi at a.
EigenvalueResult eigenvalues_normalized(const SymbolSpec& phi, const Point& a, std::size_t count,
                                        std::size_t truncation);

struct SNumberEstimate {
  double approximation;  // a_n, exact (Eckart-Young)
  double bernstein;      // randomized lower estimate of b_n
  double gelfand;        // randomized upper estimate of c_n
  double gap;            // gelfand - bernstein
};

/// a_n exactly, b_n and c_n by randomized search over n-dimensional
/// subspaces and codimension-(n-1) subspaces. Matrix dimension <= 8.
SNumberEstimate snumber_cross_check(const Eigen::MatrixXcd& matrix, std::size_t n, std::size_t draws = 10000,
                                    std::uint64_t seed = 0);

/// || M^H k_a - k_{phi(a)} || / || k_{phi(a)} || over the first N coordinates,
/// k_a = (1, conj(a), conj(a)^2, ...).
double adjoint_kernel_check(const SymbolSpec& phi, const Point& a, std::size_t truncation);

/// Coordinate tail |a|^N / (1 - |a|^2) of the reproducing kernel.
double kernel_tail_bound(const Point& a, std::size_t truncation);

/// || sum_j lambda_j e_{z_j} || in (H^2)^*, through the kernel Gram matrix.
double functional_norm(const Sequence& points, const Eigen::VectorXcd& lambda);

}  // namespace hardy
