#pragma once

// Log-domain least-squares fits of the three decay laws
//   geometric:  log a_n = n log r + c
//   stretched:  log a_n = -b sqrt(n) + d log n + c
//   cusp:       log a_n = -b n / log n + c

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hardy/bounds.hpp"
#include "hardy/spectral_oracle.hpp"

namespace hardy {

enum class DecayKind { geometric, stretched, cusp };

std::string to_string(DecayKind kind);
DecayKind parse_decay_kind(const std::string& text);

/// Inclusive index interval.
struct NRange {
  std::size_t first = 1;
  std::size_t last = 1;
  bool operator==(const NRange&) const = default;
};

struct DecayModel {
  DecayKind kind = DecayKind::geometric;
  /// geometric: log_r, r, c; stretched: b, d, c; cusp: b, c.
  std::map<std::string, double> fitted;
  double r_squared = 0.0;
  NRange n_range;
  std::vector<std::size_t> n_used;
  std::vector<double> residuals;  // observed - fitted log values

  std::size_t parameter_count() const;
  double predict_log(double n) const;
};

/// Values below this are treated as SVD noise and left out of table fits.
inline constexpr double kFitFloor = 1e-13;

/// Fit on explicit (n, log a_n) data; points outside the range are ignored.
DecayModel fit_log(std::span<const std::size_t> n, std::span<const double> log_values, DecayKind kind,
                   NRange range);

DecayModel fit(const SingularValueTable& table, DecayKind kind, NRange range);
DecayModel fit(const BoundReport& report, DecayKind kind, NRange range);

/// Indices of `models`, best first: by r^2, ties broken by fewer parameters.
std::vector<std::size_t> compare(const std::vector<DecayModel>& models);

}  // namespace hardy
