#pragma once

#include <cstdint>
#include <string>

#include "llg/core/field.hpp"

namespace llg::harness {

/// Versioned synthetic initial data.
///   "zero"             u = 0
///   "smooth_bump/v1"   exp(i x_0) exp(kappa sum_j (cos x_j - 1)), mean removed,
///                      truncated to the 2/3 band
///   "shell_random/v1"  sum_k a_k P_k r / ||P_k r||, r complex Gaussian noise
///                      (seeded), a_k = 2^{-k n/2} / (k - k_min + 1)^2
/// Non-zero families are scaled to critical Besov norm `amplitude`.
struct DatumSpec {
  std::string family = "smooth_bump/v1";
  double amplitude = 0.05;
  std::uint64_t seed = 1;
  double kappa = 1.0;
  /// Optional low-pass P_{<=cutoff}; disabled when below the shell range.
  int cutoff = 1000;

  std::string tag() const;
};

ComplexField make_datum(const Grid& grid, const DatumSpec& spec);

}  // namespace llg::harness
