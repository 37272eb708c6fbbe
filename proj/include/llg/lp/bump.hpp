#pragma once

#include "llg/core/grid.hpp"

namespace llg::lp {

/// exp(-1/t)/(exp(-1/t)+exp(-1/(1-t))): 0 for t <= 0, 1 for t >= 1, C^inf.
double smoothstep(double t);

/// Even bump: 1 on |r| <= 5/4, 0 on |r| >= 8/5, smooth and monotone between.
double eta(double r);

/// chi_k(r) = eta(r / 2^k) - eta(r / 2^(k-1)).
double chi(int k, double r);

/// chi_{<=k}(r) = eta(r / 2^k).
double chi_below(int k, double r);

/// sum_{l=lo}^{hi} chi_l(r), evaluated in telescoped form
/// eta(r / 2^hi) - eta(r / 2^(lo-1)).
double chi_band(int lo, int hi, double r);

/// Inclusive range of dyadic shells.
struct ShellRange {
  int k_min = 0;
  int k_max = 0;

  int count() const noexcept { return k_max - k_min + 1; }
  bool contains(int k) const noexcept { return k >= k_min && k <= k_max; }
  bool operator==(const ShellRange&) const = default;
};

/// Shells whose partition of unity covers every nonzero grid wavevector:
/// (4/5) 2^k_min <= |xi|_min and |xi|_max <= (5/4) 2^k_max.
ShellRange default_shell_range(const Grid& grid);

}  // namespace llg::lp
