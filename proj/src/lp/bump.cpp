#include "llg/lp/bump.hpp"

#include <cmath>

namespace llg::lp {
namespace {

constexpr double kInner = 5.0 / 4.0;
constexpr double kOuter = 8.0 / 5.0;

double phi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = phi(t);
  return a / (a + phi(1.0 - t));
}

double eta(double r) {
  r = std::abs(r);
  if (r <= kInner) return 1.0;
  if (r >= kOuter) return 0.0;
  return smoothstep((kOuter - r) / (kOuter - kInner));
}

// ldexp keeps the dyadic rescaling exact, so chi_k(2 r) == chi_{k-1}(r) bit for bit.
double chi_below(int k, double r) { return eta(std::ldexp(r, -k)); }

double chi(int k, double r) { return chi_below(k, r) - chi_below(k - 1, r); }

double chi_band(int lo, int hi, double r) { return chi_below(hi, r) - chi_below(lo - 1, r); }

ShellRange default_shell_range(const Grid& grid) {
  const double lo = grid.min_wavenumber();
  const double hi = grid.max_wavenumber_norm();
  return {static_cast<int>(std::floor(std::log2(kInner * lo))),
          static_cast<int>(std::ceil(std::log2(hi / kInner)))};
}

}  // namespace llg::lp
