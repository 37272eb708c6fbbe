#include "llg/lp/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/simd/kernels.hpp"

namespace llg::lp {
namespace {

enum class Table { shell, shell_squared, below };

using TableKey = std::tuple<int, std::array<int, 3>, std::array<double, 3>, int, Table>;

struct TableCache {
  std::mutex mutex;
  std::map<TableKey, std::shared_ptr<const std::vector<double>>> tables;
};

TableCache& table_cache() {
  static TableCache c;
  return c;
}

std::span<const double> cached_table(const Grid& grid, int k, Table kind) {
  const TableKey key{grid.dim(), grid.sizes(), grid.lengths(), k, kind};
  auto& c = table_cache();
  {
    std::lock_guard lock(c.mutex);
    if (auto it = c.tables.find(key); it != c.tables.end()) return *it->second;
  }
  auto table = std::make_shared<std::vector<double>>(grid.point_count());
  const auto xi = grid.xi_norm();
  for (std::size_t p = 0; p < table->size(); ++p) {
    switch (kind) {
      case Table::shell:
        (*table)[p] = chi(k, xi[p]);
        break;
      case Table::shell_squared: {
        const double c1 = chi(k, xi[p]);
        (*table)[p] = c1 * c1;
        break;
      }
      case Table::below:
        (*table)[p] = chi_below(k, xi[p]);
        break;
    }
  }
  std::lock_guard lock(c.mutex);
  auto [it, inserted] = c.tables.emplace(key, std::move(table));
  return *it->second;
}

void check_shell(int k, const ShellRange& range) {
  if (!range.contains(k))
    throw RangeError("shell index " + std::to_string(k) + " outside [" + std::to_string(range.k_min) +
                     ", " + std::to_string(range.k_max) + "]");
}

}  // namespace

std::span<const double> shell_symbol(const Grid& grid, int k) { return cached_table(grid, k, Table::shell); }

SpectralField project_shell(const SpectralField& F, int k, const ShellRange& range) {
  check_shell(k, range);
  return apply_multiplier(F, shell_symbol(F.grid(), k));
}

ComplexField project_shell(const ComplexField& f, int k) {
  return transform_inverse(project_shell(transform_forward(f), k, default_shell_range(f.grid())));
}

RealField project_shell(const RealField& f, int k) {
  return transform_inverse_real(project_shell(transform_forward(f), k, default_shell_range(f.grid())));
}

SpectralField project_below(const SpectralField& F, int k, const ShellRange& range) {
  if (k < range.k_min - 1 || k > range.k_max)
    throw RangeError("project_below index " + std::to_string(k) + " outside representable range");
  return apply_multiplier(F, cached_table(F.grid(), k, Table::below));
}

ComplexField project_below(const ComplexField& f, int k) {
  return transform_inverse(project_below(transform_forward(f), k, default_shell_range(f.grid())));
}

ComplexField DyadicDecomposition::reconstruct() const {
  ComplexField out = shells.front();
  for (std::size_t i = 1; i < shells.size(); ++i) out += shells[i];
  for (std::size_t p = 0; p < out.size(); ++p) out[p] += mean;
  return out;
}

DyadicDecomposition decompose(const ComplexField& f, const ShellRange& range) {
  const SpectralField F = transform_forward(f);
  DyadicDecomposition d{range, {}, mean_value(f)};
  for (int k = range.k_min; k <= range.k_max; ++k) d.shells.push_back(transform_inverse(project_shell(F, k, range)));
  return d;
}

DyadicDecomposition decompose(const ComplexField& f) { return decompose(f, default_shell_range(f.grid())); }

std::vector<double> shell_norms(const SpectralField& F, const ShellRange& range) {
  std::vector<double> out;
  out.reserve(range.count());
  const auto& kern = simd::kernels();
  for (int k = range.k_min; k <= range.k_max; ++k) {
    const auto w = cached_table(F.grid(), k, Table::shell_squared);
    out.push_back(std::sqrt(kern.weighted_sum_abs2(F.data(), w.data(), F.size())));
  }
  return out;
}

BesovParams critical_params(const Grid& grid) { return {grid.dim() / 2.0, 1}; }

double besov_norm(const SpectralField& F, const BesovParams& params, const ShellRange& range) {
  if (params.q != 1 && params.q != 2) throw RangeError("Besov summation exponent must be 1 or 2");
  const auto norms = shell_norms(F, range);
  double sum = 0.0;
  for (int k = range.k_min; k <= range.k_max; ++k) {
    const double term = std::exp2(params.s * k) * norms[k - range.k_min];
    sum += params.q == 1 ? term : term * term;
  }
  return params.q == 1 ? sum : std::sqrt(sum);
}

double besov_norm(const ComplexField& f, const BesovParams& params) {
  return besov_norm(transform_forward(f), params, default_shell_range(f.grid()));
}

double besov_norm(const RealField& f, const BesovParams& params) {
  return besov_norm(transform_forward(f), params, default_shell_range(f.grid()));
}

double critical_besov_norm(const ComplexField& f) { return besov_norm(f, critical_params(f.grid())); }

cplx mean_value(const ComplexField& f) {
  cplx s{};
  for (const cplx& v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

DirectionalDecomposition directional_decompose(const ComplexField& f, int k) {
  const Grid& g = f.grid();
  const int n = g.dim();
  const SpectralField F = transform_forward(f);
  const auto xi = g.xi_norm();

  DirectionalDecomposition out;
  // Widened cutoff chi~_k = sum_{|l| <= 9n} chi_{k+l}: its support reaches
  // (8/5) 2^{k+9n} above and (5/4) 2^{k-9n-1} below.
  for (int j = 0; j < n; ++j) {
    const double kmax_axis = std::numbers::pi * g.size(j) / g.length(j);
    const double kmin_axis = 2 * std::numbers::pi / g.length(j);
    if (std::ldexp(8.0 / 5.0, k + 9 * n) > kmax_axis || std::ldexp(5.0 / 4.0, k - 9 * n - 1) < kmin_axis)
      out.window_clamped = true;
  }

  std::vector<SpectralField> pieces(n, SpectralField(g));
  for (std::size_t p = 0; p < F.size(); ++p) {
    const double shell = chi(k, xi[p]);
    if (shell == 0.0) continue;
    const Wavevector w = g.wavevector(p);
    double weight[3] = {0, 0, 0};
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      weight[j] = chi_band(k - 5 * n, k + 5 * n, std::abs(w[j]));
      total += weight[j];
    }
    if (total == 0.0) continue;
    const double near = chi_band(k - 1, k + 1, xi[p]);
    for (int j = 0; j < n; ++j) {
      const double beta = weight[j] / total * near;
      const double widened = chi_band(k - 9 * n, k + 9 * n, std::abs(w[j]));
      pieces[j][p] = F[p] * (widened * shell * beta);
    }
  }
  for (auto& piece : pieces) out.pieces.push_back(transform_inverse(piece));
  return out;
}

double anisotropic_norm(const Trajectory& traj, int axis, double p, double q) {
  auto valid = [](double e) { return e == 1.0 || e == 2.0 || e == kInfinity; };
  if (!valid(p) || !valid(q)) throw RangeError("anisotropic exponents must be 1, 2 or inf");
  if (traj.empty()) throw DomainError("empty trajectory");
  const Grid& g = traj.grid();
  if (axis < 0 || axis >= g.dim()) throw RangeError("anisotropic axis out of range");
  const double dt = traj.sample_interval();

  double inner_weight = dt;
  for (int j = 0; j < g.dim(); ++j)
    if (j != axis) inner_weight *= g.spacing(j);

  const int na = g.size(axis);
  std::vector<double> inner(na, 0.0);
  const std::size_t samples = q == kInfinity ? traj.size() : traj.size() - 1;
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexField& u = traj.snapshots[s];
    u.check_same(traj.snapshots.front());
    std::size_t pt = 0;
    for (int i0 = 0; i0 < g.size(0); ++i0)
      for (int i1 = 0; i1 < g.size(1); ++i1)
        for (int i2 = 0; i2 < g.size(2); ++i2, ++pt) {
          const int ia = axis == 0 ? i0 : axis == 1 ? i1 : i2;
          const double a = std::abs(u[pt]);
          if (q == kInfinity)
            inner[ia] = std::max(inner[ia], a);
          else
            inner[ia] += (q == 1.0 ? a : a * a);
        }
  }
  if (q != kInfinity)
    for (double& v : inner) v = q == 1.0 ? v * inner_weight : std::sqrt(v * inner_weight);

  if (p == kInfinity) return *std::max_element(inner.begin(), inner.end());
  double outer = 0.0;
  for (double v : inner) outer += (p == 1.0 ? v : v * v);
  outer *= g.spacing(axis);
  return p == 1.0 ? outer : std::sqrt(outer);
}

}  // namespace llg::lp
