#include "llg/harness/datum.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/lp/littlewood_paley.hpp"

namespace llg::harness {
namespace {

ComplexField scaled(SpectralField F, double amplitude) {
  F[0] = 0.0;
  dealias_inplace(F);
  const Grid& g = F.grid();
  const double b = lp::besov_norm(F, lp::critical_params(g), lp::default_shell_range(g));
  if (b == 0.0) throw DomainError("datum has no content in the shell range");
  F *= amplitude / b;
  return transform_inverse(F);
}

SpectralField low_pass(SpectralField F, int cutoff) {
  const auto range = lp::default_shell_range(F.grid());
  if (cutoff >= range.k_max) return F;
  return lp::project_below(F, cutoff, range);
}

}  // namespace

std::string DatumSpec::tag() const {
  std::ostringstream os;
  os << family << "(amplitude=" << amplitude;
  if (family == "shell_random/v1") os << ",seed=" << seed;
  if (family == "smooth_bump/v1") os << ",kappa=" << kappa;
  if (cutoff < 1000) os << ",cutoff=" << cutoff;
  os << ")";
  return os.str();
}

ComplexField make_datum(const Grid& grid, const DatumSpec& spec) {
  if (spec.family == "zero") return ComplexField(grid);
  if (spec.family == "smooth_bump/v1") {
    const int n = grid.dim();
    const double kappa = spec.kappa;
    const ComplexField f = ComplexField::sample(grid, [&](double x0, double x1, double x2) {
      const double xs[3] = {x0, x1, x2};
      double e = 0.0;
      for (int j = 0; j < n; ++j) e += std::cos(xs[j]) - 1.0;
      return std::polar(std::exp(kappa * e), x0);
    });
    return scaled(low_pass(transform_forward(f), spec.cutoff), spec.amplitude);
  }
  if (spec.family == "shell_random/v1") {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal;
    ComplexField r(grid);
    for (auto& v : r.values()) v = cplx(normal(rng), normal(rng));
    const SpectralField R = dealias(transform_forward(r));
    const auto range = lp::default_shell_range(grid);
    SpectralField phi(grid);
    const int n = grid.dim();
    for (int k = range.k_min; k <= range.k_max; ++k) {
      SpectralField Pk = lp::project_shell(R, k, range);
      const double norm = l2_norm(Pk);
      if (norm == 0.0) continue;
      const double w = std::exp2(-k * n / 2.0) / std::pow(k - range.k_min + 1.0, 2);
      Pk *= w / norm;
      phi += Pk;
    }
    return scaled(low_pass(std::move(phi), spec.cutoff), spec.amplitude);
  }
  throw ConfigError("unknown datum family: " + spec.family);
}

}  // namespace llg::harness
