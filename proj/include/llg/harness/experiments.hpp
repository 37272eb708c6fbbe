#pragma once

#include <vector>

#include "llg/core/trajectory.hpp"
#include "llg/harness/config.hpp"
#include "llg/harness/report.hpp"

namespace llg::harness {

/// Solve the configured datum at epsilons[0] (projected or sphere path),
/// write the trajectory to output_dir/trajectory, and report norms, the
/// smallness check and a step-halving uniqueness diagnostic.
ExperimentReport run_simulate(const ExperimentConfig& config);

/// e(eps) = sup_{t <= T} ||u_eps - u_0||, critical Besov norm, for every eps
/// in the config. Asserts monotone decrease; in the smooth regime also the
/// log-log slope and linearity in T over `horizons`; in the rough regime
/// e(eps_min) <= e(eps_max) / rough_ratio.
ExperimentReport run_inviscid_sweep(const ExperimentConfig& config);

/// For each level K: term1 = sup_t ||S^eps(phi) - S^eps(phi_K)||,
/// term2 = sup_t ||S^eps(phi_K) - S^0(phi_K)||, term3 = sup_t ||S^0(phi_K) - S^0(phi)||
/// with phi_K = P_{<=K} phi. Asserts terms 1 and 3 <= C ||phi - phi_K|| and
/// a linear term-2 rate in eps at `rate_level`.
ExperimentReport run_truncation_study(const ExperimentConfig& config, const std::vector<int>& levels);
ExperimentReport run_truncation_study(const ExperimentConfig& config);

/// Sphere path (RK4 + renormalize) against the projected path (IF-RK4 and
/// inverse projection) over dt_list, for each epsilon.
ExperimentReport run_equivalence_check(const ExperimentConfig& config);

/// Invariant suites of all modules on small grids.
ExperimentReport run_lp_selftest(const ExperimentConfig& config);

/// Dispatch on config.kind.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Report of `kind` with its curves declared but no data.
ExperimentReport empty_report(const std::string& kind);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// sup over common samples with t <= t_max of the critical Besov norm of a - b.
double sup_besov_difference(const Trajectory& a, const Trajectory& b, const lp::ShellRange& range,
                            double t_max);

}  // namespace llg::harness
