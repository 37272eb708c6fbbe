#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "llg/core/error.hpp"
#include "llg/core/field.hpp"
#include "llg/core/params.hpp"

namespace llg {

struct RunMetadata {
  LlgParams params;
  double dt = 0.0;          // integrator step
  std::string integrator;   // e.g. "ifrk4", "rk4-renormalized"
  std::string datum;        // initial-datum family tag
};

/// Uniformly sampled time series t_0 = 0 < ... < t_M = T of snapshots.
template <class FieldT>
struct BasicTrajectory {
  std::vector<double> times;
  std::vector<FieldT> snapshots;
  RunMetadata meta;

  std::size_t size() const noexcept { return snapshots.size(); }
  bool empty() const noexcept { return snapshots.empty(); }
  const Grid& grid() const { return snapshots.front().grid(); }
  double final_time() const { return times.back(); }

  /// Spacing of the samples; throws if the samples are not uniform.
  double sample_interval() const {
    if (times.size() < 2) throw DomainError("trajectory needs at least two samples");
    if (times.size() != snapshots.size()) throw SizeMismatchError("times/snapshots length mismatch");
    const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    for (std::size_t i = 0; i < times.size(); ++i)
      if (std::abs(times[i] - (times.front() + h * static_cast<double>(i))) > 1e-9 * (1.0 + std::abs(times.back())))
        throw DomainError("trajectory samples are not uniformly spaced");
    return h;
  }

  void push_back(double t, FieldT f) {
    times.push_back(t);
    snapshots.push_back(std::move(f));
  }
};

using Trajectory = BasicTrajectory<ComplexField>;

}  // namespace llg
