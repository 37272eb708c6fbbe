#pragma once

namespace llg {

/// Coefficients of ds/dt = a s x Ds - eps s x (s x Ds).
struct LlgParams {
  double a = 1.0;
  double epsilon = 0.0;
};

}  // namespace llg
