#pragma once

#include <functional>
#include <span>

namespace forestlink {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value;
  double error_estimate;
  int intervals;
};

// Adaptive Gauss-Kronrod (G7, K15) on [a, b]. Interior breakpoints seed the
// initial subdivision so known kinks never straddle an interval. Throws
// quadrature_error when the interval budget is exhausted before the
// tolerance is met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opt = {},
                                    std::span<const double> breakpoints = {});

}  // namespace forestlink
