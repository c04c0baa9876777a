#pragma once

#include <functional>

namespace levy {

inline constexpr double kQuadratureTolerance = 1e-10;

/// Adaptive Gauss-Kronrod (G7/K15) integral of f over [lo, hi].
/// Throws NumericFailure when the error estimate exceeds abs_tol plus a
/// relative allowance of 1e-10 |result|.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = kQuadratureTolerance);

}  // namespace levy
