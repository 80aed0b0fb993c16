#pragma once

#include <complex>
#include <functional>

namespace lemni {

// Adaptive Gauss-Legendre integration of a complex-valued function of a real
// parameter over [a, b].  Error control compares the 7- and 15-point rules and
// bisects until the estimate drops below tol (absolute); throws
// EvaluationError("QuadratureNotConverged") past max_depth subdivisions.
std::complex<double>
integrate_gauss_legendre(const std::function<std::complex<double>(double)> &f,
                         double a, double b, double tol = 1e-10, int max_depth = 20);

// Integral of g along the straight segment from 0 to z.
std::complex<double>
integrate_segment(const std::function<std::complex<double>(std::complex<double>)> &g,
                  std::complex<double> z, double tol = 1e-10, int max_depth = 20);

} // namespace lemni
