#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "kplane/errors.hpp"
#include "kplane/rng.hpp"

namespace kplane {

struct Quad {
    double value = 0.0;
    double abs_err = 0.0;
};

// Double-exponential (tanh-sinh) rule on (a, b). Handles integrable endpoint
// singularities on both sides. The integrand may optionally be supplied in
// two-argument form f(x, xc) where xc is the distance to the nearer endpoint,
// which preserves precision near the endpoints.
Quad integrate_finite(const std::function<double(double)>& f, double a, double b,
                      double rel_tol = 1e-11, int max_levels = 15);

Quad integrate_finite2(const std::function<double(double, double)>& f, double a, double b,
                       double rel_tol = 1e-11, int max_levels = 15);

// Integral over (a, inf) through the rational compactification r = a + t/(1-t).
// Correct for algebraically decaying integrands as long as they are integrable;
// the far tail (r beyond ~1e300) must underflow to zero in f.
Quad integrate_semi_infinite(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-11, int max_levels = 15);

// Piecewise integration over (a, b) split at interior knots (kinks, support
// edges). Knots outside (a, b) are ignored. b may be infinity.
Quad integrate_with_knots(const std::function<double(double)>& f, double a, double b,
                          std::vector<double> knots, double rel_tol = 1e-11,
                          int max_levels = 15);

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

// Integral of f over the unit sphere S^{d-1} in R^d against the (unnormalized)
// surface measure. Product-angle Gauss rules for d <= 4; Monte Carlo with
// mc_samples draws from rng beyond that.
Quad sphere_integrate(int d, const std::function<double(const Eigen::VectorXd&)>& f, int order,
                      int mc_samples, RngStream rng);

}  // namespace kplane
