#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "kplane/quadrature.hpp"
#include "kplane/rng.hpp"

namespace kplane {

// Quadrature and sampling budget. Everything an experiment needs to be
// replayed bit-for-bit travels in here (together with the seed).
struct QuadratureSpec {
    double rel_tol = 1e-11;       // target relative tolerance of 1-D rules
    int max_levels = 15;          // tanh-sinh refinement depth
    int sphere_order = 24;        // product-angle order on S^d, d <= 3
    int sphere_mc_samples = 4096; // Monte Carlo sphere rule beyond that
    int group_samples = 10000;    // Haar Monte Carlo sample count
    int group_samples_inner = 64; // O(k) samples nested inside quadratures
    bool cos_substitution = true; // hemisphere rule: t = cos(phi) substitution
    std::uint64_t seed = 0;

    void validate() const;
    RngStream stream() const { return RngStream(seed); }
};

// Orthogonal matrix tagged with the seed that produced it.
struct RotationSample {
    Eigen::MatrixXd matrix;
    std::uint64_t seed = 0;
};

// Haar-distributed rotation: orthonormalize an n x n standard normal matrix
// and fix signs so the triangular factor has positive diagonal (the
// measure-correct construction).
RotationSample haar_rotation(int n, RngStream& rng);

// Uniform point on S^{d-1} (normalized Gaussian vector).
Eigen::VectorXd uniform_sphere_point(int d, RngStream& rng);

// k-plane tau = (xi, u): an orthonormal frame spanning xi plus an offset in
// xi^perp. |tau| is the Euclidean distance from the plane to the origin.
struct AffinePlane {
    Eigen::MatrixXd frame;   // n x k, orthonormal columns
    Eigen::VectorXd offset;  // in the orthogonal complement of the frame

    AffinePlane(Eigen::MatrixXd frame_, Eigen::VectorXd offset_);

    // Plane with the given directions through the given point (offset is the
    // point's component orthogonal to the frame).
    static AffinePlane through(const Eigen::MatrixXd& frame_, const Eigen::VectorXd& point);

    int ambient_dim() const { return static_cast<int>(frame.rows()); }
    int plane_dim() const { return static_cast<int>(frame.cols()); }
    double distance() const { return offset.norm(); }
    AffinePlane transformed(const Eigen::MatrixXd& g) const;
};

double plane_distance(const AffinePlane& plane);

// Orthogonal g with g e_i = i-th frame column (i <= k) and g e_{k+1} = u/|u|,
// completed orthonormally (the completion is arbitrary; transform values do
// not depend on it). Throws degenerate_plane_error when u = 0.
Eigen::MatrixXd frame_for_plane(const Eigen::MatrixXd& xi_frame, const Eigen::VectorXd& u);

// Orthogonal completion of an orthonormal n x m frame to a full basis whose
// first m columns are exactly the frame columns.
Eigen::MatrixXd complete_frame(const Eigen::MatrixXd& frame);

// Integral of F over the upper hemisphere S^k_+ = {theta in S^k : theta_{k+1} > 0}
// against the surface measure, via the product decomposition
// theta = (omega sin phi, cos phi), dsigma = sin^{k-1}(phi) dphi dsigma(omega).
// F receives theta as a (k+1)-vector whose last component is theta_{k+1}.
// Integrable singularities at the equator (theta_{k+1} -> 0) and the pole are
// handled by the t = cos(phi) substitution and the double-exponential rule.
Quad hemisphere_quadrature(int k, const std::function<double(const Eigen::VectorXd&)>& F,
                           const QuadratureSpec& spec);

}  // namespace kplane
