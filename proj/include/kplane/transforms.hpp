#pragma once

#include <functional>
#include <string>

#include "kplane/geometry.hpp"
#include "kplane/radial.hpp"

namespace kplane {

// Function on R^n together with a dominating radial envelope |f(x)| <= env(|x|).
// The envelope carries the integrability metadata that admissibility and
// truncation decisions are made from.
struct AmbientFunction {
    std::function<double(const Eigen::VectorXd&)> eval;
    RadialProfile envelope;
    std::string name = "custom";
};

// Function on the affine Grassmannian of plane_dim-planes, with a dominating
// radial envelope in |tau|.
struct GrassmannFunction {
    std::function<double(const AffinePlane&)> eval;
    RadialProfile envelope;
    int plane_dim = 0;
    std::string name = "custom";
};

// Construction with the envelope spot-check (|f| <= envelope on random points;
// throws contract_error on violation).
AmbientFunction make_ambient(std::string name, std::function<double(const Eigen::VectorXd&)> eval,
                             RadialProfile envelope, int n, RngStream rng, int samples = 1000);
GrassmannFunction make_grassmann(std::string name,
                                 std::function<double(const AffinePlane&)> eval,
                                 RadialProfile envelope, int n, int plane_dim, RngStream rng,
                                 int samples = 200);

// Named test functions addressable from the CLI/config:
//   gaussian | tensor-power:c=4 | aniso-gaussian:seed=3,spread=2 | radial:<family>...
AmbientFunction ambient_from_registry(const std::string& spec_string, int n);

// phi(tau) = profile(|tau|)
GrassmannFunction grassmann_radial(const RadialProfile& profile, int plane_dim);

// phi(xi, u) = exp(-|u|^2) (1 + 1/2 (P_xi)_{00} - k/(2n)): a smooth
// orientation-dependent test function for equivariance/duality checks.
GrassmannFunction grassmann_oriented_gaussian(int n, int plane_dim);

// (R_k f)(xi, u) via the hemispherical representation
//   r^k int_{S^k_+} f(g (r theta / theta_{k+1})) dsigma(theta)/theta_{k+1}^{k+1}
// with g = frame_for_plane(xi, u), r = |u|. Planes through the origin fall
// back to direct subspace quadrature (noted on the result).
RadialValue kplane_transform(const AmbientFunction& f, const AffinePlane& plane,
                             const QuadratureSpec& spec);

// Defining integral int_xi f(y+u) dy by direct quadrature over the plane
// (1-D rule for k = 1, polar product rule beyond). Valid at u = 0; also the
// independent cross-check of the hemispherical representation.
RadialValue kplane_transform_direct(const AmbientFunction& f, const AffinePlane& plane,
                                    const QuadratureSpec& spec);

// (R_{j,k} f)(xi, u) for f on j-planes: O(k) Monte Carlo around the nested
// hemispherical representation on S^{k-j}_+.
RadialValue jk_transform(const GrassmannFunction& f, const Geometry& g, const AffinePlane& plane,
                         const QuadratureSpec& spec);

// (R_k^* phi)(x): Monte Carlo average of phi over Haar-random k-planes through
// x. The error field is the standard error of the mean.
RadialValue dual_kplane(const GrassmannFunction& phi, const Eigen::VectorXd& x, const Geometry& g,
                        const QuadratureSpec& spec, RngStream& rng);

// (R_{j,k}^* phi)(zeta): average of phi over k-planes containing the j-plane
// zeta, sampled through O(n-j) acting in the complement of zeta's directions.
RadialValue dual_jk(const GrassmannFunction& phi, const Geometry& g, const AffinePlane& zeta,
                    const QuadratureSpec& spec, RngStream& rng);

// || phi ||_{p,nu} on the affine k-Grassmannian: outer radial quadrature,
// inner Haar Monte Carlo over orientations (common random numbers across r).
RadialValue grassmann_weighted_norm(const GrassmannFunction& phi, const Geometry& g,
                                    const Exponent& p, double nu, const QuadratureSpec& spec,
                                    RngStream& rng);

}  // namespace kplane
