#include "kplane/geometry.hpp"

#include <bit>
#include <cmath>

#include "kplane/constants.hpp"

namespace kplane {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0)) throw contract_error("QuadratureSpec: rel_tol must be positive");
    if (max_levels < 1 || sphere_order < 1 || sphere_mc_samples < 1 || group_samples < 1 ||
        group_samples_inner < 1)
        throw contract_error("QuadratureSpec: node and sample counts must be >= 1");
}

RotationSample haar_rotation(int n, RngStream& rng) {
    if (n < 1) throw contract_error("haar_rotation: need n >= 1");
    RotationSample out;
    out.seed = rng.seed();
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) a(i, c) = rng.normal();
    if (n == 1) {
        out.matrix = Eigen::MatrixXd::Constant(1, 1, a(0, 0) >= 0.0 ? 1.0 : -1.0);
        return out;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < n; ++c)
        if (r(c, c) < 0.0) q.col(c) = -q.col(c);
    out.matrix = std::move(q);
    return out;
}

Eigen::VectorXd uniform_sphere_point(int d, RngStream& rng) {
    if (d < 1) throw contract_error("uniform_sphere_point: need d >= 1");
    Eigen::VectorXd z(d);
    double n2 = 0.0;
    do {
        for (int i = 0; i < d; ++i) z(i) = rng.normal();
        n2 = z.squaredNorm();
    } while (n2 < 1e-300);
    return z / std::sqrt(n2);
}

namespace {

void check_orthonormal(const Eigen::MatrixXd& frame, const char* who) {
    const int k = static_cast<int>(frame.cols());
    if (k == 0) return;  // 0-planes are points
    const Eigen::MatrixXd gram = frame.transpose() * frame;
    if ((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10)
        throw contract_error(std::string(who) + ": frame columns are not orthonormal");
}

}  // namespace

AffinePlane::AffinePlane(Eigen::MatrixXd frame_, Eigen::VectorXd offset_)
    : frame(std::move(frame_)), offset(std::move(offset_)) {
    if (frame.rows() != offset.size())
        throw contract_error("AffinePlane: frame and offset dimensions disagree");
    check_orthonormal(frame, "AffinePlane");
    if (frame.cols() > 0) {
        const double u = offset.norm();
        if ((frame.transpose() * offset).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, u))
            throw contract_error("AffinePlane: offset is not orthogonal to the frame");
    }
}

AffinePlane AffinePlane::through(const Eigen::MatrixXd& frame_, const Eigen::VectorXd& point) {
    return AffinePlane(frame_, point - frame_ * (frame_.transpose() * point));
}

AffinePlane AffinePlane::transformed(const Eigen::MatrixXd& g) const {
    return AffinePlane(g * frame, g * offset);
}

double plane_distance(const AffinePlane& plane) { return plane.offset.norm(); }

Eigen::MatrixXd complete_frame(const Eigen::MatrixXd& frame) {
    const int n = static_cast<int>(frame.rows());
    const int m = static_cast<int>(frame.cols());
    check_orthonormal(frame, "complete_frame");
    if (m == n) return frame;
    if (m == 0) return Eigen::MatrixXd::Identity(n, n);
    // Full QR of the frame: the trailing n-m columns of Q are an orthonormal
    // basis of the orthogonal complement.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd g(n, n);
    g.leftCols(m) = frame;
    g.rightCols(n - m) = q.rightCols(n - m);
    return g;
}

Eigen::MatrixXd frame_for_plane(const Eigen::MatrixXd& xi_frame, const Eigen::VectorXd& u) {
    const int n = static_cast<int>(xi_frame.rows());
    const int k = static_cast<int>(xi_frame.cols());
    const double r = u.norm();
    if (r <= 0.0)
        throw degenerate_plane_error(
            "frame_for_plane: the hemispherical representation requires u != 0");
    if ((xi_frame.transpose() * u).cwiseAbs().maxCoeff() > 1e-10 * r)
        throw contract_error("frame_for_plane: u is not orthogonal to the frame");
    Eigen::MatrixXd b(n, k + 1);
    b.leftCols(k) = xi_frame;
    b.col(k) = u / r;
    return complete_frame(b);
}

Quad hemisphere_quadrature(int k, const std::function<double(const Eigen::VectorXd&)>& F,
                           const QuadratureSpec& spec) {
    if (k < 1) throw contract_error("hemisphere_quadrature: need k >= 1");
    spec.validate();
    const RngStream base = spec.stream().split(0x5f3759df);
    const bool mc_inner = k >= 5;  // sphere factor falls back to Monte Carlo

    // Inner slice at height t = theta_{k+1}: integral of F over the S^{k-1}
    // factor of radius sqrt(1-t^2). The Monte Carlo fallback derives its
    // stream from t so the integrand stays deterministic under refinement.
    auto slice = [&](double t, double s) {
        auto g = [&](const Eigen::VectorXd& omega) {
            Eigen::VectorXd theta(k + 1);
            theta.head(k) = s * omega;
            theta(k) = t;
            return F(theta);
        };
        RngStream node_rng = base.split(std::bit_cast<std::uint64_t>(t));
        return sphere_integrate(k, g, spec.sphere_order, spec.sphere_mc_samples, node_rng).value;
    };

    Quad q;
    if (spec.cos_substitution) {
        // t = cos(phi): weight (1-t^2)^{k/2-1}; double-exponential in t absorbs
        // the equator/pole endpoint singularities.
        auto integrand = [&](double t, double tc) {
            const double om = (t > 0.5) ? tc * (1.0 + t) : (1.0 - t) * (1.0 + t);  // 1 - t^2
            const double s = std::sqrt(om);
            const double w = std::pow(om, 0.5 * k - 1.0);
            if (!std::isfinite(w)) return 0.0;
            const double v = w * slice(t, s);
            return std::isfinite(v) ? v : 0.0;
        };
        q = integrate_finite2(integrand, 0.0, 1.0, spec.rel_tol, spec.max_levels);
    } else {
        // Direct phi parametrization, kept for cross-checks of the substitution.
        auto integrand = [&](double phi) {
            const double sp = std::sin(phi);
            const double cp = std::cos(phi);
            const double v = std::pow(sp, k - 1.0) * slice(cp, sp);
            return std::isfinite(v) ? v : 0.0;
        };
        q = integrate_finite(integrand, 0.0, 1.5707963267948966, spec.rel_tol, spec.max_levels);
    }

    const double scale = std::max(std::abs(q.value), 1e-300);
    const double fail_at = mc_inner ? 0.05 : std::max(100.0 * spec.rel_tol, 1e-6);
    if (q.abs_err > scale * fail_at)
        throw accuracy_error("hemisphere_quadrature: error estimate " + std::to_string(q.abs_err) +
                             " above tolerance after max refinement");
    return q;
}

}  // namespace kplane
