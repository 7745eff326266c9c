#include "kplane/transforms.hpp"

#include <cmath>
#include <limits>

namespace kplane {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(m) rotation embedded at the given coordinate offset of R^n.
Eigen::MatrixXd embed_rotation(const Eigen::MatrixXd& rot, int n, int offset) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    m.block(offset, offset, rot.rows(), rot.cols()) = rot;
    return m;
}

struct McAccum {
    double sum = 0.0, sum2 = 0.0;
    long n = 0;
    void add(double v) {
        sum += v;
        sum2 += v * v;
        ++n;
    }
    double mean() const { return n ? sum / n : 0.0; }
    double std_error() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sum2 - n * m * m) / (n - 1.0));
        return std::sqrt(var / n);
    }
};

bool plane_integrable(const RadialProfile& env, int m) {
    const auto& tail = env.tail();
    if (tail.kind != TailDescriptor::Kind::Power) return true;
    const double a = tail.exponent;
    if (a > -static_cast<double>(m) + 1e-13) return false;
    if (std::abs(a + m) < 1e-13 && tail.log_exponent >= -1.0) return false;
    return true;
}

}  // namespace

AmbientFunction make_ambient(std::string name, std::function<double(const Eigen::VectorXd&)> eval,
                             RadialProfile envelope, int n, RngStream rng, int samples) {
    for (int i = 0; i < samples; ++i) {
        const double r = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
        const Eigen::VectorXd x = r * uniform_sphere_point(n, rng);
        if (std::abs(eval(x)) > envelope(r) * (1.0 + 1e-9) + 1e-300)
            throw contract_error("ambient function '" + name +
                                 "' exceeds its envelope at |x|=" + std::to_string(r));
    }
    return AmbientFunction{std::move(eval), std::move(envelope), std::move(name)};
}

GrassmannFunction make_grassmann(std::string name,
                                 std::function<double(const AffinePlane&)> eval,
                                 RadialProfile envelope, int n, int plane_dim, RngStream rng,
                                 int samples) {
    for (int i = 0; i < samples; ++i) {
        const Eigen::MatrixXd g = haar_rotation(n, rng).matrix;
        const double r = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
        const AffinePlane tau(g.leftCols(plane_dim), r * g.col(plane_dim));
        if (std::abs(eval(tau)) > envelope(r) * (1.0 + 1e-9) + 1e-300)
            throw contract_error("grassmann function '" + name +
                                 "' exceeds its envelope at |tau|=" + std::to_string(r));
    }
    GrassmannFunction f;
    f.eval = std::move(eval);
    f.envelope = std::move(envelope);
    f.plane_dim = plane_dim;
    f.name = std::move(name);
    return f;
}

AmbientFunction ambient_from_registry(const std::string& spec_string, int n) {
    std::string name = spec_string;
    std::map<std::string, double> params;
    if (const auto colon = spec_string.find(':'); colon != std::string::npos) {
        name = spec_string.substr(0, colon);
        std::string rest = spec_string.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            const auto comma = rest.find(',', pos);
            const std::string kv =
                rest.substr(pos, comma == std::string::npos ? rest.size() - pos : comma - pos);
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw contract_error("bad registry spec '" + spec_string + "'");
            params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            pos = (comma == std::string::npos) ? rest.size() : comma + 1;
        }
    }
    RngStream rng(0xabcdef12u);

    if (name == "gaussian") {
        return make_ambient("gaussian",
                            [](const Eigen::VectorXd& x) { return std::exp(-x.squaredNorm()); },
                            RadialProfile::gaussian(), n, rng);
    }
    if (name == "tensor-power") {
        const double c = params.count("c") ? params.at("c") : 4.0;
        auto eval = [c](const Eigen::VectorXd& x) {
            double lg = 0.0;
            for (int i = 0; i < x.size(); ++i) lg += std::log1p(x(i) * x(i));
            return std::exp(-0.5 * c * lg);
        };
        const double amp = std::pow(static_cast<double>(n), 0.5 * c);
        auto env = RadialProfile::custom(
            "tensor-power-envelope",
            [c, amp](double r) { return amp * std::exp(-0.5 * c * std::log1p(r * r)); }, 0.0, 0.0,
            TailDescriptor::power(-c, 0.0, amp), {{"c", c}});
        return make_ambient("tensor-power", eval, env, n, rng);
    }
    if (name == "aniso-gaussian") {
        const double seed = params.count("seed") ? params.at("seed") : 1.0;
        const double spread = params.count("spread") ? params.at("spread") : 2.0;
        RngStream arng(static_cast<std::uint64_t>(seed) ^ 0x517cc1b7u);
        const Eigen::MatrixXd q = haar_rotation(n, arng).matrix;
        Eigen::VectorXd ev(n);
        const double lo = 1.0 / spread;
        for (int i = 0; i < n; ++i) ev(i) = lo + (spread - lo) * arng.uniform();
        const Eigen::MatrixXd a = q * ev.asDiagonal() * q.transpose();
        const double lmin = ev.minCoeff();
        auto eval = [a](const Eigen::VectorXd& x) {
            const double s = x.dot(a * x);
            return std::isfinite(s) ? std::exp(-s) : 0.0;
        };
        return make_ambient("aniso-gaussian", eval,
                            RadialProfile::gaussian().scaled(std::sqrt(lmin)), n, rng);
    }
    if (name == "radial-gaussian") {
        const RadialProfile prof = RadialProfile::gaussian();
        auto eval = [prof](const Eigen::VectorXd& x) { return prof(x.norm()); };
        return make_ambient("radial-gaussian", eval, prof, n, rng);
    }
    throw contract_error("unknown ambient test function '" + spec_string + "'");
}

GrassmannFunction grassmann_radial(const RadialProfile& profile, int plane_dim) {
    GrassmannFunction f;
    f.eval = [profile](const AffinePlane& tau) { return profile(tau.distance()); };
    f.envelope = profile;
    f.plane_dim = plane_dim;
    f.name = "radial:" + profile.family();
    return f;
}

GrassmannFunction grassmann_oriented_gaussian(int n, int plane_dim) {
    const double shift = 0.5 * plane_dim / n;
    auto eval = [shift](const AffinePlane& tau) {
        const double p00 = tau.frame.row(0).squaredNorm();  // (P_xi)_{00}
        return std::exp(-tau.offset.squaredNorm()) * (1.0 + 0.5 * p00 - shift);
    };
    auto env = RadialProfile::custom("oriented-gaussian-envelope",
                                     [](double r) { return 2.0 * std::exp(-r * r); }, 0.0, 0.0,
                                     TailDescriptor::gaussian());
    GrassmannFunction f;
    f.eval = eval;
    f.envelope = env;
    f.plane_dim = plane_dim;
    f.name = "oriented-gaussian";
    return f;
}

RadialValue kplane_transform_direct(const AmbientFunction& f, const AffinePlane& plane,
                                    const QuadratureSpec& spec) {
    spec.validate();
    const int k = plane.plane_dim();
    if (!plane_integrable(f.envelope, k))
        return RadialValue::divergent("envelope decay does not integrate over a " +
                                      std::to_string(k) + "-plane");
    const Eigen::VectorXd& u = plane.offset;

    if (k == 1) {
        const Eigen::VectorXd dir = plane.frame.col(0);
        auto h = [&](double s) {
            const double v = f.eval(u + s * dir) + f.eval(u - s * dir);
            return std::isfinite(v) ? v : 0.0;
        };
        const Quad q = integrate_semi_infinite(h, 0.0, spec.rel_tol, spec.max_levels);
        return RadialValue::finite(q.value, q.abs_err);
    }

    // polar coordinates in the plane: sphere rule x radial rule
    auto section = [&](const Eigen::VectorXd& omega) {
        const Eigen::VectorXd dir = plane.frame * omega;
        auto h = [&](double rho) {
            const double v = f.eval(u + rho * dir) * std::pow(rho, k - 1);
            return std::isfinite(v) ? v : 0.0;
        };
        return integrate_semi_infinite(h, 0.0, spec.rel_tol, spec.max_levels).value;
    };
    const Quad q = sphere_integrate(k, section, spec.sphere_order, spec.sphere_mc_samples,
                                    spec.stream().split(0x7a11));
    return RadialValue::finite(q.value, q.abs_err);
}

RadialValue kplane_transform(const AmbientFunction& f, const AffinePlane& plane,
                             const QuadratureSpec& spec) {
    spec.validate();
    const int k = plane.plane_dim();
    if (!plane_integrable(f.envelope, k))
        return RadialValue::divergent("envelope decay does not integrate over a " +
                                      std::to_string(k) + "-plane");

    const double r = plane.distance();
    if (r == 0.0)
        return kplane_transform_direct(f, plane, spec).with_note("u=0: direct subspace quadrature");

    const Eigen::MatrixXd g = frame_for_plane(plane.frame, plane.offset);
    const Eigen::MatrixXd gk1 = g.leftCols(k + 1);

    auto F = [&](const Eigen::VectorXd& theta) {
        const double t = theta(k);
        const Eigen::VectorXd x = gk1 * (theta * (r / t));
        const double v = f.eval(x) / std::pow(t, k + 1);
        return std::isfinite(v) ? v : 0.0;
    };
    const Quad q = hemisphere_quadrature(k, F, spec);
    const double scale = std::pow(r, k);
    return RadialValue::finite(scale * q.value, scale * q.abs_err);
}

RadialValue jk_transform(const GrassmannFunction& f, const Geometry& g, const AffinePlane& plane,
                         const QuadratureSpec& spec) {
    spec.validate();
    if (f.plane_dim != g.j) throw contract_error("jk_transform: the function must live on j-planes");
    if (plane.plane_dim() != g.k || plane.ambient_dim() != g.n)
        throw contract_error("jk_transform: plane dimensions disagree with the geometry");
    const int n = g.n, k = g.k, j = g.j, m = g.step();

    if (!plane_integrable(f.envelope, m))
        return RadialValue::divergent("envelope decay does not integrate over the fibers");

    const double r = plane.distance();
    RngStream rng = spec.stream().split(0x6a6b);
    const int samples = (j == 0) ? 1 : spec.group_samples_inner;

    if (r == 0.0) {
        // defining integral with u = 0: gamma-average of the (k-j)-dimensional
        // integral over eta^perp cap xi
        const Eigen::MatrixXd gc = complete_frame(plane.frame);
        McAccum acc;
        for (int i = 0; i < samples; ++i) {
            const Eigen::MatrixXd gamma = (j == 0)
                                              ? Eigen::MatrixXd::Identity(n, n)
                                              : embed_rotation(haar_rotation(k, rng).matrix, n, 0);
            const Eigen::MatrixXd gg = gc * gamma;
            const Eigen::MatrixXd eta = gg.leftCols(j);
            const Eigen::MatrixXd fiber = gg.middleCols(j, m);
            double piece;
            if (m == 1) {
                auto h = [&](double s) {
                    const double v = f.eval(AffinePlane(eta, s * fiber.col(0))) +
                                     f.eval(AffinePlane(eta, -s * fiber.col(0)));
                    return std::isfinite(v) ? v : 0.0;
                };
                piece = integrate_semi_infinite(h, 0.0, spec.rel_tol, spec.max_levels).value;
            } else {
                auto section = [&](const Eigen::VectorXd& omega) {
                    const Eigen::VectorXd dir = fiber * omega;
                    auto h = [&](double rho) {
                        const double v =
                            f.eval(AffinePlane(eta, rho * dir)) * std::pow(rho, m - 1);
                        return std::isfinite(v) ? v : 0.0;
                    };
                    return integrate_semi_infinite(h, 0.0, spec.rel_tol, spec.max_levels).value;
                };
                piece = sphere_integrate(m, section, spec.sphere_order, spec.sphere_mc_samples,
                                         rng.split(1000 + i))
                            .value;
            }
            acc.add(piece);
        }
        return RadialValue::finite(acc.mean(), acc.std_error())
            .with_note("u=0: direct fiber quadrature");
    }

    const Eigen::MatrixXd gmat = frame_for_plane(plane.frame, plane.offset);
    McAccum acc;
    double quad_err = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Eigen::MatrixXd gamma = (j == 0)
                                          ? Eigen::MatrixXd::Identity(n, n)
                                          : embed_rotation(haar_rotation(k, rng).matrix, n, 0);
        const Eigen::MatrixXd gg = gmat * gamma;
        const Eigen::MatrixXd eta = gg.leftCols(j);
        const Eigen::MatrixXd span = gg.middleCols(j, m + 1);  // coords e_{j+1}..e_{k+1}

        auto F = [&](const Eigen::VectorXd& theta) {
            const double t = theta(m);
            const Eigen::VectorXd y = span * (theta * (r / t));
            const double v = f.eval(AffinePlane(eta, y)) / std::pow(t, m + 1);
            return std::isfinite(v) ? v : 0.0;
        };
        const Quad q = hemisphere_quadrature(m, F, spec);
        acc.add(q.value);
        quad_err += q.abs_err;
    }
    const double scale = std::pow(r, m);
    return RadialValue::finite(scale * acc.mean(), scale * (acc.std_error() + quad_err / samples));
}

RadialValue dual_kplane(const GrassmannFunction& phi, const Eigen::VectorXd& x, const Geometry& g,
                        const QuadratureSpec& spec, RngStream& rng) {
    spec.validate();
    if (phi.plane_dim != g.k) throw contract_error("dual_kplane: the function must live on k-planes");
    const int n = g.n, k = g.k;
    if (x.size() != n) throw contract_error("dual_kplane: point dimension disagrees");
    if (phi.envelope.support_lower() == 0.0 &&
        phi.envelope.origin_exponent() <= static_cast<double>(k - n))
        return RadialValue::divergent("envelope singularity at distance 0 is not Beta-integrable");

    McAccum acc;
    for (int i = 0; i < spec.group_samples; ++i) {
        const Eigen::MatrixXd rot = haar_rotation(n, rng).matrix;
        const Eigen::MatrixXd frame = rot.leftCols(k);
        const AffinePlane tau(frame, x - frame * (frame.transpose() * x));
        acc.add(phi.eval(tau));
    }
    return RadialValue::finite(acc.mean(), acc.std_error());
}

RadialValue dual_jk(const GrassmannFunction& phi, const Geometry& g, const AffinePlane& zeta,
                    const QuadratureSpec& spec, RngStream& rng) {
    spec.validate();
    if (phi.plane_dim != g.k) throw contract_error("dual_jk: the function must live on k-planes");
    if (zeta.plane_dim() != g.j || zeta.ambient_dim() != g.n)
        throw contract_error("dual_jk: zeta must be a j-plane in R^n");
    const int n = g.n, k = g.k, j = g.j;
    if (phi.envelope.support_lower() == 0.0 &&
        phi.envelope.origin_exponent() <= static_cast<double>(k - n))
        return RadialValue::divergent("envelope singularity at distance 0 is not Beta-integrable");

    const Eigen::MatrixXd g_eta = complete_frame(zeta.frame);
    const Eigen::VectorXd& v = zeta.offset;

    McAccum acc;
    for (int i = 0; i < spec.group_samples; ++i) {
        const Eigen::MatrixXd rho = haar_rotation(n - j, rng).matrix;
        const Eigen::MatrixXd big = g_eta * embed_rotation(rho, n, j);
        const Eigen::MatrixXd frame = big.leftCols(k);
        const AffinePlane tau(frame, v - frame * (frame.transpose() * v));
        acc.add(phi.eval(tau));
    }
    return RadialValue::finite(acc.mean(), acc.std_error());
}

RadialValue grassmann_weighted_norm(const GrassmannFunction& phi, const Geometry& g,
                                    const Exponent& p, double nu, const QuadratureSpec& spec,
                                    RngStream& rng) {
    spec.validate();
    if (phi.plane_dim != g.k)
        throw contract_error("grassmann_weighted_norm: k-plane function expected");
    const int n = g.n, k = g.k;
    const RadialProfile& env = phi.envelope;

    if (p.is_infinite()) {
        // ess-sup over a geometric radius grid and a Haar sample of
        // orientations; flagged approximate.
        const double lo = std::max(env.support_lower(), 1e-6);
        double hi = 1e6;
        if (env.tail().kind == TailDescriptor::Kind::CompactSupport)
            hi = std::max(lo * 2.0, env.tail().support_radius);
        else if (env.tail().kind == TailDescriptor::Kind::Gaussian)
            hi = 100.0;
        else if (nu + env.tail().exponent > 0.0)
            return RadialValue::divergent("r^nu |phi| unbounded at infinity");
        if (env.support_lower() == 0.0 && nu + env.origin_exponent() < 0.0)
            return RadialValue::divergent("r^nu |phi| unbounded near 0");
        double best = 0.0;
        const int orientations = std::min(spec.group_samples, 64);
        const long per_orient = 10000;
        for (int i = 0; i < orientations; ++i) {
            const Eigen::MatrixXd rot = haar_rotation(n, rng).matrix;
            const Eigen::MatrixXd frame = rot.leftCols(k);
            const Eigen::VectorXd dir = rot.col(k);
            for (long q = 0; q <= per_orient; ++q) {
                const double r = lo * std::pow(hi / lo, static_cast<double>(q) / per_orient);
                best = std::max(best, std::pow(r, nu) * std::abs(phi.eval(AffinePlane(frame, r * dir))));
            }
        }
        return RadialValue::finite(best, 0.0, true);
    }

    const double pv = p.value();
    const double power = n - k - 1 + nu * pv;
    {
        const double e0 = pv * env.origin_exponent() + power;
        if (env.support_lower() == 0.0 && e0 <= -1.0 + 1e-13)
            return RadialValue::divergent("fiber integrand not integrable at 0");
        if (env.tail().kind == TailDescriptor::Kind::Power) {
            const double einf = pv * env.tail().exponent + power;
            const double linf = pv * env.tail().log_exponent;
            if (einf > -1.0 + 1e-13 || (std::abs(einf + 1.0) <= 1e-13 && linf >= -1.0))
                return RadialValue::divergent("fiber integrand not integrable at infinity");
        }
    }

    double upper = kInf;
    if (env.tail().kind == TailDescriptor::Kind::CompactSupport) upper = env.tail().support_radius;

    McAccum acc;
    double quad_err = 0.0;
    const double sig = unit_sphere_area(n - k);
    for (int i = 0; i < spec.group_samples; ++i) {
        const Eigen::MatrixXd rot = haar_rotation(n, rng).matrix;
        const Eigen::MatrixXd frame = rot.leftCols(k);
        const Eigen::VectorXd dir = rot.col(k);
        auto h = [&](double r) {
            const double v = std::pow(std::abs(phi.eval(AffinePlane(frame, r * dir))), pv) *
                             std::pow(r, power);
            return std::isfinite(v) ? v : 0.0;
        };
        const Quad q =
            integrate_with_knots(h, env.support_lower(), upper, {}, spec.rel_tol, spec.max_levels);
        acc.add(sig * q.value);
        quad_err += sig * q.abs_err;
    }
    const double base = acc.mean();
    if (base <= 0.0) return RadialValue::finite(0.0, 0.0);
    const double v = std::pow(base, 1.0 / pv);
    const double err = v / (pv * base) * (acc.std_error() + quad_err / spec.group_samples);
    return RadialValue::finite(v, err);
}

}  // namespace kplane
