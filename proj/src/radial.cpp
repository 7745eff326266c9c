#include "kplane/radial.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace kplane {

namespace {

constexpr double kEps = 1e-13;

bool near(double a, double b) { return std::abs(a - b) <= kEps * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TailDescriptor TailDescriptor::power(double a, double log_a, double c) {
    TailDescriptor t;
    t.kind = Kind::Power;
    t.exponent = a;
    t.log_exponent = log_a;
    t.coeff = c;
    return t;
}

TailDescriptor TailDescriptor::exact_power(double a, double c, double from) {
    TailDescriptor t = power(a, 0.0, c);
    t.exact = true;
    t.exact_from = from;
    return t;
}

TailDescriptor TailDescriptor::compact(double radius) {
    TailDescriptor t;
    t.kind = Kind::CompactSupport;
    t.support_radius = radius;
    return t;
}

TailDescriptor TailDescriptor::gaussian() {
    TailDescriptor t;
    t.kind = Kind::Gaussian;
    return t;
}

RadialProfile RadialProfile::custom(std::string family, std::function<double(double)> eval,
                                    double origin_exponent, double support_lower,
                                    TailDescriptor tail, std::map<std::string, double> params,
                                    bool check_tail) {
    RadialProfile p;
    p.family_ = std::move(family);
    p.eval_ = std::move(eval);
    p.origin_exponent_ = origin_exponent;
    p.support_lower_ = support_lower;
    p.tail_ = tail;
    p.params_ = std::move(params);

    // Tail metadata must describe the evaluator (factor-2 agreement on the
    // far range), otherwise truncation and divergence decisions are garbage.
    if (check_tail && tail.kind == TailDescriptor::Kind::Power) {
        for (double r : {1e3, 3e4, 1e6}) {
            if (r <= std::max(support_lower, tail.exact_from)) continue;
            const double model =
                tail.coeff * std::pow(r, tail.exponent) * std::pow(std::log(r), tail.log_exponent);
            const double actual = p.eval_(r);
            if (model == 0.0 && actual == 0.0) continue;
            const double ratio = actual / model;
            if (!(ratio > 0.45 && ratio < 2.2))
                throw contract_error("RadialProfile '" + p.family_ +
                                     "': tail metadata disagrees with the evaluator at r=" +
                                     std::to_string(r));
        }
    }
    return p;
}

RadialProfile RadialProfile::gaussian() {
    return custom("gaussian", [](double r) { return std::exp(-r * r); }, 0.0, 0.0,
                  TailDescriptor::gaussian());
}

RadialProfile RadialProfile::truncated_power(double a, double r0) {
    if (!(r0 > 0)) throw contract_error("truncated_power: need r0 > 0");
    return custom("truncated-power",
                  [a, r0](double r) { return r < r0 ? 0.0 : std::pow(r, a); }, 0.0, r0,
                  TailDescriptor::exact_power(a, 1.0, r0), {{"a", a}, {"r0", r0}});
}

RadialProfile RadialProfile::extremizer(double mu, int n, double p, double eps) {
    if (!(eps > 0)) throw contract_error("extremizer: need eps > 0");
    RadialProfile f = truncated_power(-mu - n / p - eps, 1.0);
    f.family_ = "extremizer";
    f.params_ = {{"mu", mu}, {"eps", eps}};
    return f;
}

RadialProfile RadialProfile::extremizer_jk(double mu, int n, int j, double p, double eps) {
    if (!(eps > 0)) throw contract_error("extremizer-jk: need eps > 0");
    RadialProfile f = truncated_power(-mu - (n - j) / p - eps, 1.0);
    f.family_ = "extremizer-jk";
    f.params_ = {{"mu", mu}, {"eps", eps}};
    return f;
}

RadialProfile RadialProfile::counterexample(double mu, int n, double p, double delta) {
    const double s = 1.0 / p + delta;
    auto eval = [mu, n, p, s](double r) {
        if (r <= 0.0) return mu < 0 ? 0.0 : (mu == 0.0 ? std::pow(2.0, -n / p) / std::pow(std::log(2.0), s)
                                                       : std::numeric_limits<double>::infinity());
        const double v = std::pow(r, -mu) * std::pow(2.0 + r, -n / p) / std::pow(std::log(2.0 + r), s);
        return std::isfinite(v) ? v : 0.0;
    };
    return custom("counterexample", eval, -mu, 0.0,
                  TailDescriptor::power(-mu - n / p, -s), {{"mu", mu}, {"delta", delta}});
}

RadialProfile RadialProfile::endpoint_p1(int k, double delta) {
    RadialProfile f = truncated_power(k - delta, 10.0);
    f.family_ = "endpoint-p1";
    f.params_ = {{"delta", delta}};
    return f;
}

RadialProfile RadialProfile::jk_counterexample(double mu, int n, int j, double p, double delta) {
    const double s = 1.0 / p + delta;
    const double b = (j - n) / p;
    auto eval = [mu, b, s](double r) {
        if (r <= 0.0) return mu < 0 ? 0.0 : (mu == 0.0 ? std::pow(2.0, b) / std::pow(std::log(2.0), s)
                                                       : std::numeric_limits<double>::infinity());
        const double v = std::pow(r, -mu) * std::pow(2.0 + r, b) / std::pow(std::log(2.0 + r), s);
        return std::isfinite(v) ? v : 0.0;
    };
    return custom("jk-counterexample", eval, -mu, 0.0, TailDescriptor::power(-mu + b, -s),
                  {{"mu", mu}, {"delta", delta}});
}

RadialProfile RadialProfile::power_tail(double alpha, double beta) {
    auto eval = [alpha, beta](double r) {
        if (r <= 0.0) return alpha > 0 ? 0.0 : (alpha == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
        // log form keeps r -> inf well-defined for alpha > 0
        return std::exp(alpha * std::log(r) - 0.5 * beta * std::log1p(r * r));
    };
    return custom("power-tail", eval, alpha, 0.0, TailDescriptor::power(alpha - beta),
                  {{"alpha", alpha}, {"beta", beta}});
}

RadialProfile RadialProfile::bump() { return bump_shifted(-1.0, 1.0); }

RadialProfile RadialProfile::bump_shifted(double r0, double r1) {
    if (!(r1 > r0)) throw contract_error("bump_shifted: need r1 > r0");
    auto eval = [r0, r1](double r) {
        const double x = (r - r0) / (r1 - r0);
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return std::exp(-1.0 / (x * (1.0 - x)));
    };
    return custom("bump", eval, 0.0, std::max(0.0, r0), TailDescriptor::compact(r1),
                  {{"r0", r0}, {"r1", r1}});
}

RadialProfile RadialProfile::indicator(double radius) {
    if (!(radius > 0)) throw contract_error("indicator: need radius > 0");
    return custom("indicator", [radius](double r) { return r <= radius ? 1.0 : 0.0; }, 0.0, 0.0,
                  TailDescriptor::compact(radius), {{"radius", radius}});
}

RadialProfile RadialProfile::zero() {
    return custom("zero", [](double) { return 0.0; }, 0.0, 0.0, TailDescriptor::compact(0.0));
}

RadialProfile RadialProfile::scaled(double lambda) const {
    if (!(lambda > 0)) throw contract_error("scaled: need lambda > 0");
    RadialProfile p = *this;
    auto base = eval_;
    p.eval_ = [base, lambda](double r) { return base(lambda * r); };
    p.support_lower_ = support_lower_ / lambda;
    p.family_ = family_ + "-dilated";
    p.params_["lambda"] = lambda;
    switch (tail_.kind) {
        case TailDescriptor::Kind::Power:
            p.tail_.coeff = tail_.coeff * std::pow(lambda, tail_.exponent);
            p.tail_.exact_from = tail_.exact_from / lambda;
            break;
        case TailDescriptor::Kind::CompactSupport:
            p.tail_.support_radius = tail_.support_radius / lambda;
            break;
        case TailDescriptor::Kind::Gaussian:
            break;  // still Gaussian-class decay
    }
    return p;
}

RadialProfile make_profile(const std::string& family, const std::map<std::string, double>& params,
                           const Geometry& g, const Exponent& p) {
    auto get = [&](const char* key, std::optional<double> dflt = std::nullopt) {
        auto it = params.find(key);
        if (it != params.end()) return it->second;
        if (dflt) return *dflt;
        throw contract_error("profile '" + family + "' requires parameter '" + key + "'");
    };
    auto fp = [&]() {
        if (p.is_infinite()) throw contract_error("profile '" + family + "' needs finite p");
        return p.value();
    };
    if (family == "gaussian") return RadialProfile::gaussian();
    if (family == "extremizer") return RadialProfile::extremizer(get("mu"), g.n, fp(), get("eps"));
    if (family == "extremizer-jk")
        return RadialProfile::extremizer_jk(get("mu"), g.n, g.j, fp(), get("eps"));
    if (family == "counterexample")
        return RadialProfile::counterexample(get("mu"), g.n, fp(), get("delta"));
    if (family == "endpoint-p1") return RadialProfile::endpoint_p1(g.k, get("delta"));
    if (family == "jk-counterexample")
        return RadialProfile::jk_counterexample(get("mu"), g.n, g.j, fp(), get("delta"));
    if (family == "power-tail") return RadialProfile::power_tail(get("alpha"), get("beta"));
    if (family == "bump") return RadialProfile::bump_shifted(get("r0", 0.0), get("r1", 1.0));
    if (family == "indicator") return RadialProfile::indicator(get("radius", 1.0));
    if (family == "truncated-power") return RadialProfile::truncated_power(get("a"), get("r0", 1.0));
    if (family == "zero") return RadialProfile::zero();
    throw contract_error("unknown profile family '" + family + "'");
}

namespace {

// closed form for int_{R1}^inf c r^a (r^2-t^2)^{m/2-1} r dr, a+m < 0, R1 >= t
double abel_power_tail(double c, double a, int m, double t, double r1) {
    if (t <= r1 * 1e-8) {
        // t = 0 limit; relative error O((t/R1)^2) below double precision here
        return c * std::pow(r1, a + m) / (-(a + m));
    }
    const double x = (t / r1) * (t / r1);
    return c * 0.5 * std::pow(t, a + m) * boost::math::beta(-0.5 * (a + m), 0.5 * m, x);
}

struct AbelCheck {
    bool divergent = false;
    std::string reason;
};

AbelCheck abel_converges(const RadialProfile& f, int m, double t) {
    AbelCheck c;
    const TailDescriptor& tail = f.tail();
    if (tail.kind == TailDescriptor::Kind::Power) {
        if (tail.exponent > -static_cast<double>(m) + kEps) {
            c.divergent = true;
            c.reason = "tail r^" + std::to_string(tail.exponent) + " is not o(r^-" +
                       std::to_string(m) + ")";
            return c;
        }
        if (near(tail.exponent, -static_cast<double>(m)) && tail.log_exponent >= -1.0) {
            c.divergent = true;
            c.reason = "boundary tail r^-" + std::to_string(m) + " log^" +
                       std::to_string(tail.log_exponent) + " diverges";
            return c;
        }
    }
    if (t == 0.0 && f.support_lower() == 0.0 && f.origin_exponent() <= -static_cast<double>(m)) {
        c.divergent = true;
        c.reason = "profile singularity r^" + std::to_string(f.origin_exponent()) +
                   " at the origin is not integrable against s^{m-1}";
    }
    return c;
}

// sigma_{m-1} int f0(sqrt(t^2+s^2)) s^{m-1} ds over (0, inf), the substituted
// Abel integral.
RadialValue abel_of(const RadialProfile& f, int m, double t, const QuadratureSpec& spec) {
    if (t < 0) throw contract_error("Abel transform: need t >= 0");
    if (m < 1) throw contract_error("Abel transform: need kernel dimension >= 1");
    spec.validate();
    const AbelCheck chk = abel_converges(f, m, t);
    if (chk.divergent) return RadialValue::divergent(chk.reason);

    const double sig = unit_sphere_area(m);
    const TailDescriptor& tail = f.tail();
    const double L = f.support_lower();
    auto s_of_r = [t](double r) { return r <= t ? 0.0 : std::sqrt((r - t) * (r + t)); };
    const double s_lo = (L > t) ? s_of_r(L) : 0.0;

    auto h = [&](double s) {
        const double v = f(std::hypot(t, s)) * std::pow(s, m - 1);
        return std::isfinite(v) ? v : 0.0;
    };

    if (tail.kind == TailDescriptor::Kind::CompactSupport) {
        if (tail.support_radius <= t || tail.support_radius <= L) return RadialValue::finite(0.0, 0.0);
        const Quad q = integrate_finite(h, s_lo, s_of_r(tail.support_radius), spec.rel_tol,
                                        spec.max_levels);
        return RadialValue::finite(sig * q.value, sig * q.abs_err);
    }

    if (tail.kind == TailDescriptor::Kind::Power && tail.exact && tail.log_exponent == 0.0) {
        const double r1 = std::max({tail.exact_from, t, L});
        Quad q{0.0, 0.0};
        const double s1 = s_of_r(r1);
        if (s1 > s_lo) q = integrate_finite(h, s_lo, s1, spec.rel_tol, spec.max_levels);
        const double tail_val = abel_power_tail(tail.coeff, tail.exponent, m, t, r1);
        return RadialValue::finite(sig * (q.value + tail_val), sig * q.abs_err);
    }

    const Quad q = integrate_with_knots(h, s_lo, std::numeric_limits<double>::infinity(),
                                        {s_of_r(std::max(tail.exact_from, L))}, spec.rel_tol,
                                        spec.max_levels);
    const double scale = std::max(std::abs(q.value), 1e-300);
    if (q.abs_err > 1e-4 * scale)
        throw accuracy_error("Abel quadrature did not converge (estimated relative error " +
                             std::to_string(q.abs_err / scale) + ")");
    return RadialValue::finite(sig * q.value, sig * q.abs_err);
}

}  // namespace

RadialValue kplane_radial(const RadialProfile& f, const Geometry& g, double t,
                          const QuadratureSpec& spec) {
    return abel_of(f, g.k, t, spec);
}

RadialValue jk_radial(const RadialProfile& f, const Geometry& g, double t,
                      const QuadratureSpec& spec) {
    return abel_of(f, g.step(), t, spec);
}

RadialValue abel_radial_raw(const RadialProfile& f, int m, double t, double upper,
                            const QuadratureSpec& spec) {
    if (t < 0 || m < 1) throw contract_error("abel_radial_raw: bad arguments");
    spec.validate();
    const double sig = unit_sphere_area(m);
    double lo = std::max(t, f.support_lower());
    double hi = upper;
    if (f.tail().kind == TailDescriptor::Kind::CompactSupport)
        hi = std::min(hi, f.tail().support_radius);
    if (!(hi > lo)) return RadialValue::finite(0.0, 0.0);

    // kernel (r^2-t^2)^{m/2-1} is endpoint-singular at r = t for m = 1; the
    // two-argument form keeps r - t exact there.
    auto integrand = [&](double r, double rc) {
        const double r_minus_t = (r - lo < hi - r) ? ((lo == t) ? rc : r - t) : r - t;
        const double kern = std::pow(r_minus_t * (r + t), 0.5 * m - 1.0);
        const double v = f(r) * kern * r;
        return std::isfinite(v) ? v : 0.0;
    };

    if (std::isinf(hi)) {
        const AbelCheck chk = abel_converges(f, m, std::max(t, 1e-12));
        if (chk.divergent) return RadialValue::divergent(chk.reason);
        // split at lo+1 so the singular endpoint piece stays finite
        const double mid = lo + std::max(1.0, lo);
        const Quad q1 = integrate_finite2(integrand, lo, mid, spec.rel_tol, spec.max_levels);
        const Quad q2 = integrate_semi_infinite([&](double r) { return integrand(r, r - lo); }, mid,
                                                spec.rel_tol, spec.max_levels);
        return RadialValue::finite(sig * (q1.value + q2.value), sig * (q1.abs_err + q2.abs_err));
    }
    const Quad q = integrate_finite2(integrand, lo, hi, spec.rel_tol, spec.max_levels);
    return RadialValue::finite(sig * q.value, sig * q.abs_err);
}

namespace {

RadialValue dual_of(const RadialProfile& phi, int ambient, int plane, double s,
                    const QuadratureSpec& spec) {
    const int nm = ambient - plane;  // codimension: weight t^{nm-1}
    if (nm < 1 || plane < 1) throw contract_error("dual transform: bad dimensions");
    spec.validate();

    if (s == 0.0) {
        // every sampled plane passes through the evaluation point
        if (phi.support_lower() > 0.0) return RadialValue::finite(0.0, 0.0);
        if (phi.origin_exponent() < 0.0)
            return RadialValue::divergent("profile is singular at distance 0");
        return RadialValue::finite(phi(0.0), 0.0);
    }
    if (phi.support_lower() == 0.0 &&
        phi.origin_exponent() <= static_cast<double>(plane - ambient))
        return RadialValue::divergent("profile singularity exceeds the Beta-weight integrability");

    const double log_c = std::log(2.0) + std::lgamma(0.5 * ambient) - std::lgamma(0.5 * plane) -
                         std::lgamma(0.5 * nm);
    const double c = std::exp(log_c);

    double lo = 0.0, hi = 1.0;
    if (phi.support_lower() > 0.0) lo = std::min(1.0, phi.support_lower() / s);
    if (phi.tail().kind == TailDescriptor::Kind::CompactSupport)
        hi = std::min(1.0, phi.tail().support_radius / s);
    if (!(hi > lo)) return RadialValue::finite(0.0, 0.0);

    auto weight = [&](double t, double om /*1-t^2*/) {
        return std::pow(t, nm - 1.0) * std::pow(om, 0.5 * plane - 1.0) * phi(s * t);
    };

    Quad q;
    if (hi == 1.0) {
        auto integrand = [&](double t, double tc) {
            const double om = (t > 0.5) ? tc * (1.0 + t) : (1.0 - t) * (1.0 + t);
            const double v = weight(t, om);
            return std::isfinite(v) ? v : 0.0;
        };
        q = integrate_finite2(integrand, lo, hi, spec.rel_tol, spec.max_levels);
    } else {
        auto integrand = [&](double t) {
            const double v = weight(t, (1.0 - t) * (1.0 + t));
            return std::isfinite(v) ? v : 0.0;
        };
        q = integrate_finite(integrand, lo, hi, spec.rel_tol, spec.max_levels);
    }
    return RadialValue::finite(c * q.value, c * q.abs_err);
}

}  // namespace

RadialValue dual_radial(const RadialProfile& phi, const Geometry& g, double s,
                        const QuadratureSpec& spec) {
    return dual_of(phi, g.n, g.k, s, spec);
}

RadialValue dual_jk_radial(const RadialProfile& phi, const Geometry& g, double s,
                           const QuadratureSpec& spec) {
    return dual_of(phi, g.n - g.j, g.step(), s, spec);
}

RadialValue radial_weighted_integral(const RadialProfile& f, double r_power, double damp_half,
                                     double kappa, double profile_power,
                                     const QuadratureSpec& spec) {
    spec.validate();
    if (!(profile_power > 0)) throw contract_error("radial_weighted_integral: profile_power > 0");
    const TailDescriptor& tail = f.tail();
    const double pp = profile_power;
    const double L = f.support_lower();

    // kappa = 0 folds the damping into the pure power
    const double power_eff = r_power + (kappa == 0.0 ? 2.0 * damp_half : 0.0);
    const bool damped = kappa != 0.0 && damp_half != 0.0;

    // origin behavior
    if (L == 0.0) {
        const double e0 = pp * f.origin_exponent() + power_eff;
        if (e0 <= -1.0 + kEps)
            return RadialValue::divergent("integrand ~ r^" + std::to_string(e0) +
                                          " is not integrable at the origin");
    }
    // tail behavior
    if (tail.kind == TailDescriptor::Kind::Power) {
        const double einf = pp * tail.exponent + power_eff + (damped ? 2.0 * damp_half : 0.0);
        const double linf = pp * tail.log_exponent;
        if (einf > -1.0 + kEps)
            return RadialValue::divergent("integrand ~ r^" + std::to_string(einf) +
                                          " diverges at infinity");
        if (std::abs(einf + 1.0) <= kEps && linf >= -1.0)
            return RadialValue::divergent("integrand ~ log^" + std::to_string(linf) +
                                          "(r)/r diverges at infinity");
    } else if (tail.kind == TailDescriptor::Kind::Gaussian) {
        // superexponential decay beats every polynomial weight
    }

    auto integrand = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double fv = f(r);
        if (fv == 0.0) return 0.0;
        double v = std::pow(fv, pp) * std::pow(r, power_eff);
        if (damped) v *= std::pow(kappa + r * r, damp_half);
        return std::isfinite(v) ? v : 0.0;
    };

    if (tail.kind == TailDescriptor::Kind::CompactSupport) {
        if (tail.support_radius <= L) return RadialValue::finite(0.0, 0.0);
        const Quad q = integrate_with_knots(integrand, L, tail.support_radius, {}, spec.rel_tol,
                                            spec.max_levels);
        return RadialValue::finite(q.value, q.abs_err);
    }

    if (tail.kind == TailDescriptor::Kind::Power && tail.exact && tail.log_exponent == 0.0 &&
        !damped) {
        const double r1 = std::max(tail.exact_from, L);
        const double einf = pp * tail.exponent + power_eff;
        Quad q{0.0, 0.0};
        if (r1 > L) q = integrate_with_knots(integrand, L, r1, {}, spec.rel_tol, spec.max_levels);
        const double tail_val = std::pow(tail.coeff, pp) * std::pow(r1, einf + 1.0) / (-(einf + 1.0));
        return RadialValue::finite(q.value + tail_val, q.abs_err);
    }

    const Quad q = integrate_with_knots(integrand, L, std::numeric_limits<double>::infinity(),
                                        {tail.exact_from}, spec.rel_tol, spec.max_levels);
    const double scale = std::max(std::abs(q.value), 1e-300);
    if (q.abs_err > 1e-3 * scale)
        throw accuracy_error("weighted radial integral did not converge");
    return RadialValue::finite(q.value, q.abs_err);
}

namespace {

RadialValue ess_sup_norm(const RadialProfile& f, double w) {
    const TailDescriptor& tail = f.tail();
    // unbounded ends first
    if (f.support_lower() == 0.0 && w + f.origin_exponent() < 0.0)
        return RadialValue::divergent("r^w f(r) unbounded near the origin");
    double hi = 1e8;
    if (tail.kind == TailDescriptor::Kind::CompactSupport) {
        hi = tail.support_radius;
        if (hi <= 0.0) return RadialValue::finite(0.0, 0.0, true);
    } else if (tail.kind == TailDescriptor::Kind::Power) {
        const double e = w + tail.exponent;
        if (e > 0.0 || (e == 0.0 && tail.log_exponent > 0.0))
            return RadialValue::divergent("r^w f(r) unbounded at infinity");
    } else {
        hi = 100.0;  // Gaussian decay: sup is attained well inside
    }
    const double lo = std::max(f.support_lower(), 1e-8);
    if (!(hi > lo)) return RadialValue::finite(0.0, 0.0, true);
    // geometric grid, 1e4 points per decade; flagged approximate
    const double decades = std::log10(hi / lo);
    const long npts = std::max(16L, static_cast<long>(decades * 10000.0));
    double best = 0.0;
    for (long i = 0; i <= npts; ++i) {
        const double r = lo * std::pow(hi / lo, static_cast<double>(i) / npts);
        best = std::max(best, std::pow(r, w) * std::abs(f(r)));
    }
    return RadialValue::finite(best, 0.0, true);
}

}  // namespace

RadialValue weighted_norm_radial_grassmann(const RadialProfile& f, int n, int plane_dim,
                                           const Exponent& p, double w,
                                           const QuadratureSpec& spec) {
    if (plane_dim < 0 || plane_dim >= n) throw contract_error("norm: need 0 <= plane_dim < n");
    if (p.is_infinite()) return ess_sup_norm(f, w);
    const double pv = p.value();
    const RadialValue i = radial_weighted_integral(f, n - plane_dim - 1 + w * pv, 0.0, 0.0, pv, spec);
    if (i.is_divergent()) return i;
    const double sig = unit_sphere_area(n - plane_dim);
    const double base = sig * i.value();
    if (base <= 0.0) return RadialValue::finite(0.0, 0.0);
    const double v = std::pow(base, 1.0 / pv);
    const double err = v / (pv * base) * sig * i.abs_err();
    return RadialValue::finite(v, err);
}

RadialValue weighted_norm_radial_source(const RadialProfile& f, int n, const Exponent& p,
                                        double mu, const QuadratureSpec& spec) {
    return weighted_norm_radial_grassmann(f, n, 0, p, mu, spec);
}

RadialValue weighted_norm_radial_target(const RadialProfile& phi, const Geometry& g,
                                        const Exponent& p, double nu, const QuadratureSpec& spec) {
    return weighted_norm_radial_grassmann(phi, g.n, g.k, p, nu, spec);
}

RadialProfile transformed_profile(const RadialProfile& f, int m, const QuadratureSpec& spec) {
    auto base = std::make_shared<RadialProfile>(f);
    const QuadratureSpec inner = spec;
    auto eval = [base, m, inner](double t) {
        const RadialValue v = abel_of(*base, m, t, inner);
        return v.is_divergent() ? std::numeric_limits<double>::infinity() : v.value();
    };

    TailDescriptor tail;
    const TailDescriptor& ft = f.tail();
    switch (ft.kind) {
        case TailDescriptor::Kind::Gaussian:
            tail = TailDescriptor::gaussian();
            break;
        case TailDescriptor::Kind::CompactSupport:
            tail = TailDescriptor::compact(ft.support_radius);
            break;
        case TailDescriptor::Kind::Power: {
            const double a = ft.exponent;
            double coeff = 1.0;
            if (a + m < 0.0)
                coeff = ft.coeff * unit_sphere_area(m) * 0.5 *
                        std::exp(std::lgamma(-0.5 * (a + m)) + std::lgamma(0.5 * m) -
                                 std::lgamma(-0.5 * a));
            if (ft.exact && ft.log_exponent == 0.0 && a + m < 0.0 &&
                f.support_lower() <= ft.exact_from)
                tail = TailDescriptor::exact_power(a + m, coeff, ft.exact_from);
            else
                tail = TailDescriptor::power(a + m, ft.log_exponent, coeff);
            break;
        }
    }

    return RadialProfile::custom("abel" + std::to_string(m) + "[" + f.family() + "]", eval, 0.0,
                                 0.0, tail, f.params(), /*check_tail=*/false);
}

}  // namespace kplane
