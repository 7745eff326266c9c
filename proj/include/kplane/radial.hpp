#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "kplane/constants.hpp"
#include "kplane/geometry.hpp"

namespace kplane {

// Behavior of a radial profile as r -> infinity. Drives convergence checks and
// tail completion; sanity-checked against the evaluator at construction.
struct TailDescriptor {
    enum class Kind { Power, CompactSupport, Gaussian };

    Kind kind = Kind::Gaussian;
    double exponent = 0.0;       // Power: f ~ coeff * r^exponent * log^log_exponent(r)
    double log_exponent = 0.0;
    double coeff = 1.0;
    bool exact = false;          // f == coeff * r^exponent exactly for r >= exact_from
    double exact_from = 0.0;
    double support_radius = 0.0; // CompactSupport: f == 0 beyond this

    static TailDescriptor power(double a, double log_a = 0.0, double c = 1.0);
    static TailDescriptor exact_power(double a, double c, double from);
    static TailDescriptor compact(double radius);
    static TailDescriptor gaussian();
};

// Radial function on R^n or on the affine Grassmannian (a function of the
// plane distance), with the singularity/tail metadata the quadrature needs.
class RadialProfile {
public:
    RadialProfile() = default;

    // check_tail verifies the metadata against the evaluator on [1e3, 1e6]
    // (factor-2 agreement); pass false when the metadata is derived
    // analytically and the evaluator is itself a quadrature.
    static RadialProfile custom(std::string family, std::function<double(double)> eval,
                                double origin_exponent, double support_lower, TailDescriptor tail,
                                std::map<std::string, double> params = {}, bool check_tail = true);

    // f0(r) = exp(-r^2)
    static RadialProfile gaussian();
    // f0 = 0 below r0, f0(r) = r^a above (exact power tail)
    static RadialProfile truncated_power(double a, double r0);
    // the extremizer family of the sharp-norm proof: r^{-mu-n/p-eps} beyond 1
    static RadialProfile extremizer(double mu, int n, double p, double eps);
    // j->k variant: r^{-mu-(n-j)/p-eps} beyond 1
    static RadialProfile extremizer_jk(double mu, int n, int j, double p, double eps);
    // boundary counterexample r^{-mu} (2+r)^{-n/p} / log^{1/p+delta}(2+r)
    static RadialProfile counterexample(double mu, int n, double p, double delta);
    // endpoint family at p = 1: zero below 10, r^{k-delta} beyond
    static RadialProfile endpoint_p1(int k, double delta);
    // j->k boundary counterexample |z|^{-mu} (2+|z|)^{(j-n)/p} / log^{1/p+delta}(2+|z|)
    static RadialProfile jk_counterexample(double mu, int n, int j, double p, double delta);
    // r^alpha (1+r^2)^{-beta/2}
    static RadialProfile power_tail(double alpha, double beta);
    // smooth bump supported on [0, 1]
    static RadialProfile bump();
    // smooth bump supported on [r0, r1]
    static RadialProfile bump_shifted(double r0, double r1);
    // indicator of [0, R]
    static RadialProfile indicator(double radius);
    static RadialProfile zero();

    // dilate: r -> f(lambda r)
    RadialProfile scaled(double lambda) const;

    double operator()(double r) const { return eval_(r); }

    double origin_exponent() const { return origin_exponent_; }
    double support_lower() const { return support_lower_; }
    const TailDescriptor& tail() const { return tail_; }
    const std::string& family() const { return family_; }
    const std::map<std::string, double>& params() const { return params_; }

private:
    std::function<double(double)> eval_ = [](double) { return 0.0; };
    double origin_exponent_ = 0.0;
    double support_lower_ = 0.0;
    TailDescriptor tail_ = TailDescriptor::compact(0.0);
    std::string family_ = "zero";
    std::map<std::string, double> params_;
};

// Named-family construction used by the CLI/config layer; geometry and p fill
// in the family parameters the spec ties to the ambient setting.
RadialProfile make_profile(const std::string& family, const std::map<std::string, double>& params,
                           const Geometry& g, const Exponent& p);

// Finite value with an error estimate, or a positively-asserted divergence.
// Divergence is a value here, not an exception, so experiments can assert it.
class RadialValue {
public:
    static RadialValue finite(double v, double err, bool approximate = false) {
        RadialValue x;
        x.value_ = v;
        x.abs_err_ = err;
        x.approximate_ = approximate;
        return x;
    }
    static RadialValue divergent(std::string reason) {
        RadialValue x;
        x.divergent_ = true;
        x.reason_ = std::move(reason);
        return x;
    }

    bool is_divergent() const { return divergent_; }
    double value() const {
        if (divergent_) throw contract_error("value() on divergent result: " + reason_);
        return value_;
    }
    double abs_err() const { return abs_err_; }
    bool approximate() const { return approximate_; }
    const std::string& reason() const { return reason_; }
    const std::string& note() const { return note_; }
    RadialValue with_note(std::string n) const {
        RadialValue x = *this;
        x.note_ = std::move(n);
        return x;
    }

private:
    double value_ = 0.0;
    double abs_err_ = 0.0;
    bool divergent_ = false;
    bool approximate_ = false;
    std::string reason_;
    std::string note_;
};

// (R_k f)(tau) for radial f, as a function of t = |tau|:
//   sigma_{k-1} int_t^inf f0(r) (r^2-t^2)^{k/2-1} r dr
// computed after the substitution r = sqrt(t^2+s^2), which removes the
// endpoint singularity for every k >= 1. Exact power tails are completed in
// closed form (incomplete Beta).
RadialValue kplane_radial(const RadialProfile& f, const Geometry& g, double t,
                          const QuadratureSpec& spec);

// j->k transform of a radial function on the affine j-Grassmannian: same Abel
// integral with k replaced by k - j.
RadialValue jk_radial(const RadialProfile& f, const Geometry& g, double t,
                      const QuadratureSpec& spec);

// Raw Abel form sigma_{m-1} int_{t}^{R} f0(r)(r^2-t^2)^{m/2-1} r dr without the
// substitution (upper limit may be finite: divergence demos use the partials).
RadialValue abel_radial_raw(const RadialProfile& f, int m, double t, double upper,
                            const QuadratureSpec& spec);

// (R_k^* phi)(x) for phi radial in |tau|, as a function of s = |x|: the
// projection-length law of a Haar-random k-plane gives the Beta average
//   [2 Gamma(n/2) / (Gamma(k/2) Gamma((n-k)/2))]
//     int_0^1 phi0(s t) t^{n-k-1} (1-t^2)^{k/2-1} dt.
RadialValue dual_radial(const RadialProfile& phi, const Geometry& g, double s,
                        const QuadratureSpec& spec);

// Dual j->k transform of a radial function; (n,k) -> (n-j, k-j) in the weight.
RadialValue dual_jk_radial(const RadialProfile& phi, const Geometry& g, double s,
                           const QuadratureSpec& spec);

// || f ||_{p,mu} on R^n for radial f:
//   (sigma_{n-1} int_0^inf r^{n-1+mu p} f0^p(r) dr)^{1/p}
// p = inf is approximated by a sup over a geometric grid and flagged.
RadialValue weighted_norm_radial_source(const RadialProfile& f, int n, const Exponent& p,
                                        double mu, const QuadratureSpec& spec);

// || phi ||_{p,nu} on the affine k-Grassmannian for phi radial in |tau|:
// radial power n-k-1 in place of n-1.
RadialValue weighted_norm_radial_target(const RadialProfile& phi, const Geometry& g,
                                        const Exponent& p, double nu, const QuadratureSpec& spec);

// Shared form: radial power n-d-1 (d = 0 recovers the source norm, d = k the
// target norm, d = j the j-Grassmannian norm).
RadialValue weighted_norm_radial_grassmann(const RadialProfile& f, int n, int plane_dim,
                                           const Exponent& p, double w,
                                           const QuadratureSpec& spec);

// int_0^inf f(r)^profile_power r^{r_power} (kappa + r^2)^{damp_half} dr with
// divergence detection from the profile metadata. Building block for the
// identity checks and the norms above (no sphere-area factor).
RadialValue radial_weighted_integral(const RadialProfile& f, double r_power, double damp_half,
                                     double kappa, double profile_power,
                                     const QuadratureSpec& spec);

// R_{k or k-j} f as a RadialProfile with derived tail metadata, so image norms
// can complete their own tails analytically. m is the Abel kernel dimension.
RadialProfile transformed_profile(const RadialProfile& f, int m, const QuadratureSpec& spec);

}  // namespace kplane
