#pragma once

#include <optional>
#include <string>

#include "kplane/errors.hpp"

namespace kplane {

// Dimension triple (n, k, j): k-planes in R^n, optionally refined by a
// sub-plane dimension j for the j-plane to k-plane transform. j = 0 is the
// plain k-plane setting.
struct Geometry {
    int n;
    int k;
    int j;

    Geometry(int n_, int k_, int j_ = 0);

    int step() const { return k - j; }       // fiber dimension of the nested transform
    int fiber_dim() const { return n - k; }  // dimension of the offset space xi^perp

    bool operator==(const Geometry&) const = default;
};

// Lebesgue exponent p in [1, inf]. Infinity is a dedicated state, never a
// float: 1/p and 1/p' are substituted symbolically so p = inf cannot corrupt
// exponent arithmetic.
class Exponent {
public:
    explicit Exponent(double p);
    static Exponent infinity();

    bool is_infinite() const { return infinite_; }
    double value() const;  // throws contract_error when infinite
    double inv() const { return infinite_ ? 0.0 : 1.0 / p_; }
    double inv_conj() const { return 1.0 - inv(); }  // 1/p'
    Exponent conjugate() const;
    std::string str() const;  // "inf" or a numeric literal

    static Exponent parse(const std::string& s);

    bool operator==(const Exponent& o) const {
        return infinite_ == o.infinite_ && (infinite_ || p_ == o.p_);
    }

private:
    Exponent() : p_(0), infinite_(true) {}
    double p_;
    bool infinite_;
};

enum class Setting { ForwardK, ForwardJK, DualK, DualJK };

const char* to_string(Setting s);
Setting setting_from_string(const std::string& s);

// nu forced by the scaling identity of the given setting:
//   forward k:    nu = mu - k/p'
//   forward j->k: nu = mu - (k-j)/p'
//   dual k:       nu = mu - k/p
//   dual j->k:    nu = mu - (k-j)/p
double forced_nu(Setting s, const Geometry& g, const Exponent& p, double mu);

// (p, p', mu, nu) with nu tied to mu by the scaling identity of the setting.
struct ExponentProfile {
    Exponent p;
    double mu;
    double nu;

    ExponentProfile(Setting s, const Geometry& g, Exponent p_, double mu_);

    // Explicit-nu constructor; throws contract_error when nu is inconsistent
    // with the scaling identity.
    static ExponentProfile with_nu(Setting s, const Geometry& g, Exponent p_, double mu_,
                                   double nu_);
};

// ln Gamma(x) for x > 0. All Gamma quotients below are formed in log space
// and exponentiated last.
double log_gamma(double x);

// sigma_{d-1} = 2 pi^{d/2} / Gamma(d/2), the area of S^{d-1} in R^d.
double unit_sphere_area(int d);
double log_unit_sphere_area(int d);

// A closed-form constant that is either finite or divergent (parameter sitting
// exactly on a Gamma pole, or pole proximity overflowing the exponential).
// Distinct from admissibility_error, which is thrown for parameters strictly
// outside the admissible region.
class ConstantValue {
public:
    static ConstantValue finite(double v) { return ConstantValue(v, false, {}); }
    static ConstantValue divergent(std::string reason) {
        return ConstantValue(0.0, true, std::move(reason));
    }

    bool is_divergent() const { return divergent_; }
    double value() const {
        if (divergent_) throw contract_error("value() on divergent constant: " + reason_);
        return value_;
    }
    const std::string& reason() const { return reason_; }

private:
    ConstantValue(double v, bool d, std::string r)
        : value_(v), divergent_(d), reason_(std::move(r)) {}
    double value_;
    bool divergent_;
    std::string reason_;
};

// lambda_mu = Gamma((n-k+mu)/2) Gamma(n/2) / (Gamma((n+mu)/2) Gamma((n-k)/2)),
// mu > k - n.
ConstantValue lambda_mu(const Geometry& g, double mu);

// lambda~_mu = pi^{k/2} Gamma(-mu/2) / Gamma((k-mu)/2), mu < 0.
ConstantValue lambda_mu_dual(int k, double mu);

// lambda_{j,mu} = Gamma((n-k+mu)/2) Gamma((n-j)/2) / (Gamma((n+mu-j)/2) Gamma((n-k)/2)).
// At j = 0 this is lambda_mu (same code path).
ConstantValue lambda_jk(const Geometry& g, double mu);

// lambda~_{j,mu} = pi^{(k-j)/2} Gamma(-mu/2) / Gamma((k-j-mu)/2), mu < 0.
ConstantValue lambda_jk_dual(const Geometry& g, double mu);

// ||R_k|| = pi^{k/2} (sigma_{n-k-1}/sigma_{n-1})^{1/p}
//           Gamma((mu+n/p-k)/2) / Gamma((mu+n/p)/2),   mu > k - n/p.
ConstantValue sharp_norm_rk(const Geometry& g, const ExponentProfile& e);

// ||R_{j,k}|| = pi^{(k-j)/2} (sigma_{n-k-1}/sigma_{n-j-1})^{1/p}
//               Gamma((mu+n/p-k+j/p')/2) / Gamma((mu+n/p-j/p)/2),
//               mu > k - n/p - j/p'.  Reduces to ||R_k|| at j = 0.
ConstantValue sharp_norm_rjk(const Geometry& g, const ExponentProfile& e);

// ||R_k^*|| = pi^{k/2} (sigma_{n-k-1}/sigma_{n-1})^{1/p'}
//             Gamma(((n-k)/p'-mu)/2) / Gamma((n/p'+k/p-mu)/2),  mu < (n-k)/p'.
ConstantValue sharp_norm_rk_dual(const Geometry& g, const ExponentProfile& e);

// ||R_{j,k}^*|| via the duality route (the forward norm at (p', -nu)):
// pi^{(k-j)/2} (sigma_{n-k-1}/sigma_{n-j-1})^{1/p'}
//   Gamma(((n-k)/p'-mu)/2) / Gamma((n/p'+k/p-j-mu)/2),  mu < (n-k)/p'.
// Reduces to ||R_k^*|| at j = 0.
ConstantValue sharp_norm_rjk_dual(const Geometry& g, const ExponentProfile& e);

// The printed expression for ||R_{j,k}^*|| evaluated verbatim (it reads the
// same as the forward constant at (p, mu)). Only for side-by-side reporting in
// the dual-norm audit; can be divergent or even negative in the dual range.
ConstantValue sharp_norm_rjk_dual_as_printed(const Geometry& g, const Exponent& p, double mu);

// Pure classification of a parameter point: forced nu, boundedness of the
// operator in the open admissible range, and (forward settings) the
// a.e.-finiteness range, which at p = 1 includes the closed endpoint
// mu = k - n even though boundedness fails there.
struct AdmissibilityReport {
    Setting setting;
    double forced_nu = 0;
    bool nu_consistent = true;
    double mu_bound = 0;            // boundary of the boundedness range
    bool bounded = false;           // strictly inside the open range
    bool on_boundary = false;       // mu exactly at the bound
    std::optional<bool> finite_ae;  // forward settings only
    std::string summary;
};

AdmissibilityReport validate_parameters(const Geometry& g, const ExponentProfile& e, Setting s);

}  // namespace kplane
