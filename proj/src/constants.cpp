#include "kplane/constants.hpp"

#include <cmath>
#include <sstream>

namespace kplane {

namespace {

constexpr double kLogPi = 1.1447298858494001741434273513530587;
constexpr double kLog2 = 0.6931471805599453094172321214581766;

// Largest log-value we exponentiate; beyond this the constant is reported as
// divergent (pole proximity) rather than a float infinity.
constexpr double kLogOverflow = 700.0;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// exp(log_scale + lgamma(a) - lgamma(b)) with pole detection at a == 0.
// Both arguments must be >= 0; callers guarantee this by checking the
// admissibility bound first.
ConstantValue gamma_quotient(double log_scale, double a, double b) {
    if (a == 0.0) return ConstantValue::divergent("Gamma pole at the admissibility boundary");
    if (b == 0.0) return ConstantValue::finite(0.0);  // 1/Gamma(0) = 0, not hit in practice
    const double lg = log_scale + std::lgamma(a) - std::lgamma(b);
    if (lg > kLogOverflow)
        return ConstantValue::divergent("Gamma quotient overflows (pole proximity)");
    return ConstantValue::finite(std::exp(lg));
}

}  // namespace

Geometry::Geometry(int n_, int k_, int j_) : n(n_), k(k_), j(j_) {
    if (n < 2) throw contract_error("Geometry: n must be >= 2, got n=" + std::to_string(n));
    if (k < 1 || k > n - 1)
        throw contract_error("Geometry: need 1 <= k <= n-1, got k=" + std::to_string(k) +
                             ", n=" + std::to_string(n));
    if (j < 0 || j >= k)
        throw contract_error("Geometry: need 0 <= j < k, got j=" + std::to_string(j) +
                             ", k=" + std::to_string(k));
}

Exponent::Exponent(double p) : p_(p), infinite_(false) {
    if (!(p >= 1.0) || std::isinf(p))
        throw contract_error("Exponent: p must satisfy 1 <= p < inf (use Exponent::infinity())");
}

Exponent Exponent::infinity() { return Exponent(); }

double Exponent::value() const {
    if (infinite_) throw contract_error("Exponent: value() called on p = inf");
    return p_;
}

Exponent Exponent::conjugate() const {
    if (infinite_) return Exponent(1.0);
    if (p_ == 1.0) return infinity();
    return Exponent(p_ / (p_ - 1.0));
}

std::string Exponent::str() const { return infinite_ ? "inf" : fmt(p_); }

Exponent Exponent::parse(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return infinity();
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw contract_error("Exponent: cannot parse '" + s + "'");
    if (std::isinf(v)) return infinity();
    return Exponent(v);
}

const char* to_string(Setting s) {
    switch (s) {
        case Setting::ForwardK: return "forward-k";
        case Setting::ForwardJK: return "forward-jk";
        case Setting::DualK: return "dual-k";
        case Setting::DualJK: return "dual-jk";
    }
    return "?";
}

Setting setting_from_string(const std::string& s) {
    if (s == "forward-k") return Setting::ForwardK;
    if (s == "forward-jk") return Setting::ForwardJK;
    if (s == "dual-k") return Setting::DualK;
    if (s == "dual-jk") return Setting::DualJK;
    throw contract_error("unknown setting '" + s + "'");
}

double forced_nu(Setting s, const Geometry& g, const Exponent& p, double mu) {
    switch (s) {
        case Setting::ForwardK: return mu - g.k * p.inv_conj();
        case Setting::ForwardJK: return mu - g.step() * p.inv_conj();
        case Setting::DualK: return mu - g.k * p.inv();
        case Setting::DualJK: return mu - g.step() * p.inv();
    }
    return mu;
}

ExponentProfile::ExponentProfile(Setting s, const Geometry& g, Exponent p_, double mu_)
    : p(p_), mu(mu_), nu(forced_nu(s, g, p_, mu_)) {}

ExponentProfile ExponentProfile::with_nu(Setting s, const Geometry& g, Exponent p_, double mu_,
                                         double nu_) {
    const double want = forced_nu(s, g, p_, mu_);
    const double scale = std::max({1.0, std::abs(mu_), std::abs(want)});
    if (std::abs(nu_ - want) > 1e-12 * scale)
        throw contract_error("nu=" + fmt(nu_) + " violates the scaling identity for " +
                             std::string(to_string(s)) + " (forced nu=" + fmt(want) + ")");
    ExponentProfile e(s, g, p_, mu_);
    e.nu = nu_;
    return e;
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw admissibility_error("log_gamma: argument must be positive, got x=" + fmt(x));
    return std::lgamma(x);
}

double log_unit_sphere_area(int d) {
    if (d < 1) throw admissibility_error("unit_sphere_area: need d >= 1, got d=" + std::to_string(d));
    return kLog2 + 0.5 * d * kLogPi - std::lgamma(0.5 * d);
}

double unit_sphere_area(int d) { return std::exp(log_unit_sphere_area(d)); }

ConstantValue lambda_jk(const Geometry& g, double mu) {
    const double bound = static_cast<double>(g.k - g.n);
    if (mu < bound)
        throw admissibility_error("lambda_{j,mu}: requires mu > k - n = " + fmt(bound) +
                                  ", got mu=" + fmt(mu));
    // Gamma((n-k+mu)/2) Gamma((n-j)/2) / (Gamma((n+mu-j)/2) Gamma((n-k)/2))
    const double log_scale = std::lgamma(0.5 * (g.n - g.j)) - std::lgamma(0.5 * (g.n - g.k));
    return gamma_quotient(log_scale, 0.5 * (g.n - g.k + mu), 0.5 * (g.n + mu - g.j));
}

ConstantValue lambda_mu(const Geometry& g, double mu) {
    return lambda_jk(Geometry(g.n, g.k, 0), mu);
}

ConstantValue lambda_jk_dual(const Geometry& g, double mu) {
    if (mu > 0.0)
        throw admissibility_error("lambda~_{j,mu}: requires mu < 0, got mu=" + fmt(mu));
    // pi^{(k-j)/2} Gamma(-mu/2) / Gamma((k-j-mu)/2); the pole at mu = 0 is the
    // boundary case.
    return gamma_quotient(0.5 * g.step() * kLogPi, -0.5 * mu, 0.5 * (g.step() - mu));
}

ConstantValue lambda_mu_dual(int k, double mu) {
    // Geometry(n, k, j) only carries (k - j) into the formula; pick any valid n.
    return lambda_jk_dual(Geometry(k + 1, k, 0), mu);
}

namespace {

void check_nu(const ExponentProfile& e, Setting s, const Geometry& g) {
    const double want = forced_nu(s, g, e.p, e.mu);
    const double scale = std::max({1.0, std::abs(e.mu), std::abs(want)});
    if (std::abs(e.nu - want) > 1e-12 * scale)
        throw contract_error(std::string("scaling identity violated for ") + to_string(s) +
                             ": nu=" + fmt(e.nu) + " but the setting forces nu=" + fmt(want));
}

}  // namespace

ConstantValue sharp_norm_rjk(const Geometry& g, const ExponentProfile& e) {
    check_nu(e, g.j == 0 ? Setting::ForwardK : Setting::ForwardJK, g);
    const double ip = e.p.inv();
    const double ipc = e.p.inv_conj();
    const double bound = g.k - g.n * ip - g.j * ipc;
    if (e.mu < bound)
        throw admissibility_error("||R_{j,k}||: requires mu > k - n/p - j/p' = " + fmt(bound) +
                                  ", got mu=" + fmt(e.mu));
    const double log_scale = 0.5 * g.step() * kLogPi +
                             ip * (log_unit_sphere_area(g.n - g.k) - log_unit_sphere_area(g.n - g.j));
    return gamma_quotient(log_scale, 0.5 * (e.mu + g.n * ip - g.k + g.j * ipc),
                          0.5 * (e.mu + g.n * ip - g.j * ip));
}

ConstantValue sharp_norm_rk(const Geometry& g, const ExponentProfile& e) {
    return sharp_norm_rjk(Geometry(g.n, g.k, 0), e);
}

ConstantValue sharp_norm_rjk_dual(const Geometry& g, const ExponentProfile& e) {
    check_nu(e, g.j == 0 ? Setting::DualK : Setting::DualJK, g);
    const double ip = e.p.inv();
    const double ipc = e.p.inv_conj();
    const double bound = (g.n - g.k) * ipc;
    if (e.mu > bound)
        throw admissibility_error("||R_{j,k}^*||: requires mu < (n-k)/p' = " + fmt(bound) +
                                  ", got mu=" + fmt(e.mu));
    const double log_scale = 0.5 * g.step() * kLogPi +
                             ipc * (log_unit_sphere_area(g.n - g.k) - log_unit_sphere_area(g.n - g.j));
    return gamma_quotient(log_scale, 0.5 * ((g.n - g.k) * ipc - e.mu),
                          0.5 * (g.n * ipc + g.k * ip - g.j - e.mu));
}

ConstantValue sharp_norm_rk_dual(const Geometry& g, const ExponentProfile& e) {
    return sharp_norm_rjk_dual(Geometry(g.n, g.k, 0), e);
}

ConstantValue sharp_norm_rjk_dual_as_printed(const Geometry& g, const Exponent& p, double mu) {
    const double ip = p.inv();
    const double ipc = p.inv_conj();
    const double a = 0.5 * (mu + g.n * ip - g.k + g.j * ipc);
    const double b = 0.5 * (mu + g.n * ip - g.j * ip);
    // Verbatim evaluation: Gamma at negative non-integers is legitimate here,
    // so go through tgamma instead of the log-space quotient.
    auto is_pole = [](double x) {
        return x <= 0.0 && std::abs(x - std::round(x)) < 1e-12;
    };
    if (is_pole(a) || is_pole(b))
        return ConstantValue::divergent("printed expression hits a Gamma pole at these parameters");
    const double scale = std::exp(0.5 * g.step() * kLogPi +
                                  ip * (log_unit_sphere_area(g.n - g.k) -
                                        log_unit_sphere_area(g.n - g.j)));
    const double v = scale * std::tgamma(a) / std::tgamma(b);
    if (!std::isfinite(v)) return ConstantValue::divergent("printed expression overflows");
    return ConstantValue::finite(v);
}

AdmissibilityReport validate_parameters(const Geometry& g, const ExponentProfile& e, Setting s) {
    AdmissibilityReport r;
    r.setting = s;
    r.forced_nu = forced_nu(s, g, e.p, e.mu);
    {
        const double scale = std::max({1.0, std::abs(e.mu), std::abs(r.forced_nu)});
        r.nu_consistent = std::abs(e.nu - r.forced_nu) <= 1e-12 * scale;
    }
    const double ip = e.p.inv();
    const double ipc = e.p.inv_conj();
    const bool forward = (s == Setting::ForwardK || s == Setting::ForwardJK);
    const int j = (s == Setting::ForwardK || s == Setting::DualK) ? 0 : g.j;

    if (forward) {
        r.mu_bound = g.k - g.n * ip - j * ipc;
        r.bounded = e.mu > r.mu_bound;
        r.on_boundary = e.mu == r.mu_bound;
        // Lemma on a.e. finiteness: open bound for 1 < p <= inf, closed
        // mu >= k - n at p = 1.
        if (!e.p.is_infinite() && e.p.value() == 1.0)
            r.finite_ae = e.mu >= static_cast<double>(g.k - g.n);
        else
            r.finite_ae = e.mu > r.mu_bound;
        // p = 1 boundedness fails at the closed endpoint even though the
        // transform stays a.e. finite there.
    } else {
        r.mu_bound = (g.n - g.k) * ipc;
        r.bounded = e.mu < r.mu_bound;
        r.on_boundary = e.mu == r.mu_bound;
        r.finite_ae = std::nullopt;
    }

    std::ostringstream os;
    os << to_string(s) << ": nu=" << fmt(r.forced_nu);
    if (!r.nu_consistent) os << " (supplied nu inconsistent)";
    os << (r.bounded ? ", bounded" : (r.on_boundary ? ", boundary (not bounded)" : ", NOT bounded"));
    if (r.finite_ae.has_value()) os << (*r.finite_ae ? ", finite a.e." : ", not finite a.e.");
    r.summary = os.str();
    return r;
}

}  // namespace kplane
