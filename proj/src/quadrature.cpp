#include "kplane/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "kplane/constants.hpp"

namespace kplane {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

thread_local std::map<int, boost::math::quadrature::tanh_sinh<double>> de_cache;

boost::math::quadrature::tanh_sinh<double>& de_rule(int max_levels) {
    auto it = de_cache.find(max_levels);
    if (it == de_cache.end())
        it = de_cache.emplace(max_levels,
                              boost::math::quadrature::tanh_sinh<double>(max_levels)).first;
    return it->second;
}

}  // namespace

Quad integrate_finite2(const std::function<double(double, double)>& f, double a, double b,
                       double rel_tol, int max_levels) {
    if (!(b > a)) return {0.0, 0.0};
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    double v;
    try {
        v = de_rule(max_levels).integrate(f, a, b, rel_tol, &err, &l1, &levels);
    } catch (const std::exception& e) {
        throw accuracy_error(std::string("tanh-sinh integration failed: ") + e.what());
    }
    return {v, err};
}

Quad integrate_finite(const std::function<double(double)>& f, double a, double b,
                      double rel_tol, int max_levels) {
    return integrate_finite2([&f](double x, double) { return f(x); }, a, b, rel_tol, max_levels);
}

Quad integrate_semi_infinite(const std::function<double(double)>& f, double a,
                             double rel_tol, int max_levels) {
    // r = a + t/(1-t); the two-argument form keeps 1-t exact near t = 1.
    auto g = [&f, a](double t, double tc) {
        const double one_minus_t = (t > 0.5) ? tc : 1.0 - t;
        const double r = a + t / one_minus_t;
        if (!std::isfinite(r)) return 0.0;
        const double fr = f(r);
        if (fr == 0.0) return 0.0;
        const double v = (fr / one_minus_t) / one_minus_t;
        // Far-tail under/overflow guard: integrable tails have already decayed
        // to nothing by the time doubles give out.
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate_finite2(g, 0.0, 1.0, rel_tol, max_levels);
}

Quad integrate_with_knots(const std::function<double(double)>& f, double a, double b,
                          std::vector<double> knots, double rel_tol, int max_levels) {
    knots.push_back(a);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::vector<double> cuts;
    for (double x : knots)
        if (x >= a && x < b && (cuts.empty() || x > cuts.back() * (1.0 + 1e-14) + 1e-300))
            cuts.push_back(x);
    if (cuts.empty() || cuts.front() > a) cuts.insert(cuts.begin(), a);

    Quad total;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = (i + 1 < cuts.size()) ? cuts[i + 1] : b;
        Quad piece;
        if (std::isinf(hi))
            piece = integrate_semi_infinite(f, lo, rel_tol, max_levels);
        else
            piece = integrate_finite(f, lo, hi, rel_tol, max_levels);
        total.value += piece.value;
        total.abs_err += piece.abs_err;
    }
    return total;
}

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    // Newton iteration on the Legendre polynomial, Chebyshev initial guesses.
    std::vector<std::pair<double, double>> nw(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nw[i] = {-x, w};
        nw[order - 1 - i] = {x, w};
    }
    return cache.emplace(order, std::move(nw)).first->second;
}

namespace {

// Recursive product-angle rule: integral over S^{d-1} with the decomposition
// sigma(theta) = (omega sin psi, cos psi), dsigma = sin^{d-2}(psi) dpsi dsigma(omega).
Quad sphere_product(int d, const std::function<double(const Eigen::VectorXd&)>& f, int order) {
    if (d == 1) {
        Eigen::VectorXd p(1);
        p << 1.0;
        const double a = f(p);
        p << -1.0;
        return {a + f(p), 0.0};
    }
    if (d == 2) {
        // Trapezoid on the circle: spectrally accurate for smooth integrands.
        const int m = std::max(4, 2 * order);
        double s = 0.0;
        Eigen::VectorXd p(2);
        for (int i = 0; i < m; ++i) {
            const double phi = 2.0 * kPi * i / m;
            p << std::cos(phi), std::sin(phi);
            s += f(p);
        }
        return {s * 2.0 * kPi / m, 0.0};
    }
    // d >= 3: Gauss-Legendre in psi against sin^{d-2}(psi), recurse on S^{d-2}.
    const auto& gl = gauss_legendre(order);
    Quad total;
    for (const auto& [x, w] : gl) {
        const double psi = 0.5 * kPi * (x + 1.0);  // psi in (0, pi)
        const double sp = std::sin(psi);
        const double cp = std::cos(psi);
        auto section = [&](const Eigen::VectorXd& omega) {
            Eigen::VectorXd p(d);
            p.head(d - 1) = sp * omega;
            p(d - 1) = cp;
            return f(p);
        };
        Quad inner = sphere_product(d - 1, section, order);
        total.value += w * 0.5 * kPi * std::pow(sp, d - 2) * inner.value;
        total.abs_err += w * 0.5 * kPi * std::pow(sp, d - 2) * inner.abs_err;
    }
    return total;
}

}  // namespace

Quad sphere_integrate(int d, const std::function<double(const Eigen::VectorXd&)>& f, int order,
                      int mc_samples, RngStream rng) {
    if (d < 1) throw contract_error("sphere_integrate: need d >= 1");
    if (d <= 4) return sphere_product(d, f, order);

    // High dimensions: plain Monte Carlo against the normalized measure.
    const double area = unit_sphere_area(d);
    double sum = 0.0, sum2 = 0.0;
    Eigen::VectorXd z(d);
    for (int i = 0; i < mc_samples; ++i) {
        double norm2 = 0.0;
        do {
            for (int c = 0; c < d; ++c) z(c) = rng.normal();
            norm2 = z.squaredNorm();
        } while (norm2 < 1e-300);
        z /= std::sqrt(norm2);
        const double v = f(z);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / mc_samples;
    const double var = std::max(0.0, sum2 / mc_samples - mean * mean);
    return {area * mean, area * std::sqrt(var / mc_samples)};
}

}  // namespace kplane
