// asymptotics.hpp
// Weak-limit density of the rescaled QCA position X_n / n in the symmetric
// Hadamard-like case, its CDF, and finite-n comparison utilities.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amplitudes.hpp"
#include "qca_core.hpp"

namespace qcawalk {

inline constexpr double kSqrt2 = std::numbers::sqrt2;

/// 4 / (pi (4 - x^2) sqrt(4 - 2x^2)) on (-sqrt2, sqrt2), 0 elsewhere.
inline double limit_density(double x) {
    if (!(std::abs(x) < kSqrt2)) return 0.0;
    const double x2 = x * x;
    return 4.0 / (std::numbers::pi * (4.0 - x2) * std::sqrt(4.0 - 2.0 * x2));
}

namespace detail {

inline double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                              double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance `tol`.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Integral of limit_density from -sqrt2 to x. Substituting x = sqrt2 sin t
/// turns the endpoint singularities into the smooth integrand
/// sqrt2 / (pi (2 - sin^2 t)) on t in [-pi/2, asin(x / sqrt2)].
inline double limit_cdf(double x) {
    if (x <= -kSqrt2) return 0.0;
    if (x >= kSqrt2) x = kSqrt2;
    const double upper = std::asin(std::clamp(x / kSqrt2, -1.0, 1.0));
    const auto integrand = [](double t) {
        const double s = std::sin(t);
        return kSqrt2 / (std::numbers::pi * (2.0 - s * s));
    };
    return std::clamp(adaptive_simpson(integrand, -std::numbers::pi / 2, upper, 1e-13), 0.0, 1.0);
}

/// Point masses at rescaled positions site / n, sorted by position.
struct RescaledSample {
    std::vector<std::pair<double, double>> points;
    int n = 0;

    double total_mass() const {
        double s = 0.0;
        for (const auto& [x, m] : points) s += m;
        return s;
    }

    double mean() const {
        double s = 0.0;
        for (const auto& [x, m] : points) s += x * m;
        return s;
    }
};

inline RescaledSample rescale(const Distribution& dist, int n) {
    if (n < 1) throw std::invalid_argument("rescale: n must be positive");
    RescaledSample sample;
    sample.n = n;
    sample.points.reserve(dist.size());
    for (const auto& [site, m] : dist) sample.points.emplace_back(static_cast<double>(site) / n, m);
    return sample;
}

/// X_n / n for the QCA x^(0:+) distribution.
inline RescaledSample rescaled_qca_sample(const QcaParams& params, const QubitState& qubit, int n) {
    if (n < 1) throw std::invalid_argument("rescaled_qca_sample: n must be positive");
    return rescale(qca_distribution(0, Branch::Plus, qubit, n, params), n);
}

/// sup_x |F_sample(x) - limit_cdf(x)|, evaluated on both sides of every jump.
inline double kolmogorov_distance(const RescaledSample& sample) {
    auto points = sample.points;
    std::sort(points.begin(), points.end());
    double cumulative = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size();) {
        const double x = points[i].first;
        const double below = cumulative;
        for (; i < points.size() && points[i].first == x; ++i) cumulative += points[i].second;
        const double f = limit_cdf(x);
        worst = std::max({worst, std::abs(below - f), std::abs(cumulative - f)});
    }
    return std::min(worst, 1.0);
}

/// max_k |mass(k) - mass(2 center - k)|. Mirror points off the lattice count as mass 0.
inline double symmetry_defect(const Distribution& dist, double center) {
    double worst = 0.0;
    for (const auto& [site, m] : dist) {
        const double mirror = 2.0 * center - static_cast<double>(site);
        const double rounded = std::round(mirror);
        const double mirror_mass =
            std::abs(mirror - rounded) < 1e-9 ? dist.mass(static_cast<Site>(rounded)) : 0.0;
        worst = std::max(worst, std::abs(m - mirror_mass));
    }
    return worst;
}

} // namespace qcawalk
