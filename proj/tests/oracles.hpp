// oracles.hpp
// Test-only reference implementations. Nothing here calls into the sparse
// stepping code it is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qcawalk/qcawalk.hpp"

namespace qcawalk::testing {

/// Dense square matrix over sites [lo, hi].
struct DenseWindow {
    Site lo = 0;
    Site hi = 0;
    std::vector<Complex> data;

    DenseWindow(Site lo_, Site hi_)
        : lo(lo_), hi(hi_), data(static_cast<std::size_t>((hi_ - lo_ + 1) * (hi_ - lo_ + 1))) {}

    std::size_t dim() const { return static_cast<std::size_t>(hi - lo + 1); }
    bool inside(Site s) const { return s >= lo && s <= hi; }

    Complex& operator()(Site r, Site c) {
        return data[static_cast<std::size_t>(r - lo) * dim() + static_cast<std::size_t>(c - lo)];
    }

    std::vector<Complex> apply(const std::vector<Complex>& v) const {
        std::vector<Complex> out(dim());
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c) out[r] += data[r * dim() + c] * v[c];
        return out;
    }
};

/// The banded QCA matrix, gathered row by row from the displayed pattern.
inline DenseWindow dense_qca_matrix(const QcaParams& p, Site lo, Site hi) {
    DenseWindow m(lo, hi);
    for (Site r = lo; r <= hi; ++r) {
        const bool even = (r % 2 + 2) % 2 == 0;
        const Site first = even ? r - 1 : r - 2;  // column 2k-1
        const Complex row[4] = {even ? p.a() : p.d(), even ? p.b() : p.c(), even ? p.c() : p.b(),
                                even ? p.d() : p.a()};
        for (int i = 0; i < 4; ++i)
            if (m.inside(first + i)) m(r, first + i) = row[i];
    }
    return m;
}

inline std::vector<Complex> to_dense(const AmplitudeField& f, Site lo, Site hi) {
    std::vector<Complex> v(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [s, z] : f) v.at(static_cast<std::size_t>(s - lo)) = z;
    return v;
}

enum class BlockLayout {
    Plain,         // row k: Q at k-1, P at k+1
    GeneralizedA,  // row k: P at k-1, T at k, Q at k+1
    GeneralizedB,  // row k: Q at k-1, T at k, P at k+1
};

/// Block-tridiagonal walk operator on walk sites [lo, hi] (2x2 blocks),
/// indices 2(k - lo) + component.
inline DenseWindow dense_walk_matrix(const Mat2& P, const Mat2& T, const Mat2& Q, BlockLayout layout, Site lo,
                                     Site hi) {
    DenseWindow m(0, 2 * (hi - lo) + 1);
    auto put = [&](Site row_site, Site col_site, const Mat2& block) {
        if (col_site < lo || col_site > hi) return;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(2 * (row_site - lo) + i, 2 * (col_site - lo) + j) = block(i, j);
    };
    for (Site k = lo; k <= hi; ++k) {
        switch (layout) {
        case BlockLayout::Plain:
            put(k, k - 1, Q);
            put(k, k + 1, P);
            break;
        case BlockLayout::GeneralizedA:
            put(k, k - 1, P);
            put(k, k, T);
            put(k, k + 1, Q);
            break;
        case BlockLayout::GeneralizedB:
            put(k, k - 1, Q);
            put(k, k, T);
            put(k, k + 1, P);
            break;
        }
    }
    return m;
}

inline std::vector<Complex> to_dense(const WalkState& s, Site lo, Site hi) {
    std::vector<Complex> v(static_cast<std::size_t>(2 * (hi - lo + 1)));
    for (const auto& [k, vec] : s) {
        v.at(static_cast<std::size_t>(2 * (k - lo))) = vec[0];
        v.at(static_cast<std::size_t>(2 * (k - lo) + 1)) = vec[1];
    }
    return v;
}

inline double max_abs_difference(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

/// Closed-form CDF of the limit law: 1/2 + arctan(x / sqrt(4 - 2x^2)) / pi.
inline double closed_form_limit_cdf(double x) {
    if (x <= -std::numbers::sqrt2) return 0.0;
    if (x >= std::numbers::sqrt2) return 1.0;
    return 0.5 + std::atan(x / std::sqrt(4.0 - 2.0 * x * x)) / std::numbers::pi;
}

// --- Generators ---------------------------------------------------------------

using Rng = std::mt19937_64;

inline double uniform_angle(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    double v = u(rng);
    return v >= kTwoPi ? 0.0 : v;
}

inline AngleTriple random_angles(Rng& rng) { return {uniform_angle(rng), uniform_angle(rng), uniform_angle(rng)}; }

inline QubitState random_qubit(Rng& rng) {
    std::normal_distribution<double> g;
    Complex alpha(g(rng), g(rng)), beta(g(rng), g(rng));
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    return {alpha / n, beta / n};
}

/// Unit-norm field with between 1 and max_support occupied sites in [-span, span].
inline AmplitudeField random_unit_field(Rng& rng, int max_support = 20, Site span = 15) {
    std::uniform_int_distribution<int> count(1, max_support);
    std::uniform_int_distribution<Site> site(-span, span);
    std::normal_distribution<double> g;
    AmplitudeField::container entries;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) entries[site(rng)] = Complex(g(rng), g(rng));
    double norm = 0.0;
    for (const auto& [s, z] : entries) norm += std::norm(z);
    for (auto& [s, z] : entries) z /= std::sqrt(norm);
    return AmplitudeField(std::move(entries));
}

inline Complex random_phase(Rng& rng) { return std::polar(1.0, uniform_angle(rng)); }

} // namespace qcawalk::testing
