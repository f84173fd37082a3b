// amplitudes.hpp
// Sparse complex amplitudes and probability masses over the integer lattice.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace qcawalk {

using Complex = std::complex<double>;
using Site = std::int64_t;

/// Entries with modulus below this are dropped after arithmetic.
inline constexpr double kPruneThreshold = 1e-15;
/// Tolerance used for unitarity, normalization and zero tests.
inline constexpr double kTolerance = 1e-12;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Finitely supported map Site -> Complex. Stored entries are never (numerically) zero.
class AmplitudeField {
public:
    using container = std::map<Site, Complex>;
    using const_iterator = container::const_iterator;

    AmplitudeField() = default;

    explicit AmplitudeField(container entries) : entries_(std::move(entries)) {
        std::erase_if(entries_, [](const auto& kv) {
            if (!is_finite(kv.second)) {
                throw std::invalid_argument("AmplitudeField: non-finite amplitude");
            }
            return std::abs(kv.second) < kPruneThreshold;
        });
    }

    AmplitudeField(std::initializer_list<container::value_type> entries)
        : AmplitudeField(container(entries)) {}

    static AmplitudeField delta(Site site, Complex amplitude = 1.0) {
        return AmplitudeField(container{{site, amplitude}});
    }

    Complex at(Site site) const {
        auto it = entries_.find(site);
        return it == entries_.end() ? Complex{} : it->second;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const container& entries() const { return entries_; }
    const_iterator begin() const { return entries_.begin(); }
    const_iterator end() const { return entries_.end(); }

    /// Smallest / largest occupied site. Precondition: !empty().
    Site min_site() const { return entries_.begin()->first; }
    Site max_site() const { return entries_.rbegin()->first; }

private:
    container entries_;
};

/// Finitely supported map Site -> nonnegative mass.
class Distribution {
public:
    using container = std::map<Site, double>;
    using const_iterator = container::const_iterator;

    Distribution() = default;

    explicit Distribution(container masses) : masses_(std::move(masses)) {
        std::erase_if(masses_, [](const auto& kv) {
            if (!std::isfinite(kv.second) || kv.second < 0.0) {
                throw std::invalid_argument("Distribution: masses must be finite and nonnegative");
            }
            return kv.second == 0.0;
        });
    }

    Distribution(std::initializer_list<container::value_type> masses)
        : Distribution(container(masses)) {}

    double mass(Site site) const {
        auto it = masses_.find(site);
        return it == masses_.end() ? 0.0 : it->second;
    }

    double total() const {
        double sum = 0.0;
        for (const auto& [site, m] : masses_) sum += m;
        return sum;
    }

    bool empty() const { return masses_.empty(); }
    std::size_t size() const { return masses_.size(); }
    const container& masses() const { return masses_; }
    const_iterator begin() const { return masses_.begin(); }
    const_iterator end() const { return masses_.end(); }

private:
    container masses_;
};

inline double norm_sq(const AmplitudeField& field) {
    double sum = 0.0;
    for (const auto& [site, z] : field) sum += std::norm(z);
    return sum;
}

inline std::set<Site> support(const AmplitudeField& field) {
    std::set<Site> sites;
    for (const auto& [site, z] : field) sites.insert(site);
    return sites;
}

inline std::set<Site> support(const Distribution& dist) {
    std::set<Site> sites;
    for (const auto& [site, m] : dist) sites.insert(site);
    return sites;
}

/// alpha * f + beta * g, pruned.
inline AmplitudeField superpose(const AmplitudeField& f, const AmplitudeField& g, Complex alpha,
                                Complex beta) {
    AmplitudeField::container out;
    for (const auto& [site, z] : f) out[site] += alpha * z;
    for (const auto& [site, z] : g) out[site] += beta * z;
    return AmplitudeField(std::move(out));
}

inline Distribution to_distribution(const AmplitudeField& field) {
    Distribution::container masses;
    for (const auto& [site, z] : field) masses.emplace_hint(masses.end(), site, std::norm(z));
    return Distribution(std::move(masses));
}

/// max_k |f(k) - g(k)| over the union of supports.
inline double max_abs_difference(const AmplitudeField& f, const AmplitudeField& g) {
    double worst = 0.0;
    for (const auto& [site, z] : f) worst = std::max(worst, std::abs(z - g.at(site)));
    for (const auto& [site, z] : g) worst = std::max(worst, std::abs(z - f.at(site)));
    return worst;
}

inline double max_abs_difference(const Distribution& p, const Distribution& q) {
    double worst = 0.0;
    for (const auto& [site, m] : p) worst = std::max(worst, std::abs(m - q.mass(site)));
    for (const auto& [site, m] : q) worst = std::max(worst, std::abs(m - p.mass(site)));
    return worst;
}

} // namespace qcawalk
