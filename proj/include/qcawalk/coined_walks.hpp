// coined_walks.hpp
// Coined quantum walks on the line: plain A/B-type walks driven by a 2x2 coin,
// and generalized walks with an extra stay-put block T.

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "amplitudes.hpp"
#include "mat2.hpp"
#include "qca_core.hpp"

namespace qcawalk {

enum class Family { A, B };

constexpr std::string_view to_string(Family f) { return f == Family::A ? "A" : "B"; }

/// Which chirality is stored in the upper component of a site vector.
enum class ChiralityOrder { LUpper, RUpper };

/// Which neighbour the P block reads from. Plain walks and generalized B-type
/// walks use P on site k+1; the generalized A-type layout puts P on site k-1.
enum class Orientation { PFromRight, PFromLeft };

/// 2x2 unitary coin [[a', b'], [c', d']].
class CoinMatrix {
public:
    explicit CoinMatrix(const Mat2& u) : u_(u) {
        if (!is_finite(u(0, 0)) || !is_finite(u(0, 1)) || !is_finite(u(1, 0)) || !is_finite(u(1, 1))) {
            throw std::invalid_argument("CoinMatrix: non-finite entry");
        }
        if (unitarity_defect() > kTolerance) {
            throw std::invalid_argument("CoinMatrix: matrix is not unitary");
        }
    }

    CoinMatrix(Complex a, Complex b, Complex c, Complex d) : CoinMatrix(make_mat2(a, b, c, d)) {}

    const Mat2& matrix() const { return u_; }
    Complex a() const { return u_(0, 0); }
    Complex b() const { return u_(0, 1); }
    Complex c() const { return u_(1, 0); }
    Complex d() const { return u_(1, 1); }
    Complex det() const { return u_.det(); }

    /// max of |U^dagger U - I| entries and of the determinant-form residuals
    /// c' = -det conj(b'), d' = det conj(a').
    double unitarity_defect() const {
        const Complex delta = det();
        double worst = max_abs_difference(u_.adjoint() * u_, Mat2::identity());
        worst = std::max(worst, std::abs(std::abs(delta) - 1.0));
        worst = std::max(worst, std::abs(c() + delta * std::conj(b())));
        worst = std::max(worst, std::abs(d() - delta * std::conj(a())));
        return worst;
    }

private:
    Mat2 u_;
};

/// One step of a (possibly generalized) walk:
///   PFromRight: psi_k' = P psi_{k+1} + T psi_k + Q psi_{k-1}
///   PFromLeft:  psi_k' = P psi_{k-1} + T psi_k + Q psi_{k+1}
struct CoinBlocks {
    Mat2 P;
    Mat2 T;
    Mat2 Q;
    Family family = Family::A;
    Orientation orientation = Orientation::PFromRight;
    ChiralityOrder order = ChiralityOrder::LUpper;

    /// Max residual of the block conditions making the tridiagonal operator
    /// unitary (column and row orthonormality).
    double unitarity_defect() const {
        const Mat2 id = Mat2::identity();
        double worst = max_abs_difference(P.adjoint() * P + T.adjoint() * T + Q.adjoint() * Q, id);
        worst = std::max(worst, (P.adjoint() * T + T.adjoint() * Q).max_abs());
        worst = std::max(worst, (P.adjoint() * Q).max_abs());
        worst = std::max(worst, max_abs_difference(P * P.adjoint() + T * T.adjoint() + Q * Q.adjoint(), id));
        worst = std::max(worst, (T * P.adjoint() + Q * T.adjoint()).max_abs());
        worst = std::max(worst, (Q * P.adjoint()).max_abs());
        return worst;
    }

    /// Mean probability of staying put for a basis chirality, ||T||_F^2 / 2.
    double stay_weight() const {
        double s = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += std::norm(T(i, j));
        return s / 2.0;
    }
};

/// Row split (A) or column split (B) of a coin; T = 0.
inline CoinBlocks plain_blocks(const CoinMatrix& coin, Family family) {
    CoinBlocks blocks;
    blocks.family = family;
    blocks.orientation = Orientation::PFromRight;
    blocks.order = ChiralityOrder::LUpper;
    if (family == Family::A) {
        blocks.P = make_mat2(coin.a(), coin.b(), 0.0, 0.0);
        blocks.Q = make_mat2(0.0, 0.0, coin.c(), coin.d());
    } else {
        blocks.P = make_mat2(coin.a(), 0.0, coin.c(), 0.0);
        blocks.Q = make_mat2(0.0, coin.b(), 0.0, coin.d());
    }
    return blocks;
}

/// Block form of the QCA matrix.
///   A: site k = QCA pair (2k-1, 2k), R upper, P reads site k-1.
///   B: site k = QCA pair (2k, 2k+1), L upper, P reads site k+1.
inline CoinBlocks generalized_blocks_from_qca(const QcaParams& params, Family family) {
    const Complex a = params.a(), b = params.b(), c = params.c(), d = params.d();
    CoinBlocks blocks;
    blocks.family = family;
    if (family == Family::A) {
        blocks.P = make_mat2(d, c, 0.0, 0.0);
        blocks.T = make_mat2(b, a, a, b);
        blocks.Q = make_mat2(0.0, 0.0, c, d);
        blocks.orientation = Orientation::PFromLeft;
        blocks.order = ChiralityOrder::RUpper;
    } else {
        blocks.P = make_mat2(d, 0.0, a, 0.0);
        blocks.T = make_mat2(b, c, c, b);
        blocks.Q = make_mat2(0.0, a, 0.0, d);
        blocks.orientation = Orientation::PFromRight;
        blocks.order = ChiralityOrder::LUpper;
    }
    return blocks;
}

inline bool is_zero(const Vec2& v) {
    return std::abs(v[0]) < kPruneThreshold && std::abs(v[1]) < kPruneThreshold;
}

/// Finitely supported map Site -> (upper, lower) chirality amplitudes.
class WalkState {
public:
    using container = std::map<Site, Vec2>;
    using const_iterator = container::const_iterator;

    explicit WalkState(ChiralityOrder order) : order_(order) {}

    WalkState(container sites, ChiralityOrder order) : sites_(std::move(sites)), order_(order) {
        std::erase_if(sites_, [](const auto& kv) {
            if (!is_finite(kv.second[0]) || !is_finite(kv.second[1])) {
                throw std::invalid_argument("WalkState: non-finite amplitude");
            }
            return is_zero(kv.second);
        });
    }

    /// Walker at the origin with coin state alpha|L> + beta|R>.
    static WalkState at_origin(const QubitState& qubit, ChiralityOrder order) {
        const Vec2 v = order == ChiralityOrder::LUpper ? Vec2{qubit.alpha(), qubit.beta()}
                                                       : Vec2{qubit.beta(), qubit.alpha()};
        return WalkState(container{{0, v}}, order);
    }

    ChiralityOrder order() const { return order_; }

    Vec2 at(Site site) const {
        auto it = sites_.find(site);
        return it == sites_.end() ? Vec2{} : it->second;
    }

    Complex left(Site site) const { return at(site)[order_ == ChiralityOrder::LUpper ? 0 : 1]; }
    Complex right(Site site) const { return at(site)[order_ == ChiralityOrder::LUpper ? 1 : 0]; }

    bool empty() const { return sites_.empty(); }
    std::size_t size() const { return sites_.size(); }
    const container& sites() const { return sites_; }
    const_iterator begin() const { return sites_.begin(); }
    const_iterator end() const { return sites_.end(); }

    /// Same physical state stored with the other chirality on top.
    WalkState reordered() const {
        container swapped;
        for (const auto& [site, v] : sites_) swapped.emplace_hint(swapped.end(), site, Vec2{v[1], v[0]});
        return WalkState(std::move(swapped), order_ == ChiralityOrder::LUpper ? ChiralityOrder::RUpper
                                                                              : ChiralityOrder::LUpper);
    }

private:
    container sites_;
    ChiralityOrder order_;
};

inline double norm_sq(const WalkState& state) {
    double sum = 0.0;
    for (const auto& [site, v] : state) sum += std::norm(v[0]) + std::norm(v[1]);
    return sum;
}

inline WalkState walk_step(const WalkState& state, const CoinBlocks& blocks) {
    if (state.order() != blocks.order) {
        throw std::invalid_argument("walk_step: state and blocks use different chirality orderings");
    }
    const Site p_shift = blocks.orientation == Orientation::PFromRight ? -1 : +1;
    const bool has_stay = !blocks.T.is_zero(0.0);
    WalkState::container out;
    auto accumulate = [&out](Site site, const Vec2& v) {
        auto& slot = out[site];
        slot[0] += v[0];
        slot[1] += v[1];
    };
    for (const auto& [site, v] : state) {
        accumulate(site + p_shift, blocks.P * v);
        accumulate(site - p_shift, blocks.Q * v);
        if (has_stay) accumulate(site, blocks.T * v);
    }
    return WalkState(std::move(out), state.order());
}

inline WalkState walk_evolve(WalkState state, const CoinBlocks& blocks, int steps) {
    if (steps < 0) throw std::invalid_argument("walk_evolve: negative step count");
    for (int n = 0; n < steps; ++n) state = walk_step(state, blocks);
    return state;
}

inline Distribution walk_distribution(const WalkState& state) {
    Distribution::container masses;
    for (const auto& [site, v] : state) {
        masses.emplace_hint(masses.end(), site, std::norm(v[0]) + std::norm(v[1]));
    }
    return Distribution(std::move(masses));
}

inline double max_abs_difference(const WalkState& x, const WalkState& y) {
    if (x.order() != y.order()) {
        throw std::invalid_argument("max_abs_difference: states use different chirality orderings");
    }
    double worst = 0.0;
    auto scan = [&worst](const WalkState& p, const WalkState& q) {
        for (const auto& [site, v] : p) {
            const Vec2 w = q.at(site);
            worst = std::max({worst, std::abs(v[0] - w[0]), std::abs(v[1] - w[1])});
        }
    };
    scan(x, y);
    scan(y, x);
    return worst;
}

} // namespace qcawalk
