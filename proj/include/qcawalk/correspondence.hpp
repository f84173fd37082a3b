// correspondence.hpp
// Machine checks of the equivalences between the QCA and coined walks:
// generalized A/B-type block forms, Type III/IV reductions to plain walks,
// two-step coin factorizations and the even/odd product factorization.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amplitudes.hpp"
#include "coined_walks.hpp"
#include "mat2.hpp"
#include "qca_core.hpp"

namespace qcawalk {

struct CorrespondenceReport {
    double max_amplitude_error = 0.0;
    double max_probability_error = 0.0;
    int steps_checked = 0;
    std::string identity_name;

    double max_error() const { return std::max(max_amplitude_error, max_probability_error); }
    bool holds(double tol = kTolerance) const { return max_error() <= tol; }
};

// --- QCA lattice <-> walk lattice -------------------------------------------

/// Offset of the first QCA site of walk site k: pair (2k-1, 2k) for A, (2k, 2k+1) for B.
constexpr Site pair_offset(Family family) { return family == Family::A ? -1 : 0; }

/// Groups QCA sites into walk sites. A: (R, L) = (field(2k-1), field(2k)) with R
/// on top. B: (L, R) = (field(2k), field(2k+1)) with L on top.
inline WalkState qca_to_walk(const AmplitudeField& field, Family family) {
    const Site off = pair_offset(family);
    WalkState::container sites;
    for (const auto& [j, z] : field) {
        const Site rel = j - off;
        const Site k = (rel - (rel & 1)) / 2;
        sites[k][rel & 1] += z;
    }
    return WalkState(std::move(sites),
                     family == Family::A ? ChiralityOrder::RUpper : ChiralityOrder::LUpper);
}

/// Squared moduli of the walk components placed back on their QCA sites.
inline Distribution walk_to_qca_masses(const WalkState& state, Family family) {
    const Site off = pair_offset(family);
    Distribution::container masses;
    for (const auto& [k, v] : state) {
        masses[2 * k + off] = std::norm(v[0]);
        masses[2 * k + off + 1] = std::norm(v[1]);
    }
    return Distribution(std::move(masses));
}

namespace detail {

inline CorrespondenceReport verify_generalized(const QcaParams& params, const QubitState& qubit,
                                               int n_max, Family family) {
    if (n_max < 0) throw std::invalid_argument("verify: negative step count");
    // A pairs eta^(0) with eta^(-1), B with eta^(1).
    const Site partner = family == Family::A ? -1 : 1;
    AmplitudeField eta0 = AmplitudeField::delta(0);
    AmplitudeField eta_partner = AmplitudeField::delta(partner);
    const CoinBlocks blocks = generalized_blocks_from_qca(params, family);

    auto combined = [&] { return superpose(eta0, eta_partner, qubit.alpha(), qubit.beta()); };
    WalkState walk = qca_to_walk(combined(), family);

    CorrespondenceReport report;
    report.identity_name = family == Family::A ? "qca<->generalized-A" : "qca<->generalized-B";
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            walk = walk_step(walk, blocks);
            eta0 = qca_step(eta0, params);
            eta_partner = qca_step(eta_partner, params);
        }
        const AmplitudeField field = combined();
        report.max_amplitude_error =
            std::max(report.max_amplitude_error, max_abs_difference(walk, qca_to_walk(field, family)));
        report.max_probability_error =
            std::max(report.max_probability_error,
                     max_abs_difference(walk_to_qca_masses(walk, family), to_distribution(field)));
        report.steps_checked = n;
    }
    return report;
}

} // namespace detail

/// Generalized A-type walk vs. alpha eta^(0) + beta eta^(-1), for n = 0..n_max.
inline CorrespondenceReport verify_A_correspondence(const QcaParams& params, const QubitState& qubit,
                                                    int n_max) {
    return detail::verify_generalized(params, qubit, n_max, Family::A);
}

/// Generalized B-type walk vs. alpha eta^(0) + beta eta^(1), for n = 0..n_max.
inline CorrespondenceReport verify_B_correspondence(const QcaParams& params, const QubitState& qubit,
                                                    int n_max) {
    return detail::verify_generalized(params, qubit, n_max, Family::B);
}

/// Coin of the plain walk a Type III (A family) or Type IV (B family) QCA reduces to.
///   Type III: [[d, c], [c, d]] with A-type split, chiralities swapped.
///   Type IV:  [[d, a], [a, d]] with B-type split.
inline CoinMatrix reduced_coin(const QcaParams& params) {
    switch (classify(params)) {
    case QcaType::TypeIII: return {params.d(), params.c(), params.c(), params.d()};
    case QcaType::TypeIV: return {params.d(), params.a(), params.a(), params.d()};
    default: throw std::invalid_argument("reduced_coin: params are neither Type III nor Type IV");
    }
}

/// Runs the generalized walk and the plain walk with reduced_coin side by side
/// and compares amplitudes (after reordering chiralities for Type III) and
/// distributions. The stay-put block norm is folded into the amplitude error.
inline CorrespondenceReport verify_type_reduction(const QcaParams& params, const QubitState& qubit,
                                                  int n_max) {
    if (n_max < 0) throw std::invalid_argument("verify_type_reduction: negative step count");
    const QcaType type = classify(params);
    const Family family = type == QcaType::TypeIII ? Family::A : Family::B;
    const CoinBlocks generalized = generalized_blocks_from_qca(params, family);
    const CoinBlocks plain = plain_blocks(reduced_coin(params), family);

    WalkState gen = WalkState::at_origin(qubit, generalized.order);
    WalkState flat = WalkState::at_origin(qubit, plain.order);

    CorrespondenceReport report;
    report.identity_name = type == QcaType::TypeIII ? "typeIII<->plain-A" : "typeIV<->plain-B";
    report.max_amplitude_error = generalized.T.max_abs();
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            gen = walk_step(gen, generalized);
            flat = walk_step(flat, plain);
        }
        const WalkState gen_view = gen.order() == flat.order() ? gen : gen.reordered();
        report.max_amplitude_error = std::max(report.max_amplitude_error, max_abs_difference(gen_view, flat));
        report.max_probability_error =
            std::max(report.max_probability_error,
                     max_abs_difference(walk_distribution(gen), walk_distribution(flat)));
        report.steps_checked = n;
    }
    return report;
}

// --- Two-step factorization --------------------------------------------------

/// Half-step blocks whose two-fold composition reproduces one generalized step:
///   P = P2 P1,  Q = Q2 Q1,  T = P2 Q1 + Q2 P1.
struct TwoStepFactors {
    Mat2 P1, Q1, P2, Q2;
    double theta1 = 0.0;
    double theta2 = 0.0;
    Family family = Family::A;

    Mat2 coin(int half) const {
        if (half == 1) return P1 + Q1;
        if (half == 2) return P2 + Q2;
        throw std::out_of_range("TwoStepFactors::coin: half must be 1 or 2");
    }

    /// Blocks of one half-step, laid out like the family's generalized walk.
    CoinBlocks half_step(int half) const {
        CoinBlocks blocks;
        blocks.P = half == 1 ? P1 : P2;
        blocks.Q = half == 1 ? Q1 : Q2;
        blocks.family = family;
        blocks.orientation = family == Family::A ? Orientation::PFromLeft : Orientation::PFromRight;
        blocks.order = family == Family::A ? ChiralityOrder::RUpper : ChiralityOrder::LUpper;
        return blocks;
    }
};

/// The (0,1) entries of P_A(2) and Q_B(2) carry e^{-i theta1}; with e^{+i theta1}
/// the identities fail for theta1 != 0.
inline TwoStepFactors two_step_factorize(const AngleTriple& angles, double theta1, double theta2,
                                         Family family) {
    using namespace std::complex_literals;
    const double ct = std::cos(angles.theta()), st = std::sin(angles.theta());
    const double cp = std::cos(angles.phi()), sp = std::sin(angles.phi());
    const Complex phase = std::polar(1.0, angles.delta());
    const Complex e1 = std::polar(1.0, theta1), e2 = std::polar(1.0, theta2);
    const Complex e1c = std::conj(e1), e2c = std::conj(e2);

    TwoStepFactors f;
    f.theta1 = theta1;
    f.theta2 = theta2;
    f.family = family;
    if (family == Family::A) {
        f.P1 = make_mat2(1i * cp * e2, sp * e2, 0.0, 0.0);
        f.Q1 = make_mat2(0.0, 0.0, sp * e1, 1i * cp * e1);
        f.P2 = phase * make_mat2(st * e2c, -1i * ct * e1c, 0.0, 0.0);
        f.Q2 = phase * make_mat2(0.0, 0.0, -1i * ct * e2c, st * e1c);
    } else {
        f.P1 = make_mat2(1i * cp * e2, 0.0, sp * e1, 0.0);
        f.Q1 = make_mat2(0.0, sp * e2, 0.0, 1i * cp * e1);
        f.P2 = phase * make_mat2(st * e2c, 0.0, -1i * ct * e2c, 0.0);
        f.Q2 = phase * make_mat2(0.0, -1i * ct * e1c, 0.0, st * e1c);
    }
    return f;
}

/// max entry error of the three product identities against `blocks`.
inline double product_identity_residual(const TwoStepFactors& f, const CoinBlocks& blocks) {
    return std::max({max_abs_difference(f.P2 * f.P1, blocks.P), max_abs_difference(f.Q2 * f.Q1, blocks.Q),
                     max_abs_difference(f.P2 * f.Q1 + f.Q2 * f.P1, blocks.T)});
}

/// max |U(n)^dagger U(n) - I| over both half-step coins.
inline double half_coin_unitarity_defect(const TwoStepFactors& f) {
    double worst = 0.0;
    for (int half : {1, 2}) {
        const Mat2 u = f.coin(half);
        worst = std::max(worst, max_abs_difference(u.adjoint() * u, Mat2::identity()));
    }
    return worst;
}

/// One generalized step per round vs. two half-steps with coins U(1), U(2).
/// Generalized site k is compared with half-lattice site 2k after each full
/// round; odd half-lattice sites must be empty then.
inline CorrespondenceReport verify_two_step(const AngleTriple& angles, double theta1, double theta2,
                                            Family family, const QubitState& qubit, int n_max) {
    if (n_max < 0) throw std::invalid_argument("verify_two_step: negative step count");
    const CoinBlocks blocks = generalized_blocks_from_qca(params_from_angles(angles), family);
    const TwoStepFactors f = two_step_factorize(angles, theta1, theta2, family);
    const CoinBlocks first = f.half_step(1), second = f.half_step(2);

    WalkState gen = WalkState::at_origin(qubit, blocks.order);
    WalkState half = WalkState::at_origin(qubit, blocks.order);

    CorrespondenceReport report;
    report.identity_name = std::string("generalized-") + std::string(to_string(family)) + "<->two-step";
    report.max_amplitude_error = product_identity_residual(f, blocks);
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            gen = walk_step(gen, blocks);
            half = walk_step(walk_step(half, first), second);
        }
        WalkState::container folded;
        Distribution::container folded_mass;
        for (const auto& [j, v] : half) {
            if ((j & 1) != 0) {
                report.max_amplitude_error = std::max({report.max_amplitude_error, std::abs(v[0]), std::abs(v[1])});
                continue;
            }
            folded[j / 2] = v;
            folded_mass[j / 2] = std::norm(v[0]) + std::norm(v[1]);
        }
        const WalkState folded_state(std::move(folded), half.order());
        report.max_amplitude_error = std::max(report.max_amplitude_error, max_abs_difference(gen, folded_state));
        report.max_probability_error = std::max(
            report.max_probability_error, max_abs_difference(walk_distribution(gen), Distribution(std::move(folded_mass))));
        report.steps_checked = n;
    }
    return report;
}

// --- Even/odd product factorization ------------------------------------------

/// Block angles (phi1, phi2) of the even and odd pair unitaries, each in [0, 2pi).
class PatelParams {
public:
    PatelParams(double phi1, double phi2) : phi1_(phi1), phi2_(phi2) {
        for (double v : {phi1, phi2}) {
            if (!std::isfinite(v) || v < 0.0 || v >= kTwoPi) {
                throw std::invalid_argument("PatelParams: angles must lie in [0, 2pi)");
            }
        }
    }

    double phi1() const { return phi1_; }
    double phi2() const { return phi2_; }

private:
    double phi1_, phi2_;
};

/// [[cos phi, i sin phi], [i sin phi, cos phi]]
inline Mat2 pair_block(double phi) {
    using namespace std::complex_literals;
    const double c = std::cos(phi), s = std::sin(phi);
    return make_mat2(c, 1i * s, 1i * s, c);
}

namespace detail {

/// Applies `block` to every site pair (2k + offset, 2k + offset + 1).
inline AmplitudeField apply_pairs(const AmplitudeField& field, const Mat2& block, Site offset) {
    AmplitudeField::container out;
    for (const auto& [j, z] : field) {
        const Site rel = j - offset;
        const int slot = static_cast<int>(rel & 1);
        const Site first = j - slot;
        out[first] += block(0, slot) * z;
        out[first + 1] += block(1, slot) * z;
    }
    return AmplitudeField(std::move(out));
}

} // namespace detail

/// Even-pair unitary: blocks on (2k, 2k+1).
inline AmplitudeField apply_even_pairs(const AmplitudeField& field, double phi1) {
    return detail::apply_pairs(field, pair_block(phi1), 0);
}

/// Odd-pair unitary: blocks on (2k-1, 2k).
inline AmplitudeField apply_odd_pairs(const AmplitudeField& field, double phi2) {
    return detail::apply_pairs(field, pair_block(phi2), -1);
}

/// Even-pair unitary after odd-pair unitary.
inline AmplitudeField patel_step(const AmplitudeField& field, const PatelParams& p) {
    return apply_even_pairs(apply_odd_pairs(field, p.phi2()), p.phi1());
}

/// (i cos phi1 sin phi2, cos phi1 cos phi2, i sin phi1 cos phi2, -sin phi1 sin phi2)
inline std::array<Complex, 4> patel_tuple(const PatelParams& p) {
    using namespace std::complex_literals;
    const double c1 = std::cos(p.phi1()), s1 = std::sin(p.phi1());
    const double c2 = std::cos(p.phi2()), s2 = std::sin(p.phi2());
    return {1i * (c1 * s2), Complex(c1 * c2), 1i * (s1 * c2), Complex(-s1 * s2)};
}

/// Angles reproducing the even/odd product: theta = phi1, phi = pi/2 - phi2, delta = pi/2.
inline AngleTriple patel_angles(const PatelParams& p) {
    return AngleTriple::wrapped(p.phi1(), std::numbers::pi / 2 - p.phi2(), std::numbers::pi / 2);
}

/// Multiplies the dense even and odd pair matrices on a small window, reads
/// (a, b, c, d) off row 0, and checks the result against the closed-form tuple,
/// the angle identification, and the full row pattern on interior rows.
inline std::pair<QcaParams, CorrespondenceReport> patel_factorize(const PatelParams& p) {
    constexpr Site lo = -6, hi = 7;
    constexpr auto dim = static_cast<std::size_t>(hi - lo + 1);
    using Dense = std::vector<Complex>;
    auto idx = [](Site r, Site c) { return static_cast<std::size_t>(r - lo) * dim + static_cast<std::size_t>(c - lo); };

    auto pair_matrix = [&](const Mat2& block, Site offset) {
        Dense m(dim * dim);
        for (Site r = lo; r <= hi; ++r) {
            const int slot = static_cast<int>((r - offset) & 1);
            const Site first = r - slot;
            for (int s = 0; s < 2; ++s) {
                const Site col = first + s;
                if (col >= lo && col <= hi) m[idx(r, col)] = block(slot, s);
            }
        }
        return m;
    };
    const Dense even = pair_matrix(pair_block(p.phi1()), 0);
    const Dense odd = pair_matrix(pair_block(p.phi2()), -1);
    Dense prod(dim * dim);
    for (Site r = lo; r <= hi; ++r)
        for (Site k = lo; k <= hi; ++k) {
            const Complex e = even[idx(r, k)];
            if (e == Complex{}) continue;
            for (Site c = lo; c <= hi; ++c) prod[idx(r, c)] += e * odd[idx(k, c)];
        }

    const Complex a = prod[idx(0, -1)], b = prod[idx(0, 0)], c = prod[idx(0, 1)], d = prod[idx(0, 2)];
    QcaParams params(a, b, c, d);

    CorrespondenceReport report;
    report.identity_name = "even*odd<->qca";
    report.steps_checked = 1;

    const auto closed = patel_tuple(p);
    const auto from_angles = params_from_angles(patel_angles(p)).tuple();
    const auto extracted = params.tuple();
    for (std::size_t i = 0; i < 4; ++i) {
        report.max_amplitude_error = std::max({report.max_amplitude_error, std::abs(extracted[i] - closed[i]),
                                               std::abs(extracted[i] - from_angles[i])});
    }
    // Rows far enough from the window edge to be complete.
    for (Site r = lo + 3; r <= hi - 3; ++r) {
        const Site base = r - (r & 1);
        const std::array<Complex, 4> pattern = (r & 1) == 0 ? std::array{a, b, c, d} : std::array{d, c, b, a};
        for (Site col = lo; col <= hi; ++col) {
            const Site rel = col - (base - 1);
            const Complex expected = rel >= 0 && rel < 4 ? pattern[static_cast<std::size_t>(rel)] : Complex{};
            report.max_amplitude_error = std::max(report.max_amplitude_error, std::abs(prod[idx(r, col)] - expected));
        }
    }
    return {params, report};
}

// --- Lattice gas angles -------------------------------------------------------

/// (pi/2 + theta, rho, 3pi/2), reduced into [0, 2pi).
inline AngleTriple meyer_angles(double rho, double theta) {
    return AngleTriple::wrapped(std::numbers::pi / 2 + theta, rho, 3 * std::numbers::pi / 2);
}

} // namespace qcawalk
