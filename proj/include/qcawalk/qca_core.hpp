// qca_core.hpp
// One-dimensional quantum cellular automaton driven by the banded unitary
// built from four coefficients (a, b, c, d).
//
// Row pattern of the evolution matrix, for every integer k:
//   out(2k)   = a in(2k-1) + b in(2k) + c in(2k+1) + d in(2k+2)
//   out(2k+1) = d in(2k-1) + c in(2k) + b in(2k+1) + a in(2k+2)

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "amplitudes.hpp"

namespace qcawalk {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Residual magnitudes of the five unitarity conditions, in order:
/// norm, a d* + a* d + b c* + b* c, a c* + b d*, a b* + a* b, c d* + c* d.
struct UnitarityResiduals {
    std::array<double, 5> values{};

    double max() const { return *std::max_element(values.begin(), values.end()); }
    bool unitary(double tol = kTolerance) const { return max() <= tol; }
};

inline UnitarityResiduals unitarity_residuals(Complex a, Complex b, Complex c, Complex d) {
    return {{
        std::abs(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d) - 1.0),
        std::abs(a * std::conj(d) + std::conj(a) * d + b * std::conj(c) + std::conj(b) * c),
        std::abs(a * std::conj(c) + b * std::conj(d)),
        std::abs(a * std::conj(b) + std::conj(a) * b),
        std::abs(c * std::conj(d) + std::conj(c) * d),
    }};
}

/// A coefficient tuple whose evolution matrix is unitary (checked on construction).
class QcaParams {
public:
    QcaParams(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
        if (!is_finite(a) || !is_finite(b) || !is_finite(c) || !is_finite(d)) {
            throw std::invalid_argument("QcaParams: non-finite coefficient");
        }
        if (!residuals().unitary()) {
            throw std::invalid_argument("QcaParams: coefficients violate unitarity (max residual " +
                                        std::to_string(residuals().max()) + ")");
        }
    }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }
    std::array<Complex, 4> tuple() const { return {a_, b_, c_, d_}; }

    UnitarityResiduals residuals() const { return unitarity_residuals(a_, b_, c_, d_); }

    /// Same tuple multiplied by a global phase.
    QcaParams rephased(Complex phase) const {
        return {phase * a_, phase * b_, phase * c_, phase * d_};
    }

private:
    Complex a_, b_, c_, d_;
};

/// Angles (theta, phi, delta), each in [0, 2pi).
class AngleTriple {
public:
    AngleTriple(double theta, double phi, double delta) : theta_(theta), phi_(phi), delta_(delta) {
        for (double v : {theta, phi, delta}) {
            if (!std::isfinite(v) || v < 0.0 || v >= kTwoPi) {
                throw std::invalid_argument("AngleTriple: angles must lie in [0, 2pi)");
            }
        }
    }

    /// Reduces each angle into [0, 2pi) first.
    static AngleTriple wrapped(double theta, double phi, double delta) {
        return {wrap(theta), wrap(phi), wrap(delta)};
    }

    static double wrap(double angle) {
        double r = std::fmod(angle, kTwoPi);
        if (r < 0.0) r += kTwoPi;
        return r >= kTwoPi ? 0.0 : r;
    }

    double theta() const { return theta_; }
    double phi() const { return phi_; }
    double delta() const { return delta_; }

private:
    double theta_, phi_, delta_;
};

enum class QcaType { TrivialA, TrivialB, TrivialC, TrivialD, TypeI, TypeII, TypeIII, TypeIV, TypeV };

constexpr std::string_view to_string(QcaType t) {
    switch (t) {
    case QcaType::TrivialA: return "TrivialA";
    case QcaType::TrivialB: return "TrivialB";
    case QcaType::TrivialC: return "TrivialC";
    case QcaType::TrivialD: return "TrivialD";
    case QcaType::TypeI: return "TypeI";
    case QcaType::TypeII: return "TypeII";
    case QcaType::TypeIII: return "TypeIII";
    case QcaType::TypeIV: return "TypeIV";
    case QcaType::TypeV: return "TypeV";
    }
    return "?";
}

/// Trivial single-coefficient cases first, then the two-coefficient types,
/// then the generic case with all four coefficients nonzero.
inline QcaType classify(const QcaParams& params) {
    const bool a = std::abs(params.a()) >= kTolerance;
    const bool b = std::abs(params.b()) >= kTolerance;
    const bool c = std::abs(params.c()) >= kTolerance;
    const bool d = std::abs(params.d()) >= kTolerance;

    switch (a + b + c + d) {
    case 1:
        if (a) return QcaType::TrivialA;
        if (b) return QcaType::TrivialB;
        if (c) return QcaType::TrivialC;
        return QcaType::TrivialD;
    case 2:
        if (b && c) return QcaType::TypeI;
        if (a && b) return QcaType::TypeII;
        if (c && d) return QcaType::TypeIII;
        if (a && d) return QcaType::TypeIV;
        break;
    case 4:
        return QcaType::TypeV;
    default:
        break;
    }
    // {a,c}, {b,d} and three-coefficient patterns cannot satisfy a c* + b d* = 0.
    throw std::invalid_argument("classify: coefficient pattern is not unitary");
}

/// e^{i delta} (cos t cos p, -i cos t sin p, sin t sin p, i sin t cos p).
inline QcaParams params_from_angles(const AngleTriple& angles) {
    using namespace std::complex_literals;
    const double ct = std::cos(angles.theta()), st = std::sin(angles.theta());
    const double cp = std::cos(angles.phi()), sp = std::sin(angles.phi());
    const Complex phase = std::polar(1.0, angles.delta());
    return {phase * (ct * cp), phase * (-1i * (ct * sp)), phase * (st * sp), phase * (1i * (st * cp))};
}

/// One application of the banded evolution matrix. Scatters each occupied
/// column into its four rows.
inline AmplitudeField qca_step(const AmplitudeField& field, const QcaParams& params) {
    const Complex a = params.a(), b = params.b(), c = params.c(), d = params.d();
    AmplitudeField::container out;
    auto emit = [&out](Site row, Complex coeff, Complex value) {
        if (coeff != Complex{}) out[row] += coeff * value;
    };
    for (const auto& [j, v] : field) {
        if ((j & 1) == 0) {
            // column 2k feeds rows 2k-2 .. 2k+1
            emit(j - 2, d, v);
            emit(j - 1, a, v);
            emit(j, b, v);
            emit(j + 1, c, v);
        } else {
            // column 2k-1 feeds rows 2k-2 .. 2k+1
            emit(j - 1, c, v);
            emit(j, b, v);
            emit(j + 1, a, v);
            emit(j + 2, d, v);
        }
    }
    return AmplitudeField(std::move(out));
}

/// Amplitudes after `steps` applications starting from the unit delta at `origin`.
inline AmplitudeField evolve_eta(Site origin, int steps, const QcaParams& params) {
    if (steps < 0) throw std::invalid_argument("evolve_eta: negative step count");
    auto field = AmplitudeField::delta(origin);
    for (int n = 0; n < steps; ++n) field = qca_step(field, params);
    return field;
}

/// Initial coin state (alpha, beta) with |alpha|^2 + |beta|^2 = 1.
class QubitState {
public:
    QubitState(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
        if (!is_finite(alpha) || !is_finite(beta) ||
            std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kTolerance) {
            throw std::invalid_argument("QubitState: |alpha|^2 + |beta|^2 must equal 1");
        }
    }

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }

    /// alpha conj(beta) real, i.e. alpha conj(beta) == conj(alpha) beta.
    bool symmetric() const {
        return std::abs((alpha_ * std::conj(beta_)).imag()) <= kTolerance;
    }

private:
    Complex alpha_, beta_;
};

enum class Branch { Plus, Minus };

/// Masses |alpha eta^(m)_k(n) + beta eta^(m+-1)_k(n)|^2.
inline Distribution qca_distribution(Site origin, Branch branch, const QubitState& qubit, int steps,
                                     const QcaParams& params) {
    const Site partner = branch == Branch::Plus ? origin + 1 : origin - 1;
    return to_distribution(superpose(evolve_eta(origin, steps, params),
                                     evolve_eta(partner, steps, params), qubit.alpha(),
                                     qubit.beta()));
}

} // namespace qcawalk
