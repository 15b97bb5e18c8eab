#include "telesim/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace telesim::protocol {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex phase(double angle) {
    return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace

bool PolarizationQubit::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

PolarizationQubit PolarizationQubit::normalized() const {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) {
        throw std::domain_error("PolarizationQubit: cannot normalize the zero vector");
    }
    return {alpha / n, beta / n};
}

PolarizationQubit PolarizationQubit::diagonal(double phi1) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {phase(phi1 / 2.0) * inv_sqrt2, phase(-phi1 / 2.0) * inv_sqrt2};
}

PolarizationQubit PolarizationQubit::rotated(double theta) {
    return {Complex(std::sin(theta), 0.0), Complex(std::cos(theta), 0.0)};
}

const char* to_string(BellOutcome outcome) {
    switch (outcome) {
        case BellOutcome::PhiPlus: return "phi_plus";
        case BellOutcome::PhiMinus: return "phi_minus";
        case BellOutcome::PsiPlus: return "psi_plus";
        case BellOutcome::PsiMinus: return "psi_minus";
    }
    return "unknown";
}

const char* to_string(CorrectionUnitary unitary) {
    switch (unitary) {
        case CorrectionUnitary::Identity: return "identity";
        case CorrectionUnitary::SigmaZ: return "sigma_z";
        case CorrectionUnitary::SigmaX: return "sigma_x";
        case CorrectionUnitary::SigmaY: return "sigma_y";
    }
    return "unknown";
}

std::array<PolarizationQubit, 4> bell_decompose(const PolarizationQubit& qubit) {
    if (!qubit.is_normalized(1e-9)) {
        throw std::domain_error("bell_decompose: qubit not normalized");
    }
    const Complex a = qubit.alpha;
    const Complex b = qubit.beta;
    return {{
        {a, b},    // Phi+
        {a, -b},   // Phi-
        {b, a},    // Psi+
        {-b, a},   // Psi-
    }};
}

CorrectionUnitary correction_for(BellOutcome outcome) {
    switch (outcome) {
        case BellOutcome::PhiPlus: return CorrectionUnitary::Identity;
        case BellOutcome::PhiMinus: return CorrectionUnitary::SigmaZ;
        case BellOutcome::PsiPlus: return CorrectionUnitary::SigmaX;
        case BellOutcome::PsiMinus: return CorrectionUnitary::SigmaY;
    }
    throw std::invalid_argument("correction_for: unknown outcome");
}

PolarizationQubit apply_correction(CorrectionUnitary unitary, const PolarizationQubit& qubit) {
    const Complex a = qubit.alpha;
    const Complex b = qubit.beta;
    switch (unitary) {
        case CorrectionUnitary::Identity: return {a, b};
        case CorrectionUnitary::SigmaZ: return {a, -b};
        case CorrectionUnitary::SigmaX: return {b, a};
        case CorrectionUnitary::SigmaY: return {-kI * b, kI * a};
    }
    throw std::invalid_argument("apply_correction: unknown unitary");
}

double fidelity(const PolarizationQubit& a, const PolarizationQubit& b) {
    return std::norm(std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta);
}

PolarizationQubit psi_minus_reduced_state(double phi1, double phi) {
    const double half = (phi1 - phi) / 2.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {phase(-half) * inv_sqrt2, -phase(half) * inv_sqrt2};
}

double analyzer_probability(const PolarizationQubit& state, double phi3) {
    if (!state.is_normalized(1e-9)) {
        throw std::domain_error("analyzer_probability: state not normalized");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex v_amp =
        state.alpha * phase(-phi3 / 2.0) * inv_sqrt2 + state.beta * phase(phi3 / 2.0) * inv_sqrt2;
    return std::norm(v_amp);
}

double threefold_fringe(double phi1, double phi, double phi3) {
    const double s = std::sin((phi1 - phi + phi3) / 2.0);
    return s * s;
}

double polarization_scan_rate(double theta, AnalysisBasis analyzed) {
    const PolarizationQubit teleported =
        bell_branch(PolarizationQubit::rotated(theta), BellOutcome::PsiMinus);
    const double p_h = std::norm(teleported.alpha);
    return analyzed == AnalysisBasis::H ? p_h : 1.0 - p_h;
}

}  // namespace telesim::protocol
