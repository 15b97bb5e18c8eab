#pragma once

#include <array>
#include <complex>

namespace telesim::protocol {

using Complex = std::complex<double>;

// Polarization qubit alpha|H> + beta|V>, |alpha|^2 + |beta|^2 = 1.
struct PolarizationQubit {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};

    double norm_squared() const { return std::norm(alpha) + std::norm(beta); }
    bool is_normalized(double tol = 1e-12) const;
    PolarizationQubit normalized() const;

    // Equal superposition with relative phase phi1:
    // (e^{i phi1/2}|H> + e^{-i phi1/2}|V>) / sqrt(2).
    static PolarizationQubit diagonal(double phi1 = 0.0);

    // sin(theta)|H> + cos(theta)|V>.
    static PolarizationQubit rotated(double theta);
};

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

enum class CorrectionUnitary { Identity, SigmaZ, SigmaX, SigmaY };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus};

const char* to_string(BellOutcome outcome);
const char* to_string(CorrectionUnitary unitary);

// Conditional state of photon 3 for each Bell-measurement outcome on
// photons 1 and 2, when photon 1 carries `qubit` and 2,3 share the
// maximally entangled resource. Every outcome occurs with probability 1/4.
std::array<PolarizationQubit, 4> bell_decompose(const PolarizationQubit& qubit);

inline PolarizationQubit bell_branch(const PolarizationQubit& qubit, BellOutcome outcome) {
    return bell_decompose(qubit)[static_cast<size_t>(outcome)];
}

inline constexpr double bell_branch_probability() { return 0.25; }

// Recovery operation for each Bell outcome.
CorrectionUnitary correction_for(BellOutcome outcome);

PolarizationQubit apply_correction(CorrectionUnitary unitary, const PolarizationQubit& qubit);

// |<a|b>|^2; global phases drop out.
double fidelity(const PolarizationQubit& a, const PolarizationQubit& b);

// State of photon 3 after the coincidence projection onto |Psi->, for a
// diagonal input qubit with phase phi1 and pair phase phi:
// (e^{-i(phi1-phi)/2}|H> - e^{i(phi1-phi)/2}|V>) / sqrt(2).
PolarizationQubit psi_minus_reduced_state(double phi1, double phi);

// Probability of a click in the V output of the analyzer, which applies a
// phase phi3 between H and V and then a 45-degree rotation:
//   |H> -> e^{-i phi3/2}(|H> + |V>)/sqrt(2)
//   |V> -> e^{ i phi3/2}(|V> - |H>)/sqrt(2).
double analyzer_probability(const PolarizationQubit& state, double phi3);

// Threefold coincidence fringe, normalized to peak 1:
// sin^2((phi1 - phi + phi3)/2). Depends on the phases only through that
// combination.
double threefold_fringe(double phi1, double phi, double phi3);

enum class AnalysisBasis { H, V };

// Ideal threefold rate (relative, peak 1) when the input qubit is
// sin(theta)|H> + cos(theta)|V>, the coincidence heralds |Psi->, and
// photon 3 is analyzed in the given basis state.
double polarization_scan_rate(double theta, AnalysisBasis analyzed);

}  // namespace telesim::protocol
