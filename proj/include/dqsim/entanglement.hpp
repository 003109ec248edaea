#pragma once

// Qubit-field entropy, entanglement swapping through a joint Bell-state
// measurement on two independently decaying qubits, concurrence measures,
// and the angle-averaged entangling power.

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "dqsim/dynamics.hpp"
#include "dqsim/model.hpp"

namespace dqsim {

// Von Neumann entropy (natural log) of a 2x2 density matrix; lies in
// [0, ln 2]. Throws std::domain_error when the matrix is not positive
// semidefinite beyond a -1e-10 eigenvalue tolerance.
double von_neumann_entropy(const ReducedDensityMatrix& rho);

// Entropy of the qubit reduction at time t.
double qubit_entropy(const DressedFrame& frame, const QubitInitialState& init, double t);

// Subadditivity / triangle-inequality check for a bipartite state with
// subsystem entropies s_a, s_f and joint entropy s_af (forced to 0 when
// joint_pure). Gaps are signed; both must be >= -tol for consistency.
struct ArakiLiebReport {
    bool satisfied = false;
    double lower_gap = 0.0; // s_af - |s_a - s_f|
    double upper_gap = 0.0; // s_a + s_f - s_af
};

ArakiLiebReport araki_lieb_check(bool joint_pure, double s_a, double s_f, double s_af = 0.0,
                                 double tol = 1e-10);

// Unnormalized coefficients of the post-measurement pair state
// (x (|EG> - |GE>) + upsilon |GG>) / sqrt(norm), norm = 2|x|^2 + |upsilon|^2.
struct SwappedPair {
    cplx x{0.0, 0.0};
    cplx upsilon{0.0, 0.0};
    double norm = 0.0;
};

// Pair state after the Bell-state measurement on the two field modes, both
// qubits having evolved for the same time t in identical cavities.
// Throws std::domain_error when the projection probability vanishes.
SwappedPair swapped_state(const DressedFrame& frame, const QubitInitialState& init1,
                          const QubitInitialState& init2, double t);

// Concurrence of the swapped pair: 2|x|^2 / norm.
double concurrence_closed(const SwappedPair& pair);

// General two-qubit density matrix in the product basis {EE, EG, GE, GG}.
struct TwoQubitDensity {
    Eigen::Matrix4cd rho;

    static TwoQubitDensity from_pure(const std::array<cplx, 4>& amplitudes);
    static TwoQubitDensity from_swapped_pair(const SwappedPair& pair);
    // Hermiticity, unit trace, positivity (throws std::domain_error).
    void validate(double tol = 1e-9) const;
};

// Wootters concurrence max(0, r1 - r2 - r3 - r4) from the square roots of
// the eigenvalues of rho * (sy x sy) * conj(rho) * (sy x sy). Accepts mixed
// states; throws std::domain_error on invalid input.
double concurrence_wootters(const TwoQubitDensity& density);

// True iff the two initial states yield a maximally entangled swapped pair
// whenever the qubits are still excited: equal polar angles and equal
// azimuths modulo 2*pi, within tolerance 1e-10.
bool max_entanglement_condition(const QubitInitialState& init1, const QubitInitialState& init2);

enum class PowerMethod { Quadrature, MonteCarlo };

struct PowerSettings {
    int polar_nodes = 64;    // Gauss-Legendre nodes per cos(theta) axis
    int azimuth_nodes = 128; // uniform nodes over the relative azimuth
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
};

struct PowerEstimate {
    double value = 0.0;
    double error = 0.0; // rule-halving estimate (quadrature) or standard error (MC)
};

// Concurrence of the swapped pair averaged over both initial states drawn
// uniformly from the Bloch sphere. Deterministic for both methods given the
// settings (the Monte Carlo path is fully seeded).
PowerEstimate entangling_power(const DressedFrame& frame, double t, PowerMethod method,
                               const PowerSettings& settings = {});

} // namespace dqsim
