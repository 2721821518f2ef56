// bath_sim.hpp — explicit small system⊗bath models, exact joint evolution
// with and without control, leading Magnus terms of the cycle propagator in
// the control frame, and a stroboscopic coherence diagnostic.
//
// Index convention for the joint space: |i⟩_S ⊗ |b⟩_B ↦ row i·d_B + b, the
// same ordering kron() produces. Bath dimension is capped at 8 so every claim
// here stays desk-checkable by dense diagonalization.

#pragma once

#include "cdd/control_schedule.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cdd {

struct BathModel {
    int d_B = 0;
    Matrix H_B;
    std::map<std::string, Matrix> operators;   // bath_label -> B_γ
};

struct JointModel {
    DecomposedHamiltonian decomposed;
    BathModel bath;
    int n = 0;        // system dimension
    Matrix H0;        // full (n·d_B)×(n·d_B) joint Hamiltonian
};

// H0 = H_S⊗1 + 1⊗H_B + Σ_γ S_γ⊗B_γ, reassembled from the decomposed parts
// (identity pieces included so the original Hamiltonian is reproduced).
JointModel assemble_joint(const DecomposedHamiltonian& decomposed, const BathModel& bath);

struct JointTrace {
    std::vector<double> times;
    std::vector<Matrix> unitaries;
};

// Midpoint-exponential stepping of H0 + a(t)(c·λ)⊗1. The schedule (if any)
// repeats with its own period when t_final exceeds one cycle. Requires
// dt·‖H‖ <= 0.1 (spectral norm).
JointTrace evolve_joint(const JointModel& joint, const GeneratorBasis& basis,
                        const std::optional<ControlSchedule>& schedule, double t_final,
                        double dt);

// Ĥ0(t) = (U_c(t)†⊗1) H0 (U_c(t)⊗1)
Matrix interaction_picture_hamiltonian(const JointModel& joint, const GeneratorBasis& basis,
                                       const ControlSchedule& schedule, double t);

struct InteractionSamples {
    std::vector<double> times;      // uniform over [0, T_c]
    std::vector<Matrix> values;     // Ĥ0 at each node
};

InteractionSamples interaction_samples(const JointModel& joint, const GeneratorBasis& basis,
                                       const ControlSchedule& schedule, int steps);

struct MagnusTerms {
    Matrix h0bar;   // (1/T_c) ∫ Ĥ0(u) du
    Matrix h1bar;   // -(i/(2 T_c)) ∫∫_{u<v} [Ĥ0(v), Ĥ0(u)] du dv
};

// Triangular trapezoid rule on one shared sample grid; also usable directly
// on externally manipulated samples (e.g. time-reversed grids in tests).
MagnusTerms magnus_from_samples(const InteractionSamples& samples);

// Requires a cyclic schedule (the average-Hamiltonian picture presumes it).
MagnusTerms magnus_terms(const JointModel& joint, const GeneratorBasis& basis,
                         const ControlSchedule& schedule, int quadrature_steps);

struct ProductState {
    CVector system;   // default (|1⟩+|2⟩)/√2
    CVector bath;     // default |0⟩
};

ProductState default_initial_state(int n, int d_B);

struct CoherenceCurve {
    std::vector<int> cycles;
    std::vector<double> times;
    std::vector<double> values;   // 2|ρ_S(0,1)|: 1 for the default initial state
};

// Stroboscopic coherence of the first two system levels at multiples of the
// schedule period (or of `period` when no schedule drives the evolution).
CoherenceCurve coherence_curve(const JointModel& joint, const GeneratorBasis& basis,
                               const std::optional<ControlSchedule>& schedule, int n_cycles,
                               double dt, const std::optional<ProductState>& initial = {},
                               double period = 0.0);

}  // namespace cdd
