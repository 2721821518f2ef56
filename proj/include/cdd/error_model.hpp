// error_model.hpp — traceless decomposition of system/bath couplings and the
// mapping between traceless system operators and real coefficient vectors.
//
// E0 convention: decompose() stores E0 = Tr(H_S)/n, the coefficient of the
// identity in H_S = E0·1 + HS_traceless, so the input reconstructs exactly
// from the stored parts. The identity part of each coupling operator is
// recorded per bath label the same way (shift = Tr(S_γ)/n).

#pragma once

#include "cdd/lie_algebra.hpp"

#include <string>
#include <vector>

namespace cdd {

struct CouplingTerm {
    std::string gamma;       // error-channel label
    Matrix S;                // Hermitian n×n system operator
    std::string bath_label;  // resolved by the bath model, opaque here
};

struct ErrorVector {
    std::string gamma;
    RVector s;            // coefficients of S in the generator basis
    BasisKind basis_kind; // basis identity, checked on use
    int basis_n = 0;
};

struct BathShift {
    std::string bath_label;
    double shift = 0.0;   // Tr(S_γ)/n, absorbed into the bath Hamiltonian
};

struct DecomposedHamiltonian {
    double E0 = 0.0;               // identity coefficient of H_S
    Matrix HS_traceless;
    std::vector<CouplingTerm> couplings;   // same labels, traceless S
    std::vector<BathShift> bath_shifts;
};

DecomposedHamiltonian decompose(const Matrix& h_system,
                                const std::vector<CouplingTerm>& couplings);

// s_i = Tr(λ_i S)/M; requires S traceless (decompose first otherwise).
ErrorVector to_error_vector(const CouplingTerm& term, const GeneratorBasis& basis);

// Σ_i s_i λ_i; inverse of to_error_vector on traceless operators.
Matrix from_error_vector(const ErrorVector& vec, const GeneratorBasis& basis);

}  // namespace cdd
