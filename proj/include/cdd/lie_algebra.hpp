// lie_algebra.hpp — SU(n) generator bases, structure constants, and the
// adjoint map onto SO(N) rotations, N = n^2 - 1.
//
// Conventions used throughout the library:
//   * Generators λ_i are traceless Hermitian with Tr(λ_i λ_j) = M δ_ij.
//   * Structure constants follow [λ_i, λ_j] = i Σ_k f_ijk λ_k, so for the
//     Pauli basis f_123 = 2 (not the halved particle-physics convention).
//   * adjoint_rotation R[U] is defined by U† λ_i U = Σ_j R[U]_ij λ_j, i.e.
//     R[U]_ij = Tr(λ_j U† λ_i U) / M. It satisfies R[UV] = R[U] R[V].
//   * A control Hamiltonian a(t)·(c·λ) steers coefficient vectors by the real
//     antisymmetric generator F with F_ij = Σ_l c_l f_lij: the transported
//     vector R[U_c(t)]ᵀ s obeys d/dt (R[exp(-i t c·λ)]ᵀ s)|_0 = F s.
//   * Plane indices (μ, ν) in PlaneTerm are 1-based to stay comparable with
//     the published decomposition tables for these bases.

#pragma once

#include "cdd/linalg.hpp"

#include <string>
#include <vector>

namespace cdd {

enum class BasisKind { pauli, gell_mann, pauli_product };

std::string to_string(BasisKind kind);

struct GeneratorBasis {
    BasisKind kind;
    int n = 0;                        // system dimension
    int N = 0;                        // adjoint dimension n^2 - 1
    double M = 0.0;                   // Tr(λ_i λ_j) = M δ_ij
    std::vector<Matrix> generators;   // N Hermitian traceless n×n matrices
    std::vector<std::string> labels;

    // e.g. "pauli(n=2)"
    std::string id() const;
};

// Supported (kind, n) pairs: (pauli, 2), (gell_mann, 3), (pauli_product, 4).
// pauli_product ordering: σx⊗1, σy⊗1, σz⊗1, 1⊗σx, ..., σz⊗σz.
GeneratorBasis build_basis(BasisKind kind, int n);

// Totally antisymmetric rank-3 tensor f_ijk = Tr(λ_k [λ_i, λ_j]) / (i M).
class StructureTensor {
public:
    StructureTensor(int n_adjoint, std::vector<double> data);

    int dimension() const { return N_; }
    double operator()(int i, int j, int k) const {
        return f_[static_cast<std::size_t>((i * N_ + j)) * N_ + k];
    }

    // F_ij = Σ_l c_l f_lij for a direction vector c (the rotation generator
    // of the control c·λ acting on coefficient vectors).
    RMatrix contract_direction(const RVector& direction) const;

private:
    int N_;
    std::vector<double> f_;
};

StructureTensor structure_constants(const GeneratorBasis& basis);

// One natural-generator component of a rotation generator: coefficient of the
// (μ, ν) coordinate plane, μ < ν, 1-based indices.
struct PlaneTerm {
    int mu = 0;
    int nu = 0;
    double coef = 0.0;
};

struct AdjointGenerator {
    RVector direction;             // control direction c, length N
    RMatrix F;                     // real antisymmetric N×N, ds/dt = a(t) F s
    std::vector<PlaneTerm> planes; // non-zero entries F_μν with μ < ν
};

AdjointGenerator adjoint_generator(const GeneratorBasis& basis, const StructureTensor& f,
                                   const RVector& direction);
AdjointGenerator adjoint_generator(const GeneratorBasis& basis, const RVector& direction);

// R[U] with R_ij = Tr(λ_j U† λ_i U) / M; orthogonal for unitary U.
RMatrix adjoint_rotation(const GeneratorBasis& basis, const Matrix& u,
                         double unitarity_tol = 1e-10);

// --------------------- reference-table reconciliation -----------------------

// Side-by-side comparison of the oracle-derived plane decomposition of each
// generator's rotation with the decomposition printed in the published
// reference tables for these three bases. Plane membership is expected to
// agree; printed coefficients use a different (and internally inconsistent)
// normalization, so they are reported rather than asserted.
struct GeneratorReconciliation {
    int generator_index = 0;                  // 1-based
    std::vector<PlaneTerm> printed_planes;    // as published (normalized to μ < ν)
    std::vector<PlaneTerm> oracle_planes;     // from the commutator-trace oracle
    bool membership_match = false;
    // Populated only where a second printed variant of the same row exists
    // (gell_mann generator 3): the alternate form and any planes on which the
    // two printed sources disagree in sign.
    std::vector<PlaneTerm> alt_printed_planes;
    std::vector<std::pair<int, int>> printed_sign_conflicts;
    std::vector<std::string> notes;
};

struct ReconciliationReport {
    BasisKind kind;
    std::vector<GeneratorReconciliation> entries;
    bool all_membership_match = false;
};

ReconciliationReport reconcile_reference_tables(const GeneratorBasis& basis);

}  // namespace cdd
