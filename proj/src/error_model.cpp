#include "cdd/error_model.hpp"

#include <cmath>

namespace cdd {

DecomposedHamiltonian decompose(const Matrix& h_system,
                                const std::vector<CouplingTerm>& couplings) {
    require_hermitian(h_system, "decompose(H_S)", 1e-12);
    const int n = static_cast<int>(h_system.rows());
    const Matrix identity = Matrix::Identity(n, n);

    DecomposedHamiltonian out;
    out.E0 = (h_system.trace() / static_cast<double>(n)).real();
    out.HS_traceless = h_system - out.E0 * identity;

    for (const auto& term : couplings) {
        require_hermitian(term.S, "decompose(S_" + term.gamma + ")", 1e-12);
        if (term.S.rows() != n) {
            throw std::invalid_argument("decompose: coupling " + term.gamma +
                                        " dimension does not match H_S");
        }
        const double shift = (term.S.trace() / static_cast<double>(n)).real();
        CouplingTerm traceless = term;
        traceless.S = term.S - shift * identity;
        out.couplings.push_back(std::move(traceless));
        out.bath_shifts.push_back({term.bath_label, shift});
    }
    return out;
}

ErrorVector to_error_vector(const CouplingTerm& term, const GeneratorBasis& basis) {
    require_hermitian(term.S, "to_error_vector(S_" + term.gamma + ")", 1e-12);
    if (term.S.rows() != basis.n) {
        throw std::invalid_argument("to_error_vector: operator dimension " +
                                    std::to_string(term.S.rows()) + " does not match " +
                                    basis.id());
    }
    const double trace = std::abs(term.S.trace());
    if (trace > 1e-12) {
        throw std::invalid_argument("to_error_vector: operator " + term.gamma +
                                    " is not traceless (|Tr| = " + std::to_string(trace) +
                                    "); decompose it first");
    }

    ErrorVector vec;
    vec.gamma = term.gamma;
    vec.basis_kind = basis.kind;
    vec.basis_n = basis.n;
    vec.s.resize(basis.N);
    for (int i = 0; i < basis.N; ++i) {
        vec.s[i] = ((basis.generators[i] * term.S).trace() / basis.M).real();
    }
    return vec;
}

Matrix from_error_vector(const ErrorVector& vec, const GeneratorBasis& basis) {
    if (vec.basis_kind != basis.kind || vec.basis_n != basis.n ||
        vec.s.size() != basis.N) {
        throw std::invalid_argument("from_error_vector: vector belongs to a different basis than " +
                                    basis.id());
    }
    Matrix out = Matrix::Zero(basis.n, basis.n);
    for (int i = 0; i < basis.N; ++i) {
        if (vec.s[i] != 0.0) out += vec.s[i] * basis.generators[i];
    }
    return out;
}

}  // namespace cdd
