#include "cdd/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cdd {

namespace {

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0, -kImag, kImag, 0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

std::vector<Matrix> pauli_triple() {
    return {sigma_x(), sigma_y(), sigma_z()};
}

std::vector<Matrix> gell_mann_matrices() {
    std::vector<Matrix> g(8, Matrix::Zero(3, 3));
    g[0](0, 1) = 1; g[0](1, 0) = 1;
    g[1](0, 1) = -kImag; g[1](1, 0) = kImag;
    g[2](0, 0) = 1; g[2](1, 1) = -1;
    g[3](0, 2) = 1; g[3](2, 0) = 1;
    g[4](0, 2) = -kImag; g[4](2, 0) = kImag;
    g[5](1, 2) = 1; g[5](2, 1) = 1;
    g[6](1, 2) = -kImag; g[6](2, 1) = kImag;
    const double r = 1.0 / std::sqrt(3.0);
    g[7](0, 0) = r; g[7](1, 1) = r; g[7](2, 2) = -2.0 * r;
    return g;
}

}  // namespace

std::string to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::pauli: return "pauli";
        case BasisKind::gell_mann: return "gell_mann";
        case BasisKind::pauli_product: return "pauli_product";
    }
    return "unknown";
}

std::string GeneratorBasis::id() const {
    return to_string(kind) + "(n=" + std::to_string(n) + ")";
}

GeneratorBasis build_basis(BasisKind kind, int n) {
    GeneratorBasis basis;
    basis.kind = kind;
    basis.n = n;

    const bool supported = (kind == BasisKind::pauli && n == 2) ||
                           (kind == BasisKind::gell_mann && n == 3) ||
                           (kind == BasisKind::pauli_product && n == 4);
    if (!supported) {
        throw std::invalid_argument(
            "build_basis: unsupported (kind, n) pair " + to_string(kind) + "(n=" +
            std::to_string(n) + "); supported: pauli(2), gell_mann(3), pauli_product(4)");
    }

    switch (kind) {
        case BasisKind::pauli:
            basis.generators = pauli_triple();
            basis.labels = {"σx", "σy", "σz"};
            basis.M = 2.0;
            break;
        case BasisKind::gell_mann: {
            basis.generators = gell_mann_matrices();
            for (int i = 1; i <= 8; ++i) basis.labels.push_back("λ" + std::to_string(i));
            basis.M = 2.0;
            break;
        }
        case BasisKind::pauli_product: {
            // Ordering: single-qubit factors first (σ_a⊗1, then 1⊗σ_a), then
            // the nine products σ_a⊗σ_b in row-major (a, b) order.
            const auto sigma = pauli_triple();
            const std::vector<std::string> names = {"σx", "σy", "σz"};
            const Matrix id2 = Matrix::Identity(2, 2);
            for (int a = 0; a < 3; ++a) {
                basis.generators.push_back(kron(sigma[a], id2));
                basis.labels.push_back(names[a] + "⊗1");
            }
            for (int a = 0; a < 3; ++a) {
                basis.generators.push_back(kron(id2, sigma[a]));
                basis.labels.push_back("1⊗" + names[a]);
            }
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    basis.generators.push_back(kron(sigma[a], sigma[b]));
                    basis.labels.push_back(names[a] + "⊗" + names[b]);
                }
            }
            basis.M = 4.0;
            break;
        }
    }

    basis.N = n * n - 1;
    return basis;
}

StructureTensor::StructureTensor(int n_adjoint, std::vector<double> data)
    : N_(n_adjoint), f_(std::move(data)) {
    if (f_.size() != static_cast<std::size_t>(N_) * N_ * N_) {
        throw std::invalid_argument("StructureTensor: data size does not match dimension");
    }
}

RMatrix StructureTensor::contract_direction(const RVector& direction) const {
    if (direction.size() != N_) {
        throw std::invalid_argument("StructureTensor: direction length " +
                                    std::to_string(direction.size()) + " != " +
                                    std::to_string(N_));
    }
    RMatrix f_dir = RMatrix::Zero(N_, N_);
    for (int l = 0; l < N_; ++l) {
        if (direction[l] == 0.0) continue;
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j) f_dir(i, j) += direction[l] * (*this)(l, i, j);
    }
    return f_dir;
}

StructureTensor structure_constants(const GeneratorBasis& basis) {
    const int N = basis.N;
    std::vector<double> f(static_cast<std::size_t>(N) * N * N, 0.0);
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            const Matrix comm = commutator(basis.generators[i], basis.generators[j]);
            for (int k = 0; k < N; ++k) {
                // f_ijk = Tr(λ_k [λ_i, λ_j]) / (i M), real for Hermitian bases
                const Complex tr = (basis.generators[k] * comm).trace();
                double value = (tr / (kImag * basis.M)).real();
                if (std::abs(value) < 1e-13) value = 0.0;
                f[static_cast<std::size_t>(i * N + j) * N + k] = value;
                f[static_cast<std::size_t>(j * N + i) * N + k] = -value;
            }
        }
    }
    return StructureTensor(N, std::move(f));
}

AdjointGenerator adjoint_generator(const GeneratorBasis& basis, const StructureTensor& f,
                                   const RVector& direction) {
    if (direction.size() != basis.N) {
        throw std::invalid_argument("adjoint_generator: direction length mismatch for " +
                                    basis.id());
    }
    if (direction.norm() == 0.0) {
        throw std::invalid_argument("adjoint_generator: zero control direction");
    }

    AdjointGenerator gen;
    gen.direction = direction;
    gen.F = f.contract_direction(direction);
    // Snap numerically-zero entries so the plane list reconstructs F exactly.
    for (int i = 0; i < basis.N; ++i)
        for (int j = 0; j < basis.N; ++j)
            if (std::abs(gen.F(i, j)) <= 1e-12) gen.F(i, j) = 0.0;

    for (int i = 0; i < basis.N; ++i) {
        for (int j = i + 1; j < basis.N; ++j) {
            if (gen.F(i, j) != 0.0) {
                gen.planes.push_back({i + 1, j + 1, gen.F(i, j)});
            }
        }
    }
    return gen;
}

AdjointGenerator adjoint_generator(const GeneratorBasis& basis, const RVector& direction) {
    return adjoint_generator(basis, structure_constants(basis), direction);
}

RMatrix adjoint_rotation(const GeneratorBasis& basis, const Matrix& u, double unitarity_tol) {
    if (u.rows() != basis.n || u.cols() != basis.n) {
        throw std::invalid_argument("adjoint_rotation: operator dimension " +
                                    std::to_string(u.rows()) + " does not match " + basis.id());
    }
    const double dev = unitarity_deviation(u);
    if (dev > unitarity_tol) {
        throw std::invalid_argument("adjoint_rotation: input not unitary (deviation " +
                                    std::to_string(dev) + ")");
    }

    const int N = basis.N;
    RMatrix r(N, N);
    for (int i = 0; i < N; ++i) {
        const Matrix conjugated = u.adjoint() * basis.generators[i] * u;
        for (int j = 0; j < N; ++j) {
            r(i, j) = ((basis.generators[j] * conjugated).trace() / basis.M).real();
        }
    }
    return r;
}

// --------------------- reference-table reconciliation -----------------------

namespace {

// Published plane decompositions for the three bases, normalized to μ < ν.
// Coefficients are kept exactly as printed (they carry an extra factor of M
// relative to the commutator oracle, with inconsistent signs in places).

std::vector<std::vector<PlaneTerm>> printed_table(BasisKind kind) {
    const double s3 = std::sqrt(3.0);
    switch (kind) {
        case BasisKind::pauli:
            return {
                {{2, 3, 4}},
                {{1, 3, -4}},
                {{1, 2, 4}},
            };
        case BasisKind::gell_mann:
            return {
                {{2, 3, 4}, {4, 7, 2}, {5, 6, -2}},
                {{1, 3, -4}, {4, 6, 2}, {5, 7, 2}},
                {{1, 2, -4}, {4, 5, 2}, {6, 7, 2}},
                {{1, 7, 2}, {2, 6, 2}, {3, 5, 2}, {5, 8, -2 * s3}},
                {{1, 6, 2}, {2, 7, 2}, {3, 4, 2}, {4, 8, 2 * s3}},
                {{1, 5, -2}, {2, 4, -2}, {3, 7, 2}, {7, 8, 2 * s3}},
                {{1, 4, 2}, {2, 5, 2}, {3, 6, 2}, {6, 8, 2 * s3}},
                {{4, 5, 2 * s3}, {6, 7, 2 * s3}},
            };
        case BasisKind::pauli_product:
            return {
                {{2, 3, 8}, {10, 13, 8}, {11, 14, 8}, {12, 15, 8}},
                {{1, 3, -8}, {7, 13, -8}, {8, 14, -8}, {9, 15, -8}},
                {{1, 2, 8}, {7, 10, 8}, {8, 11, 8}, {9, 12, 8}},
                {{5, 6, 8}, {8, 9, 8}, {11, 12, 8}, {14, 15, 8}},
                {{4, 6, -8}, {7, 9, -8}, {10, 12, -8}, {13, 15, -8}},
                {{4, 5, 8}, {7, 8, 8}, {10, 11, 8}, {13, 14, 8}},
                {{2, 13, 8}, {3, 10, -8}, {5, 9, 8}, {6, 8, -8}},
                {{2, 14, -8}, {3, 11, -8}, {4, 9, -8}, {6, 7, 8}},
                {{2, 15, 8}, {3, 12, -8}, {4, 8, 8}, {5, 7, -8}},
                {{1, 13, -8}, {3, 7, 8}, {5, 12, 8}, {6, 11, -8}},
                {{1, 14, -8}, {3, 8, 8}, {4, 12, -8}, {6, 10, 8}},
                {{1, 15, -8}, {3, 9, 8}, {4, 11, 8}, {5, 10, -8}},
                {{1, 10, 8}, {2, 7, -8}, {5, 15, 8}, {6, 14, -8}},
                {{1, 11, 8}, {2, 8, -8}, {4, 15, -8}, {6, 13, 8}},
                {{1, 12, 8}, {2, 9, -8}, {4, 14, 8}, {5, 13, -8}},
            };
    }
    return {};
}

// Second printed variant of the gell_mann generator-3 row; the two published
// forms disagree in sign on one plane.
std::vector<PlaneTerm> gell_mann_3_alternate() {
    return {{1, 2, -1}, {4, 5, 1}, {6, 7, -1}};
}

bool same_membership(const std::vector<PlaneTerm>& a, const std::vector<PlaneTerm>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].mu != b[i].mu || a[i].nu != b[i].nu) return false;
    }
    return true;
}

}  // namespace

ReconciliationReport reconcile_reference_tables(const GeneratorBasis& basis) {
    const auto table = printed_table(basis.kind);
    const StructureTensor f = structure_constants(basis);

    ReconciliationReport report;
    report.kind = basis.kind;
    report.all_membership_match = true;

    for (int l = 0; l < basis.N; ++l) {
        GeneratorReconciliation entry;
        entry.generator_index = l + 1;
        entry.printed_planes = table[static_cast<std::size_t>(l)];
        std::sort(entry.printed_planes.begin(), entry.printed_planes.end(),
                  [](const PlaneTerm& a, const PlaneTerm& b) {
                      return std::tie(a.mu, a.nu) < std::tie(b.mu, b.nu);
                  });

        RVector dir = RVector::Zero(basis.N);
        dir[l] = 1.0;
        entry.oracle_planes = adjoint_generator(basis, f, dir).planes;

        entry.membership_match = same_membership(entry.printed_planes, entry.oracle_planes);
        if (!entry.membership_match) report.all_membership_match = false;

        if (basis.kind == BasisKind::gell_mann && l == 2) {
            entry.alt_printed_planes = gell_mann_3_alternate();
            for (std::size_t p = 0; p < entry.printed_planes.size(); ++p) {
                const auto& main = entry.printed_planes[p];
                const auto& alt = entry.alt_printed_planes[p];
                if (main.coef * alt.coef < 0.0) {
                    entry.printed_sign_conflicts.emplace_back(main.mu, main.nu);
                }
            }
            if (!entry.printed_sign_conflicts.empty()) {
                std::ostringstream msg;
                msg << "the two printed forms of this row disagree in sign on plane";
                for (const auto& [mu, nu] : entry.printed_sign_conflicts) {
                    msg << " (" << mu << "," << nu << ")";
                }
                msg << "; the commutator oracle fixes the coefficients";
                entry.notes.push_back(msg.str());
            }
        }

        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace cdd
