#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdd/lie_algebra.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>

using namespace cdd;

namespace {

GeneratorBasis basis_of(BasisKind kind) {
    switch (kind) {
        case BasisKind::pauli: return build_basis(kind, 2);
        case BasisKind::gell_mann: return build_basis(kind, 3);
        case BasisKind::pauli_product: return build_basis(kind, 4);
    }
    throw std::logic_error("unreachable");
}

const std::vector<BasisKind> kAllKinds = {BasisKind::pauli, BasisKind::gell_mann,
                                          BasisKind::pauli_product};

}  // namespace

TEST_CASE("generator bases satisfy the construction invariants") {
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        CAPTURE(basis.id());
        CHECK(basis.N == basis.n * basis.n - 1);
        CHECK(static_cast<int>(basis.generators.size()) == basis.N);
        CHECK(static_cast<int>(basis.labels.size()) == basis.N);

        for (const auto& lambda : basis.generators) {
            CHECK(hermiticity_deviation(lambda) <= 1e-14);
            CHECK(std::abs(lambda.trace()) <= 1e-14);
        }
        // trace-orthogonality doubles as a full-rank Gram check
        for (int i = 0; i < basis.N; ++i) {
            for (int j = 0; j < basis.N; ++j) {
                const double expected = i == j ? basis.M : 0.0;
                const Complex gram = (basis.generators[i] * basis.generators[j]).trace();
                CHECK(std::abs(gram - expected) <= 1e-12);
            }
        }
    }
}

TEST_CASE("basis normalization constants") {
    CHECK(basis_of(BasisKind::pauli).M == doctest::Approx(2.0));
    CHECK(basis_of(BasisKind::gell_mann).M == doctest::Approx(2.0));
    CHECK(basis_of(BasisKind::pauli_product).M == doctest::Approx(4.0));
}

TEST_CASE("pauli basis is sigma_x, sigma_y, sigma_z") {
    const GeneratorBasis basis = build_basis(BasisKind::pauli, 2);
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, -kImag, kImag, 0;
    sz << 1, 0, 0, -1;
    CHECK((basis.generators[0] - sx).norm() == 0.0);
    CHECK((basis.generators[1] - sy).norm() == 0.0);
    CHECK((basis.generators[2] - sz).norm() == 0.0);
}

TEST_CASE("gell_mann eighth generator is diag(1,1,-2)/sqrt(3)") {
    const GeneratorBasis basis = build_basis(BasisKind::gell_mann, 3);
    Matrix expected = Matrix::Zero(3, 3);
    const double r = 1.0 / std::sqrt(3.0);
    expected(0, 0) = r;
    expected(1, 1) = r;
    expected(2, 2) = -2.0 * r;
    CHECK((basis.generators[7] - expected).norm() <= 1e-15);
}

TEST_CASE("pauli_product ordering follows the single-then-double factor listing") {
    const GeneratorBasis basis = build_basis(BasisKind::pauli_product, 4);
    const GeneratorBasis pauli = build_basis(BasisKind::pauli, 2);
    const Matrix id2 = Matrix::Identity(2, 2);
    CHECK((basis.generators[0] - kron(pauli.generators[0], id2)).norm() == 0.0);   // σx⊗1
    CHECK((basis.generators[3] - kron(id2, pauli.generators[0])).norm() == 0.0);   // 1⊗σx
    CHECK((basis.generators[6] - kron(pauli.generators[0], pauli.generators[0])).norm() ==
          0.0);                                                                    // σx⊗σx
    CHECK((basis.generators[14] - kron(pauli.generators[2], pauli.generators[2])).norm() ==
          0.0);                                                                    // σz⊗σz
    CHECK(basis.labels[6] == "σx⊗σx");
}

TEST_CASE("unsupported (kind, n) pairs are rejected with a diagnostic") {
    CHECK_THROWS_WITH_AS(build_basis(BasisKind::pauli, 3),
                         doctest::Contains("unsupported"), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(BasisKind::gell_mann, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(BasisKind::pauli_product, 2), std::invalid_argument);
}

TEST_CASE("structure constants: pauli f_123 from an independent trace oracle") {
    // oracle built from scratch: f_123 = Tr(σz [σx, σy]) / (2i)
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, -kImag, kImag, 0;
    sz << 1, 0, 0, -1;
    const Complex oracle = (sz * (sx * sy - sy * sx)).trace() / (2.0 * kImag);
    CHECK(oracle.real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(oracle.imag() == doctest::Approx(0.0));

    const GeneratorBasis basis = build_basis(BasisKind::pauli, 2);
    const StructureTensor f = structure_constants(basis);
    CHECK(f(0, 1, 2) == doctest::Approx(oracle.real()).epsilon(1e-14));
}

TEST_CASE("structure constants: gell_mann f_458 from the commutator-trace oracle") {
    Matrix l4 = Matrix::Zero(3, 3), l5 = Matrix::Zero(3, 3), l8 = Matrix::Zero(3, 3);
    l4(0, 2) = 1; l4(2, 0) = 1;
    l5(0, 2) = -kImag; l5(2, 0) = kImag;
    const double r = 1.0 / std::sqrt(3.0);
    l8(0, 0) = r; l8(1, 1) = r; l8(2, 2) = -2.0 * r;
    const Complex oracle = (l8 * (l4 * l5 - l5 * l4)).trace() / (2.0 * kImag);
    CHECK(oracle.real() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));

    const GeneratorBasis basis = build_basis(BasisKind::gell_mann, 3);
    const StructureTensor f = structure_constants(basis);
    CHECK(f(3, 4, 7) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("structure tensors are totally antisymmetric and reconstruct commutators") {
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        CAPTURE(basis.id());
        const StructureTensor f = structure_constants(basis);

        for (int i = 0; i < basis.N; ++i) {
            for (int k = 0; k < basis.N; ++k) {
                CHECK(f(i, i, k) == 0.0);   // repeated index vanishes
            }
        }
        for (int i = 0; i < basis.N; ++i) {
            for (int j = 0; j < basis.N; ++j) {
                for (int k = 0; k < basis.N; ++k) {
                    CHECK(std::abs(f(i, j, k) + f(j, i, k)) <= 1e-12);
                    CHECK(std::abs(f(i, j, k) + f(i, k, j)) <= 1e-12);
                }
            }
        }
        for (int i = 0; i < basis.N; ++i) {
            for (int j = 0; j < basis.N; ++j) {
                Matrix reconstruction = Matrix::Zero(basis.n, basis.n);
                for (int k = 0; k < basis.N; ++k) {
                    if (f(i, j, k) != 0.0) {
                        reconstruction += kImag * f(i, j, k) * basis.generators[k];
                    }
                }
                const Matrix comm = commutator(basis.generators[i], basis.generators[j]);
                CHECK((reconstruction - comm).cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
    }
}

TEST_CASE("adjoint generator for the pauli e3 direction") {
    const GeneratorBasis basis = build_basis(BasisKind::pauli, 2);
    RVector dir = RVector::Zero(3);
    dir[2] = 1.0;
    const AdjointGenerator gen = adjoint_generator(basis, dir);

    CHECK((gen.F + gen.F.transpose()).norm() == 0.0);
    REQUIRE(gen.planes.size() == 1);
    CHECK(gen.planes[0].mu == 1);
    CHECK(gen.planes[0].nu == 2);
    // transport convention fixes the sign: d/dt R[exp(-i t σz)]ᵀ s |_0 = F s
    CHECK(gen.planes[0].coef == doctest::Approx(2.0));

    // plane list reconstructs F exactly
    RMatrix rebuilt = RMatrix::Zero(3, 3);
    for (const auto& p : gen.planes) {
        rebuilt(p.mu - 1, p.nu - 1) += p.coef;
        rebuilt(p.nu - 1, p.mu - 1) -= p.coef;
    }
    CHECK((rebuilt - gen.F).norm() == 0.0);
}

TEST_CASE("adjoint generator plane sets match the published membership") {
    const GeneratorBasis su3 = build_basis(BasisKind::gell_mann, 3);
    RVector e3 = RVector::Zero(8);
    e3[2] = 1.0;
    const AdjointGenerator gen3 = adjoint_generator(su3, e3);
    REQUIRE(gen3.planes.size() == 3);
    CHECK(gen3.planes[0].mu == 1); CHECK(gen3.planes[0].nu == 2);
    CHECK(gen3.planes[1].mu == 4); CHECK(gen3.planes[1].nu == 5);
    CHECK(gen3.planes[2].mu == 6); CHECK(gen3.planes[2].nu == 7);

    const GeneratorBasis su4 = build_basis(BasisKind::pauli_product, 4);
    RVector e7 = RVector::Zero(15);
    e7[6] = 1.0;
    const AdjointGenerator gen7 = adjoint_generator(su4, e7);
    REQUIRE(gen7.planes.size() == 4);
    CHECK(gen7.planes[0].mu == 2); CHECK(gen7.planes[0].nu == 13);
    CHECK(gen7.planes[1].mu == 3); CHECK(gen7.planes[1].nu == 10);
    CHECK(gen7.planes[2].mu == 5); CHECK(gen7.planes[2].nu == 9);
    CHECK(gen7.planes[3].mu == 6); CHECK(gen7.planes[3].nu == 8);
}

TEST_CASE("adjoint generator rejects the zero direction") {
    const GeneratorBasis basis = build_basis(BasisKind::pauli, 2);
    CHECK_THROWS_AS(adjoint_generator(basis, RVector::Zero(3)), std::invalid_argument);
}

TEST_CASE("adjoint generator matches the finite-difference transport derivative") {
    std::mt19937 rng(7);
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        CAPTURE(basis.id());
        for (int l = 0; l < basis.N; ++l) {
            RVector dir = RVector::Zero(basis.N);
            dir[l] = 1.0;
            const AdjointGenerator gen = adjoint_generator(basis, dir);
            const RVector s = testing::random_direction(basis.N, rng);

            const double h = 1e-6;
            const Matrix u_plus = expm_hermitian(basis.generators[l], h);
            const Matrix u_minus = expm_hermitian(basis.generators[l], -h);
            const RVector forward = adjoint_rotation(basis, u_plus).transpose() * s;
            const RVector backward = adjoint_rotation(basis, u_minus).transpose() * s;
            const RVector derivative = (forward - backward) / (2.0 * h);
            CHECK((derivative - gen.F * s).norm() <= 1e-6);
        }
    }
}

TEST_CASE("adjoint rotation of the identity is the identity") {
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        const RMatrix r = adjoint_rotation(basis, Matrix::Identity(basis.n, basis.n));
        CHECK((r - RMatrix::Identity(basis.N, basis.N)).norm() <= 1e-14);
    }
}

TEST_CASE("pi rotation about x maps to diag(1,-1,-1)") {
    const GeneratorBasis basis = build_basis(BasisKind::pauli, 2);
    const Matrix u = expm_hermitian(basis.generators[0], std::numbers::pi / 2.0);
    const RMatrix r = adjoint_rotation(basis, u);
    RMatrix expected = RMatrix::Identity(3, 3);
    expected(1, 1) = -1.0;
    expected(2, 2) = -1.0;
    CHECK((r - expected).norm() <= 1e-12);
}

TEST_CASE("adjoint rotations are orthogonal and homomorphic") {
    std::mt19937 rng(11);
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        CAPTURE(basis.id());
        for (int trial = 0; trial < 25; ++trial) {
            const Matrix u = testing::random_unitary(basis.n, rng);
            const Matrix v = testing::random_unitary(basis.n, rng);
            const RMatrix ru = adjoint_rotation(basis, u);
            const RMatrix rv = adjoint_rotation(basis, v);
            const RMatrix ruv = adjoint_rotation(basis, u * v);
            CHECK((ru.transpose() * ru - RMatrix::Identity(basis.N, basis.N)).norm() <= 1e-10);
            CHECK((ruv - ru * rv).norm() <= 1e-10);
        }
    }
}

TEST_CASE("adjoint rotation rejects non-unitary input with the deviation") {
    const GeneratorBasis basis = build_basis(BasisKind::pauli, 2);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 0) = 1.5;
    CHECK_THROWS_WITH_AS(adjoint_rotation(basis, bad), doctest::Contains("deviation"),
                         std::invalid_argument);
}

TEST_CASE("reference tables: membership matches for every generator of every basis") {
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        CAPTURE(basis.id());
        const ReconciliationReport report = reconcile_reference_tables(basis);
        CHECK(report.all_membership_match);
        CHECK(static_cast<int>(report.entries.size()) == basis.N);
        for (const auto& entry : report.entries) {
            CHECK(entry.membership_match);
        }
    }
}

TEST_CASE("reference tables: su2 generator 1 lives in plane (2,3)") {
    const auto report = reconcile_reference_tables(build_basis(BasisKind::pauli, 2));
    const auto& entry = report.entries[0];
    REQUIRE(entry.printed_planes.size() == 1);
    CHECK(entry.printed_planes[0].mu == 2);
    CHECK(entry.printed_planes[0].nu == 3);
    CHECK(entry.oracle_planes[0].mu == 2);
    CHECK(entry.oracle_planes[0].nu == 3);
}

TEST_CASE("reference tables: su3 generator 8 decomposes over (4,5) and (6,7)") {
    const auto report = reconcile_reference_tables(build_basis(BasisKind::gell_mann, 3));
    const auto& entry = report.entries[7];
    REQUIRE(entry.printed_planes.size() == 2);
    CHECK(entry.printed_planes[0].mu == 4);
    CHECK(entry.printed_planes[0].nu == 5);
    CHECK(entry.printed_planes[1].mu == 6);
    CHECK(entry.printed_planes[1].nu == 7);
}

TEST_CASE("reference tables: the su3 generator-3 printed sign conflict is reported") {
    const auto report = reconcile_reference_tables(build_basis(BasisKind::gell_mann, 3));
    const auto& entry = report.entries[2];
    CHECK(entry.membership_match);
    REQUIRE(!entry.alt_printed_planes.empty());
    REQUIRE(entry.printed_sign_conflicts.size() == 1);
    CHECK(entry.printed_sign_conflicts[0].first == 6);
    CHECK(entry.printed_sign_conflicts[0].second == 7);
    REQUIRE(!entry.notes.empty());
    // the oracle coefficient on the disputed plane is recorded alongside
    bool found = false;
    for (const auto& p : entry.oracle_planes) {
        if (p.mu == 6 && p.nu == 7) {
            found = true;
            CHECK(p.coef == doctest::Approx(-1.0));
        }
    }
    CHECK(found);
}
