// linalg.hpp — shared matrix aliases and small dense helpers.
//
// Everything in this library works at desk scale (system dimension n <= 4,
// adjoint dimension N <= 15, joint system+bath dimension <= 32), so dense
// Eigen types and full eigendecompositions are used throughout.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace cdd {

using Matrix = Eigen::MatrixXcd;   // complex operators
using RMatrix = Eigen::MatrixXd;   // real rotations / generators
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

// Kronecker product, row-major block convention: (A ⊗ B)[(i*rB+k),(j*cB+l)] = A(i,j)B(k,l)
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

inline double hermiticity_deviation(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double unitarity_deviation(const Matrix& u) {
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

inline void require_square(const Matrix& m, const std::string& who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(who + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline void require_hermitian(const Matrix& m, const std::string& who, double tol = 1e-12) {
    require_square(m, who);
    const double dev = hermiticity_deviation(m);
    if (dev > tol) {
        throw std::invalid_argument(who + ": matrix is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
    }
}

// Cached eigendecomposition of a Hermitian matrix H, for repeated evaluation
// of the propagator exp(-i θ H). Exact and exactly unitary per call.
class HermitianPropagator {
public:
    explicit HermitianPropagator(const Matrix& h) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("HermitianPropagator: eigendecomposition failed");
        }
        vectors_ = solver.eigenvectors();
        values_ = solver.eigenvalues();
    }

    // exp(-i θ H)
    Matrix operator()(double theta) const {
        const CVector phases =
            (-kImag * theta * values_.array()).exp().matrix().cast<Complex>();
        return vectors_ * phases.asDiagonal() * vectors_.adjoint();
    }

private:
    Matrix vectors_;
    RVector values_;
};

inline Matrix expm_hermitian(const Matrix& h, double theta) {
    return HermitianPropagator(h)(theta);
}

// Cached rotation family exp(θ F) for a real antisymmetric F (i·F is Hermitian).
class RotationFamily {
public:
    explicit RotationFamily(const RMatrix& f)
        : prop_(kImag * f.cast<Complex>()) {}

    // exp(θ F), exactly orthogonal per call
    RMatrix operator()(double theta) const {
        return prop_(theta).real();
    }

private:
    HermitianPropagator prop_;
};

inline RMatrix rotation_exp(const RMatrix& f, double theta) {
    return RotationFamily(f)(theta);
}

}  // namespace cdd
