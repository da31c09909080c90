#pragma once

#include <stdexcept>
#include <vector>

#include "spinspec/linalg.hpp"

namespace spinspec {

/// Full eigendecomposition of a hermitian matrix.
///
/// Eigenvalues are ascending; eigenvectors[k] pairs with eigenvalues[k] and the
/// set is orthonormal. Each eigenvector is phase-fixed: its largest-magnitude
/// entry (lowest index on ties within 1e-12) is real and positive.
struct Spectrum {
    std::size_t dim = 0;
    std::vector<double> eigenvalues;
    std::vector<ComplexVector> eigenvectors;
    double max_residual = 0.0;
};

class EighConvergenceError : public std::runtime_error {
public:
    EighConvergenceError(double off_diagonal_norm, int sweeps);
    double off_diagonal_norm() const { return off_diagonal_norm_; }
    int sweeps() const { return sweeps_; }

private:
    double off_diagonal_norm_;
    int sweeps_;
};

/// Cyclic Jacobi for complex hermitian matrices. The input must be hermitian
/// within 1e-12 entrywise; sweeps stop once the off-diagonal Frobenius norm
/// drops below 1e-13 * ||m||_F, capped at 100 sweeps. Deterministic: two calls
/// on the same matrix return bit-identical output.
Spectrum eigh(const ComplexMatrix& m);

/// V diag(exp(t*lambda_k)) V† through eigh(m); hermitian positive definite for real t.
ComplexMatrix mat_exp_hermitian(const ComplexMatrix& m, double t);

}  // namespace spinspec
