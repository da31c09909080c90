#pragma once

#include <cstddef>
#include <vector>

#include "spinspec/linalg.hpp"

namespace spinspec {

/// Normalized pure state of 2 or 3 qubits.
struct PureState {
    std::size_t qubit_count;
    ComplexVector amplitudes;  // dim 2^qubit_count, norm within 1e-12 of 1
};

/// Validates dimension (4 or 8) and normalization; infers the qubit count.
PureState make_pure_state(ComplexVector amplitudes);

enum class TangleMeasure { tangle, three_tangle };

struct TangleReport {
    double value;  // in [0, 1]
    TangleMeasure measure;
    // Set by spectrum-analysis callers when the source eigenvalue is
    // (near-)degenerate: the tangle of one returned eigenvector is then
    // basis-dependent and subspace_tangle_range is the stable quantity.
    bool degenerate_basis_flag = false;
};

/// Squared spin-flip concurrence |psi^T (sigma_y ⊗ sigma_y) psi|^2 of a
/// normalized 2-qubit state; 0 exactly for product states, 1 for Bell states.
TangleReport tangle2(const PureState& s);

/// Residual tripartite entanglement 4|d1 - 2 d2 + 4 d3| of a 3-qubit state
/// (Cayley hyperdeterminant form); 1 for GHZ, 0 for W and all product splits.
TangleReport three_tangle(const PureState& s);

/// Singular values (descending) of the amplitude matrix reshaped so the given
/// qubit positions index the rows. Squares sum to 1 for a normalized state.
std::vector<double> schmidt_coefficients(const PureState& s,
                                         const std::vector<std::size_t>& bipartition);

/// True iff the second-largest Schmidt coefficient is at most tol.
bool is_product(const PureState& s, const std::vector<std::size_t>& bipartition,
                double tol = 1e-9);

struct TangleRange {
    double min;
    double theta_min;
    double phi_min;
    double max;
    double theta_max;
    double phi_max;
};

/// Scans tangle2 over normalized superpositions cos(theta) v1 + e^{i phi}
/// sin(theta) v2 of two orthogonal 2-qubit states (theta in [0, pi/2], phi in
/// [0, 2 pi)), then refines both extrema by coordinate golden-section to 1e-8.
/// Ties resolve to the smallest theta, then the smallest phi.
TangleRange subspace_tangle_range(const PureState& v1, const PureState& v2, int grid = 360);

}  // namespace spinspec
