#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinspec/linalg.hpp"
#include "spinspec/pauli.hpp"

namespace spinspec {

/// Real coefficient attached to a phase-(+1) Pauli string; hermitian by construction.
struct OperatorTerm {
    double coefficient;
    PauliString string;
};

struct HamiltonianSpec {
    std::size_t qubit_count;
    std::vector<OperatorTerm> terms;
};

/// Validates coefficients (finite), phases (+1 only) and uniform qubit count.
HamiltonianSpec make_hamiltonian(std::size_t qubit_count, std::vector<OperatorTerm> terms);

struct TwoSpinParams {
    double omega1;
    double omega2;
    double eps;         // coupling, >= 0
    double hbar = 1.0;  // > 0
};

struct TripleSpinParams {
    double omega1;
    double omega2;
    double omega3;
    double gamma12;
    double gamma13;
    double gamma23;
    double eps;         // triple coupling, >= 0
    double hbar = 1.0;  // > 0
};

/// Sum of coefficient * string matrix; hermitian 2^q.
ComplexMatrix build_matrix(const HamiltonianSpec& spec);

// Two-spin models: hw1*Z⊗I + hw2*I⊗X plus the interaction term, eps*Z⊗X for
// the H family and eps*X⊗Z (the swapped factors) for the K family.
HamiltonianSpec preset_H2(const TwoSpinParams& p);
HamiltonianSpec preset_K2(const TwoSpinParams& p);

// Triple-spin models: single-spin X/Y/Z terms, pair couplings, and a triple
// interaction X⊗Y⊗Z (H family) or Z⊗Y⊗X (K family).
HamiltonianSpec preset_H3(const TripleSpinParams& p);
HamiltonianSpec preset_K3(const TripleSpinParams& p);

/// Checks the standing model assumptions on a coefficient pair (A, B):
/// noncommutativity and Hilbert-Schmidt orthogonality. Flags, never refuses.
struct AssumptionReport {
    bool noncommuting;
    double commutator_max_abs;
    bool orthogonal;
    double hs_inner_abs;
};

AssumptionReport validate_assumptions(const ComplexMatrix& a, const ComplexMatrix& b);

/// One term per line: "<coefficient> <pauli-string>". Blank lines and '#'
/// comments ignored. Strings must carry phase +1 (put signs in the coefficient).
HamiltonianSpec parse_term_list(std::istream& in);
HamiltonianSpec parse_term_list_file(const std::string& path);

}  // namespace spinspec
