#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spinspec/linalg.hpp"

namespace spinspec {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter l);

/// One element of the Pauli group: a phase i^k (k in 0..3, i.e. one of
/// {1, i, -1, -i}) times a tensor product of single-qubit letters.
/// Phases stay exact symbols; no floating point enters the group arithmetic.
class PauliString {
public:
    PauliString(int phase_power, std::vector<PauliLetter> letters);
    static PauliString identity(std::size_t qubit_count);

    int phase_power() const { return phase_power_; }
    ComplexScalar phase() const;
    const std::vector<PauliLetter>& letters() const { return letters_; }
    std::size_t qubit_count() const { return letters_.size(); }

    /// phase in {1, -1}; the induced matrix is then hermitian.
    bool hermitian() const { return phase_power_ == 0 || phase_power_ == 2; }

    bool operator==(const PauliString&) const = default;

    /// Canonical order: lexicographic by letters (I < X < Y < Z), then phase index.
    std::strong_ordering operator<=>(const PauliString& other) const;

private:
    int phase_power_;
    std::vector<PauliLetter> letters_;
};

const ComplexMatrix& pauli_matrix(PauliLetter l);

/// phase * sigma_{l1} ⊗ ... ⊗ sigma_{lq} as a dense 2^q matrix.
ComplexMatrix string_to_matrix(const PauliString& s);

/// Group product with letterwise multiplication (X*Y = iZ and cyclic) and
/// accumulated phase. Matches the matrix product exactly.
PauliString multiply(const PauliString& a, const PauliString& b);

/// Symplectic criterion: true iff the number of positions where the letters
/// differ and neither is I is even. Agrees with the matrix commutator vanishing.
bool commutes(const PauliString& a, const PauliString& b);

/// Finite group generated by the given strings under multiply, phases included,
/// deduplicated and canonically sorted.
std::vector<PauliString> closure(const std::vector<PauliString>& generators);

/// Text form: optional sign, optional phase marker, then letters. Grammar:
///   string := ['+'|'-'] ['i'] letters
/// A lowercase 'i' directly after the optional sign multiplies the phase by i;
/// the identity letter must be written as uppercase 'I' (a lowercase 'i' in the
/// letter body is rejected as ambiguous). X/Y/Z accept either case. Examples:
/// "ZX", "-iYZX", "zx", "-IXZ" (= -1 * I⊗X⊗Z), "iXZ" (= i * X⊗Z).
PauliString parse_pauli_string(std::string_view text);

std::string to_string(const PauliString& s);

}  // namespace spinspec
