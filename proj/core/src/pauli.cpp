#include "spinspec/pauli.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace spinspec {

namespace {

struct LetterProduct {
    int phase_power;  // 0, 1 or 3
    PauliLetter letter;
};

// row = left factor, col = right factor
constexpr LetterProduct kMulTable[4][4] = {
    /* I */ {{0, PauliLetter::I}, {0, PauliLetter::X}, {0, PauliLetter::Y}, {0, PauliLetter::Z}},
    /* X */ {{0, PauliLetter::X}, {0, PauliLetter::I}, {1, PauliLetter::Z}, {3, PauliLetter::Y}},
    /* Y */ {{0, PauliLetter::Y}, {3, PauliLetter::Z}, {0, PauliLetter::I}, {1, PauliLetter::X}},
    /* Z */ {{0, PauliLetter::Z}, {1, PauliLetter::Y}, {3, PauliLetter::X}, {0, PauliLetter::I}},
};

void require_same_qubits(const PauliString& a, const PauliString& b, const char* op) {
    if (a.qubit_count() != b.qubit_count()) {
        throw std::invalid_argument(std::string(op) + ": qubit-count mismatch " +
                                    std::to_string(a.qubit_count()) + " vs " +
                                    std::to_string(b.qubit_count()));
    }
}

}  // namespace

char to_char(PauliLetter l) {
    switch (l) {
        case PauliLetter::I: return 'I';
        case PauliLetter::X: return 'X';
        case PauliLetter::Y: return 'Y';
        case PauliLetter::Z: return 'Z';
    }
    throw std::invalid_argument("to_char: invalid letter");
}

PauliString::PauliString(int phase_power, std::vector<PauliLetter> letters)
    : phase_power_(((phase_power % 4) + 4) % 4), letters_(std::move(letters)) {
    if (letters_.empty()) throw std::invalid_argument("PauliString: empty letter sequence");
}

PauliString PauliString::identity(std::size_t qubit_count) {
    return PauliString(0, std::vector<PauliLetter>(qubit_count, PauliLetter::I));
}

ComplexScalar PauliString::phase() const {
    switch (phase_power_) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

std::strong_ordering PauliString::operator<=>(const PauliString& other) const {
    if (auto c = letters_ <=> other.letters_; c != 0) return c;
    return phase_power_ <=> other.phase_power_;
}

const ComplexMatrix& pauli_matrix(PauliLetter l) {
    static const ComplexMatrix sigma_i = [] {
        ComplexMatrix m(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = 1.0;
        return m;
    }();
    static const ComplexMatrix sigma_x = [] {
        ComplexMatrix m(2, 2);
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        return m;
    }();
    static const ComplexMatrix sigma_y = [] {
        ComplexMatrix m(2, 2);
        m(0, 1) = {0.0, -1.0};
        m(1, 0) = {0.0, 1.0};
        return m;
    }();
    static const ComplexMatrix sigma_z = [] {
        ComplexMatrix m(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        return m;
    }();
    switch (l) {
        case PauliLetter::I: return sigma_i;
        case PauliLetter::X: return sigma_x;
        case PauliLetter::Y: return sigma_y;
        case PauliLetter::Z: return sigma_z;
    }
    throw std::invalid_argument("pauli_matrix: invalid letter");
}

ComplexMatrix string_to_matrix(const PauliString& s) {
    ComplexMatrix m(1, 1);
    m(0, 0) = s.phase();
    for (PauliLetter l : s.letters()) m = kron(m, pauli_matrix(l));
    return m;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    require_same_qubits(a, b, "multiply");
    int phase = a.phase_power() + b.phase_power();
    std::vector<PauliLetter> letters(a.qubit_count());
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const LetterProduct p =
            kMulTable[static_cast<int>(a.letters()[i])][static_cast<int>(b.letters()[i])];
        phase += p.phase_power;
        letters[i] = p.letter;
    }
    return PauliString(phase, std::move(letters));
}

bool commutes(const PauliString& a, const PauliString& b) {
    require_same_qubits(a, b, "commutes");
    int anticommuting = 0;
    for (std::size_t i = 0; i < a.qubit_count(); ++i) {
        const PauliLetter la = a.letters()[i];
        const PauliLetter lb = b.letters()[i];
        if (la != lb && la != PauliLetter::I && lb != PauliLetter::I) ++anticommuting;
    }
    return anticommuting % 2 == 0;
}

std::vector<PauliString> closure(const std::vector<PauliString>& generators) {
    if (generators.empty()) throw std::invalid_argument("closure: empty generator list");
    for (const auto& g : generators) require_same_qubits(generators.front(), g, "closure");

    std::set<PauliString> group(generators.begin(), generators.end());
    // fixed point under pairwise products; terminates since |P_q| = 4^(q+1)
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<PauliString> snapshot(group.begin(), group.end());
        for (const auto& a : snapshot) {
            for (const auto& b : snapshot) {
                if (group.insert(multiply(a, b)).second) grew = true;
            }
        }
    }
    return {group.begin(), group.end()};
}

PauliString parse_pauli_string(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("pauli string: empty");
    for (char c : text) {
        if (c == ' ' || c == '\t') throw std::invalid_argument("pauli string: whitespace not allowed");
    }

    int phase = 0;
    std::size_t pos = 0;
    if (text[pos] == '+' || text[pos] == '-') {
        if (text[pos] == '-') phase += 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        ++pos;
    }
    if (pos == text.size()) throw std::invalid_argument("pauli string: no letters");

    std::vector<PauliLetter> letters;
    letters.reserve(text.size() - pos);
    for (; pos < text.size(); ++pos) {
        switch (text[pos]) {
            case 'I': letters.push_back(PauliLetter::I); break;
            case 'i':
                throw std::invalid_argument(
                    "pauli string: lowercase 'i' in letter body is ambiguous; write 'I'");
            case 'X': case 'x': letters.push_back(PauliLetter::X); break;
            case 'Y': case 'y': letters.push_back(PauliLetter::Y); break;
            case 'Z': case 'z': letters.push_back(PauliLetter::Z); break;
            default:
                throw std::invalid_argument(std::string("pauli string: invalid character '") +
                                            text[pos] + "'");
        }
    }
    return PauliString(phase, std::move(letters));
}

std::string to_string(const PauliString& s) {
    std::string out;
    switch (s.phase_power()) {
        case 0: break;
        case 1: out += "i"; break;
        case 2: out += "-"; break;
        default: out += "-i"; break;
    }
    for (PauliLetter l : s.letters()) out += to_char(l);
    return out;
}

}  // namespace spinspec
