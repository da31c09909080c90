#include "spinspec/hamiltonian.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace spinspec {

namespace {

void check_two_spin(const TwoSpinParams& p) {
    if (!std::isfinite(p.omega1) || !std::isfinite(p.omega2) || !std::isfinite(p.eps) ||
        !std::isfinite(p.hbar))
        throw std::invalid_argument("two-spin params: non-finite value");
    if (p.eps < 0.0) throw std::invalid_argument("two-spin params: eps must be >= 0");
    if (p.hbar <= 0.0) throw std::invalid_argument("two-spin params: hbar must be > 0");
}

void check_triple_spin(const TripleSpinParams& p) {
    for (double v : {p.omega1, p.omega2, p.omega3, p.gamma12, p.gamma13, p.gamma23, p.eps, p.hbar})
        if (!std::isfinite(v)) throw std::invalid_argument("triple-spin params: non-finite value");
    if (p.eps < 0.0) throw std::invalid_argument("triple-spin params: eps must be >= 0");
    if (p.hbar <= 0.0) throw std::invalid_argument("triple-spin params: hbar must be > 0");
}

OperatorTerm term(double coefficient, const char* letters) {
    return {coefficient, parse_pauli_string(letters)};
}

void check_spec(std::size_t qubit_count, const std::vector<OperatorTerm>& terms) {
    if (qubit_count == 0) throw std::invalid_argument("hamiltonian: qubit count must be positive");
    if (terms.empty()) throw std::invalid_argument("hamiltonian: term list must be nonempty");
    for (const auto& t : terms) {
        if (!std::isfinite(t.coefficient))
            throw std::invalid_argument("hamiltonian: non-finite coefficient");
        if (t.string.phase_power() != 0)
            throw std::invalid_argument("hamiltonian: term strings must carry phase +1");
        if (t.string.qubit_count() != qubit_count)
            throw std::invalid_argument("hamiltonian: mixed qubit counts in term list");
    }
}

}  // namespace

HamiltonianSpec make_hamiltonian(std::size_t qubit_count, std::vector<OperatorTerm> terms) {
    check_spec(qubit_count, terms);
    return {qubit_count, std::move(terms)};
}

ComplexMatrix build_matrix(const HamiltonianSpec& spec) {
    check_spec(spec.qubit_count, spec.terms);
    const std::size_t dim = std::size_t{1} << spec.qubit_count;
    ComplexMatrix h(dim, dim);
    for (const auto& t : spec.terms) h = h + ComplexScalar(t.coefficient) * string_to_matrix(t.string);
    return h;
}

HamiltonianSpec preset_H2(const TwoSpinParams& p) {
    check_two_spin(p);
    return make_hamiltonian(2, {term(p.hbar * p.omega1, "ZI"), term(p.hbar * p.omega2, "IX"),
                                term(p.eps, "ZX")});
}

HamiltonianSpec preset_K2(const TwoSpinParams& p) {
    check_two_spin(p);
    return make_hamiltonian(2, {term(p.hbar * p.omega1, "ZI"), term(p.hbar * p.omega2, "IX"),
                                term(p.eps, "XZ")});
}

HamiltonianSpec preset_H3(const TripleSpinParams& p) {
    check_triple_spin(p);
    return make_hamiltonian(3, {term(p.hbar * p.omega1, "XII"), term(p.hbar * p.omega2, "IYI"),
                                term(p.hbar * p.omega3, "IIZ"), term(p.gamma12, "XYI"),
                                term(p.gamma13, "XIZ"), term(p.gamma23, "IYZ"),
                                term(p.eps, "XYZ")});
}

HamiltonianSpec preset_K3(const TripleSpinParams& p) {
    check_triple_spin(p);
    return make_hamiltonian(3, {term(p.hbar * p.omega1, "XII"), term(p.hbar * p.omega2, "IYI"),
                                term(p.hbar * p.omega3, "IIZ"), term(p.gamma12, "XYI"),
                                term(p.gamma13, "XIZ"), term(p.gamma23, "IYZ"),
                                term(p.eps, "ZYX")});
}

AssumptionReport validate_assumptions(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw std::invalid_argument("validate_assumptions: dimension mismatch");
    AssumptionReport r;
    r.commutator_max_abs = commutator(a, b).max_abs();
    r.noncommuting = r.commutator_max_abs > 1e-12;
    r.hs_inner_abs = std::abs(hs_inner(a, b));
    r.orthogonal = r.hs_inner_abs <= 1e-12;
    return r;
}

HamiltonianSpec parse_term_list(std::istream& in) {
    std::vector<OperatorTerm> terms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string coeff_text, string_text, extra;
        if (!(fields >> coeff_text)) continue;  // blank or comment-only line
        if (!(fields >> string_text))
            throw std::invalid_argument("term list line " + std::to_string(lineno) +
                                        ": expected '<coefficient> <pauli-string>'");
        if (fields >> extra)
            throw std::invalid_argument("term list line " + std::to_string(lineno) +
                                        ": unexpected trailing token '" + extra + "'");
        double coeff = 0.0;
        const char* first = coeff_text.data();
        const char* last = first + coeff_text.size();
        const auto [ptr, ec] = std::from_chars(first, last, coeff);
        if (ec != std::errc{} || ptr != last)
            throw std::invalid_argument("term list line " + std::to_string(lineno) +
                                        ": invalid coefficient '" + coeff_text + "'");
        PauliString s = [&] {
            try {
                return parse_pauli_string(string_text);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("term list line " + std::to_string(lineno) + ": " +
                                            e.what());
            }
        }();
        if (s.phase_power() != 0)
            throw std::invalid_argument("term list line " + std::to_string(lineno) +
                                        ": string phase must be +1 (fold signs into the coefficient)");
        terms.push_back({coeff, std::move(s)});
    }
    if (terms.empty()) throw std::invalid_argument("term list: no terms found");
    const std::size_t q = terms.front().string.qubit_count();
    return make_hamiltonian(q, std::move(terms));
}

HamiltonianSpec parse_term_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("term list: cannot open '" + path + "'");
    try {
        return parse_term_list(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

}  // namespace spinspec
