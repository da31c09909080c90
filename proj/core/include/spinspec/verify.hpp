#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinspec {

struct VerifyCheck {
    std::string name;
    bool passed;
    double measured;
    double expected;
    double tolerance;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool overall() const;
};

struct VerifyOptions {
    double hbar = 1.0;
    std::uint64_t seed = 42;
    // Self-test knob: perturbs the two-spin K matrix (entries (0,2)/(2,0), by
    // 1e-3) before its closed-form spectrum checks, which must then fail.
    bool fault_inject_k2 = false;
};

/// Runs the full reproduction battery: commutator and swap-gate identities,
/// Kronecker-pair spectra, the eigenvector catalogs (product, Bell, the
/// maximally entangled quadruple), two-spin closed forms and traces, the
/// crossing/no-crossing dichotomy, the triple interaction and its product
/// eigenbasis, three-tangle values, and the triple-spin models at a pinned
/// generic parameter point.
VerifyReport verify_paper(const VerifyOptions& options = {});

}  // namespace spinspec
