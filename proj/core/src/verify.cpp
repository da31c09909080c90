#include "spinspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "spinspec/eigh.hpp"
#include "spinspec/entanglement.hpp"
#include "spinspec/hamiltonian.hpp"
#include "spinspec/linalg.hpp"
#include "spinspec/pauli.hpp"
#include "spinspec/spectra.hpp"

namespace spinspec {

namespace {

// mt19937_64 with explicit scaling so draws are identical across platforms
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        const double u = (gen() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

ComplexMatrix random_hermitian2(Rng& rng) {
    ComplexMatrix m(2, 2);
    m(0, 0) = rng.uniform(-1.0, 1.0);
    m(1, 1) = rng.uniform(-1.0, 1.0);
    const ComplexScalar off{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    m(0, 1) = off;
    m(1, 0) = std::conj(off);
    return m;
}

struct Battery {
    VerifyReport report;

    void check_leq(std::string name, double measured, double bound) {
        report.checks.push_back({std::move(name), measured <= bound, measured, 0.0, bound});
    }
    void check_eq(std::string name, double measured, double expected, double tol) {
        report.checks.push_back(
            {std::move(name), std::abs(measured - expected) <= tol, measured, expected, tol});
    }
    void check_geq(std::string name, double measured, double bound) {
        report.checks.push_back({std::move(name), measured >= bound, measured, bound, 0.0});
    }
};

double eigen_residual(const ComplexMatrix& m, const ComplexVector& v) {
    // residual against the Rayleigh quotient of v
    const ComplexVector mv = m * v;
    const double lambda = inner(v, mv).real();
    double s = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) s += std::norm(mv[i] - lambda * v[i]);
    return std::sqrt(s);
}

ComplexVector vec(std::initializer_list<ComplexScalar> init, double scale) {
    ComplexVector v(init);
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] *= scale;
    return v;
}

double max_dev_from_sorted(std::vector<double> got, std::vector<double> want) {
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    double dev = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) dev = std::max(dev, std::abs(got[i] - want[i]));
    return dev;
}

// tangle of a single-qubit-versus-rest cut: 4 (s0 s1)^2 from the Schmidt pair
double bipartition_tangle(const PureState& s, std::size_t qubit) {
    const std::vector<double> coeffs = schmidt_coefficients(s, {qubit});
    return 4.0 * coeffs[0] * coeffs[0] * coeffs[1] * coeffs[1];
}

std::size_t count_exact(const std::vector<CrossingEvent>& events) {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const auto& e) {
        return e.kind == CrossingEvent::Kind::exact;
    }));
}

}  // namespace

bool VerifyReport::overall() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

VerifyReport verify_paper(const VerifyOptions& options) {
    Battery b;
    Rng rng(options.seed);
    const double hbar = options.hbar;

    const ComplexMatrix I2 = ComplexMatrix::identity(2);
    const ComplexMatrix sx = pauli_matrix(PauliLetter::X);
    const ComplexMatrix sy = pauli_matrix(PauliLetter::Y);
    const ComplexMatrix sz = pauli_matrix(PauliLetter::Z);

    // (a) commutator identities on a random hermitian pair
    {
        const ComplexMatrix A = random_hermitian2(rng);
        const ComplexMatrix B = random_hermitian2(rng);
        b.check_leq("a1 [A x I, I x B] = 0", commutator(kron(A, I2), kron(I2, B)).max_abs(), 1e-12);
        b.check_leq("a2 [A x I, A x B] = 0", commutator(kron(A, I2), kron(A, B)).max_abs(), 1e-12);
        b.check_leq("a3 [I x B, A x B] = 0", commutator(kron(I2, B), kron(A, B)).max_abs(), 1e-12);
        b.check_leq("a4 [A x I, B x A] = [A,B] x A",
                    max_abs_diff(commutator(kron(A, I2), kron(B, A)), kron(commutator(A, B), A)),
                    1e-12);
        b.check_leq("a5 [I x B, B x A] = B x [B,A]",
                    max_abs_diff(commutator(kron(I2, B), kron(B, A)), kron(B, commutator(B, A))),
                    1e-12);
    }

    // (b) swap-gate conjugations
    {
        const ComplexMatrix A = random_hermitian2(rng);
        const ComplexMatrix B = random_hermitian2(rng);
        const ComplexMatrix P = swap_permutation(2);
        b.check_leq("b1 P (A x B) P^-1 = B x A", max_abs_diff(P * kron(A, B) * P, kron(B, A)),
                    1e-12);
        b.check_leq("b2 P (A x I) P^-1 = I x A", max_abs_diff(P * kron(A, I2) * P, kron(I2, A)),
                    1e-12);
        b.check_leq("b3 P (I x B) P^-1 = B x I", max_abs_diff(P * kron(I2, B) * P, kron(B, I2)),
                    1e-12);
    }

    // (c) two-letter Pauli products have eigenvalues -1, -1, +1, +1
    {
        const struct {
            const char* name;
            ComplexMatrix m;
        } pairs[] = {{"sx x sx", kron(sx, sx)},
                     {"sy x sy", kron(sy, sy)},
                     {"sz x sz", kron(sz, sz)},
                     {"sx x sz", kron(sx, sz)},
                     {"sz x sx", kron(sz, sx)}};
        for (const auto& p : pairs) {
            const Spectrum s = eigh(p.m);
            b.check_leq(std::string("c eigenvalues of ") + p.name + " are {-1,-1,1,1}",
                        max_dev_from_sorted(s.eigenvalues, {-1.0, -1.0, 1.0, 1.0}), 1e-12);
        }
    }

    // (d) listed product eigenvectors and the Bell basis
    {
        const double r2 = 1.0 / std::sqrt(2.0);
        const ComplexScalar im{0.0, 1.0};

        const auto catalog_check = [&](const char* name, const ComplexMatrix& m,
                                       const std::vector<ComplexVector>& vs) {
            double worst = 0.0;
            for (const auto& v : vs) worst = std::max(worst, eigen_residual(m, v));
            b.check_leq(std::string("d product eigenvectors of ") + name, worst, 1e-12);
        };
        catalog_check("sz x sz", kron(sz, sz),
                      {vec({1, 0, 0, 0}, 1), vec({0, 1, 0, 0}, 1), vec({0, 0, 1, 0}, 1),
                       vec({0, 0, 0, 1}, 1)});
        catalog_check("sx x sx", kron(sx, sx),
                      {vec({1, 1, 1, 1}, 0.5), vec({1, -1, 1, -1}, 0.5), vec({1, 1, -1, -1}, 0.5),
                       vec({1, -1, -1, 1}, 0.5)});
        catalog_check("sy x sy", kron(sy, sy),
                      {vec({-1, im, im, 1}, 0.5), vec({1, im, -im, 1}, 0.5),
                       vec({1, -im, im, 1}, 0.5), vec({-1, -im, -im, 1}, 0.5)});
        catalog_check("sx x sz", kron(sx, sz),
                      {vec({1, 0, 1, 0}, r2), vec({0, 1, 0, 1}, r2), vec({1, 0, -1, 0}, r2),
                       vec({0, 1, 0, -1}, r2)});
        catalog_check("sz x sx", kron(sz, sx),
                      {vec({1, 1, 0, 0}, r2), vec({1, -1, 0, 0}, r2), vec({0, 0, 1, 1}, r2),
                       vec({0, 0, 1, -1}, r2)});

        const std::vector<ComplexVector> bell = {vec({1, 0, 0, 1}, r2), vec({0, 1, 1, 0}, r2),
                                                 vec({1, 0, 0, -1}, r2), vec({0, 1, -1, 0}, r2)};
        const ComplexMatrix xx = kron(sx, sx), yy = kron(sy, sy), zz = kron(sz, sz);
        for (std::size_t i = 0; i < bell.size(); ++i) {
            const double worst = std::max({eigen_residual(xx, bell[i]), eigen_residual(yy, bell[i]),
                                           eigen_residual(zz, bell[i])});
            b.check_leq("d bell vector " + std::to_string(i + 1) + " eigenvector of xx/yy/zz",
                        worst, 1e-12);
        }
        for (std::size_t i = 0; i < bell.size(); ++i) {
            b.check_eq("d bell vector " + std::to_string(i + 1) + " tangle",
                       tangle2(make_pure_state(bell[i])).value, 1.0, 1e-10);
        }
    }

    // (e) the maximally entangled quadruple (+-1, +-1, +-1, 1)/2
    {
        const std::vector<ComplexVector> quad = {vec({-1, -1, -1, 1}, 0.5), vec({-1, 1, 1, 1}, 0.5),
                                                 vec({1, -1, 1, 1}, 0.5), vec({1, 1, -1, 1}, 0.5)};
        const ComplexMatrix xz = kron(sx, sz), zx = kron(sz, sx), yy = kron(sy, sy);
        for (std::size_t i = 0; i < quad.size(); ++i) {
            const double worst = std::max({eigen_residual(xz, quad[i]), eigen_residual(zx, quad[i]),
                                           eigen_residual(yy, quad[i])});
            b.check_leq("e quadruple vector " + std::to_string(i + 1) + " eigenvector of xz/zx/yy",
                        worst, 1e-12);
        }
        for (std::size_t i = 0; i < quad.size(); ++i) {
            b.check_eq("e quadruple vector " + std::to_string(i + 1) + " tangle",
                       tangle2(make_pure_state(quad[i])).value, 1.0, 1e-10);
        }
    }

    // (f) two-spin closed forms, numerics and traces
    {
        const auto k2_matrix = [&](const TwoSpinParams& p) {
            ComplexMatrix m = build_matrix(preset_K2(p));
            if (options.fault_inject_k2) {
                m(0, 2) += 1e-3;
                m(2, 0) += 1e-3;
            }
            return m;
        };

        const TwoSpinParams pinned{1.0, 2.0, 0.5, hbar};
        b.check_leq("f1 H2 spectrum matches closed form at (1, 2, 0.5)",
                    max_dev_from_sorted(eigh(build_matrix(preset_H2(pinned))).eigenvalues,
                                        closed_form_H2(pinned).values),
                    1e-10);
        b.check_leq("f2 K2 spectrum matches closed form at (1, 2, 0.5)",
                    max_dev_from_sorted(eigh(k2_matrix(pinned)).eigenvalues,
                                        closed_form_K2(pinned).values),
                    1e-10);

        double worst_h = 0.0, worst_k = 0.0, worst_trace = 0.0;
        for (int draw = 0; draw < 5; ++draw) {
            const TwoSpinParams p{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                                  rng.uniform(0.0, 3.0), hbar};
            const ComplexMatrix mh = build_matrix(preset_H2(p));
            const ComplexMatrix mk = k2_matrix(p);
            worst_h = std::max(worst_h, max_dev_from_sorted(eigh(mh).eigenvalues,
                                                            closed_form_H2(p).values));
            worst_k = std::max(worst_k, max_dev_from_sorted(eigh(mk).eigenvalues,
                                                            closed_form_K2(p).values));
            worst_trace = std::max({worst_trace, std::abs(mh.trace()), std::abs(mk.trace())});
        }
        b.check_leq("f3 H2 spectrum matches closed form on random draws", worst_h, 1e-10);
        b.check_leq("f4 K2 spectrum matches closed form on random draws", worst_k, 1e-10);
        b.check_leq("f5 tr(H2) = 0 on random draws", worst_trace, 1e-10);
        b.check_leq("f6 tr(K2) = tr(H2)",
                    std::abs(build_matrix(preset_K2(pinned)).trace() -
                             build_matrix(preset_H2(pinned)).trace()),
                    1e-12);
    }

    // (g) crossing dichotomy under the eps sweep; the window scales with hbar
    // so the closed-form crossing locations eps = hbar and eps = 2 hbar stay inside
    {
        const SweepRequest h2_req{ModelKind::H2, {1.0, 2.0, 0, 0, 0, 0, 0.0, hbar},
                                  SweepParameter::eps, 0.0, 3.0 * hbar, 301};
        const SweepResult h2 = sweep_with_crossings(h2_req);
        const std::size_t h2_exact = count_exact(h2.crossings);
        b.check_eq("g1 H2 eps sweep has two exact crossings", static_cast<double>(h2_exact), 2.0,
                   0.0);
        double param_dev = 1.0;
        if (h2_exact == 2) {
            std::vector<double> params;
            for (const auto& e : h2.crossings)
                if (e.kind == CrossingEvent::Kind::exact) params.push_back(e.parameter_value);
            std::sort(params.begin(), params.end());
            param_dev =
                std::max(std::abs(params[0] - 1.0 * hbar), std::abs(params[1] - 2.0 * hbar));
        }
        b.check_leq("g2 H2 exact crossings sit at eps = hbar and eps = 2 hbar", param_dev, 1e-8);

        const SweepRequest k2_req{ModelKind::K2, {1.0, 2.0, 0, 0, 0, 0, 0.0, hbar},
                                  SweepParameter::eps, 0.0, 3.0 * hbar, 301};
        const SweepResult k2 = sweep_with_crossings(k2_req);
        b.check_eq("g3 K2 eps sweep has no exact crossing", static_cast<double>(count_exact(k2.crossings)),
                   0.0, 0.0);
        double min_gap = std::numeric_limits<double>::infinity();
        for (const auto& mg : k2.min_gaps) min_gap = std::min(min_gap, mg.gap);
        b.check_geq("g4 K2 minimum pairwise gap stays open", min_gap, 0.2 * hbar);
    }

    // (h) triple interaction term
    {
        const ComplexMatrix xyz = kron(kron(sx, sy), sz);
        const Spectrum s = eigh(xyz);
        b.check_leq("h1 eigenvalues of sx x sy x sz are +-1 fourfold",
                    max_dev_from_sorted(s.eigenvalues, {-1, -1, -1, -1, 1, 1, 1, 1}), 1e-12);

        const double r2 = 1.0 / std::sqrt(2.0);
        const ComplexScalar im{0.0, 1.0};
        const ComplexVector xp = vec({1, 1}, r2), xm = vec({1, -1}, r2);
        const ComplexVector yp = vec({-im, 1}, r2), ym = vec({im, 1}, r2);
        const ComplexVector zp = vec({1, 0}, 1), zm = vec({0, 1}, 1);
        double worst = 0.0;
        for (const auto& a : {xp, xm})
            for (const auto& c : {yp, ym})
                for (const auto& e : {zp, zm})
                    worst = std::max(worst, eigen_residual(xyz, kron(kron(a, c), e)));
        b.check_leq("h2 eight product states are eigenstates of sx x sy x sz", worst, 1e-12);
    }

    // (i) the listed fully entangled 3-qubit state
    {
        const ComplexScalar im{0.0, 1.0};
        const PureState s = make_pure_state(vec({1, 1, 0, 0, 0, 0, im, -im}, 0.5));
        b.check_eq("i three-tangle of (1,1,0,0,0,0,i,-i)/2", three_tangle(s).value, 1.0, 1e-10);
    }

    // (j) triple-spin models at the pinned generic point
    {
        const ModelPoint pinned{1.0, 0.7, 0.3, 0.2, 0.1, 0.05, 0.4, hbar};
        const TripleSpinParams params{pinned.omega1, pinned.omega2, pinned.omega3, pinned.gamma12,
                                      pinned.gamma13, pinned.gamma23, pinned.eps, hbar};

        const Spectrum h3 = eigh(build_matrix(preset_H3(params)));
        std::vector<double> closed;
        for (const auto& e : closed_form_H3(params)) closed.push_back(e.value);
        b.check_leq("j1 H3 spectrum matches the sign formula", max_dev_from_sorted(h3.eigenvalues, closed),
                    1e-10);

        double worst_schmidt = 0.0;
        for (const auto& v : h3.eigenvectors) {
            const PureState st = make_pure_state(v);
            for (std::size_t qubit = 0; qubit < 3; ++qubit)
                worst_schmidt = std::max(worst_schmidt, schmidt_coefficients(st, {qubit})[1]);
        }
        b.check_leq("j2 H3 eigenvectors are product states", worst_schmidt, 1e-9);

        const Spectrum k3 = eigh(build_matrix(preset_K3(params)));
        double best_min_tangle = 0.0;
        for (const auto& v : k3.eigenvectors) {
            const PureState st = make_pure_state(v);
            double min_tangle = std::numeric_limits<double>::infinity();
            for (std::size_t qubit = 0; qubit < 3; ++qubit)
                min_tangle = std::min(min_tangle, bipartition_tangle(st, qubit));
            best_min_tangle = std::max(best_min_tangle, min_tangle);
        }
        b.check_geq("j3 K3 has an eigenvector entangled across every bipartition", best_min_tangle,
                    0.01);

        const SweepRequest k3_req{ModelKind::K3,
                                  {pinned.omega1, pinned.omega2, pinned.omega3, pinned.gamma12,
                                   pinned.gamma13, pinned.gamma23, 0.0, hbar},
                                  SweepParameter::eps, 0.0, 2.0, 201};
        const SweepResult k3_sweep = sweep_with_crossings(k3_req);
        b.check_eq("j4 K3 eps sweep has no exact crossing",
                   static_cast<double>(count_exact(k3_sweep.crossings)), 0.0, 0.0);
    }

    // the three-generator closure order, reported against |P_2| = 64
    {
        const std::vector<PauliString> gens = {parse_pauli_string("ZI"), parse_pauli_string("IX"),
                                               parse_pauli_string("XZ")};
        const auto group = closure(gens);
        b.check_eq("k closure order of {ZI, IX, XZ} (|P_2| itself is 64)",
                   static_cast<double>(group.size()), 16.0, 0.0);
    }

    return b.report;
}

}  // namespace spinspec
