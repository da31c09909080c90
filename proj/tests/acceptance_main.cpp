// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "spinspec/eigh.hpp"
#include "spinspec/entanglement.hpp"
#include "spinspec/hamiltonian.hpp"
#include "spinspec/pauli.hpp"
#include "spinspec/spectra.hpp"
#include "support/test_support.hpp"

using namespace spinspec;
using namespace spinspec::testing;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what,
                detail.c_str());
    if (!ok) ++failures;
}

double max_multiset_dev(std::vector<double> got, std::vector<double> want) {
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    double dev = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) dev = std::max(dev, std::abs(got[i] - want[i]));
    return dev;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::vector<TwoSpinParams> seeded_draws() {
    Rng rng(42);
    std::vector<TwoSpinParams> out;
    for (int i = 0; i < 10; ++i) {
        TwoSpinParams p{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(0.0, 3.0),
                        i % 2 == 0 ? 1.0 : 2.0};
        out.push_back(p);
    }
    return out;
}

std::size_t exact_count(const std::vector<CrossingEvent>& events) {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const auto& e) {
        return e.kind == CrossingEvent::Kind::exact;
    }));
}

double eigen_residual(const ComplexMatrix& m, const ComplexVector& v) {
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

void criterion_1_2() {
    const auto draws = seeded_draws();
    double dev_h = 0.0, dev_k = 0.0;
    for (const auto& p : draws) {
        dev_h = std::max(dev_h, max_multiset_dev(eigh(build_matrix(preset_H2(p))).eigenvalues,
                                                 closed_form_H2(p).values));
        dev_k = std::max(dev_k, max_multiset_dev(eigh(build_matrix(preset_K2(p))).eigenvalues,
                                                 closed_form_K2(p).values));
    }
    report(1, "H2 closed-form spectrum matches eigh on 10 seeded draws", dev_h <= 1e-10,
           "max deviation " + sci(dev_h) + " <= 1e-10");
    report(2, "K2 closed-form spectrum matches eigh on 10 seeded draws", dev_k <= 1e-10,
           "max deviation " + sci(dev_k) + " <= 1e-10");
}

void criterion_9() {
    double trace_dev = 0.0;
    for (const auto& p : seeded_draws()) {
        trace_dev = std::max({trace_dev, std::abs(build_matrix(preset_H2(p)).trace()),
                              std::abs(build_matrix(preset_K2(p)).trace())});
    }
    const TwoSpinParams pinned{1.0, 2.0, 0.5, 1.0};
    const PartitionResult zh = partition_function(eigh(build_matrix(preset_H2(pinned))), 1.0);
    const PartitionResult zk = partition_function(eigh(build_matrix(preset_K2(pinned))), 1.0);
    double zh_oracle = 0.0, zk_oracle = 0.0;  // independent scalar evaluation
    for (double e : closed_form_H2(pinned).values) zh_oracle += std::exp(-e);
    for (double e : closed_form_K2(pinned).values) zk_oracle += std::exp(-e);
    const bool ok = trace_dev <= 1e-10 && std::abs(zh.value - zh_oracle) <= 1e-3 &&
                    std::abs(zk.value - zk_oracle) <= 1e-3 && std::abs(zh.value - zk.value) > 1.0;
    report(9, "traces vanish and the partition functions differ", ok,
           "trace dev " + sci(trace_dev) + ", Z_H=" + sci(zh.value) + ", Z_K=" + sci(zk.value) +
               ", |dZ|=" + sci(std::abs(zh.value - zk.value)));
}

void criterion_3() {
    const SweepRequest h2_req{ModelKind::H2, {1.0, 2.0, 0, 0, 0, 0, 0.0, 1.0},
                              SweepParameter::eps, 0.0, 3.0, 301};
    const SweepResult h2 = sweep_with_crossings(h2_req);
    std::vector<const CrossingEvent*> exact;
    for (const auto& e : h2.crossings)
        if (e.kind == CrossingEvent::Kind::exact) exact.push_back(&e);

    bool ok = exact.size() == 2;
    std::string detail;
    if (ok) {
        std::sort(exact.begin(), exact.end(),
                  [](const auto* a, const auto* b) { return a->parameter_value < b->parameter_value; });
        ok = std::abs(exact[0]->parameter_value - 1.0) <= 1e-8 &&
             std::abs(exact[0]->energy + 2.0) <= 1e-6 &&
             std::abs(exact[1]->parameter_value - 2.0) <= 1e-8 &&
             std::abs(exact[1]->energy + 1.0) <= 1e-6;
        detail = "crossings at eps=" + sci(exact[0]->parameter_value) + " (E=" +
                 sci(exact[0]->energy) + "), eps=" + sci(exact[1]->parameter_value) + " (E=" +
                 sci(exact[1]->energy) + ")";
    } else {
        detail = "expected 2 exact crossings, found " + std::to_string(exact.size());
    }

    const SweepRequest k2_req{ModelKind::K2, {1.0, 2.0, 0, 0, 0, 0, 0.0, 1.0},
                              SweepParameter::eps, 0.0, 3.0, 301};
    const SweepResult k2 = sweep_with_crossings(k2_req);
    double min_gap = 1e300;
    for (const auto& mg : k2.min_gaps) min_gap = std::min(min_gap, mg.gap);
    ok = ok && exact_count(k2.crossings) == 0 && min_gap >= 0.2;
    detail += "; K2 exact count " + std::to_string(exact_count(k2.crossings)) + ", min gap " +
              sci(min_gap);
    report(3, "crossing dichotomy of the eps sweep", ok, detail);
}

void criterion_4() {
    const SweepRequest k2{ModelKind::K2, {0.0, 2.0, 0, 0, 0, 0, 0.5, 1.0},
                          SweepParameter::omega1, 0.0, 4.0, 401};
    const SweepResult ks = sweep_with_crossings(k2);
    const CrossingEvent* inner = nullptr;
    for (const auto& e : ks.crossings)
        if (e.track_a == 1 && e.track_b == 2) inner = &e;

    const SweepRequest h2{ModelKind::H2, {0.0, 2.0, 0, 0, 0, 0, 0.5, 1.0},
                          SweepParameter::omega1, 0.0, 4.0, 401};
    const SweepResult hs = sweep_with_crossings(h2);
    bool h2_exact_there = false;
    for (const auto& e : hs.crossings)
        if (e.kind == CrossingEvent::Kind::exact && std::abs(e.parameter_value - 2.0) <= 1e-6)
            h2_exact_there = true;

    const bool ok = inner != nullptr && inner->kind == CrossingEvent::Kind::avoided &&
                    std::abs(inner->gap_at_minimum - 1.0) <= 1e-6 &&
                    std::abs(inner->parameter_value - 2.0) <= 1e-6 && h2_exact_there;
    std::string detail = inner == nullptr
                             ? "no inner-pair event found"
                             : "K2 min gap " + sci(inner->gap_at_minimum) + " at omega1=" +
                                   sci(inner->parameter_value) + "; H2 exact there: " +
                                   (h2_exact_there ? "yes" : "no");
    report(4, "avoided-crossing gap law under the omega1 sweep", ok, detail);
}

void criterion_5() {
    const Spectrum h = eigh(build_matrix(preset_H2({1.3, 0.7, 0.4, 1.0})));
    double h_max = 0.0;
    for (const auto& v : h.eigenvectors)
        h_max = std::max(h_max, tangle2(make_pure_state(v)).value);

    const Spectrum k_small = eigh(build_matrix(preset_K2({1.0, 2.0, 0.5, 1.0})));
    double k_min_small = 2.0;
    for (const auto& v : k_small.eigenvectors)
        k_min_small = std::min(k_min_small, tangle2(make_pure_state(v)).value);

    const Spectrum k_big = eigh(build_matrix(preset_K2({1.0, 2.0, 100.0, 1.0})));
    double k_min_big = 2.0;
    for (const auto& v : k_big.eigenvectors)
        k_min_big = std::min(k_min_big, tangle2(make_pure_state(v)).value);

    const bool ok = h_max <= 1e-10 && k_min_small > 0.0 && k_min_big >= 0.99;
    report(5, "entanglement dichotomy of the eigenvectors", ok,
           "H2 max tangle " + sci(h_max) + ", K2 min tangle " + sci(k_min_small) +
               " at eps=0.5, " + sci(k_min_big) + " at eps=100");
}

void criterion_6() {
    const double r2 = 1.0 / std::sqrt(2.0);
    const ComplexScalar im{0.0, 1.0};
    const ComplexMatrix& sx = pauli_matrix(PauliLetter::X);
    const ComplexMatrix& sy = pauli_matrix(PauliLetter::Y);
    const ComplexMatrix& sz = pauli_matrix(PauliLetter::Z);

    double worst = 0.0;
    const auto residual_of = [&](const ComplexMatrix& m, const ComplexVector& v) {
        worst = std::max(worst, eigen_residual(m, v));
    };

    // product eigenvector catalogs
    for (const auto& v : {vec({1, 0, 0, 0}, 1.0), vec({0, 1, 0, 0}, 1.0), vec({0, 0, 1, 0}, 1.0),
                          vec({0, 0, 0, 1}, 1.0)})
        residual_of(kron(sz, sz), v);
    for (const auto& v : {vec({1, 1, 1, 1}, 0.5), vec({1, -1, 1, -1}, 0.5),
                          vec({1, 1, -1, -1}, 0.5), vec({1, -1, -1, 1}, 0.5)})
        residual_of(kron(sx, sx), v);
    for (const auto& v : {vec({-1, im, im, 1}, 0.5), vec({1, im, -im, 1}, 0.5),
                          vec({1, -im, im, 1}, 0.5), vec({-1, -im, -im, 1}, 0.5)})
        residual_of(kron(sy, sy), v);
    for (const auto& v : {vec({1, 0, 1, 0}, r2), vec({0, 1, 0, 1}, r2), vec({1, 0, -1, 0}, r2),
                          vec({0, 1, 0, -1}, r2)})
        residual_of(kron(sx, sz), v);
    for (const auto& v : {vec({1, 1, 0, 0}, r2), vec({1, -1, 0, 0}, r2), vec({0, 0, 1, 1}, r2),
                          vec({0, 0, 1, -1}, r2)})
        residual_of(kron(sz, sx), v);

    // Bell vectors against all three same-letter products, quadruple against its triple
    double tangle_dev = 0.0;
    for (const auto& v : {vec({1, 0, 0, 1}, r2), vec({0, 1, 1, 0}, r2), vec({1, 0, 0, -1}, r2),
                          vec({0, 1, -1, 0}, r2)}) {
        residual_of(kron(sx, sx), v);
        residual_of(kron(sy, sy), v);
        residual_of(kron(sz, sz), v);
        tangle_dev = std::max(tangle_dev, std::abs(tangle2(make_pure_state(v)).value - 1.0));
    }
    for (const auto& v : {vec({-1, -1, -1, 1}, 0.5), vec({-1, 1, 1, 1}, 0.5),
                          vec({1, -1, 1, 1}, 0.5), vec({1, 1, -1, 1}, 0.5)}) {
        residual_of(kron(sx, sz), v);
        residual_of(kron(sz, sx), v);
        residual_of(kron(sy, sy), v);
        tangle_dev = std::max(tangle_dev, std::abs(tangle2(make_pure_state(v)).value - 1.0));
    }

    report(6, "eigenvector catalogs hold with tangle 1 on the entangled ones",
           worst <= 1e-12 && tangle_dev <= 1e-10,
           "max residual " + sci(worst) + ", max tangle deviation " + sci(tangle_dev));
}

void criterion_7() {
    const ComplexScalar im{0.0, 1.0};
    const double r2 = 1.0 / std::sqrt(2.0);
    const double ghz = three_tangle(make_pure_state(vec({1, 0, 0, 0, 0, 0, 0, 1}, r2))).value;
    const double w =
        three_tangle(make_pure_state(vec({0, 1, 1, 0, 1, 0, 0, 0}, 1.0 / std::sqrt(3.0)))).value;
    const double listed =
        three_tangle(make_pure_state(vec({1, 1, 0, 0, 0, 0, im, -im}, 0.5))).value;
    const bool ok = std::abs(ghz - 1.0) <= 1e-10 && std::abs(w) <= 1e-10 &&
                    std::abs(listed - 1.0) <= 1e-10;
    report(7, "three-tangle values for GHZ, W and the listed state", ok,
           "GHZ=" + sci(ghz) + ", W=" + sci(w) + ", listed=" + sci(listed));
}

void criterion_8() {
    const TripleSpinParams pinned{1.0, 0.7, 0.3, 0.2, 0.1, 0.05, 0.4, 1.0};

    const Spectrum h3 = eigh(build_matrix(preset_H3(pinned)));
    std::vector<double> closed;
    for (const auto& e : closed_form_H3(pinned)) closed.push_back(e.value);
    const double spec_dev = max_multiset_dev(h3.eigenvalues, closed);
    report(8, "H3 spectrum equals the sign formula at the pinned point", spec_dev <= 1e-10,
           "max deviation " + sci(spec_dev));

    double worst_schmidt = 0.0;
    for (const auto& v : h3.eigenvectors) {
        const PureState st = make_pure_state(v);
        for (std::size_t q = 0; q < 3; ++q)
            worst_schmidt = std::max(worst_schmidt, schmidt_coefficients(st, {q})[1]);
    }
    report(8, "H3 admits 8 product eigenvectors", worst_schmidt <= 1e-9,
           "worst second Schmidt coefficient " + sci(worst_schmidt));

    const Spectrum k3 = eigh(build_matrix(preset_K3(pinned)));
    double best_min_tangle = 0.0;
    for (const auto& v : k3.eigenvectors) {
        const PureState st = make_pure_state(v);
        double min_tangle = 2.0;
        for (std::size_t q = 0; q < 3; ++q) {
            const auto c = schmidt_coefficients(st, {q});
            min_tangle = std::min(min_tangle, 4.0 * c[0] * c[0] * c[1] * c[1]);
        }
        best_min_tangle = std::max(best_min_tangle, min_tangle);
    }
    report(8, "K3 has an eigenvector entangled across every bipartition", best_min_tangle > 0.01,
           "best min bipartition tangle " + sci(best_min_tangle) +
               " (I x sy x I commutes with K3: the middle qubit factorizes exactly)");

    const SweepRequest k3_req{ModelKind::K3, {1.0, 0.7, 0.3, 0.2, 0.1, 0.05, 0.0, 1.0},
                              SweepParameter::eps, 0.0, 2.0, 201};
    const SweepResult k3_sweep = sweep_with_crossings(k3_req);
    const std::size_t exact = exact_count(k3_sweep.crossings);
    std::string where;
    for (const auto& e : k3_sweep.crossings)
        if (e.kind == CrossingEvent::Kind::exact) where += " eps=" + sci(e.parameter_value);
    report(8, "K3 has no exact crossing over eps in [0, 2]", exact == 0,
           std::to_string(exact) + " exact crossing(s) found:" + where +
               " (symmetry-allowed sector crossing)");
}

void criterion_10() {
    Rng rng(777);
    double dev = 0.0;
    const ComplexMatrix I2 = ComplexMatrix::identity(2);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix a = random_hermitian(rng, 2);
        const ComplexMatrix b = random_hermitian(rng, 2);
        dev = std::max(dev, commutator(kron(a, I2), kron(I2, b)).max_abs());
        dev = std::max(dev, commutator(kron(a, I2), kron(a, b)).max_abs());
        dev = std::max(dev, commutator(kron(I2, b), kron(a, b)).max_abs());
        dev = std::max(dev, max_abs_diff(commutator(kron(a, I2), kron(b, a)),
                                         kron(commutator(a, b), a)));
        dev = std::max(dev, max_abs_diff(commutator(kron(I2, b), kron(b, a)),
                                         kron(b, commutator(b, a))));

        const ComplexMatrix p = swap_permutation(2);
        dev = std::max(dev, max_abs_diff(p * kron(a, b) * p, kron(b, a)));
        dev = std::max(dev, max_abs_diff(p * kron(a, I2) * p, kron(I2, a)));
        dev = std::max(dev, max_abs_diff(p * kron(I2, b) * p, kron(b, I2)));

        const ComplexMatrix c = random_matrix(rng, 2);
        const ComplexMatrix d = random_matrix(rng, 2);
        dev = std::max(dev, max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)));
    }

    const auto group = closure({parse_pauli_string("ZI"), parse_pauli_string("IX")});
    bool abelian = group.size() == 4;
    for (const auto& x : group)
        for (const auto& y : group) abelian = abelian && commutes(x, y);

    report(10, "algebraic identity suite and the abelian closure", dev <= 1e-12 && abelian,
           "max identity deviation " + sci(dev) + ", closure order " +
               std::to_string(group.size()));
}

}  // namespace

int main() {
    criterion_1_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    std::printf("acceptance: %d check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
