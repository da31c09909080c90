#include <benchmark/benchmark.h>

#include <random>

#include "spinspec/eigh.hpp"
#include "spinspec/entanglement.hpp"
#include "spinspec/hamiltonian.hpp"
#include "spinspec/spectra.hpp"

using namespace spinspec;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const auto uni = [&] { return ((gen() >> 11) * 0x1.0p-53) * 2.0 - 1.0; };
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = uni();
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = {uni(), uni()};
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

void BM_eigh(benchmark::State& state) {
    const ComplexMatrix m = random_hermitian(static_cast<std::size_t>(state.range(0)), 99);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigh(m));
    }
}
BENCHMARK(BM_eigh)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_kron(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix a = random_hermitian(n, 3);
    const ComplexMatrix b = random_hermitian(n, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kron(a, b));
    }
}
BENCHMARK(BM_kron)->Arg(2)->Arg(4)->Arg(8);

void BM_h2_sweep(benchmark::State& state) {
    const SweepRequest req{ModelKind::H2, {1.0, 2.0, 0, 0, 0, 0, 0.0, 1.0},
                           SweepParameter::eps, 0.0, 3.0, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_with_crossings(req));
    }
}
BENCHMARK(BM_h2_sweep)->Arg(101)->Arg(301);

void BM_k3_sweep(benchmark::State& state) {
    const SweepRequest req{ModelKind::K3, {1.0, 0.7, 0.3, 0.2, 0.1, 0.05, 0.0, 1.0},
                           SweepParameter::eps, 0.0, 2.0, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_with_crossings(req));
    }
}
BENCHMARK(BM_k3_sweep)->Arg(51)->Arg(201);

void BM_three_tangle(benchmark::State& state) {
    const Spectrum s = eigh(build_matrix(preset_K3({1.0, 0.7, 0.3, 0.2, 0.1, 0.05, 0.4, 1.0})));
    const PureState st = make_pure_state(s.eigenvectors[0]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(three_tangle(st));
    }
}
BENCHMARK(BM_three_tangle);

void BM_subspace_tangle_range(benchmark::State& state) {
    const Spectrum s = eigh(string_to_matrix(parse_pauli_string("XZ")));
    const PureState v1 = make_pure_state(s.eigenvectors[2]);
    const PureState v2 = make_pure_state(s.eigenvectors[3]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(subspace_tangle_range(v1, v2, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_subspace_tangle_range)->Arg(90)->Arg(360);

}  // namespace

BENCHMARK_MAIN();
