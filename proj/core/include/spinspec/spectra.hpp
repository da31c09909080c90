#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spinspec/eigh.hpp"
#include "spinspec/hamiltonian.hpp"

namespace spinspec {

struct ClosedFormSpectrum {
    std::vector<std::string> labels;
    std::vector<double> values;
};

/// Eigenvalue alpha*lambda_j + beta*mu_k + eps*lambda_j*mu_k of the coupled
/// product model, paired with the factor indices (j, k) of u_j ⊗ v_k.
struct ProductEigenvalue {
    double value;
    std::size_t j;
    std::size_t k;
};

std::vector<ProductEigenvalue> closed_form_product_model(double alpha, double beta, double eps,
                                                         const Spectrum& spec_a,
                                                         const Spectrum& spec_b);

/// E1..E4 = +-hw1 +-(hw2 + sign-linked eps); labels carry the family names.
ClosedFormSpectrum closed_form_H2(const TwoSpinParams& p);

/// k1..k4 = -+sqrt(h^2 (w1 +- w2)^2 + eps^2).
ClosedFormSpectrum closed_form_K2(const TwoSpinParams& p);

/// Sign-formula eigenvalue for each (s1, s2, s3) in {+-1}^3; all seven model
/// terms pairwise commute, so the signs enumerate the joint spectrum.
struct SignedEigenvalue {
    double value;
    std::array<int, 3> signs;
};

std::vector<SignedEigenvalue> closed_form_H3(const TripleSpinParams& p);

enum class ModelKind { H2, K2, H3, K3 };
enum class SweepParameter { eps, omega1, omega2, omega3 };

std::string to_string(ModelKind kind);
std::string to_string(SweepParameter p);

/// Superset of the preset parameters; the two-spin models read omega1/2, eps
/// and hbar, the triple-spin models additionally omega3 and the gammas.
struct ModelPoint {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega3 = 0.0;
    double gamma12 = 0.0;
    double gamma13 = 0.0;
    double gamma23 = 0.0;
    double eps = 0.0;
    double hbar = 1.0;
};

HamiltonianSpec build_model(ModelKind kind, const ModelPoint& point);
ModelPoint with_parameter(ModelPoint point, SweepParameter parameter, double value);

struct SweepRequest {
    ModelKind model;
    ModelPoint base;
    SweepParameter parameter;
    double lo;
    double hi;
    int steps;
};

struct CrossingEvent {
    enum class Kind { exact, avoided };
    double parameter_value;
    std::size_t track_a;
    std::size_t track_b;
    double energy;
    Kind kind;
    double gap_at_minimum;
};

/// Track pair staying below the crossing tolerance over >= 2 consecutive grid
/// points; reported as an interval instead of point events.
struct DegenerateInterval {
    std::size_t track_a;
    std::size_t track_b;
    double param_lo;
    double param_hi;
};

struct PairGap {
    std::size_t track_a;
    std::size_t track_b;
    double gap;        // grid-level minimum of |track_a - track_b|
    double parameter;  // grid point where it occurs
};

struct SweepResult {
    SweepRequest request;
    std::vector<double> grid;
    std::vector<std::vector<double>> tracks;  // tracks[t][g]; continuity-matched
    std::vector<CrossingEvent> crossings;
    std::vector<DegenerateInterval> degenerate_intervals;
    std::vector<PairGap> min_gaps;
};

struct CrossingScan {
    std::vector<CrossingEvent> events;
    std::vector<DegenerateInterval> degenerate_intervals;
};

/// Diagonalizes at each grid point and matches eigenvalue tracks across
/// adjacent points by the minimal total |delta lambda| assignment (exact for
/// up to 8 tracks, greedy above). Fills grid-level min_gaps; crossings and
/// degenerate intervals are left for detect_crossings.
SweepResult sweep(const SweepRequest& request);

/// Locates sign changes and interior near-zeros of every pair gap. With
/// refine set, the minimum is narrowed to parameter resolution 1e-10
/// (golden-section, then bisection when a sign-change bracket exists).
/// An event is exact when the refined gap is at most exact_tol; the default
/// (nullopt) tolerance is 1e-9 * max(1, spectral diameter at the grid anchor).
CrossingScan detect_crossings(const SweepResult& s, std::optional<double> exact_tol, bool refine);

/// sweep + detect_crossings with results folded into the SweepResult.
SweepResult sweep_with_crossings(const SweepRequest& request,
                                 std::optional<double> exact_tol = std::nullopt);

struct PartitionResult {
    double inverse_temperature;
    double value;
};

/// Z = sum_k exp(-beta * lambda_k), evaluated with the minimum eigenvalue
/// shifted out of the exponent.
PartitionResult partition_function(const Spectrum& spec, double inverse_temperature);

}  // namespace spinspec
