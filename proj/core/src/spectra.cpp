#include "spinspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinspec {

namespace {

constexpr double kDefaultExactTolScale = 1e-9;
constexpr double kParamResolution = 1e-10;

std::vector<double> sorted_eigenvalues_at(const SweepRequest& req, double value) {
    const ModelPoint point = with_parameter(req.base, req.parameter, value);
    Spectrum s;
    try {
        s = eigh(build_matrix(build_model(req.model, point)));
    } catch (const EighConvergenceError& e) {
        throw std::runtime_error("sweep: eigh failed at " + to_string(req.parameter) + "=" +
                                 std::to_string(value) + ": " + e.what());
    }
    return s.eigenvalues;  // ascending already
}

// Minimal total |prev[t] - curr[pi(t)]| assignment; exact DFS with pruning for
// n <= 8 (first-found keeps the lexicographically smallest tie), greedy above.
std::vector<std::size_t> match_tracks(const std::vector<double>& prev,
                                      const std::vector<double>& curr) {
    const std::size_t n = prev.size();
    std::vector<std::size_t> best(n), assign(n);
    if (n > 8) {
        std::vector<bool> used(n, false);
        for (std::size_t t = 0; t < n; ++t) {
            double best_cost = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                const double c = std::abs(prev[t] - curr[j]);
                if (c < best_cost) {
                    best_cost = c;
                    best_j = j;
                }
            }
            used[best_j] = true;
            best[t] = best_j;
        }
        return best;
    }

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<bool> used(n, false);
    auto dfs = [&](auto&& self, std::size_t t, double cost) -> void {
        if (cost >= best_cost) return;
        if (t == n) {
            best_cost = cost;
            best = assign;
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            used[j] = true;
            assign[t] = j;
            self(self, t + 1, cost + std::abs(prev[t] - curr[j]));
            used[j] = false;
        }
    };
    dfs(dfs, 0, 0.0);
    return best;
}

double spectral_diameter(const SweepResult& s, std::size_t g) {
    double lo = s.tracks.front()[g];
    double hi = lo;
    for (const auto& track : s.tracks) {
        lo = std::min(lo, track[g]);
        hi = std::max(hi, track[g]);
    }
    return hi - lo;
}

struct PairSample {
    double diff;    // track_a - track_b, matched against the anchor grid point
    double energy;  // midpoint of the pair
};

PairSample evaluate_pair(const SweepResult& s, std::size_t anchor, std::size_t a, std::size_t b,
                         double x) {
    const std::vector<double> eigs = sorted_eigenvalues_at(s.request, x);
    std::vector<double> prev(s.tracks.size());
    for (std::size_t t = 0; t < s.tracks.size(); ++t) prev[t] = s.tracks[t][anchor];
    const std::vector<std::size_t> pi = match_tracks(prev, eigs);
    const double va = eigs[pi[a]];
    const double vb = eigs[pi[b]];
    return {va - vb, 0.5 * (va + vb)};
}

}  // namespace

std::vector<ProductEigenvalue> closed_form_product_model(double alpha, double beta, double eps,
                                                         const Spectrum& spec_a,
                                                         const Spectrum& spec_b) {
    std::vector<ProductEigenvalue> out;
    out.reserve(spec_a.dim * spec_b.dim);
    for (std::size_t j = 0; j < spec_a.dim; ++j) {
        for (std::size_t k = 0; k < spec_b.dim; ++k) {
            const double lj = spec_a.eigenvalues[j];
            const double mk = spec_b.eigenvalues[k];
            out.push_back({alpha * lj + beta * mk + eps * lj * mk, j, k});
        }
    }
    return out;
}

ClosedFormSpectrum closed_form_H2(const TwoSpinParams& p) {
    const double a = p.hbar * p.omega1;
    const double b = p.hbar * p.omega2;
    return {{"E1", "E2", "E3", "E4"},
            {a + b + p.eps, a - b - p.eps, -a + b - p.eps, -a - b + p.eps}};
}

ClosedFormSpectrum closed_form_K2(const TwoSpinParams& p) {
    const double plus = std::hypot(p.hbar * (p.omega1 + p.omega2), p.eps);
    const double minus = std::hypot(p.hbar * (p.omega1 - p.omega2), p.eps);
    return {{"k1", "k2", "k3", "k4"}, {-plus, plus, -minus, minus}};
}

std::vector<SignedEigenvalue> closed_form_H3(const TripleSpinParams& p) {
    std::vector<SignedEigenvalue> out;
    out.reserve(8);
    for (int s1 : {1, -1}) {
        for (int s2 : {1, -1}) {
            for (int s3 : {1, -1}) {
                const double value = p.hbar * p.omega1 * s1 + p.hbar * p.omega2 * s2 +
                                     p.hbar * p.omega3 * s3 + p.gamma12 * s1 * s2 +
                                     p.gamma13 * s1 * s3 + p.gamma23 * s2 * s3 +
                                     p.eps * s1 * s2 * s3;
                out.push_back({value, {s1, s2, s3}});
            }
        }
    }
    return out;
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::H2: return "H2";
        case ModelKind::K2: return "K2";
        case ModelKind::H3: return "H3";
        case ModelKind::K3: return "K3";
    }
    throw std::invalid_argument("to_string: invalid model kind");
}

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::eps: return "eps";
        case SweepParameter::omega1: return "omega1";
        case SweepParameter::omega2: return "omega2";
        case SweepParameter::omega3: return "omega3";
    }
    throw std::invalid_argument("to_string: invalid sweep parameter");
}

HamiltonianSpec build_model(ModelKind kind, const ModelPoint& pt) {
    switch (kind) {
        case ModelKind::H2: return preset_H2({pt.omega1, pt.omega2, pt.eps, pt.hbar});
        case ModelKind::K2: return preset_K2({pt.omega1, pt.omega2, pt.eps, pt.hbar});
        case ModelKind::H3:
            return preset_H3({pt.omega1, pt.omega2, pt.omega3, pt.gamma12, pt.gamma13, pt.gamma23,
                              pt.eps, pt.hbar});
        case ModelKind::K3:
            return preset_K3({pt.omega1, pt.omega2, pt.omega3, pt.gamma12, pt.gamma13, pt.gamma23,
                              pt.eps, pt.hbar});
    }
    throw std::invalid_argument("build_model: invalid model kind");
}

ModelPoint with_parameter(ModelPoint point, SweepParameter parameter, double value) {
    switch (parameter) {
        case SweepParameter::eps: point.eps = value; break;
        case SweepParameter::omega1: point.omega1 = value; break;
        case SweepParameter::omega2: point.omega2 = value; break;
        case SweepParameter::omega3: point.omega3 = value; break;
    }
    return point;
}

SweepResult sweep(const SweepRequest& request) {
    if (!(request.lo < request.hi)) throw std::invalid_argument("sweep: need lo < hi");
    if (request.steps < 2) throw std::invalid_argument("sweep: need steps >= 2");
    if (request.parameter == SweepParameter::omega3 &&
        (request.model == ModelKind::H2 || request.model == ModelKind::K2))
        throw std::invalid_argument("sweep: omega3 is not a parameter of the two-spin models");
    if (request.parameter == SweepParameter::eps && request.lo < 0.0)
        throw std::invalid_argument("sweep: eps range must stay >= 0");

    SweepResult out;
    out.request = request;
    const int steps = request.steps;
    const double step = (request.hi - request.lo) / (steps - 1);
    out.grid.resize(steps);
    for (int i = 0; i < steps; ++i) out.grid[i] = request.lo + step * i;
    out.grid.back() = request.hi;

    std::vector<std::vector<double>> per_point(steps);
    for (int i = 0; i < steps; ++i) per_point[i] = sorted_eigenvalues_at(request, out.grid[i]);

    const std::size_t n = per_point.front().size();
    out.tracks.assign(n, std::vector<double>(steps, 0.0));
    for (std::size_t t = 0; t < n; ++t) out.tracks[t][0] = per_point[0][t];
    std::vector<double> prev = per_point[0];
    for (int g = 1; g < steps; ++g) {
        const std::vector<std::size_t> pi = match_tracks(prev, per_point[g]);
        for (std::size_t t = 0; t < n; ++t) {
            out.tracks[t][g] = per_point[g][pi[t]];
            prev[t] = out.tracks[t][g];
        }
    }

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            PairGap mg{a, b, std::numeric_limits<double>::infinity(), out.grid[0]};
            for (int g = 0; g < steps; ++g) {
                const double gap = std::abs(out.tracks[a][g] - out.tracks[b][g]);
                if (gap < mg.gap) {
                    mg.gap = gap;
                    mg.parameter = out.grid[g];
                }
            }
            out.min_gaps.push_back(mg);
        }
    }
    return out;
}

CrossingScan detect_crossings(const SweepResult& s, std::optional<double> exact_tol, bool refine) {
    CrossingScan scan;
    const std::size_t n = s.tracks.size();
    const std::size_t g_count = s.grid.size();
    if (n == 0 || g_count < 2) return scan;

    std::vector<double> tol_at(g_count);
    for (std::size_t g = 0; g < g_count; ++g) {
        tol_at[g] = exact_tol ? *exact_tol
                              : kDefaultExactTolScale * std::max(1.0, spectral_diameter(s, g));
    }

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::vector<double> d(g_count);
            for (std::size_t g = 0; g < g_count; ++g) d[g] = s.tracks[a][g] - s.tracks[b][g];

            // degenerate runs: |d| below tolerance over >= 2 consecutive points
            std::vector<bool> in_run(g_count, false);
            for (std::size_t g = 0; g < g_count;) {
                if (std::abs(d[g]) > tol_at[g]) {
                    ++g;
                    continue;
                }
                std::size_t end = g;
                while (end + 1 < g_count && std::abs(d[end + 1]) <= tol_at[end + 1]) ++end;
                if (end > g) {
                    scan.degenerate_intervals.push_back({a, b, s.grid[g], s.grid[end]});
                    for (std::size_t k = g; k <= end; ++k) in_run[k] = true;
                }
                g = end + 1;
            }

            std::vector<bool> bracket_used(g_count, false);
            // transversal sign changes
            for (std::size_t g = 0; g + 1 < g_count; ++g) {
                if (in_run[g] || in_run[g + 1]) continue;
                if (!(d[g] * d[g + 1] < 0.0)) continue;
                bracket_used[g] = true;
                double x = s.grid[g];
                double gap = std::abs(d[g]);
                double energy = 0.5 * (s.tracks[a][g] + s.tracks[b][g]);
                if (refine) {
                    double lo = s.grid[g], hi = s.grid[g + 1];
                    double f_lo = d[g];
                    PairSample mid{};
                    while (hi - lo > kParamResolution) {
                        const double m = 0.5 * (lo + hi);
                        mid = evaluate_pair(s, g, a, b, m);
                        if ((mid.diff < 0.0) == (f_lo < 0.0)) {
                            lo = m;
                            f_lo = mid.diff;
                        } else {
                            hi = m;
                        }
                    }
                    x = 0.5 * (lo + hi);
                    mid = evaluate_pair(s, g, a, b, x);
                    gap = std::abs(mid.diff);
                    energy = mid.energy;
                } else if (std::abs(d[g + 1]) < gap) {
                    x = s.grid[g + 1];
                    gap = std::abs(d[g + 1]);
                    energy = 0.5 * (s.tracks[a][g + 1] + s.tracks[b][g + 1]);
                }
                const CrossingEvent::Kind kind = gap <= tol_at[g] ? CrossingEvent::Kind::exact
                                                                  : CrossingEvent::Kind::avoided;
                scan.events.push_back({x, a, b, energy, kind, gap});
            }

            // interior local minima of the gap
            for (std::size_t g = 1; g + 1 < g_count; ++g) {
                if (in_run[g]) continue;
                if (bracket_used[g - 1] || bracket_used[g]) continue;
                const double gm = std::abs(d[g - 1]);
                const double g0 = std::abs(d[g]);
                const double gp = std::abs(d[g + 1]);
                // strict on the left so a flat pair of equal minima fires once
                if (!(g0 < gm && g0 <= gp)) continue;
                // a dip must clear the diagonalization noise floor, otherwise
                // flat gap curves fire on rounding wiggle at every grid point
                const double noise = 1e-12 * std::max(1.0, spectral_diameter(s, g));
                if (std::min(gm, gp) - g0 <= noise) continue;
                double x = s.grid[g];
                double gap = g0;
                double energy = 0.5 * (s.tracks[a][g] + s.tracks[b][g]);
                if (refine) {
                    // golden-section on |d(x)| over the bracketing cell pair
                    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
                    double lo = s.grid[g - 1], hi = s.grid[g + 1];
                    double x1 = hi - phi * (hi - lo);
                    double x2 = lo + phi * (hi - lo);
                    double f1 = std::abs(evaluate_pair(s, g, a, b, x1).diff);
                    double f2 = std::abs(evaluate_pair(s, g, a, b, x2).diff);
                    while (hi - lo > kParamResolution) {
                        if (f1 <= f2) {
                            hi = x2;
                            x2 = x1;
                            f2 = f1;
                            x1 = hi - phi * (hi - lo);
                            f1 = std::abs(evaluate_pair(s, g, a, b, x1).diff);
                        } else {
                            lo = x1;
                            x1 = x2;
                            f1 = f2;
                            x2 = lo + phi * (hi - lo);
                            f2 = std::abs(evaluate_pair(s, g, a, b, x2).diff);
                        }
                    }
                    x = 0.5 * (lo + hi);
                    const PairSample best = evaluate_pair(s, g, a, b, x);
                    gap = std::abs(best.diff);
                    energy = best.energy;
                }
                const CrossingEvent::Kind kind = gap <= tol_at[g] ? CrossingEvent::Kind::exact
                                                                  : CrossingEvent::Kind::avoided;
                scan.events.push_back({x, a, b, energy, kind, gap});
            }
        }
    }

    std::sort(scan.events.begin(), scan.events.end(), [](const CrossingEvent& l, const CrossingEvent& r) {
        if (l.parameter_value != r.parameter_value) return l.parameter_value < r.parameter_value;
        if (l.track_a != r.track_a) return l.track_a < r.track_a;
        return l.track_b < r.track_b;
    });
    std::sort(scan.degenerate_intervals.begin(), scan.degenerate_intervals.end(),
              [](const DegenerateInterval& l, const DegenerateInterval& r) {
                  if (l.track_a != r.track_a) return l.track_a < r.track_a;
                  if (l.track_b != r.track_b) return l.track_b < r.track_b;
                  return l.param_lo < r.param_lo;
              });
    return scan;
}

SweepResult sweep_with_crossings(const SweepRequest& request, std::optional<double> exact_tol) {
    SweepResult out = sweep(request);
    CrossingScan scan = detect_crossings(out, exact_tol, /*refine=*/true);
    out.crossings = std::move(scan.events);
    out.degenerate_intervals = std::move(scan.degenerate_intervals);
    return out;
}

PartitionResult partition_function(const Spectrum& spec, double inverse_temperature) {
    if (!(inverse_temperature > 0.0) || !std::isfinite(inverse_temperature))
        throw std::invalid_argument("partition_function: inverse temperature must be > 0");
    if (spec.eigenvalues.empty()) throw std::invalid_argument("partition_function: empty spectrum");
    const double lambda_min = spec.eigenvalues.front();
    double sum = 0.0;
    for (double lambda : spec.eigenvalues) sum += std::exp(-inverse_temperature * (lambda - lambda_min));
    return {inverse_temperature, std::exp(-inverse_temperature * lambda_min) * sum};
}

}  // namespace spinspec
