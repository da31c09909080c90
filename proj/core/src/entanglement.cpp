#include "spinspec/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace spinspec {

namespace {

constexpr double kNormTol = 1e-12;

void check_state(const PureState& s, std::size_t expected_qubits, const char* op) {
    if (s.qubit_count != expected_qubits)
        throw std::invalid_argument(std::string(op) + ": expected a " +
                                    std::to_string(expected_qubits) + "-qubit state, got " +
                                    std::to_string(s.qubit_count) + " qubits");
    if (std::abs(s.amplitudes.norm() - 1.0) > kNormTol)
        throw std::invalid_argument(std::string(op) + ": state not normalized");
}

double concurrence2(const ComplexVector& a) {
    // psi^T (sigma_y ⊗ sigma_y) psi = 2 (a1 a2 - a0 a3), no conjugation
    return std::abs(2.0 * (a[1] * a[2] - a[0] * a[3]));
}

double tangle_of_amplitudes(const ComplexVector& a) {
    const double c = concurrence2(a);
    return c * c;
}

}  // namespace

PureState make_pure_state(ComplexVector amplitudes) {
    std::size_t qubits;
    switch (amplitudes.dim()) {
        case 4: qubits = 2; break;
        case 8: qubits = 3; break;
        default:
            throw std::invalid_argument("pure state: dimension must be 4 or 8, got " +
                                        std::to_string(amplitudes.dim()));
    }
    if (!amplitudes.finite()) throw std::invalid_argument("pure state: non-finite amplitudes");
    if (std::abs(amplitudes.norm() - 1.0) > kNormTol)
        throw std::invalid_argument("pure state: amplitudes not normalized");
    return {qubits, std::move(amplitudes)};
}

TangleReport tangle2(const PureState& s) {
    check_state(s, 2, "tangle2");
    return {tangle_of_amplitudes(s.amplitudes), TangleMeasure::tangle, false};
}

TangleReport three_tangle(const PureState& s) {
    check_state(s, 3, "three_tangle");
    const auto& v = s.amplitudes;
    // amplitude a_{ijk} sits at index (i<<2) | (j<<1) | k
    const ComplexScalar a000 = v[0], a001 = v[1], a010 = v[2], a011 = v[3];
    const ComplexScalar a100 = v[4], a101 = v[5], a110 = v[6], a111 = v[7];

    const ComplexScalar d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
                             a010 * a010 * a101 * a101 + a011 * a011 * a100 * a100;
    const ComplexScalar d2 = a000 * a111 * (a011 * a100 + a101 * a010 + a110 * a001) +
                             a011 * a100 * (a101 * a010 + a110 * a001) +
                             a101 * a010 * a110 * a001;
    const ComplexScalar d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;

    return {4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3), TangleMeasure::three_tangle, false};
}

std::vector<double> schmidt_coefficients(const PureState& s,
                                         const std::vector<std::size_t>& bipartition) {
    if (std::abs(s.amplitudes.norm() - 1.0) > kNormTol)
        throw std::invalid_argument("schmidt_coefficients: state not normalized");
    const std::size_t q = s.qubit_count;
    if (bipartition.empty() || bipartition.size() >= q)
        throw std::invalid_argument("schmidt_coefficients: bipartition must be a proper nonempty subset");
    std::vector<bool> in_left(q, false);
    for (std::size_t pos : bipartition) {
        if (pos >= q) throw std::invalid_argument("schmidt_coefficients: qubit position out of range");
        if (in_left[pos]) throw std::invalid_argument("schmidt_coefficients: repeated qubit position");
        in_left[pos] = true;
    }

    std::vector<std::size_t> left, right;
    for (std::size_t pos = 0; pos < q; ++pos) (in_left[pos] ? left : right).push_back(pos);

    const std::size_t rows = std::size_t{1} << left.size();
    const std::size_t cols = std::size_t{1} << right.size();
    ComplexMatrix m(rows, cols);
    for (std::size_t idx = 0; idx < s.amplitudes.dim(); ++idx) {
        std::size_t r = 0, c = 0;
        for (std::size_t b = 0; b < left.size(); ++b)
            r = (r << 1) | ((idx >> (q - 1 - left[b])) & 1u);
        for (std::size_t b = 0; b < right.size(); ++b)
            c = (c << 1) | ((idx >> (q - 1 - right[b])) & 1u);
        m(r, c) = s.amplitudes[idx];
    }

    // One-sided Jacobi on the columns: orthogonalizing the columns directly
    // keeps tiny singular values at machine precision, which a Gram-matrix
    // route would square away.
    ComplexMatrix a = rows >= cols ? m : m.adjoint();
    const std::size_t n = a.cols();
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool converged = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                ComplexScalar g = 0.0;
                double na = 0.0, nb = 0.0;
                for (std::size_t r = 0; r < a.rows(); ++r) {
                    g += std::conj(a(r, i)) * a(r, j);
                    na += std::norm(a(r, i));
                    nb += std::norm(a(r, j));
                }
                const double abs_g = std::abs(g);
                if (abs_g <= 1e-15 * std::sqrt(na * nb) || na * nb == 0.0) continue;
                converged = false;
                const ComplexScalar unit_conj = std::conj(g) / abs_g;
                const double tau = (nb - na) / (2.0 * abs_g);
                double t = tau == 0.0 ? 1.0 : 1.0 / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                if (tau < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;
                for (std::size_t r = 0; r < a.rows(); ++r) {
                    const ComplexScalar ci = a(r, i);
                    const ComplexScalar cj = a(r, j);
                    a(r, i) = c * ci - sn * unit_conj * cj;
                    a(r, j) = sn * ci + c * unit_conj * cj;
                }
            }
        }
        if (converged) break;
    }
    std::vector<double> coeffs(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s2 = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) s2 += std::norm(a(r, j));
        coeffs[j] = std::sqrt(s2);
    }
    std::sort(coeffs.begin(), coeffs.end(), std::greater<>());
    return coeffs;
}

bool is_product(const PureState& s, const std::vector<std::size_t>& bipartition, double tol) {
    const std::vector<double> coeffs = schmidt_coefficients(s, bipartition);
    return coeffs.size() < 2 || coeffs[1] <= tol;
}

TangleRange subspace_tangle_range(const PureState& v1, const PureState& v2, int grid) {
    check_state(v1, 2, "subspace_tangle_range");
    check_state(v2, 2, "subspace_tangle_range");
    if (grid < 4) throw std::invalid_argument("subspace_tangle_range: grid must be >= 4");
    if (std::abs(inner(v1.amplitudes, v2.amplitudes)) > 1e-10)
        throw std::invalid_argument("subspace_tangle_range: states must be orthogonal");

    const double pi = std::numbers::pi;
    const auto tangle_at = [&](double theta, double phi) {
        const ComplexScalar c1 = std::cos(theta);
        const ComplexScalar c2 = ComplexScalar(std::cos(phi), std::sin(phi)) * std::sin(theta);
        ComplexVector psi = c1 * v1.amplitudes + c2 * v2.amplitudes;
        const double norm = psi.norm();
        if (norm > 0.0) psi = ComplexScalar(1.0 / norm) * psi;
        return tangle_of_amplitudes(psi);
    };

    const int n_theta = grid / 4 + 1;
    const int n_phi = grid;
    double best_min = 2.0, best_max = -1.0;
    double theta_min = 0.0, phi_min = 0.0, theta_max = 0.0, phi_max = 0.0;
    for (int it = 0; it < n_theta; ++it) {
        const double theta = (pi / 2.0) * it / (n_theta - 1);
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = 2.0 * pi * ip / n_phi;
            const double t = tangle_at(theta, phi);
            if (t < best_min) {
                best_min = t;
                theta_min = theta;
                phi_min = phi;
            }
            if (t > best_max) {
                best_max = t;
                theta_max = theta;
                phi_max = phi;
            }
        }
    }

    const double dtheta = (pi / 2.0) / (n_theta - 1);
    const double dphi = 2.0 * pi / n_phi;
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    const auto refine_coord = [&](double center, double halfwidth, double lo_clamp, double hi_clamp,
                                  auto f) {
        double lo = std::max(lo_clamp, center - halfwidth);
        double hi = std::min(hi_clamp, center + halfwidth);
        double x1 = hi - golden * (hi - lo);
        double x2 = lo + golden * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        while (hi - lo > 1e-8) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = f(x2);
            }
        }
        return 0.5 * (lo + hi);
    };

    const auto refine = [&](double& theta, double& phi, double sign) {
        // sign +1 minimizes the tangle, -1 maximizes it
        for (int round = 0; round < 3; ++round) {
            theta = refine_coord(theta, dtheta, 0.0, pi / 2.0,
                                 [&](double t) { return sign * tangle_at(t, phi); });
            phi = refine_coord(phi, dphi, 0.0, 2.0 * pi,
                               [&](double p) { return sign * tangle_at(theta, p); });
        }
    };
    refine(theta_min, phi_min, +1.0);
    refine(theta_max, phi_max, -1.0);

    TangleRange out;
    out.min = std::min(best_min, tangle_at(theta_min, phi_min));
    out.theta_min = theta_min;
    out.phi_min = phi_min;
    out.max = std::max(best_max, tangle_at(theta_max, phi_max));
    out.theta_max = theta_max;
    out.phi_max = phi_max;
    return out;
}

}  // namespace spinspec
