#include "spinspec/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spinspec {

namespace {

constexpr double kHermTol = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
}

// One rotation in the (p,q) plane zeroing a(p,q). The unitary factors as
// diag(1, e^{-i phi}) * [[c, s], [-s, c]] with a(p,q) = |a(p,q)| e^{i phi}.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const ComplexScalar apq = a(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) return;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const ComplexScalar unit = apq / abs_apq;        // e^{i phi}
    const ComplexScalar unit_conj = std::conj(unit); // e^{-i phi}

    const double tau = (aqq - app) / (2.0 * abs_apq);
    double t;
    if (tau == 0.0) {
        t = 1.0;
    } else {
        t = 1.0 / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        if (tau < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const ComplexScalar s_phase = s * unit_conj;     // s e^{-i phi}

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const ComplexScalar akp = a(k, p);
        const ComplexScalar akq = a(k, q);
        a(k, p) = c * akp - s_phase * akq;
        a(k, q) = s * akp + c * unit_conj * akq;
        a(p, k) = std::conj(a(k, p));
        a(q, k) = std::conj(a(k, q));
    }
    a(p, p) = c * c * app + s * s * aqq - 2.0 * c * s * abs_apq;
    a(q, q) = s * s * app + c * c * aqq + 2.0 * c * s * abs_apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const ComplexScalar vkp = v(k, p);
        const ComplexScalar vkq = v(k, q);
        v(k, p) = c * vkp - s_phase * vkq;
        v(k, q) = s * vkp + c * unit_conj * vkq;
    }
}

void fix_phase(ComplexVector& v) {
    double best_mag = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) best_mag = std::max(best_mag, std::abs(v[i]));
    std::size_t best = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) >= best_mag - 1e-12) {
            best = i;
            break;
        }
    }
    const ComplexScalar z = v[best];
    const double mag = std::abs(z);
    if (mag == 0.0) return;
    const ComplexScalar factor = std::conj(z) / mag;
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] *= factor;
}

}  // namespace

EighConvergenceError::EighConvergenceError(double off_norm, int sweeps)
    : std::runtime_error("eigh: no convergence after " + std::to_string(sweeps) +
                         " sweeps, off-diagonal norm " + std::to_string(off_norm)),
      off_diagonal_norm_(off_norm),
      sweeps_(sweeps) {}

Spectrum eigh(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("eigh: matrix not square");
    if (m.rows() == 0) throw std::invalid_argument("eigh: empty matrix");
    if (!m.finite()) throw std::invalid_argument("eigh: non-finite entries");
    const double dev = hermitian_deviation(m);
    if (dev > kHermTol) {
        throw std::invalid_argument("eigh: matrix not hermitian (max deviation " +
                                    std::to_string(dev) + ")");
    }

    const std::size_t n = m.rows();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
        a(i, i) = a(i, i).real();
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = 1e-13 * a.frobenius_norm();
    int sweeps = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (sweeps == kMaxSweeps) throw EighConvergenceError(off_diagonal_norm(a), sweeps);
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        ++sweeps;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum out;
    out.dim = n;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        out.eigenvalues[r] = a(order[r], order[r]).real();
        ComplexVector vec = v.column(order[r]);
        fix_phase(vec);
        out.eigenvectors[r] = std::move(vec);
    }

    double max_res = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const ComplexVector mv = m * out.eigenvectors[r];
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(mv[i] - out.eigenvalues[r] * out.eigenvectors[r][i]);
        max_res = std::max(max_res, std::sqrt(s));
    }
    out.max_residual = max_res;
    return out;
}

ComplexMatrix mat_exp_hermitian(const ComplexMatrix& m, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("mat_exp_hermitian: non-finite t");
    const Spectrum s = eigh(m);
    const std::size_t n = s.dim;
    ComplexMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = std::exp(t * s.eigenvalues[k]);
        const ComplexVector& vk = s.eigenvectors[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j) += w * vk[i] * std::conj(vk[j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const ComplexScalar avg = 0.5 * (r(i, j) + std::conj(r(j, i)));
            r(i, j) = avg;
            r(j, i) = std::conj(avg);
        }
        r(i, i) = r(i, i).real();
    }
    return r;
}

}  // namespace spinspec
