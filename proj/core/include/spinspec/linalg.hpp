#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace spinspec {

using ComplexScalar = std::complex<double>;

/// Dense complex vector with explicit dimension.
class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim) : data_(dim) {}
    ComplexVector(std::initializer_list<ComplexScalar> init) : data_(init) {}

    std::size_t dim() const { return data_.size(); }

    ComplexScalar& operator[](std::size_t i) { return data_[i]; }
    const ComplexScalar& operator[](std::size_t i) const { return data_[i]; }

    const std::vector<ComplexScalar>& entries() const { return data_; }

    double norm() const;
    bool finite() const;

private:
    std::vector<ComplexScalar> data_;
};

/// ⟨a|b⟩, conjugate-linear in the first argument.
ComplexScalar inner(const ComplexVector& a, const ComplexVector& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator*(ComplexScalar s, const ComplexVector& v);
ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    ComplexScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const ComplexScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<ComplexScalar>& entries() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexScalar trace() const;
    ComplexVector column(std::size_t j) const;

    double max_abs() const;
    double frobenius_norm() const;
    bool finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ComplexScalar> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexScalar s, const ComplexMatrix& m);
ComplexMatrix operator*(double s, const ComplexMatrix& m);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

/// max_ij |a(i,j) - b(i,j)|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |m(i,j) - conj(m(j,i))|; zero for an exactly hermitian matrix.
double hermitian_deviation(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);

/// Kronecker product: block (i,j) of the result equals a(i,j)*b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// a*b - b*a for square matrices of equal dimension.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert-Schmidt inner product tr(a * b†).
ComplexScalar hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// The n²×n² perfect-shuffle permutation P with P(u⊗v) = v⊗u; its own inverse.
ComplexMatrix swap_permutation(std::size_t n);

}  // namespace spinspec
