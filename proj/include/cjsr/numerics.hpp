#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cjsr {

class NumericsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public NumericsError {
public:
    using NumericsError::NumericsError;
};

class ConvergenceFailure : public NumericsError {
public:
    using NumericsError::NumericsError;
};

class DomainError : public NumericsError {
public:
    using NumericsError::NumericsError;
};

// Dense square matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    static Matrix identity(int n);

    int dim() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    std::span<const double> data() const { return a_; }
    std::span<double> data() { return a_; }

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix& operator*=(double s);
    Matrix operator-(const Matrix& rhs) const;

    // y = M x
    std::vector<double> apply(std::span<const double> x) const;

    double frobenius() const;
    double max_abs() const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

// Symmetric matrix stored as its packed upper triangle, row order (i <= j).
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {}

    static SymMatrix identity(int n);
    static SymMatrix from_dense(const Matrix& m);  // symmetrizes

    int dim() const { return n_; }
    int packed_size() const { return n_ * (n_ + 1) / 2; }

    // i <= j required
    double& at(int i, int j) { return a_[pack(i, j)]; }
    double at(int i, int j) const { return a_[pack(i, j)]; }
    // any index order
    double operator()(int i, int j) const { return i <= j ? a_[pack(i, j)] : a_[pack(j, i)]; }

    Matrix to_dense() const;
    double frobenius() const;
    double quadratic_form(std::span<const double> x) const;  // x^T M x

    // Isometric vectorization: off-diagonals scaled by sqrt(2) so that the
    // packed dot product equals the Frobenius inner product.
    std::vector<double> to_svec() const;
    static SymMatrix from_svec(std::span<const double> v);

private:
    std::size_t pack(int i, int j) const {
        // row i of the upper triangle starts at i*n - i(i-1)/2
        return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
    }

    int n_ = 0;
    std::vector<double> a_;
};

// svec of the rank-1 matrix x x^T; its Euclidean norm is |x|^2.
std::vector<double> svec_outer(std::span<const double> x);

struct SymEig {
    std::vector<double> values;  // ascending
    Matrix vectors;              // orthonormal columns, vectors.col(k) pairs with values[k]
};

// Cyclic Jacobi; residual |Mv - lv| <= 1e-10 |M|_F per pair.
SymEig sym_eig(const SymMatrix& m);

// sqrt(det(P) / lambda_min(P)^n); requires P > 0.
double kappa(const SymMatrix& p);

// Frobenius-nearest symmetric matrix with spectrum clamped into [lo, hi].
SymMatrix project_spectral_box(const SymMatrix& m, double lo, double hi);

// Regularized incomplete beta I_x(a, b), absolute error <= 1e-12.
double reg_inc_beta(double x, double a, double b);
// Inverse in the first argument: |I_x(a,b) - p| <= 1e-10.
double reg_inc_beta_inv(double p, double a, double b);

// Eigenvalues of a general real matrix (complex Hessenberg QR).
std::vector<std::complex<double>> eigenvalues(const Matrix& a);
double spectral_radius(const Matrix& a);

struct DiagonalizabilityReport {
    bool diagonalizable;
    double condition;  // Frobenius condition estimate of the eigenvector matrix
};

// Eigenvector matrix built by shifted inverse iteration; flag true when its
// condition estimate stays below cond_limit.
DiagonalizabilityReport diagonalizability(const Matrix& a, double cond_limit = 1e8);

}  // namespace cjsr
