// matrix_kernel.hpp -- dense symmetric linear algebra primitives.
//
// Provides the operations every other module builds on: SPD factorization
// with log-determinant, linear solves, and a full symmetric eigensolver
// (Householder tridiagonalization + implicit-shift QL).  All arithmetic is
// 64-bit floating point.

#ifndef RISKLAB_MATRIX_KERNEL_HPP
#define RISKLAB_MATRIX_KERNEL_HPP

#include <cstddef>
#include <vector>

#include "risklab/errors.hpp"

namespace risklab {

// Dense symmetric matrix of order N.  Symmetry holds exactly by construction:
// set(i, j, v) writes both (i, j) and (j, i).
class SymMatrix {
public:
    explicit SymMatrix(std::size_t order);

    static SymMatrix identity(std::size_t order);
    static SymMatrix diagonal(const std::vector<double>& d);

    std::size_t order() const noexcept { return order_; }

    double operator()(std::size_t i, std::size_t j) const {
        return data_[i * order_ + j];
    }
    void set(std::size_t i, std::size_t j, double v) {
        data_[i * order_ + j] = v;
        data_[j * order_ + i] = v;
    }

    double trace() const;
    double frobenius_norm() const;

    // Row-major N*N storage, for kernels that want contiguous rows.
    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

private:
    std::size_t order_;
    std::vector<double> data_;
};

// Lower-triangular factor L with m = L * L^T, and logdet = 2 * sum(log L_ii).
struct SpdFactorization {
    std::size_t order = 0;
    std::vector<double> lower;  // row-major; strict upper triangle unused
    double logdet = 0.0;
};

// Cholesky-type factorization of a symmetric positive-definite matrix.
// Throws SingularError (carrying the pivot index) when a pivot falls at or
// below pivot_tol times the largest diagonal entry -- the signature of p <= N
// or an otherwise degenerate covariance matrix.
SpdFactorization factorize_spd(const SymMatrix& m, double pivot_tol = 1e-12);

// Solve (L L^T) y = b by forward/back substitution.
std::vector<double> solve(const SpdFactorization& f, const std::vector<double>& b);

// All eigenvalues of a symmetric matrix, sorted ascending.  Householder
// reduction to tridiagonal form followed by implicit-shift QL iteration;
// throws ConvergenceError if the global budget of 30*N sweeps is exceeded.
std::vector<double> eigenvalues_sym(const SymMatrix& m);

}  // namespace risklab

#endif  // RISKLAB_MATRIX_KERNEL_HPP
