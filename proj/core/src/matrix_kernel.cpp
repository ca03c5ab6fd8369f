// matrix_kernel.cpp -- SPD factorization, solves, and the symmetric
// eigensolver (Householder tridiagonalization + implicit-shift QL).

#include "risklab/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace risklab {

SymMatrix::SymMatrix(std::size_t order)
    : order_(order), data_(order * order, 0.0) {
    if (order == 0) throw DomainError("SymMatrix order must be >= 1");
}

SymMatrix SymMatrix::identity(std::size_t order) {
    SymMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
    SymMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < order_; ++i) t += data_[i * order_ + i];
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

SpdFactorization factorize_spd(const SymMatrix& m, double pivot_tol) {
    const std::size_t n = m.order();
    SpdFactorization f;
    f.order = n;
    f.lower.assign(n * n, 0.0);

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, m(i, i));
    const double threshold = pivot_tol * std::max(max_diag, 1e-300);

    double logdet = 0.0;
    std::vector<double>& l = f.lower;
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j);
        const double* lj = &l[j * n];
        for (std::size_t k = 0; k < j; ++k) d -= lj[k] * lj[k];
        if (d <= threshold) {
            throw SingularError(j, "matrix not positive definite: pivot " +
                                       std::to_string(j) + " is " +
                                       std::to_string(d));
        }
        const double ljj = std::sqrt(d);
        l[j * n + j] = ljj;
        logdet += 2.0 * std::log(ljj);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            const double* li = &l[i * n];
            for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
            l[i * n + j] = s / ljj;
        }
    }
    f.logdet = logdet;
    return f;
}

std::vector<double> solve(const SpdFactorization& f, const std::vector<double>& b) {
    const std::size_t n = f.order;
    if (b.size() != n) throw DomainError("solve: dimension mismatch");
    const std::vector<double>& l = f.lower;

    // Forward substitution: L z = b.
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        const double* li = &l[i * n];
        for (std::size_t k = 0; k < i; ++k) s -= li[k] * z[k];
        z[i] = s / li[i];
    }
    // Back substitution: L^T y = z.
    std::vector<double> y(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = z[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * y[k];
        y[ii] = s / l[ii * n + ii];
    }
    return y;
}

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form
// (diagonal d, subdiagonal e); eigenvectors are not accumulated.
void householder_tridiag(std::vector<double>& a, std::size_t n,
                         std::vector<double>& d, std::vector<double>& e) {
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (i > 1) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
            if (scale == 0.0) {
                e[i] = a[i * n + l];
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                double f = a[i * n + l];
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                double tau = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k)
                        g += a[j * n + k] * a[i * n + k];
                    for (std::size_t k = j + 1; k <= l; ++k)
                        g += a[k * n + j] * a[i * n + k];
                    e[j] = g / h;
                    tau += e[j] * a[i * n + j];
                }
                const double hh = tau / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a[i * n + j];
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (std::size_t k = 0; k <= j; ++k)
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
}

// Implicit-shift QL iteration on a tridiagonal matrix.  `budget` is the
// global sweep allowance shared across all eigenvalues.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::size_t n,
                 long budget) {
    if (n == 1) return;
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    long sweeps = 0;
    for (std::size_t l = 0; l < n; ++l) {
        for (;;) {
            // Look for a negligible subdiagonal element to split the matrix.
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 ||
                    std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
                    break;
            }
            if (m == l) break;
            if (++sweeps > budget)
                throw ConvergenceError(
                    "eigenvalue iteration exceeded the sweep budget");

            // Implicit shift from the 2x2 leading block.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {  // rotation annihilated early; restart sweep
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

}  // namespace

std::vector<double> eigenvalues_sym(const SymMatrix& m) {
    const std::size_t n = m.order();
    std::vector<double> a = m.data();  // working copy, destroyed in place
    std::vector<double> d, e;
    if (n == 1) return {a[0]};
    householder_tridiag(a, n, d, e);
    ql_implicit(d, e, n, 30L * static_cast<long>(n));
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace risklab
