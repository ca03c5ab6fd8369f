// oracle_utils.hpp -- small reference implementations used only by the tests.
// Everything here is deliberately naive (Laplace determinants, textbook
// Gaussian elimination, cyclic Jacobi, plain adaptive Simpson) and shares no
// code with the library under test, so agreement is meaningful.

#ifndef RISKLAB_TESTS_ORACLE_UTILS_HPP
#define RISKLAB_TESTS_ORACLE_UTILS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

// Dense row-major n x n accessors.
inline double& at(std::vector<double>& m, std::size_t n, std::size_t i,
                  std::size_t j) {
    return m[i * n + j];
}
inline double at(const std::vector<double>& m, std::size_t n, std::size_t i,
                 std::size_t j) {
    return m[i * n + j];
}

// Laplace-expansion determinant; O(n!), fine for n <= 8.
inline double det_laplace(const std::vector<double>& m, std::size_t n) {
    if (n == 0) throw std::runtime_error("oracle: empty matrix");
    if (n == 1) return m[0];
    double sum = 0.0;
    double sign = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> minor;
        minor.reserve((n - 1) * (n - 1));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != col) minor.push_back(at(m, n, i, j));
        sum += sign * m[col] * det_laplace(minor, n - 1);
        sign = -sign;
    }
    return sum;
}

// Gaussian elimination with partial pivoting: solves a x = b.
inline std::vector<double> solve_gauss(std::vector<double> a,
                                       std::vector<double> b, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(at(a, n, i, k)) > std::fabs(at(a, n, piv, k)))
                piv = i;
        if (std::fabs(at(a, n, piv, k)) < 1e-300)
            throw std::runtime_error("oracle: singular system");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(a, n, k, j), at(a, n, piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = at(a, n, i, k) / at(a, n, k, k);
            for (std::size_t j = k; j < n; ++j)
                at(a, n, i, j) -= f * at(a, n, k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= at(a, n, ii, j) * x[j];
        x[ii] = s / at(a, n, ii, ii);
    }
    return x;
}

// Cyclic Jacobi eigensolver for symmetric matrices.  Eigenvalues come back
// ascending; vectors holds the matching orthonormal eigenvectors as columns.
struct JacobiResult {
    std::vector<double> values;
    std::vector<double> vectors;  // row-major n x n, column k = eigenvector k
};

inline JacobiResult jacobi_eigen(std::vector<double> a, std::size_t n) {
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) at(v, n, i, i) = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                off += at(a, n, i, j) * at(a, n, i, j);
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(a, n, p, q);
                if (std::fabs(apq) < 1e-300) continue;
                const double theta =
                    (at(a, n, q, q) - at(a, n, p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) +
                                  std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(a, n, k, p);
                    const double akq = at(a, n, k, q);
                    at(a, n, k, p) = c * akp - s * akq;
                    at(a, n, k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(a, n, p, k);
                    const double aqk = at(a, n, q, k);
                    at(a, n, p, k) = c * apk - s * aqk;
                    at(a, n, q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = at(v, n, k, p);
                    const double vkq = at(v, n, k, q);
                    at(v, n, k, p) = c * vkp - s * vkq;
                    at(v, n, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) {
        return at(a, n, l, l) < at(a, n, r, r);
    });
    JacobiResult r;
    r.values.resize(n);
    r.vectors.assign(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        r.values[k] = at(a, n, idx[k], idx[k]);
        for (std::size_t i = 0; i < n; ++i)
            at(r.vectors, n, i, k) = at(v, n, i, idx[k]);
    }
    return r;
}

// Plain recursive adaptive Simpson quadrature.
template <typename F>
double integrate_step(const F& f, double a, double b, double fa, double fm,
                      double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return integrate_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           integrate_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-12,
                 int depth = 52) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return integrate_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Tiny deterministic LCG for building fixed test matrices without touching
// the library RNG under test.
struct Lcg {
    unsigned long long state = 88172645463325252ULL;
    double next() {  // roughly uniform in (-1, 1)
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(static_cast<long long>(state >> 11)) /
               static_cast<double>(1LL << 52) - 1.0;
    }
};

}  // namespace oracle

#endif  // RISKLAB_TESTS_ORACLE_UTILS_HPP
