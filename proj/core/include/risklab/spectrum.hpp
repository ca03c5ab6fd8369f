// spectrum.hpp -- Marchenko-Pastur law utilities and empirical spectral
// measurements of covariance matrices J = X X^T.
//
// With the 1/sqrt(N) return scaling the limiting eigenvalue density is
//   rho(lambda) = [1-alpha]^+ delta(lambda)
//               + sqrt(([lambda - l-]^+ [l+ - lambda]^+)) / (2 pi lambda),
// with edges l+- = 1 + alpha +- 2 sqrt(alpha).

#ifndef RISKLAB_SPECTRUM_HPP
#define RISKLAB_SPECTRUM_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "risklab/market.hpp"

namespace risklab {

// Marchenko-Pastur law parameters at scenario ratio alpha.
struct MpLaw {
    double alpha = 0.0;
    double lambda_minus = 0.0;       // 1 + alpha - 2 sqrt(alpha)
    double lambda_plus = 0.0;        // 1 + alpha + 2 sqrt(alpha)
    double point_mass_at_zero = 0.0; // max(0, 1 - alpha)
};

MpLaw mp_law(double alpha);

// Continuous part of the density at lam > 0 (the atom at zero is reported
// separately in MpLaw).  Zero outside [lambda_minus, lambda_plus]; throws
// DomainError for lam <= 0.
double mp_density(const MpLaw& law, double lam);

// Mean of the continuous density over [lo, hi] (integral / width); used for
// histogram overlays where the density varies steeply within a bin.
double mp_bin_average(const MpLaw& law, double lo, double hi);

// Negative spectral moments g(s) = integral rho(lambda) lambda^{-s} d lambda.
// Closed forms for s = 1, 2 (1/(alpha-1) and alpha/(alpha-1)^3); adaptive
// quadrature with a sin^2 endpoint substitution for s >= 3.  Throws
// DomainError for alpha <= 1 (the zero atom makes the integral diverge).
double g_moment(double alpha, int s);

// Empirical counterpart g(s) = (1/N) e^T J^{-s} e computed by solves only
// (never by eigendecomposition): s=1 gives (1/N) e^T y, s=2 gives (1/N) y^T y
// with J y = e.  Throws SingularError when J is not SPD.
double empirical_g(const ReturnMatrix& x, int s);

// Histogram of eigenvalues of J over equal-width bins spanning
// [0, 1.1 * lambda_plus]; density normalized so that a full histogram
// integrates to 1 (counts / (N * bin width)).
struct Histogram {
    std::vector<double> edges;    // n_bins + 1 ascending edges
    std::vector<double> density;  // n_bins values
};

Histogram empirical_spectrum(const ReturnMatrix& x, std::size_t n_bins);

// CSV serialization: header bin_left,bin_right,density; 12 significant digits.
void write_histogram_csv(const Histogram& h, std::ostream& out);

}  // namespace risklab

#endif  // RISKLAB_SPECTRUM_HPP
