// spectrum.cpp -- Marchenko-Pastur law evaluation, negative spectral moments,
// and empirical spectra of covariance matrices.

#include "risklab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "risklab/quadrature.hpp"
#include "risklab/risk_engine.hpp"

namespace risklab {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

// Integral of the continuous MP density times f(lambda) over [a, b] inside
// the support, via the substitution lambda = l- + (l+ - l-) sin^2(theta),
// which absorbs both square-root endpoint zeros:
//   rho dlambda = (l+ - l-)^2 / (pi lambda) sin^2 cos^2 dtheta.
template <typename F>
double mp_integral(const MpLaw& law, double a, double b, const F& f,
                   double tol) {
    const double lo = std::max(a, law.lambda_minus);
    const double hi = std::min(b, law.lambda_plus);
    if (!(hi > lo)) return 0.0;
    const double width = law.lambda_plus - law.lambda_minus;
    const auto theta_of = [&](double lam) {
        const double u = std::clamp((lam - law.lambda_minus) / width, 0.0, 1.0);
        return std::asin(std::sqrt(u));
    };
    const double ta = theta_of(lo);
    const double tb = theta_of(hi);
    const auto integrand = [&](double t) {
        const double st = std::sin(t);
        const double ct = std::cos(t);
        const double lam = law.lambda_minus + width * st * st;
        if (lam <= 0.0) return 0.0;  // guard the alpha = 1 edge case
        const double rho_jac = width * width * st * st * ct * ct / (kPi * lam);
        return rho_jac * f(lam);
    };
    return adaptive_simpson(integrand, ta, tb, tol);
}

}  // namespace

MpLaw mp_law(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("mp_law: alpha must be > 0");
    MpLaw law;
    law.alpha = alpha;
    const double root = 2.0 * std::sqrt(alpha);
    law.lambda_minus = 1.0 + alpha - root;
    law.lambda_plus = 1.0 + alpha + root;
    law.point_mass_at_zero = std::max(0.0, 1.0 - alpha);
    return law;
}

double mp_density(const MpLaw& law, double lam) {
    if (!(lam > 0.0)) throw DomainError("mp_density: lambda must be > 0");
    if (lam <= law.lambda_minus || lam >= law.lambda_plus) return 0.0;
    return std::sqrt((lam - law.lambda_minus) * (law.lambda_plus - lam)) /
           (kTwoPi * lam);
}

double mp_bin_average(const MpLaw& law, double lo, double hi) {
    if (!(hi > lo)) throw DomainError("mp_bin_average: empty bin");
    const double mass =
        mp_integral(law, lo, hi, [](double) { return 1.0; }, 1e-10);
    return mass / (hi - lo);
}

double g_moment(double alpha, int s) {
    if (!(alpha > 1.0))
        throw DomainError("g_moment: alpha must be > 1 (zero atom diverges)");
    if (s < 1) throw DomainError("g_moment: s must be >= 1");
    if (s == 1) return 1.0 / (alpha - 1.0);
    if (s == 2) return alpha / ((alpha - 1.0) * (alpha - 1.0) * (alpha - 1.0));
    const MpLaw law = mp_law(alpha);
    return mp_integral(
        law, law.lambda_minus, law.lambda_plus,
        [s](double lam) { return std::pow(lam, -s); }, 1e-10);
}

double empirical_g(const ReturnMatrix& x, int s) {
    if (s != 1 && s != 2) throw DomainError("empirical_g: s must be 1 or 2");
    const std::size_t n = x.n_assets;
    const SpdFactorization f = factorize_spd(covariance(x));
    const std::vector<double> y = solve(f, std::vector<double>(n, 1.0));
    double acc = 0.0;
    if (s == 1) {
        for (double v : y) acc += v;
    } else {
        for (double v : y) acc += v * v;
    }
    return acc / static_cast<double>(n);
}

Histogram empirical_spectrum(const ReturnMatrix& x, std::size_t n_bins) {
    if (n_bins == 0) throw DomainError("empirical_spectrum: n_bins must be >= 1");
    const std::vector<double> lam = eigenvalues_sym(covariance(x));
    const MpLaw law = mp_law(x.realized_alpha());
    const double hi = 1.1 * law.lambda_plus;
    const double width = hi / static_cast<double>(n_bins);

    Histogram h;
    h.edges.resize(n_bins + 1);
    for (std::size_t k = 0; k <= n_bins; ++k)
        h.edges[k] = width * static_cast<double>(k);
    h.density.assign(n_bins, 0.0);

    const double norm =
        1.0 / (static_cast<double>(x.n_assets) * width);
    for (double v : lam) {
        if (v < 0.0 || v >= hi) continue;  // stray values are not binned
        auto k = static_cast<std::size_t>(v / width);
        if (k >= n_bins) k = n_bins - 1;
        h.density[k] += norm;
    }
    return h;
}

void write_histogram_csv(const Histogram& h, std::ostream& out) {
    char buf[64];
    out << "bin_left,bin_right,density\n";
    for (std::size_t k = 0; k < h.density.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", h.edges[k],
                      h.edges[k + 1], h.density[k]);
        out << buf;
    }
}

}  // namespace risklab
