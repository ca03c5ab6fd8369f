// risk_engine.cpp -- optimal portfolios, minimal risk, concentration level,
// and the finite-N Helmholtz free energy.

#include "risklab/risk_engine.hpp"

#include <cmath>

namespace risklab {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

// y = J^{-1} e and the scalars e^T y, y^T y shared by several operations.
struct SolveE {
    std::vector<double> y;
    double ety = 0.0;
    double yty = 0.0;
};

SolveE solve_e(const SpdFactorization& f) {
    SolveE r;
    r.y = solve(f, std::vector<double>(f.order, 1.0));
    for (double v : r.y) {
        r.ety += v;
        r.yty += v * v;
    }
    return r;
}

}  // namespace

double investment_risk(const Portfolio& w, const ReturnMatrix& x) {
    if (w.weights.size() != x.n_assets)
        throw DomainError("investment_risk: dimension mismatch");
    const std::size_t n = x.n_assets;
    const std::size_t p = x.n_scenarios;
    double h = 0.0;
    // H = (1/2) sum_mu (sum_k X_k,mu w_k)^2; X already carries the 1/sqrt(N).
    for (std::size_t mu = 0; mu < p; ++mu) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            s += x.entries[k * p + mu] * w.weights[k];
        h += s * s;
    }
    return 0.5 * h;
}

Portfolio optimal_portfolio(const SymMatrix& j) {
    const std::size_t n = j.order();
    const SpdFactorization f = factorize_spd(j);
    const SolveE se = solve_e(f);
    Portfolio w;
    w.weights.resize(n);
    const double scale = static_cast<double>(n) / se.ety;
    for (std::size_t k = 0; k < n; ++k) w.weights[k] = scale * se.y[k];
    return w;
}

RiskReport minimal_risk(const SymMatrix& j, double realized_alpha) {
    const std::size_t n = j.order();
    const SpdFactorization f = factorize_spd(j);
    const SolveE se = solve_e(f);
    RiskReport r;
    r.epsilon = static_cast<double>(n) / (2.0 * se.ety);
    r.q_w = static_cast<double>(n) * se.yty / (se.ety * se.ety);
    r.realized_alpha = realized_alpha;
    return r;
}

RiskReport minimal_risk(const ReturnMatrix& x) {
    return minimal_risk(covariance(x), x.realized_alpha());
}

double concentration_level(const Portfolio& w) {
    double s = 0.0;
    for (double v : w.weights) s += v * v;
    return s / static_cast<double>(w.weights.size());
}

FreeEnergySample free_energy(double beta, const ReturnMatrix& x) {
    if (!(beta > 0.0)) throw DomainError("free_energy: beta must be > 0");
    const std::size_t n = x.n_assets;
    const SymMatrix j = covariance(x);
    const SpdFactorization f = factorize_spd(j);
    const SolveE se = solve_e(f);

    const double eps = static_cast<double>(n) / (2.0 * se.ety);
    const double nn = static_cast<double>(n);
    FreeEnergySample s;
    s.beta = beta;
    s.f_value = eps + ((nn - 1.0) * std::log(beta) + f.logdet +
                       std::log(se.ety) + kLog2Pi) /
                          (2.0 * nn * beta);
    return s;
}

}  // namespace risklab
