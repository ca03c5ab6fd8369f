// replica_theory.cpp -- closed-form quenched/annealed predictions and rate
// functions from the replica analysis.

#include "risklab/replica_theory.hpp"

#include <cmath>

#include "risklab/errors.hpp"

namespace risklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha_beta(double alpha, double beta) {
    if (!(alpha > 1.0)) throw DomainError("alpha must be > 1");
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
}

// Gibbs deviation s - 1 - log s, nonnegative for all s > 0 and zero at s = 1.
double gibbs(double s) { return s - 1.0 - std::log(s); }

}  // namespace

TheoryPoint theory_point(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
    TheoryPoint t;
    t.alpha = alpha;
    t.eps_annealed = 0.5 * alpha;
    t.qw_annealed = 1.0;
    if (alpha > 1.0) {
        t.eps_quenched = 0.5 * (alpha - 1.0);
        t.qw_quenched = alpha / (alpha - 1.0);
        t.qw_divergent = false;
    } else {
        t.eps_quenched = 0.0;
        t.qw_quenched = kInf;
        t.qw_divergent = true;
    }
    return t;
}

double lambda_beta(double alpha, double beta) {
    require_alpha_beta(alpha, beta);
    return 1.0 - alpha * std::log(alpha / (alpha - 1.0)) -
           std::log(beta * (alpha - 1.0));
}

double free_energy_theory(double alpha, double beta) {
    require_alpha_beta(alpha, beta);
    return 0.5 * (alpha - 1.0) - lambda_beta(alpha, beta) / (2.0 * beta);
}

double phi(double n, double alpha, double beta) {
    require_alpha_beta(alpha, beta);
    if (!(1.0 + n * beta > 0.0))
        throw DomainError("phi: 1 + n*beta must be > 0");
    return -0.5 * n * alpha * std::log(alpha / (alpha - 1.0)) -
           0.5 * (alpha - 1.0) * std::log1p(n * beta) + 0.5 * n -
           0.5 * n * std::log(beta * (alpha - 1.0));
}

RateValue rate_free_energy(double alpha, double beta, double f_tilde, Side side) {
    require_alpha_beta(alpha, beta);
    const double half_am1 = 0.5 * (alpha - 1.0);
    const double lam_over_2b = lambda_beta(alpha, beta) / (2.0 * beta);
    const double f_star = half_am1 - lam_over_2b;

    const bool typical = (side == Side::plus) ? (f_star <= f_tilde)
                                              : (f_star >= f_tilde);
    if (typical) return {0.0, RateBranch::zero};

    const double s = (f_tilde + lam_over_2b) / half_am1;
    if (s <= 0.0) return {kInf, RateBranch::infinite};
    return {half_am1 * gibbs(s), RateBranch::finite};
}

RateValue rate_risk(double alpha, double beta, double eps_tilde, Side side) {
    require_alpha_beta(alpha, beta);
    const double half_am1 = 0.5 * (alpha - 1.0);
    const double localization = half_am1 + 0.5 / beta;

    if (side == Side::plus) {
        if (eps_tilde <= half_am1) return {kInf, RateBranch::infinite};
        if (eps_tilde >= localization) return {0.0, RateBranch::zero};
    } else {
        if (eps_tilde <= localization) return {0.0, RateBranch::zero};
    }
    const double s_prime = 2.0 * beta * (eps_tilde - half_am1);
    return {0.5 * gibbs(s_prime), RateBranch::finite};
}

double risk_localization(double alpha, double beta) {
    require_alpha_beta(alpha, beta);
    return 0.5 * (alpha - 1.0) + 0.5 / beta;
}

}  // namespace risklab
