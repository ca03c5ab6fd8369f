// risk_engine.hpp -- optimal budget-constrained portfolios and their minimal
// investment risk, concentration level, and finite-N Helmholtz free energy.
//
// Conventions: the budget constraint is sum_k w_k = N (short selling allowed);
// the risk function is H(w|X) = (1/2) sum_mu ((1/sqrt(N)) sum_k x_k,mu w_k)^2
// = (1/2) w^T J w; the optimal portfolio is w = N J^{-1} e / (e^T J^{-1} e).

#ifndef RISKLAB_RISK_ENGINE_HPP
#define RISKLAB_RISK_ENGINE_HPP

#include <vector>

#include "risklab/market.hpp"
#include "risklab/matrix_kernel.hpp"

namespace risklab {

// Portfolio weights under the budget constraint sum_k w_k = N.
struct Portfolio {
    std::vector<double> weights;
};

// Minimal investment risk per asset and concentration level of one instance.
struct RiskReport {
    double epsilon = 0.0;         // N / (2 e^T J^{-1} e), >= 0
    double q_w = 0.0;             // N e^T J^{-2} e / (e^T J^{-1} e)^2, >= 1
    double realized_alpha = 0.0;  // p / N
};

// Helmholtz free energy per asset at inverse temperature beta.
struct FreeEnergySample {
    double beta = 0.0;
    double f_value = 0.0;
};

// H(w|X), the investment risk of portfolio w on realization X.
double investment_risk(const Portfolio& w, const ReturnMatrix& x);

// Closed-form optimal portfolio w = N y / (e^T y) with J y = e.
// Throws SingularError when J is not SPD (p <= N: optimum not unique).
Portfolio optimal_portfolio(const SymMatrix& j);

// Minimal risk per asset and concentration level from a single solve:
// y = J^{-1} e, e^T J^{-2} e = y^T y.  realized_alpha is p/N, which the
// covariance matrix alone does not know; the ReturnMatrix overload fills it.
RiskReport minimal_risk(const SymMatrix& j, double realized_alpha);
RiskReport minimal_risk(const ReturnMatrix& x);

// Concentration level q_w = (1/N) sum_k w_k^2: 1 at equipartition, N for a
// single-asset bet.
double concentration_level(const Portfolio& w);

// Finite-N Helmholtz free energy f(beta, X) = -(1/(N beta)) log Z(beta, X)
// with Z = (2 pi)^{-N/2} integral dw delta(e^T w - N) exp(-beta H).  Gaussian
// integration over the budget hyperplane gives the closed form
//   f = eps(X) + (1/(2 N beta)) [(N-1) log beta + log det J
//                                + log(e^T J^{-1} e) + log 2 pi].
// Throws SingularError when J is not SPD and DomainError when beta <= 0.
FreeEnergySample free_energy(double beta, const ReturnMatrix& x);

}  // namespace risklab

#endif  // RISKLAB_RISK_ENGINE_HPP
