// replica_theory.hpp -- closed-form theoretical quantities from the replica
// analysis: quenched and annealed predictions, the generating function Phi(n),
// Lambda(beta), the theoretical free energy, and the four rate functions.

#ifndef RISKLAB_REPLICA_THEORY_HPP
#define RISKLAB_REPLICA_THEORY_HPP

#include <limits>

namespace risklab {

// Closed-form quenched/annealed predictions at scenario ratio alpha.
// For alpha <= 1 the quenched concentration level diverges: qw_quenched is
// +infinity and qw_divergent is set.
struct TheoryPoint {
    double alpha = 0.0;
    double eps_quenched = 0.0;   // (alpha-1)/2 for alpha > 1, else 0
    double qw_quenched = 0.0;    // alpha/(alpha-1) for alpha > 1, else +inf
    double eps_annealed = 0.0;   // alpha/2
    double qw_annealed = 0.0;    // 1
    bool qw_divergent = false;
};

TheoryPoint theory_point(double alpha);

// Lambda(beta) = 1 - alpha log(alpha/(alpha-1)) - log(beta (alpha-1)).
// Throws DomainError unless alpha > 1 and beta > 0.
double lambda_beta(double alpha, double beta);

// Theoretical free energy f(beta) = (alpha-1)/2 - Lambda(beta)/(2 beta).
double free_energy_theory(double alpha, double beta);

// Replica generating function at real replica number n:
//   Phi(n) = -(n alpha / 2) log(alpha/(alpha-1))
//            - ((alpha-1)/2) log(1 + n beta) + n/2 - (n/2) log(beta (alpha-1)).
// Throws DomainError when 1 + n beta <= 0 (or alpha <= 1, beta <= 0).
// The replica-trick identity dPhi/dn|_{n=0} = -beta * free_energy_theory holds.
double phi(double n, double alpha, double beta);

// Which tail the Chernoff bound controls: plus bounds Pr[value <= threshold]
// (replica number n > 0), minus bounds Pr[value >= threshold] (n < 0).
enum class Side { plus, minus };

// Which case of a piecewise rate-function definition applied.
enum class RateBranch { zero, finite, infinite };

struct RateValue {
    double value = 0.0;  // >= 0, possibly +infinity
    RateBranch branch = RateBranch::zero;

    bool is_infinite() const {
        return value == std::numeric_limits<double>::infinity();
    }
};

// Rate function of the free energy.  With f* = (alpha-1)/2 - Lambda/(2 beta)
// and s = (f~ + Lambda/(2 beta)) / ((alpha-1)/2):
//   plus side:  0 for f* <= f~, else ((alpha-1)/2)(s - 1 - log s);
//   minus side: 0 for f* >= f~, else the same expression.
// s <= 0 yields +infinity (the bound e^{-N R} = 0: no mass that far out).
RateValue rate_free_energy(double alpha, double beta, double f_tilde, Side side);

// Rate function of the posterior investment risk per asset, localized at
// (alpha-1)/2 + 1/(2 beta).  With s' = 2 beta (eps~ - (alpha-1)/2):
//   plus side:  +inf for eps~ <= (alpha-1)/2;
//               (1/2)(s' - 1 - log s') inside the gap; 0 at or above the
//               localization point;
//   minus side: 0 at or below the localization point, else the same form.
RateValue rate_risk(double alpha, double beta, double eps_tilde, Side side);

// Localization point of the posterior risk: (alpha-1)/2 + 1/(2 beta);
// decreases to the minimal risk eps as beta -> infinity.
double risk_localization(double alpha, double beta);

}  // namespace risklab

#endif  // RISKLAB_REPLICA_THEORY_HPP
