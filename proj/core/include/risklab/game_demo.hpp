// game_demo.hpp -- the rock-paper-scissors thought experiment: annealed
// (no foreknowledge) versus quenched (foreknowledge) expected scores, with
// and without composition constraints on Alice's hands.
//
// Scoring: +1 win, -1 loss, 0 tie, per round.  Bob's hands are i.i.d. draws
// from his mix; Alice either plays a fixed mix (annealed) or reacts to Bob's
// revealed hand under the active constraint (quenched).

#ifndef RISKLAB_GAME_DEMO_HPP
#define RISKLAB_GAME_DEMO_HPP

#include <cstddef>
#include <cstdint>

namespace risklab {

enum class Hand { rock = 0, paper = 1, scissors = 2 };

// Per-round payoff for Alice: +1 if a beats b, -1 if b beats a, 0 on a tie.
int payoff(Hand a, Hand b);

// A mixed strategy (probabilities of rock/paper/scissors).
struct Mix {
    double r = 1.0 / 3.0;
    double p = 1.0 / 3.0;
    double s = 1.0 / 3.0;
};

// Validate entries in [0,1] summing to 1 within 1e-12; throws DomainError.
void validate(const Mix& m);

enum class Knowledge { annealed, quenched };

// Constraint on Alice's play:
//   none               -- free choice every round;
//   equal_counts       -- each hand exactly rounds/3 times per set, played in
//                         blocks of three (one of each hand per block) with
//                         Bob's hand revealed before each round;
//   same_hand_each_set -- one fixed hand per set, chosen knowing that set's
//                         realized sequence, re-chosen between sets.
enum class Constraint { none, equal_counts, same_hand_each_set };

struct GameSpec {
    Mix bob_mix;
    int rounds = 300;  // per set
    Knowledge knowledge = Knowledge::annealed;
    Constraint constraint = Constraint::none;
    int sets = 1;
};

// Exact expected total score when Alice plays mix `alice` with no
// foreknowledge: (rounds * sets) * sum_b bob_b * sum_a alice_a * payoff(a, b).
// The inner sum is evaluated per Bob hand so that the antisymmetric payoff
// cancels exactly in floating point for the symmetric cases.
double expected_score_annealed(const Mix& alice, const GameSpec& spec);

// Monte Carlo mean and standard error of a statistic.
struct McScore {
    double mean = 0.0;
    double std_error = 0.0;
};

// Monte Carlo expected total score when Alice learns Bob's hand before each
// round and plays optimally under spec.constraint (see Constraint).  For
// equal_counts the within-block play is exactly optimal via an 8-state subset
// dynamic program computed from bob_mix.  Throws ConstraintError if
// equal_counts is requested with rounds not divisible by 3.
McScore expected_score_quenched(const GameSpec& spec, std::size_t n_trials,
                                std::uint64_t seed);

// Exact expected value of the equal-counts quenched protocol (per-block
// subset-DP value summed over blocks and sets); the Monte Carlo mean above
// converges to this.
double equal_counts_quenched_value(const GameSpec& spec);

// Verifies the quenched >= annealed direction for the spec's constraint:
// quenched Monte Carlo mean must be at least the best annealed expectation
// (maximum over Alice's pure hands) minus 3 standard errors.
struct InequalityReport {
    double quenched_mean = 0.0;
    double quenched_std_error = 0.0;
    double best_annealed = 0.0;
    bool passed = false;
};

InequalityReport quenched_geq_annealed_check(const GameSpec& spec,
                                             std::size_t n_trials,
                                             std::uint64_t seed);

}  // namespace risklab

#endif  // RISKLAB_GAME_DEMO_HPP
