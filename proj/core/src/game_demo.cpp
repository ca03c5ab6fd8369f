// game_demo.cpp -- annealed vs quenched rock-paper-scissors scores.

#include "risklab/game_demo.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "risklab/errors.hpp"
#include "risklab/rng.hpp"

namespace risklab {

int payoff(Hand a, Hand b) {
    if (a == b) return 0;
    // rock beats scissors, paper beats rock, scissors beats paper:
    // a beats b exactly when b is the hand "two steps" after a.
    const int ai = static_cast<int>(a);
    const int bi = static_cast<int>(b);
    return (bi == (ai + 2) % 3) ? 1 : -1;
}

void validate(const Mix& m) {
    const double entries[3] = {m.r, m.p, m.s};
    double sum = 0.0;
    for (double v : entries) {
        if (!(v >= 0.0 && v <= 1.0))
            throw DomainError("Mix: probabilities must lie in [0, 1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw DomainError("Mix: probabilities must sum to 1");
}

namespace {

constexpr std::array<Hand, 3> kHands = {Hand::rock, Hand::paper, Hand::scissors};

double mix_prob(const Mix& m, Hand h) {
    switch (h) {
        case Hand::rock: return m.r;
        case Hand::paper: return m.p;
        default: return m.s;
    }
}

// Bob's hand for round `i` of the stream `key`: inverse CDF on a uniform.
Hand bob_hand(const Mix& bob, std::uint64_t key, std::uint64_t i) {
    const double u = rng::uniform01_at(key, i);
    if (u < bob.r) return Hand::rock;
    if (u < bob.r + bob.p) return Hand::paper;
    return Hand::scissors;
}

void validate_spec(const GameSpec& spec) {
    validate(spec.bob_mix);
    if (spec.rounds <= 0) throw DomainError("GameSpec: rounds must be > 0");
    if (spec.sets <= 0) throw DomainError("GameSpec: sets must be > 0");
    if (spec.constraint == Constraint::equal_counts && spec.rounds % 3 != 0)
        throw ConstraintError(
            "equal_counts requires a round count divisible by 3");
}

// Value function of the equal-counts block game over subsets of the three
// hands (bitmask 1<<hand).  V[S] is the expected score collectible with the
// hands in S remaining, when Bob's hand is revealed before each round:
//   V[S] = sum_b bob_b * max_{a in S} (payoff(a, b) + V[S \ {a}]).
std::array<double, 8> block_values(const Mix& bob) {
    std::array<double, 8> v{};
    for (int size = 1; size <= 3; ++size) {
        for (int mask = 1; mask < 8; ++mask) {
            if (std::popcount(static_cast<unsigned>(mask)) != size) continue;
            double total = 0.0;
            for (Hand b : kHands) {
                double best = -1e300;
                for (int a = 0; a < 3; ++a) {
                    if (!(mask & (1 << a))) continue;
                    const double val =
                        payoff(static_cast<Hand>(a), b) + v[mask & ~(1 << a)];
                    best = std::max(best, val);
                }
                total += mix_prob(bob, b) * best;
            }
            v[mask] = total;
        }
    }
    return v;
}

// One quenched trial under the equal-counts constraint: play rounds/3 blocks,
// one of each hand per block, choosing the DP-optimal hand after seeing Bob's.
double trial_equal_counts(const GameSpec& spec, const std::array<double, 8>& v,
                          std::uint64_t key) {
    double score = 0.0;
    std::uint64_t round_idx = 0;
    const int blocks_per_set = spec.rounds / 3;
    for (int set = 0; set < spec.sets; ++set) {
        for (int blk = 0; blk < blocks_per_set; ++blk) {
            int mask = 7;
            for (int r = 0; r < 3; ++r) {
                const Hand b = bob_hand(spec.bob_mix, key, round_idx++);
                int best_a = -1;
                double best = -1e300;
                for (int a = 0; a < 3; ++a) {
                    if (!(mask & (1 << a))) continue;
                    const double val =
                        payoff(static_cast<Hand>(a), b) + v[mask & ~(1 << a)];
                    if (val > best) {
                        best = val;
                        best_a = a;
                    }
                }
                score += payoff(static_cast<Hand>(best_a), b);
                mask &= ~(1 << best_a);
            }
        }
    }
    return score;
}

// One quenched trial under the same-hand-per-set constraint: per set, draw
// Bob's hands and pick the single hand with the best realized advantage
// (#rounds it beats minus #rounds it loses).
double trial_same_hand(const GameSpec& spec, std::uint64_t key) {
    double score = 0.0;
    std::uint64_t round_idx = 0;
    for (int set = 0; set < spec.sets; ++set) {
        int counts[3] = {0, 0, 0};
        for (int r = 0; r < spec.rounds; ++r)
            ++counts[static_cast<int>(bob_hand(spec.bob_mix, key, round_idx++))];
        int best = -spec.rounds - 1;
        for (int a = 0; a < 3; ++a) {
            // hand a beats (a+2)%3 and loses to (a+1)%3
            const int adv = counts[(a + 2) % 3] - counts[(a + 1) % 3];
            best = std::max(best, adv);
        }
        score += best;
    }
    return score;
}

}  // namespace

double expected_score_annealed(const Mix& alice, const GameSpec& spec) {
    validate(alice);
    validate_spec(spec);
    // Per Bob hand, sum Alice's mix against the payoff column first: the
    // antisymmetric column entries (+1, 0, -1) make the symmetric cases
    // cancel exactly in floating point.
    double per_round = 0.0;
    for (Hand b : kHands) {
        double inner = 0.0;
        for (Hand a : kHands) inner += mix_prob(alice, a) * payoff(a, b);
        per_round += mix_prob(spec.bob_mix, b) * inner;
    }
    return static_cast<double>(spec.rounds) * static_cast<double>(spec.sets) *
           per_round;
}

double equal_counts_quenched_value(const GameSpec& spec) {
    validate_spec(spec);
    if (spec.constraint != Constraint::equal_counts)
        throw DomainError("equal_counts_quenched_value: wrong constraint");
    const std::array<double, 8> v = block_values(spec.bob_mix);
    return v[7] * static_cast<double>(spec.rounds / 3) *
           static_cast<double>(spec.sets);
}

McScore expected_score_quenched(const GameSpec& spec, std::size_t n_trials,
                                std::uint64_t seed) {
    validate_spec(spec);
    if (spec.knowledge != Knowledge::quenched)
        throw DomainError("expected_score_quenched: knowledge must be quenched");
    if (n_trials == 0) throw DomainError("n_trials must be > 0");

    const std::array<double, 8> v = block_values(spec.bob_mix);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t t = 0; t < n_trials; ++t) {
        const std::uint64_t key = rng::stream_key(seed, t);
        double score = 0.0;
        switch (spec.constraint) {
            case Constraint::none:
                // Alice plays the winning hand every round.
                score = static_cast<double>(spec.rounds) *
                        static_cast<double>(spec.sets);
                break;
            case Constraint::equal_counts:
                score = trial_equal_counts(spec, v, key);
                break;
            case Constraint::same_hand_each_set:
                score = trial_same_hand(spec, key);
                break;
        }
        sum += score;
        sum_sq += score * score;
    }
    McScore r;
    const double n = static_cast<double>(n_trials);
    r.mean = sum / n;
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    r.std_error = (n_trials > 1) ? std::sqrt(var / n) : 0.0;
    return r;
}

InequalityReport quenched_geq_annealed_check(const GameSpec& spec,
                                             std::size_t n_trials,
                                             std::uint64_t seed) {
    GameSpec quenched = spec;
    quenched.knowledge = Knowledge::quenched;
    const McScore mc = expected_score_quenched(quenched, n_trials, seed);

    // Best annealed expectation: the score is linear in Alice's mix, so the
    // maximum over the simplex is attained at a pure hand.
    GameSpec annealed = spec;
    annealed.knowledge = Knowledge::annealed;
    double best = -1e300;
    const Mix pure[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const Mix& m : pure)
        best = std::max(best, expected_score_annealed(m, annealed));

    InequalityReport rep;
    rep.quenched_mean = mc.mean;
    rep.quenched_std_error = mc.std_error;
    rep.best_annealed = best;
    rep.passed = mc.mean >= best - 3.0 * mc.std_error;
    return rep;
}

}  // namespace risklab
