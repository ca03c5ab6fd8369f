// acceptance.cpp -- end-to-end checks of the laboratory against its closed
// forms.  Prints exactly one [PASS]/[FAIL] line per criterion and exits with
// the number of failures.
//
// Usage: acceptance [k]   with k in 1..9; no argument runs all nine.
//
// Every run is seeded with fixed constants so the verdict is reproducible;
// statistical tolerances below were sized from the exact sampling laws
// (2N eps(X) is chi-square with p - N + 1 degrees of freedom) so that a
// passing configuration passes with wide margin, not by luck.

#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "quadrature_oracle.hpp"
#include "risklab/game_demo.hpp"
#include "risklab/harness.hpp"
#include "risklab/market.hpp"
#include "risklab/matrix_kernel.hpp"
#include "risklab/replica_theory.hpp"
#include "risklab/risk_engine.hpp"
#include "risklab/spectrum.hpp"

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string strf(const char* fmt, ...) {
    char buf[1024];
    std::va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return std::string(buf);
}

// Seeds are fixed up front, one per experiment, and never tuned to results.
constexpr std::uint64_t kSeedSweep = 20240802;
constexpr std::uint64_t kSeedGMoments = 20240803;
constexpr std::uint64_t kSeedHistogram = 20240813;
constexpr std::uint64_t kSeedZeroAtom = 20240823;
constexpr std::uint64_t kSeedQuadN2 = 20240804;
constexpr std::uint64_t kSeedQuadN3 = 20240814;
constexpr std::uint64_t kSeedFreeEnergy = 20240824;
constexpr std::uint64_t kSeedScan = 20240805;
constexpr std::uint64_t kSeedChernoff = 20240806;
constexpr std::uint64_t kSeedGameNone = 20240807;
constexpr std::uint64_t kSeedGameBlocks = 20240817;
constexpr std::uint64_t kSeedGameSets = 20240827;

risklab::ReturnMatrix draw(std::size_t n_assets, double alpha,
                           std::uint64_t seed, std::size_t n_samples,
                           std::size_t index) {
    risklab::EnsembleSpec spec;
    spec.n_assets = n_assets;
    spec.scenario_ratio = alpha;
    spec.master_seed = seed;
    spec.n_samples = n_samples;
    return risklab::sample_return_matrix(spec, index);
}

// Shared by criteria 1 and 2: the risk-versus-alpha sweep at desk scale.
const std::vector<risklab::SweepRecord>& fig1_sweep() {
    static const std::vector<risklab::SweepRecord> records = risklab::sweep(
        {1.2, 1.6, 2.0, 3.0, 4.0, 6.0, 8.0}, 500, 50, kSeedSweep, 1);
    return records;
}

// Criterion 1: sweep means match the quenched closed forms,
// eps = (alpha-1)/2 within max(3 stderr, 2%) and q_w = alpha/(alpha-1)
// within max(3 stderr, 3%), at N=500 with 50 samples per alpha.
Outcome criterion1() {
    const auto& rows = fig1_sweep();
    double worst = 0.0;
    double worst_alpha = 0.0;
    for (const auto& r : rows) {
        const double eps_tol =
            std::max(3.0 * r.eps_stderr, 0.02 * r.eps_theory);
        const double qw_tol = std::max(3.0 * r.qw_stderr, 0.03 * r.qw_theory);
        const double eps_ratio = std::fabs(r.eps_mean - r.eps_theory) / eps_tol;
        const double qw_ratio = std::fabs(r.qw_mean - r.qw_theory) / qw_tol;
        const double ratio = std::max(eps_ratio, qw_ratio);
        if (ratio > worst) {
            worst = ratio;
            worst_alpha = r.alpha_nominal;
        }
    }
    return {worst <= 1.0 && rows.size() == 7,
            strf("eps vs (alpha-1)/2 and q_w vs alpha/(alpha-1) at N=500, "
                 "50 samples, 7 alphas; worst deviation %.2f of tolerance "
                 "(alpha=%g)",
                 worst, worst_alpha)};
}

// Criterion 2: the annealed curve alpha/2 sits above the quenched sample
// mean by at least 0.45 - 3 stderr at every sweep point.
Outcome criterion2() {
    const auto& rows = fig1_sweep();
    double min_gap = 1e300;
    double at_alpha = 0.0;
    bool ok = true;
    for (const auto& r : rows) {
        const double gap = r.eps_or - r.eps_mean;
        if (gap < min_gap) {
            min_gap = gap;
            at_alpha = r.alpha_nominal;
        }
        ok = ok && gap >= 0.45 - 3.0 * r.eps_stderr;
    }
    return {ok, strf("annealed-quenched risk gap >= 0.45 - 3 stderr at all "
                     "7 alphas; smallest gap %.4f (alpha=%g, theory 0.5)",
                     min_gap, at_alpha)};
}

// Criterion 3: Marchenko-Pastur moments and spectra.  (a) empirical g(1),
// g(2) over 50 draws at N=500, alpha=2 within 3 stderr of 1 and 2; (b) a
// 40-bin spectral histogram at N=400 within 0.05 of the bin-averaged density
// everywhere; (c) at alpha=0.5 the covariance has at least N - p eigenvalues
// below 1e-8.
Outcome criterion3() {
    const std::size_t n_g = 50;
    double s1 = 0.0, s2 = 0.0, ss1 = 0.0, ss2 = 0.0;
    for (std::size_t i = 0; i < n_g; ++i) {
        const auto x = draw(500, 2.0, kSeedGMoments, n_g, i);
        const double g1 = risklab::empirical_g(x, 1);
        const double g2 = risklab::empirical_g(x, 2);
        s1 += g1;
        ss1 += g1 * g1;
        s2 += g2;
        ss2 += g2 * g2;
    }
    const double m1 = s1 / n_g, m2 = s2 / n_g;
    const double se1 = std::sqrt((ss1 / n_g - m1 * m1) / (n_g - 1));
    const double se2 = std::sqrt((ss2 / n_g - m2 * m2) / (n_g - 1));
    const double th1 = risklab::g_moment(2.0, 1);
    const double th2 = risklab::g_moment(2.0, 2);
    const bool ok_a =
        std::fabs(m1 - th1) <= 3.0 * se1 && std::fabs(m2 - th2) <= 3.0 * se2;

    const auto xh = draw(400, 2.0, kSeedHistogram, 1, 0);
    const auto hist = risklab::empirical_spectrum(xh, 40);
    const auto law = risklab::mp_law(2.0);
    double max_dev = 0.0;
    for (std::size_t b = 0; b < hist.density.size(); ++b) {
        const double th =
            risklab::mp_bin_average(law, hist.edges[b], hist.edges[b + 1]);
        max_dev = std::max(max_dev, std::fabs(hist.density[b] - th));
    }
    const bool ok_b = max_dev < 0.05;

    const auto xz = draw(400, 0.5, kSeedZeroAtom, 1, 0);
    const auto evals = risklab::eigenvalues_sym(risklab::covariance(xz));
    std::size_t n_zero = 0;
    for (double v : evals)
        if (v < 1e-8) ++n_zero;
    const std::size_t need = 400 - xz.n_scenarios;
    const bool ok_c = n_zero >= need;

    return {ok_a && ok_b && ok_c,
            strf("g1=%.4f+-%.4f vs %g, g2=%.4f+-%.4f vs %g; histogram max "
                 "bin deviation %.4f (< 0.05); %zu of %zu required "
                 "eigenvalues < 1e-8 at alpha=0.5",
                 m1, se1, th1, m2, se2, th2, max_dev, n_zero, need)};
}

// Criterion 4: the closed-form free energy equals brute-force constrained
// quadrature at N=2 and N=3 to 1e-6 for beta in {0.5, 1, 4}, and the
// 32-sample mean at N=800, alpha=2, beta=10 is within 0.02 of the theory
// value.
Outcome criterion4() {
    const double betas[] = {0.5, 1.0, 4.0};
    const auto x2 = draw(2, 3.0, kSeedQuadN2, 1, 0);
    const auto x3 = draw(3, 3.0, kSeedQuadN3, 1, 0);
    double worst_quad = 0.0;
    for (double beta : betas) {
        worst_quad = std::max(
            worst_quad,
            std::fabs(risklab::free_energy(beta, x2).f_value -
                      oracle::free_energy_quadrature_n2(beta, x2)));
        worst_quad = std::max(
            worst_quad,
            std::fabs(risklab::free_energy(beta, x3).f_value -
                      oracle::free_energy_quadrature_n3(beta, x3)));
    }
    const bool ok_quad = worst_quad <= 1e-6;

    const std::size_t n_f = 32;
    double sum_f = 0.0;
    for (std::size_t i = 0; i < n_f; ++i)
        sum_f += risklab::free_energy(10.0, draw(800, 2.0, kSeedFreeEnergy,
                                                 n_f, i))
                     .f_value;
    const double mean_f = sum_f / n_f;
    const double f_th = risklab::free_energy_theory(2.0, 10.0);
    const bool ok_mean = std::fabs(mean_f - f_th) <= 0.02;

    return {ok_quad && ok_mean,
            strf("worst |closed form - quadrature| %.3g at N=2,3 over "
                 "beta={0.5,1,4}; mean f over 32 draws at N=800 is %.6f vs "
                 "theory %.6f (tol 0.02)",
                 worst_quad, mean_f, f_th)};
}

// Criterion 5: the sample variance of eps(X) at alpha=2 strictly decreases
// over N in {100, 200, 400} and var(400)/var(100) < 0.5 with 200 samples
// per size.
Outcome criterion5() {
    const auto records = risklab::self_averaging_scan(
        2.0, {100, 200, 400}, 200, kSeedScan, 2.0, 1);
    std::vector<double> vars;
    for (const auto& r : records)
        if (r.statistic == "epsilon") vars.push_back(r.variance);
    if (vars.size() != 3)
        return {false, strf("expected 3 epsilon rows, found %zu", vars.size())};
    const double ratio = vars[2] / vars[0];
    const bool ok = vars[1] < vars[0] && vars[2] < vars[1] && ratio < 0.5;
    return {ok, strf("var(eps) = %.3g, %.3g, %.3g at N=100,200,400; "
                     "ratio var(400)/var(100) = %.3f (< 0.5)",
                     vars[0], vars[1], vars[2], ratio)};
}

// Criterion 6: every default Chernoff threshold passes at alpha=2, beta=1,
// N=200 with 500 samples, and the rate functions behave on a 100x100 grid:
// nonnegative, exactly zero at their localization points, midpoint-convex
// within finite branches, and s - 1 - log s >= 0.
Outcome criterion6() {
    const auto records =
        risklab::chernoff_check(2.0, 1.0, 200, 500, {}, kSeedChernoff, 1);
    bool ok_emp = records.size() == 16;
    std::size_t n_passed = 0;
    for (const auto& r : records)
        if (r.passed) ++n_passed;
    ok_emp = ok_emp && n_passed == records.size();

    const double beta = 1.0;
    const double tol = 1e-10;
    bool ok_prop = true;
    for (int i = 0; i < 100 && ok_prop; ++i) {
        const double alpha = 1.05 + 0.07 * i;
        const double f_star = risklab::free_energy_theory(alpha, beta);
        const double loc = risklab::risk_localization(alpha, beta);
        for (auto side : {risklab::Side::plus, risklab::Side::minus}) {
            // Exact zero at the localization points.
            ok_prop = ok_prop &&
                      risklab::rate_free_energy(alpha, beta, f_star, side)
                              .value == 0.0 &&
                      risklab::rate_risk(alpha, beta, loc, side).value == 0.0;
            // Nonnegativity along the threshold grid, then convexity over
            // consecutive finite-branch triples (the grid is equispaced, so
            // the midpoint inequality is the right discrete test).
            std::vector<risklab::RateValue> rf, rr;
            rf.reserve(100);
            rr.reserve(100);
            for (int j = 0; j < 100; ++j) {
                const double off = (j - 49.5) * 0.01;
                rf.push_back(
                    risklab::rate_free_energy(alpha, beta, f_star + off, side));
                rr.push_back(risklab::rate_risk(alpha, beta, loc + off, side));
                ok_prop = ok_prop && rf.back().value >= -tol &&
                          rr.back().value >= -tol;
            }
            for (const auto* grid : {&rf, &rr})
                for (int j = 1; j + 1 < 100; ++j) {
                    const auto& a = (*grid)[j - 1];
                    const auto& b = (*grid)[j];
                    const auto& c = (*grid)[j + 1];
                    if (a.branch == risklab::RateBranch::finite &&
                        b.branch == risklab::RateBranch::finite &&
                        c.branch == risklab::RateBranch::finite)
                        ok_prop = ok_prop &&
                                  b.value <= 0.5 * (a.value + c.value) + tol;
                }
        }
    }
    for (int k = 1; k <= 100; ++k) {
        const double s = 0.05 * k;
        ok_prop = ok_prop && (s - 1.0 - std::log(s) >= -tol);
    }

    return {ok_emp && ok_prop,
            strf("%zu/16 default thresholds satisfied the tail bound at "
                 "N=200; rate-function properties %s on the 100x100 grid",
                 n_passed, ok_prop ? "hold" : "violated")};
}

// Criterion 7: game values.  Annealed: 0 for uniform play and 150 for paper
// against the biased opponent, both exact.  Quenched Monte Carlo: 300 exact
// with no constraint, 500/3 +- 1.0 under equal counts, 5000/9 +- 3.0 for
// one hand per set (10^5 trials each).
Outcome criterion7() {
    risklab::GameSpec base;
    base.rounds = 300;

    risklab::GameSpec any_bob = base;
    any_bob.bob_mix = {0.2, 0.5, 0.3};
    const double a_uniform = risklab::expected_score_annealed(
        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, any_bob);

    risklab::GameSpec biased = base;
    biased.bob_mix = {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0};
    const double a_paper =
        risklab::expected_score_annealed({0.0, 1.0, 0.0}, biased);

    risklab::GameSpec none = base;
    none.knowledge = risklab::Knowledge::quenched;
    const auto q_none =
        risklab::expected_score_quenched(none, 100000, kSeedGameNone);

    risklab::GameSpec blocks = none;
    blocks.constraint = risklab::Constraint::equal_counts;
    const auto q_blocks =
        risklab::expected_score_quenched(blocks, 100000, kSeedGameBlocks);
    const double block_target = 500.0 / 3.0;

    risklab::GameSpec sets = none;
    sets.constraint = risklab::Constraint::same_hand_each_set;
    sets.sets = 5;
    const auto q_sets =
        risklab::expected_score_quenched(sets, 100000, kSeedGameSets);
    const double set_target = 5000.0 / 9.0;

    const bool ok_exact =
        a_uniform == 0.0 && a_paper == 150.0 && q_none.mean == 300.0;
    const bool ok_blocks = std::fabs(q_blocks.mean - block_target) <= 1.0;
    const bool ok_sets = std::fabs(q_sets.mean - set_target) <= 3.0;

    if (ok_exact && ok_blocks && !ok_sets)
        return {false,
                strf("annealed 0 and 150 exact, unconstrained 300 exact, "
                     "equal-counts %.2f within 1.0 of 500/3; one-hand-per-set "
                     "mean %.2f (stderr %.2f) vs target 5000/9=%.2f -- "
                     "committing to a single hand per 300-round set yields "
                     "5 x E[max of three multinomial count advantages] "
                     "~= 73.3, so the target is out of reach under this "
                     "protocol (one hand across all five sets would give "
                     "~592.6, not 555.6)",
                     q_blocks.mean, q_sets.mean, q_sets.std_error,
                     set_target)};
    return {ok_exact && ok_blocks && ok_sets,
            strf("annealed %.17g/%.17g (want 0/150), unconstrained %.17g "
                 "(want 300), equal-counts %.2f vs 500/3, one-hand-per-set "
                 "%.2f vs 5000/9",
                 a_uniform, a_paper, q_none.mean, q_blocks.mean,
                 q_sets.mean)};
}

// Criterion 8: central finite difference of Phi at n=0 reproduces
// -beta f(beta) to 1e-6 for (alpha, beta) in {1.5,2,4} x {0.5,1,4}.
Outcome criterion8() {
    const double h = 1e-6;
    double worst = 0.0;
    for (double alpha : {1.5, 2.0, 4.0})
        for (double beta : {0.5, 1.0, 4.0}) {
            const double deriv = (risklab::phi(h, alpha, beta) -
                                  risklab::phi(-h, alpha, beta)) /
                                 (2.0 * h);
            worst = std::max(
                worst, std::fabs(deriv + beta * risklab::free_energy_theory(
                                             alpha, beta)));
        }
    return {worst <= 1e-6,
            strf("max |dPhi/dn + beta f| = %.3g over 9 (alpha, beta) pairs "
                 "(tol 1e-6)",
                 worst)};
}

// Criterion 9: sweep CSV bodies are byte-identical across thread counts.
Outcome criterion9() {
    const std::vector<double> alphas = {1.3, 2.5};
    std::string first;
    bool ok = true;
    for (std::size_t threads : {1u, 3u, 8u}) {
        const std::string body =
            risklab::to_csv(risklab::sweep(alphas, 150, 20, 777, threads));
        if (first.empty())
            first = body;
        else
            ok = ok && body == first;
    }
    return {ok && !first.empty(),
            strf("sweep CSV at N=150, 20 samples identical for thread "
                 "counts 1, 3, 8 (%zu bytes)",
                 first.size())};
}

using CriterionFn = Outcome (*)();

constexpr CriterionFn kCriteria[] = {criterion1, criterion2, criterion3,
                                     criterion4, criterion5, criterion6,
                                     criterion7, criterion8, criterion9};

int run_one(int k) {
    Outcome o;
    try {
        o = kCriteria[k - 1]();
    } catch (const std::exception& e) {
        o = {false, strf("unexpected exception: %s", e.what())};
    }
    std::printf("[%s] criterion %d: %s\n", o.passed ? "PASS" : "FAIL", k,
                o.detail.c_str());
    std::fflush(stdout);
    return o.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 2) {
        std::fprintf(stderr, "usage: %s [criterion 1..9]\n", argv[0]);
        return 2;
    }
    if (argc == 2) {
        char* end = nullptr;
        const long k = std::strtol(argv[1], &end, 10);
        if (end == argv[1] || *end != '\0' || k < 1 || k > 9) {
            std::fprintf(stderr, "usage: %s [criterion 1..9]\n", argv[0]);
            return 2;
        }
        return run_one(static_cast<int>(k));
    }
    int failures = 0;
    for (int k = 1; k <= 9; ++k) failures += run_one(k);
    return failures;
}
