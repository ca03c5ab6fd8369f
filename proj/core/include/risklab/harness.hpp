// harness.hpp -- ensemble orchestration: the scenario-ratio sweep,
// self-averaging scans, empirical Chernoff-bound checks, and CSV/JSON
// persistence.
//
// Determinism: every sample is generated from a keyed counter RNG and results
// are reduced in sample-index order, so outputs are byte-identical for a fixed
// seed regardless of the worker-thread count.

#ifndef RISKLAB_HARNESS_HPP
#define RISKLAB_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "risklab/replica_theory.hpp"

namespace risklab {

// One row of the risk-versus-alpha experiment.
struct SweepRecord {
    double alpha_nominal = 0.0;
    double alpha_realized = 0.0;
    std::size_t n_assets = 0;
    std::size_t n_samples = 0;  // samples averaged (0 for alpha <= 1 rows)
    double eps_mean = 0.0;
    double eps_stderr = 0.0;
    double qw_mean = 0.0;
    double qw_stderr = 0.0;
    double eps_theory = 0.0;
    double qw_theory = 0.0;
    double eps_or = 0.0;
    double qw_or = 0.0;
};

// One row of a self-averaging scan.
struct ConcentrationRecord {
    std::size_t n_assets = 0;
    double alpha = 0.0;
    double beta = 0.0;  // +inf on epsilon rows (the beta -> inf statistic)
    std::string statistic;  // "epsilon" | "free_energy"
    double mean = 0.0;
    double variance = 0.0;
    double theory = 0.0;
};

// One row of an empirical Chernoff-bound check.
struct ChernoffRecord {
    double threshold = 0.0;  // f~
    Side side = Side::plus;  // plus: Pr[f <= f~]; minus: Pr[f >= f~]
    double empirical = 0.0;  // tail probability estimate
    double std_error = 0.0;  // binomial stderr of the estimate
    double bound = 0.0;      // exp(-N * R_side(f~))
    bool passed = false;     // empirical <= bound + 3 * std_error
};

// Per-alpha sweep: n_samples covariance draws each, minimal risk aggregated
// as mean +- stderr with the closed-form theory attached.  Rows with
// alpha <= 1 carry the limiting values (eps 0, q_w divergent) and run no
// Monte Carlo.  Singular draws are counted into *skipped and excluded from
// the averages; any singular draw with alpha > 1.05 and N >= 100 aborts
// (Error), since it signals a bug rather than the near-critical regime.
// n_threads = 0 uses the hardware concurrency.
std::vector<SweepRecord> sweep(const std::vector<double>& alphas,
                               std::size_t n_assets, std::size_t n_samples,
                               std::uint64_t master_seed,
                               std::size_t n_threads = 0,
                               std::size_t* skipped = nullptr);

// Sample mean and variance of eps(X) and of f(beta, X) for each N in n_list.
std::vector<ConcentrationRecord> self_averaging_scan(
    double alpha, const std::vector<std::size_t>& n_list,
    std::size_t n_samples, std::uint64_t master_seed, double beta,
    std::size_t n_threads = 0);

// Empirical tail probabilities of f(beta, X) at each threshold, on both
// sides, against the closed-form bound exp(-N * R).  An empty threshold list
// uses the default two-sided grid f* + {-0.2,-0.15,-0.1,-0.05,+0.05,...,+0.2}.
std::vector<ChernoffRecord> chernoff_check(double alpha, double beta,
                                           std::size_t n_assets,
                                           std::size_t n_samples,
                                           std::vector<double> thresholds,
                                           std::uint64_t master_seed,
                                           std::size_t n_threads = 0);

// Run provenance recorded in the JSON sidecar next to each CSV.
struct Metadata {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config;  // key, value
};

// Write records as CSV (header row naming every field, 12 significant
// digits) plus a `<path>.meta.json` sidecar with seed, version, timestamp,
// and the full config.  I/O failures surface as IoError with the path.
void persist(const std::vector<SweepRecord>& records, const std::string& path,
             const Metadata& meta);
void persist(const std::vector<ConcentrationRecord>& records,
             const std::string& path, const Metadata& meta);
void persist(const std::vector<ChernoffRecord>& records,
             const std::string& path, const Metadata& meta);

// CSV bodies without touching the file system (used for determinism checks
// and by the CLI when printing).
std::string to_csv(const std::vector<SweepRecord>& records);
std::string to_csv(const std::vector<ConcentrationRecord>& records);
std::string to_csv(const std::vector<ChernoffRecord>& records);

// Write just the `<csv_path>.meta.json` sidecar; used by writers with bespoke
// CSV bodies (e.g. the spectrum overlay) to keep one metadata convention.
void write_metadata_sidecar(const std::string& csv_path, const Metadata& meta);

// Format a double with 12 significant digits (%.12g), the serialization used
// in every CSV this library writes.
std::string format_g12(double v);

}  // namespace risklab

#endif  // RISKLAB_HARNESS_HPP
