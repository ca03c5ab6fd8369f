// harness.cpp -- ensemble experiments and CSV/JSON persistence.
//
// Threading model: worker threads pull sample indices from an atomic counter
// and write into a pre-sized results vector; the reduction then walks the
// vector in index order.  Because each sample's RNG stream is keyed by its
// index, output bytes do not depend on the thread count.

#include "risklab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "risklab/errors.hpp"
#include "risklab/market.hpp"
#include "risklab/risk_engine.hpp"
#include "risklab/version.hpp"

namespace risklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Run fn(i) for i in [0, n) on `n_threads` workers (0 = hardware concurrency).
// The first exception thrown by fn stops the dispatch and is rethrown here.
template <typename Fn>
void parallel_for_samples(std::size_t n, std::size_t n_threads, Fn&& fn) {
    if (n == 0) return;
    std::size_t workers =
        n_threads ? n_threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min(workers, n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(n);  // stop handing out further work
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
    double std_error = 0.0;
};

MeanVar reduce_mean_var(const std::vector<double>& values) {
    MeanVar out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - out.mean;
            ss += d * d;
        }
        out.variance = ss / static_cast<double>(n - 1);
        out.std_error = std::sqrt(out.variance / static_cast<double>(n));
    }
    return out;
}

std::string iso8601_utc_now() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << body;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

const char* side_name(Side s) { return s == Side::plus ? "plus" : "minus"; }

}  // namespace

void write_metadata_sidecar(const std::string& csv_path, const Metadata& meta) {
    nlohmann::ordered_json j;
    j["command"] = meta.command;
    j["seed"] = meta.seed;
    j["version"] = kVersion;
    j["timestamp"] = iso8601_utc_now();
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& kv : meta.config) cfg[kv.first] = kv.second;
    j["config"] = cfg;
    write_file(csv_path + ".meta.json", j.dump(2) + "\n");
}

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<SweepRecord> sweep(const std::vector<double>& alphas,
                               std::size_t n_assets, std::size_t n_samples,
                               std::uint64_t master_seed,
                               std::size_t n_threads, std::size_t* skipped) {
    if (n_assets < 2) throw DomainError("sweep: n_assets must be >= 2");
    if (n_samples < 2) throw DomainError("sweep: n_samples must be >= 2");
    if (skipped) *skipped = 0;

    std::vector<SweepRecord> rows;
    rows.reserve(alphas.size());

    for (double alpha : alphas) {
        if (!(alpha > 0.0)) throw DomainError("sweep: alpha must be > 0");
        const TheoryPoint tp = theory_point(alpha);

        SweepRecord rec;
        rec.alpha_nominal = alpha;
        rec.n_assets = n_assets;
        rec.eps_theory = tp.eps_quenched;
        rec.qw_theory = tp.qw_quenched;
        rec.eps_or = tp.eps_annealed;
        rec.qw_or = tp.qw_annealed;

        EnsembleSpec spec;
        spec.n_assets = n_assets;
        spec.scenario_ratio = alpha;
        spec.master_seed = master_seed;
        spec.n_samples = n_samples;
        rec.alpha_realized = static_cast<double>(spec.n_scenarios()) /
                             static_cast<double>(n_assets);

        if (alpha <= 1.0) {
            // The optimum is not unique for p <= N; record the known limits
            // and run no Monte Carlo.
            rec.n_samples = 0;
            rec.eps_mean = 0.0;
            rec.qw_mean = kInf;
            rows.push_back(rec);
            continue;
        }

        struct SampleOut {
            double eps = 0.0;
            double qw = 0.0;
            bool ok = false;
        };
        std::vector<SampleOut> samples(n_samples);
        parallel_for_samples(n_samples, n_threads, [&](std::size_t i) {
            try {
                const ReturnMatrix x = sample_return_matrix(spec, i);
                const RiskReport r = minimal_risk(x);
                samples[i] = {r.epsilon, r.q_w, true};
            } catch (const SingularError&) {
                // counted below; near alpha = 1 an occasional draw can sit at
                // the numerical rank boundary
            }
        });

        std::vector<double> eps_vals;
        std::vector<double> qw_vals;
        eps_vals.reserve(n_samples);
        qw_vals.reserve(n_samples);
        std::size_t row_skipped = 0;
        for (const SampleOut& s : samples) {
            if (!s.ok) {
                ++row_skipped;
                continue;
            }
            eps_vals.push_back(s.eps);
            qw_vals.push_back(s.qw);
        }
        if (row_skipped > 0 && alpha > 1.05 && n_assets >= 100)
            throw Error("sweep: singular covariance draw far from alpha = 1 "
                        "(alpha = " + format_g12(alpha) + ", N = " +
                        std::to_string(n_assets) + "); suspecting a bug");
        if (skipped) *skipped += row_skipped;
        if (eps_vals.size() < 2)
            throw Error("sweep: fewer than two usable samples at alpha = " +
                        format_g12(alpha));

        const MeanVar eps_mv = reduce_mean_var(eps_vals);
        const MeanVar qw_mv = reduce_mean_var(qw_vals);
        rec.n_samples = eps_vals.size();
        rec.eps_mean = eps_mv.mean;
        rec.eps_stderr = eps_mv.std_error;
        rec.qw_mean = qw_mv.mean;
        rec.qw_stderr = qw_mv.std_error;
        rows.push_back(rec);
    }
    return rows;
}

std::vector<ConcentrationRecord> self_averaging_scan(
    double alpha, const std::vector<std::size_t>& n_list,
    std::size_t n_samples, std::uint64_t master_seed, double beta,
    std::size_t n_threads) {
    if (!(alpha > 1.0))
        throw DomainError("self_averaging_scan: alpha must be > 1");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("self_averaging_scan: beta must be positive finite");
    if (n_samples < 2)
        throw DomainError("self_averaging_scan: n_samples must be >= 2");
    if (n_list.empty())
        throw DomainError("self_averaging_scan: empty size list");

    const TheoryPoint tp = theory_point(alpha);
    const double f_star = free_energy_theory(alpha, beta);

    std::vector<ConcentrationRecord> rows;
    rows.reserve(2 * n_list.size());

    for (std::size_t n_assets : n_list) {
        if (n_assets < 2)
            throw DomainError("self_averaging_scan: n_assets must be >= 2");
        EnsembleSpec spec;
        spec.n_assets = n_assets;
        spec.scenario_ratio = alpha;
        spec.master_seed = master_seed;
        spec.n_samples = n_samples;

        std::vector<double> eps_vals(n_samples);
        std::vector<double> f_vals(n_samples);
        parallel_for_samples(n_samples, n_threads, [&](std::size_t i) {
            const ReturnMatrix x = sample_return_matrix(spec, i);
            eps_vals[i] = minimal_risk(x).epsilon;
            f_vals[i] = free_energy(beta, x).f_value;
        });

        const MeanVar eps_mv = reduce_mean_var(eps_vals);
        const MeanVar f_mv = reduce_mean_var(f_vals);

        ConcentrationRecord eps_rec;
        eps_rec.n_assets = n_assets;
        eps_rec.alpha = alpha;
        eps_rec.beta = kInf;  // minimal risk is the beta -> inf statistic
        eps_rec.statistic = "epsilon";
        eps_rec.mean = eps_mv.mean;
        eps_rec.variance = eps_mv.variance;
        eps_rec.theory = tp.eps_quenched;
        rows.push_back(eps_rec);

        ConcentrationRecord f_rec;
        f_rec.n_assets = n_assets;
        f_rec.alpha = alpha;
        f_rec.beta = beta;
        f_rec.statistic = "free_energy";
        f_rec.mean = f_mv.mean;
        f_rec.variance = f_mv.variance;
        f_rec.theory = f_star;
        rows.push_back(f_rec);
    }
    return rows;
}

std::vector<ChernoffRecord> chernoff_check(double alpha, double beta,
                                           std::size_t n_assets,
                                           std::size_t n_samples,
                                           std::vector<double> thresholds,
                                           std::uint64_t master_seed,
                                           std::size_t n_threads) {
    if (!(alpha > 1.0)) throw DomainError("chernoff_check: alpha must be > 1");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("chernoff_check: beta must be positive finite");
    if (n_assets < 2) throw DomainError("chernoff_check: n_assets must be >= 2");
    if (n_samples < 2)
        throw DomainError("chernoff_check: n_samples must be >= 2");

    const double f_star = free_energy_theory(alpha, beta);
    if (thresholds.empty()) {
        for (double d : {-0.20, -0.15, -0.10, -0.05, 0.05, 0.10, 0.15, 0.20})
            thresholds.push_back(f_star + d);
    }
    std::sort(thresholds.begin(), thresholds.end());

    EnsembleSpec spec;
    spec.n_assets = n_assets;
    spec.scenario_ratio = alpha;
    spec.master_seed = master_seed;
    spec.n_samples = n_samples;

    std::vector<double> f_vals(n_samples);
    parallel_for_samples(n_samples, n_threads, [&](std::size_t i) {
        const ReturnMatrix x = sample_return_matrix(spec, i);
        f_vals[i] = free_energy(beta, x).f_value;
    });

    const double n = static_cast<double>(n_samples);
    std::vector<ChernoffRecord> rows;
    rows.reserve(2 * thresholds.size());
    for (double f_tilde : thresholds) {
        for (Side side : {Side::plus, Side::minus}) {
            std::size_t hits = 0;
            for (double f : f_vals) {
                const bool in_tail =
                    side == Side::plus ? (f <= f_tilde) : (f >= f_tilde);
                if (in_tail) ++hits;
            }
            const double p_hat = static_cast<double>(hits) / n;
            const RateValue rate = rate_free_energy(alpha, beta, f_tilde, side);
            ChernoffRecord rec;
            rec.threshold = f_tilde;
            rec.side = side;
            rec.empirical = p_hat;
            rec.std_error = std::sqrt(p_hat * (1.0 - p_hat) / n);
            rec.bound = rate.is_infinite()
                            ? 0.0
                            : std::exp(-static_cast<double>(n_assets) *
                                       rate.value);
            rec.passed = p_hat <= rec.bound + 3.0 * rec.std_error;
            rows.push_back(rec);
        }
    }
    return rows;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "alpha_nominal,alpha_realized,n_assets,n_samples,eps_mean,"
           "eps_stderr,qw_mean,qw_stderr,eps_theory,qw_theory,eps_or,qw_or\n";
    for (const SweepRecord& r : records) {
        out << format_g12(r.alpha_nominal) << ',' << format_g12(r.alpha_realized)
            << ',' << r.n_assets << ',' << r.n_samples << ','
            << format_g12(r.eps_mean) << ',' << format_g12(r.eps_stderr) << ','
            << format_g12(r.qw_mean) << ',' << format_g12(r.qw_stderr) << ','
            << format_g12(r.eps_theory) << ',' << format_g12(r.qw_theory) << ','
            << format_g12(r.eps_or) << ',' << format_g12(r.qw_or) << '\n';
    }
    return out.str();
}

std::string to_csv(const std::vector<ConcentrationRecord>& records) {
    std::ostringstream out;
    out << "n_assets,alpha,beta,statistic,mean,variance,theory\n";
    for (const ConcentrationRecord& r : records) {
        out << r.n_assets << ',' << format_g12(r.alpha) << ','
            << format_g12(r.beta) << ',' << r.statistic << ','
            << format_g12(r.mean) << ',' << format_g12(r.variance) << ','
            << format_g12(r.theory) << '\n';
    }
    return out.str();
}

std::string to_csv(const std::vector<ChernoffRecord>& records) {
    std::ostringstream out;
    out << "threshold,side,empirical,std_error,bound,passed\n";
    for (const ChernoffRecord& r : records) {
        out << format_g12(r.threshold) << ',' << side_name(r.side) << ','
            << format_g12(r.empirical) << ',' << format_g12(r.std_error) << ','
            << format_g12(r.bound) << ',' << (r.passed ? 1 : 0) << '\n';
    }
    return out.str();
}

void persist(const std::vector<SweepRecord>& records, const std::string& path,
             const Metadata& meta) {
    write_file(path, to_csv(records));
    write_metadata_sidecar(path, meta);
}

void persist(const std::vector<ConcentrationRecord>& records,
             const std::string& path, const Metadata& meta) {
    write_file(path, to_csv(records));
    write_metadata_sidecar(path, meta);
}

void persist(const std::vector<ChernoffRecord>& records,
             const std::string& path, const Metadata& meta) {
    write_file(path, to_csv(records));
    write_metadata_sidecar(path, meta);
}

}  // namespace risklab
