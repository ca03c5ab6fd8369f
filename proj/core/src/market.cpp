// market.cpp -- Gaussian return-matrix ensembles and covariance assembly.

#include "risklab/market.hpp"

#include <cmath>
#include <string>

#include "risklab/rng.hpp"

namespace risklab {

std::size_t EnsembleSpec::n_scenarios() const {
    if (n_assets < 2) throw DomainError("EnsembleSpec: n_assets must be >= 2");
    if (!(scenario_ratio > 0.0))
        throw DomainError("EnsembleSpec: scenario_ratio must be > 0");
    const double p = std::round(scenario_ratio * static_cast<double>(n_assets));
    if (p < 1.0)
        throw DomainError("EnsembleSpec: round(alpha * N) must be >= 1");
    return static_cast<std::size_t>(p);
}

namespace {

// Per-sample stream key: folds N and p in with (master_seed, sample_index) so
// that ensembles differing only in dimensions use distinct streams.
std::uint64_t sample_key(std::uint64_t master_seed, std::size_t n,
                         std::size_t p, std::size_t sample_index) {
    const std::uint64_t dims =
        static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL ^
        static_cast<std::uint64_t>(p) * 0xBF58476D1CE4E5B9ULL;
    return rng::stream_key(rng::splitmix64(master_seed ^ dims), sample_index);
}

}  // namespace

ReturnMatrix sample_return_matrix(const EnsembleSpec& spec,
                                  std::size_t sample_index) {
    if (spec.n_samples > 0 && sample_index >= spec.n_samples)
        throw DomainError("sample_return_matrix: sample_index out of range");

    const std::size_t n = spec.n_assets;
    const std::size_t p = spec.n_scenarios();
    const std::uint64_t key = sample_key(spec.master_seed, n, p, sample_index);

    ReturnMatrix x;
    x.n_assets = n;
    x.n_scenarios = p;
    x.entries.resize(n * p);

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const std::size_t total = n * p;
    for (std::size_t t = 0; t < total; t += 2) {
        const auto z = rng::normal_pair_at(key, t / 2);
        x.entries[t] = z.first * inv_sqrt_n;
        if (t + 1 < total) x.entries[t + 1] = z.second * inv_sqrt_n;
    }
    return x;
}

ReturnMatrix return_matrix_from_raw(std::size_t n_assets, std::size_t n_scenarios,
                                    const std::vector<double>& raw_entries) {
    if (n_assets < 2) throw DomainError("return matrix: n_assets must be >= 2");
    if (n_scenarios < 1)
        throw DomainError("return matrix: n_scenarios must be >= 1");
    if (raw_entries.size() != n_assets * n_scenarios)
        throw DomainError("return matrix: entry count does not match dimensions");

    ReturnMatrix x;
    x.n_assets = n_assets;
    x.n_scenarios = n_scenarios;
    x.entries.resize(raw_entries.size());
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_assets));
    for (std::size_t i = 0; i < raw_entries.size(); ++i)
        x.entries[i] = raw_entries[i] * inv_sqrt_n;
    return x;
}

SymMatrix covariance(const ReturnMatrix& x) {
    const std::size_t n = x.n_assets;
    const std::size_t p = x.n_scenarios;
    SymMatrix j(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* ri = &x.entries[i * p];
        for (std::size_t k = i; k < n; ++k) {
            const double* rk = &x.entries[k * p];
            double s = 0.0;
            for (std::size_t mu = 0; mu < p; ++mu) s += ri[mu] * rk[mu];
            j.set(i, k, s);
        }
    }
    return j;
}

}  // namespace risklab
