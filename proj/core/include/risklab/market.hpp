// market.hpp -- seeded ensembles of scaled return matrices (the quenched
// disorder) and their covariance matrices.
//
// A ReturnMatrix stores X = {x_{k,mu} / sqrt(N)} where the raw x_{k,mu} are
// i.i.d. standard normal.  With this scaling the covariance of Eq.
// J_ij = (1/N) sum_mu x_i,mu x_j,mu is simply J = X X^T.

#ifndef RISKLAB_MARKET_HPP
#define RISKLAB_MARKET_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "risklab/matrix_kernel.hpp"

namespace risklab {

// Scaled return realizations: N assets x p scenarios, row-major.
struct ReturnMatrix {
    std::size_t n_assets = 0;     // N
    std::size_t n_scenarios = 0;  // p
    std::vector<double> entries;  // N*p, scaled by 1/sqrt(N)

    double at(std::size_t k, std::size_t mu) const {
        return entries[k * n_scenarios + mu];
    }
    double realized_alpha() const {
        return static_cast<double>(n_scenarios) / static_cast<double>(n_assets);
    }
};

// Parameters of a Gaussian return ensemble; p = round(alpha * N).
struct EnsembleSpec {
    std::size_t n_assets = 0;       // N >= 2
    double scenario_ratio = 0.0;    // alpha > 0
    std::uint64_t master_seed = 0;
    std::size_t n_samples = 0;

    std::size_t n_scenarios() const;  // round(alpha * N), validated >= 1
};

// Draw sample `sample_index` of the ensemble.  The RNG stream is a pure
// function of (master_seed, N, p, sample_index): regeneration is bit-identical
// and distinct samples may be generated concurrently.
ReturnMatrix sample_return_matrix(const EnsembleSpec& spec, std::size_t sample_index);

// Wrap raw (unscaled) returns, applying the 1/sqrt(N) scaling on ingest.
ReturnMatrix return_matrix_from_raw(std::size_t n_assets, std::size_t n_scenarios,
                                    const std::vector<double>& raw_entries);

// Covariance matrix J = X X^T of the stored scaled entries.
SymMatrix covariance(const ReturnMatrix& x);

}  // namespace risklab

#endif  // RISKLAB_MARKET_HPP
