// cli.hpp -- the risklab command-line interface.
//
// Subcommands: theory, sweep, scan, chernoff, spectrum, game, risk.
// Exit codes: 0 success, 1 configuration/usage error, 2 numerical failure.
// Options may alternatively come from a JSON file via --config (flags given
// on the command line win); the seed falls back to the RISKLAB_SEED
// environment variable and finally to 1.

#ifndef RISKLAB_TOOLS_CLI_HPP
#define RISKLAB_TOOLS_CLI_HPP

#include <string>
#include <vector>

#include "risklab/market.hpp"

namespace risklab::cli {

// Parse an alpha specification: a single value ("2"), a comma list
// ("1.2,1.6,2"), or "start:stop:step" inclusive of stop within half a step.
// Throws ParseError on malformed text or a non-positive step.
std::vector<double> parse_alpha_grid(const std::string& text);

// Load raw (unscaled) returns from a CSV of N rows x p columns and apply the
// 1/sqrt(N) scaling on ingest.  Ragged rows and non-numeric cells raise
// ParseError with the 1-based row/column location.
ReturnMatrix load_return_matrix_csv(const std::string& path);

// Export raw (unscaled) returns; inverse of load_return_matrix_csv up to
// rounding in the last bits (covariances round-trip to 1e-12).
void write_return_matrix_csv(const ReturnMatrix& x, const std::string& path);

// Run the CLI on the given argv; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace risklab::cli

#endif  // RISKLAB_TOOLS_CLI_HPP
