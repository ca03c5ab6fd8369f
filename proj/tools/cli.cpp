// cli.cpp -- subcommand dispatch, JSON config merging, and exit-code mapping.
//
// Option precedence: command-line flag > --config JSON key > RISKLAB_SEED
// (seed only) > built-in default.  JSON keys are the long option names
// without the leading dashes (e.g. {"command": "sweep", "alpha-grid":
// "1.2:8.0:0.4", "n": 500}).

#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "risklab/errors.hpp"
#include "risklab/game_demo.hpp"
#include "risklab/harness.hpp"
#include "risklab/matrix_kernel.hpp"
#include "risklab/replica_theory.hpp"
#include "risklab/risk_engine.hpp"
#include "risklab/spectrum.hpp"
#include "risklab/version.hpp"

namespace risklab::cli {
namespace {

using nlohmann::json;

// A configuration/usage mistake: reported on stderr with exit code 1 (as
// opposed to risklab::Error subclasses raised during computation, exit 2).
class UsageError : public Error {
public:
    using Error::Error;
};

const char kUsage[] =
    "usage: risklab <command> [options]\n"
    "\n"
    "commands:\n"
    "  theory     closed-form replica predictions, Lambda/Phi, rate functions\n"
    "  sweep      Monte Carlo minimal risk across alpha, theory columns (CSV)\n"
    "  scan       self-averaging: mean/variance of eps and f across N (CSV)\n"
    "  chernoff   empirical tail probabilities vs exp(-N R) bounds (CSV)\n"
    "  spectrum   eigenvalue histogram with Marchenko-Pastur overlay (CSV)\n"
    "  game       rock-paper-scissors annealed vs quenched scores\n"
    "  risk       minimal risk of one return matrix (CSV file or seeded draw)\n"
    "\n"
    "global flags:\n"
    "  --config FILE   read options (and the command) from a JSON object;\n"
    "                  keys are long option names without dashes\n"
    "  --version       print the library version\n"
    "  --help          print this text\n"
    "\n"
    "seed resolution: --seed flag, else config key, else RISKLAB_SEED, else 1.\n"
    "run `risklab <command> --help` for the per-command flags and defaults.\n";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Strict double parse of a whole token (surrounding whitespace allowed).
bool try_parse_double(const std::string& text, double* out) {
    const char* s = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s, &end);
    if (end == s || errno == ERANGE) return false;
    while (*end != '\0' && is_space(*end)) ++end;
    if (*end != '\0') return false;
    *out = v;
    return true;
}

bool try_parse_u64(const std::string& text, std::uint64_t* out) {
    const char* s = text.c_str();
    while (*s != '\0' && is_space(*s)) ++s;
    if (*s == '-' || *s == '\0') return false;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || errno == ERANGE) return false;
    while (*end != '\0' && is_space(*end)) ++end;
    if (*end != '\0') return false;
    *out = v;
    return true;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!text.empty() && text.back() == sep) out.push_back("");
    return out;
}

// ---- JSON config coercion ------------------------------------------------

[[noreturn]] void bad_config(const std::string& key, const std::string& why) {
    throw UsageError("--config: key '" + key + "' " + why);
}

double cfg_double(const json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        double out = 0.0;
        if (try_parse_double(v.get<std::string>(), &out)) return out;
    }
    bad_config(key, "must be a number");
}

std::uint64_t cfg_u64(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_string()) {
        std::uint64_t out = 0;
        if (try_parse_u64(v.get<std::string>(), &out)) return out;
    }
    bad_config(key, "must be an unsigned integer");
}

std::size_t cfg_size(const json& v, const std::string& key) {
    return static_cast<std::size_t>(cfg_u64(v, key));
}

int cfg_int(const json& v, const std::string& key) {
    if (v.is_number_integer()) return static_cast<int>(v.get<std::int64_t>());
    if (v.is_string()) {
        std::uint64_t out = 0;
        if (try_parse_u64(v.get<std::string>(), &out)) return static_cast<int>(out);
    }
    bad_config(key, "must be an integer");
}

std::string cfg_string(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number()) return format_g12(v.get<double>());
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += cfg_string(v.at(i), key);
        }
        return out;
    }
    bad_config(key, "must be a string, number, or array");
}

// ---- option/JSON merging --------------------------------------------------

// Associates each CLI option with a config key.  After CLI parsing, merge()
// fills every option the user did not set from the config JSON; satisfied()
// then answers "did this option get a value from either source?".
class OptionSet {
public:
    explicit OptionSet(const json* cfg) : cfg_(cfg) {}

    void bind(CLI::Option* opt, std::string key,
              std::function<void(const json&)> apply) {
        entries_.push_back({opt, std::move(key), std::move(apply), false});
    }

    void merge() {
        for (Entry& e : entries_) {
            if (e.opt->count() > 0) {
                e.satisfied = true;
            } else if (cfg_ != nullptr && cfg_->contains(e.key)) {
                e.apply(cfg_->at(e.key));
                e.satisfied = true;
            }
        }
    }

    bool satisfied(const std::string& key) const {
        for (const Entry& e : entries_)
            if (e.key == key) return e.satisfied;
        return false;
    }

    void require(const std::string& flag, const std::string& key) const {
        if (!satisfied(key))
            throw UsageError(flag + " is required (flag or config key '" + key +
                             "')");
    }

private:
    struct Entry {
        CLI::Option* opt;
        std::string key;
        std::function<void(const json&)> apply;
        bool satisfied;
    };
    std::vector<Entry> entries_;
    const json* cfg_;
};

void bind_double(OptionSet& set, CLI::Option* o, const std::string& key,
                 double* target) {
    set.bind(o, key, [target, key](const json& v) { *target = cfg_double(v, key); });
}
void bind_size(OptionSet& set, CLI::Option* o, const std::string& key,
               std::size_t* target) {
    set.bind(o, key, [target, key](const json& v) { *target = cfg_size(v, key); });
}
void bind_u64(OptionSet& set, CLI::Option* o, const std::string& key,
              std::uint64_t* target) {
    set.bind(o, key, [target, key](const json& v) { *target = cfg_u64(v, key); });
}
void bind_int(OptionSet& set, CLI::Option* o, const std::string& key,
              int* target) {
    set.bind(o, key, [target, key](const json& v) { *target = cfg_int(v, key); });
}
void bind_string(OptionSet& set, CLI::Option* o, const std::string& key,
                 std::string* target) {
    set.bind(o, key, [target, key](const json& v) { *target = cfg_string(v, key); });
}

// Parse args (command-line order); false means --help was printed.
// Other CLI11 parse failures become UsageError (exit 1).
bool parse_or_help(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
        return true;
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return false;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return false;
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "; see '" + app.get_name() +
                         " --help'");
    }
}

std::uint64_t resolve_seed(const OptionSet& set, std::uint64_t parsed) {
    if (set.satisfied("seed")) return parsed;
    if (const char* env = std::getenv("RISKLAB_SEED")) {
        std::uint64_t v = 0;
        if (!try_parse_u64(env, &v))
            throw UsageError(std::string("RISKLAB_SEED: not an unsigned "
                                         "integer: '") + env + "'");
        return v;
    }
    return parsed;  // the built-in default
}

// ---- output helpers --------------------------------------------------------

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string fmt_g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// <command>_<alpha|grid>_<N>_<seed>.csv; commas and whitespace in the slots
// are normalized to '-' so list-valued flags stay filename-friendly.
std::string sanitize_slot(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), is_space), s.end());
    std::replace(s.begin(), s.end(), ',', '-');
    return s;
}

std::string auto_out(const std::string& command, const std::string& alpha_slot,
                     const std::string& n_slot, std::uint64_t seed) {
    return command + "_" + sanitize_slot(alpha_slot) + "_" +
           sanitize_slot(n_slot) + "_" + std::to_string(seed) + ".csv";
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
    std::vector<double> out;
    for (const std::string& tok : split(text, ',')) {
        double v = 0.0;
        if (!try_parse_double(tok, &v))
            throw UsageError(flag + ": not a number: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text,
                                         const std::string& flag) {
    std::vector<std::size_t> out;
    for (const std::string& tok : split(text, ',')) {
        std::uint64_t v = 0;
        if (!try_parse_u64(tok, &v) || v == 0)
            throw UsageError(flag + ": not a positive integer: '" + tok + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
}

// ---- subcommands -----------------------------------------------------------

int cmd_theory(std::vector<std::string> args, const json* cfg) {
    CLI::App app{"closed-form replica predictions and rate functions",
                 "risklab theory"};
    double alpha = 0.0;
    double beta = 0.0;
    double replica_n = 0.0;
    double f_tilde = 0.0;
    double eps_tilde = 0.0;
    OptionSet set(cfg);
    bind_double(set, app.add_option("--alpha", alpha, "scenario ratio (> 0)"),
                "alpha", &alpha);
    bind_double(set,
                app.add_option("--beta", beta,
                               "inverse temperature (> 0; needs alpha > 1); "
                               "adds the lambda/f_theory line"),
                "beta", &beta);
    bind_double(set,
                app.add_option("--replica-n", replica_n,
                               "real replica number: adds phi=Phi(n) "
                               "(needs --beta)"),
                "replica-n", &replica_n);
    bind_double(set,
                app.add_option("--f-tilde", f_tilde,
                               "free-energy threshold: adds both rate_f "
                               "values (needs --beta)"),
                "f-tilde", &f_tilde);
    bind_double(set,
                app.add_option("--eps-tilde", eps_tilde,
                               "risk threshold: adds both rate_eps values "
                               "(needs --beta)"),
                "eps-tilde", &eps_tilde);
    if (!parse_or_help(app, std::move(args))) return 0;
    set.merge();
    set.require("--alpha", "alpha");
    if (!(alpha > 0.0)) throw UsageError("--alpha must be > 0");

    const TheoryPoint tp = theory_point(alpha);
    std::printf("eps_q=%s qw_q=%s eps_or=%s qw_or=%s\n",
                fmt_g(tp.eps_quenched).c_str(), fmt_g(tp.qw_quenched).c_str(),
                fmt_g(tp.eps_annealed).c_str(), fmt_g(tp.qw_annealed).c_str());

    const bool have_beta = set.satisfied("beta");
    const auto need_beta = [&](const char* flag) {
        if (!have_beta)
            throw UsageError(std::string(flag) + " requires --beta");
    };
    if (have_beta) {
        if (!(beta > 0.0)) throw UsageError("--beta must be > 0");
        if (!(alpha > 1.0))
            throw UsageError("--beta requires --alpha > 1 (the finite-beta "
                             "closed forms need a regular optimum)");
        std::printf("lambda=%s f_theory=%s\n",
                    fmt_g(lambda_beta(alpha, beta)).c_str(),
                    fmt_g(free_energy_theory(alpha, beta)).c_str());
    }
    if (set.satisfied("replica-n")) {
        need_beta("--replica-n");
        if (1.0 + replica_n * beta <= 0.0)
            throw UsageError("--replica-n: requires 1 + n*beta > 0");
        std::printf("phi=%s\n", fmt_g(phi(replica_n, alpha, beta)).c_str());
    }
    if (set.satisfied("f-tilde")) {
        need_beta("--f-tilde");
        std::printf(
            "rate_f_plus=%s rate_f_minus=%s\n",
            fmt_g(rate_free_energy(alpha, beta, f_tilde, Side::plus).value)
                .c_str(),
            fmt_g(rate_free_energy(alpha, beta, f_tilde, Side::minus).value)
                .c_str());
    }
    if (set.satisfied("eps-tilde")) {
        need_beta("--eps-tilde");
        std::printf(
            "rate_eps_plus=%s rate_eps_minus=%s\n",
            fmt_g(rate_risk(alpha, beta, eps_tilde, Side::plus).value).c_str(),
            fmt_g(rate_risk(alpha, beta, eps_tilde, Side::minus).value)
                .c_str());
    }
    return 0;
}

int cmd_sweep(std::vector<std::string> args, const json* cfg) {
    CLI::App app{"Monte Carlo minimal risk across alpha with theory columns",
                 "risklab sweep"};
    std::string grid_text;
    std::string out;
    std::size_t n = 500;
    std::size_t samples = 50;
    std::size_t threads = 0;
    std::uint64_t seed = 1;
    OptionSet set(cfg);
    bind_string(set,
                app.add_option("--alpha-grid", grid_text,
                               "alpha values: start:stop:step (stop "
                               "inclusive), comma list, or one value"),
                "alpha-grid", &grid_text);
    bind_size(set, app.add_option("--n", n, "assets per matrix (default 500)"),
              "n", &n);
    bind_size(set,
              app.add_option("--samples", samples,
                             "matrices per alpha (default 50)"),
              "samples", &samples);
    bind_u64(set, app.add_option("--seed", seed, "master seed (default 1)"),
             "seed", &seed);
    bind_string(set,
                app.add_option("--out", out,
                               "output CSV path (default "
                               "sweep_<grid>_<N>_<seed>.csv)"),
                "out", &out);
    bind_size(set,
              app.add_option("--threads", threads,
                             "worker threads (0 = hardware, default)"),
              "threads", &threads);
    if (!parse_or_help(app, std::move(args))) return 0;
    set.merge();
    set.require("--alpha-grid", "alpha-grid");
    const std::vector<double> alphas = parse_alpha_grid(grid_text);
    for (double a : alphas)
        if (!(a > 0.0))
            throw UsageError("--alpha-grid: alpha values must be > 0");
    if (n < 2) throw UsageError("--n must be >= 2");
    if (samples < 2) throw UsageError("--samples must be >= 2");
    seed = resolve_seed(set, seed);
    if (out.empty()) out = auto_out("sweep", grid_text, std::to_string(n), seed);

    std::size_t skipped = 0;
    const std::vector<SweepRecord> records =
        sweep(alphas, n, samples, seed, threads, &skipped);

    Metadata meta;
    meta.command = "sweep";
    meta.seed = seed;
    meta.config = {
        {"alpha_grid", grid_text},
        {"n_assets", std::to_string(n)},
        {"n_samples", std::to_string(samples)},
        {"threads", std::to_string(threads)},
        {"skipped_singular_draws", std::to_string(skipped)},
        {"error_bars", "stderr (sample std = stderr * sqrt(n_samples))"},
    };
    persist(records, out, meta);
    std::cout << "wrote " << out << " (" << records.size() << " rows";
    if (skipped > 0) std::cout << ", " << skipped << " singular draws skipped";
    std::cout << ")\n";
    return 0;
}

int cmd_scan(std::vector<std::string> args, const json* cfg) {
    CLI::App app{"self-averaging scan: statistics of eps(X) and f(beta,X) "
                 "across N",
                 "risklab scan"};
    double alpha = 0.0;
    double beta = 1.0;
    std::string n_list_text;
    std::string out;
    std::size_t samples = 200;
    std::size_t threads = 0;
    std::uint64_t seed = 1;
    OptionSet set(cfg);
    bind_double(set, app.add_option("--alpha", alpha, "scenario ratio (> 1)"),
                "alpha", &alpha);
    bind_string(set,
                app.add_option("--n-list", n_list_text,
                               "comma list of asset counts, e.g. 100,200,400"),
                "n-list", &n_list_text);
    bind_size(set,
              app.add_option("--samples", samples,
                             "matrices per N (default 200)"),
              "samples", &samples);
    bind_double(set,
                app.add_option("--beta", beta,
                               "inverse temperature for the free-energy rows "
                               "(default 1)"),
                "beta", &beta);
    bind_u64(set, app.add_option("--seed", seed, "master seed (default 1)"),
             "seed", &seed);
    bind_string(set,
                app.add_option("--out", out,
                               "output CSV path (default "
                               "scan_<alpha>_<n-list>_<seed>.csv)"),
                "out", &out);
    bind_size(set,
              app.add_option("--threads", threads,
                             "worker threads (0 = hardware, default)"),
              "threads", &threads);
    if (!parse_or_help(app, std::move(args))) return 0;
    set.merge();
    set.require("--alpha", "alpha");
    set.require("--n-list", "n-list");
    if (!(alpha > 1.0)) throw UsageError("--alpha must be > 1");
    if (!(beta > 0.0)) throw UsageError("--beta must be > 0");
    if (samples < 2) throw UsageError("--samples must be >= 2");
    const std::vector<std::size_t> n_list =
        parse_size_list(n_list_text, "--n-list");
    for (std::size_t nn : n_list)
        if (nn < 2) throw UsageError("--n-list: asset counts must be >= 2");
    seed = resolve_seed(set, seed);
    if (out.empty()) out = auto_out("scan", fmt_g(alpha), n_list_text, seed);

    const std::vector<ConcentrationRecord> records =
        self_averaging_scan(alpha, n_list, samples, seed, beta, threads);

    Metadata meta;
    meta.command = "scan";
    meta.seed = seed;
    meta.config = {
        {"alpha", fmt_g(alpha)},
        {"n_list", n_list_text},
        {"n_samples", std::to_string(samples)},
        {"beta", fmt_g(beta)},
        {"threads", std::to_string(threads)},
    };
    persist(records, out, meta);
    std::cout << "wrote " << out << " (" << records.size() << " rows)\n";
    return 0;
}

int cmd_chernoff(std::vector<std::string> args, const json* cfg) {
    CLI::App app{"empirical free-energy tails against exp(-N R) bounds",
                 "risklab chernoff"};
    double alpha = 0.0;
    double beta = 1.0;
    std::string thresholds_text;
    std::string out;
    std::size_t n = 200;
    std::size_t samples = 500;
    std::size_t threads = 0;
    std::uint64_t seed = 1;
    OptionSet set(cfg);
    bind_double(set, app.add_option("--alpha", alpha, "scenario ratio (> 1)"),
                "alpha", &alpha);
    bind_double(set,
                app.add_option("--beta", beta,
                               "inverse temperature (default 1)"),
                "beta", &beta);
    bind_size(set, app.add_option("--n", n, "assets per matrix (default 200)"),
              "n", &n);
    bind_size(set,
              app.add_option("--samples", samples,
                             "free-energy draws (default 500)"),
              "samples", &samples);
    bind_string(set,
                app.add_option("--thresholds", thresholds_text,
                               "comma list of f~ values (default: f* +- "
                               "{0.05,0.1,0.15,0.2})"),
                "thresholds", &thresholds_text);
    bind_u64(set, app.add_option("--seed", seed, "master seed (default 1)"),
             "seed", &seed);
    bind_string(set,
                app.add_option("--out", out,
                               "output CSV path (default "
                               "chernoff_<alpha>_<N>_<seed>.csv)"),
                "out", &out);
    bind_size(set,
              app.add_option("--threads", threads,
                             "worker threads (0 = hardware, default)"),
              "threads", &threads);
    if (!parse_or_help(app, std::move(args))) return 0;
    set.merge();
    set.require("--alpha", "alpha");
    if (!(alpha > 1.0)) throw UsageError("--alpha must be > 1");
    if (!(beta > 0.0)) throw UsageError("--beta must be > 0");
    if (n < 2) throw UsageError("--n must be >= 2");
    if (samples < 2) throw UsageError("--samples must be >= 2");
    std::vector<double> thresholds;
    if (set.satisfied("thresholds"))
        thresholds = parse_double_list(thresholds_text, "--thresholds");
    seed = resolve_seed(set, seed);
    if (out.empty()) out = auto_out("chernoff", fmt_g(alpha), std::to_string(n), seed);

    const std::vector<ChernoffRecord> records =
        chernoff_check(alpha, beta, n, samples, thresholds, seed, threads);
    std::size_t n_passed = 0;
    for (const ChernoffRecord& r : records)
        if (r.passed) ++n_passed;

    Metadata meta;
    meta.command = "chernoff";
    meta.seed = seed;
    meta.config = {
        {"alpha", fmt_g(alpha)},
        {"beta", fmt_g(beta)},
        {"n_assets", std::to_string(n)},
        {"n_samples", std::to_string(samples)},
        {"thresholds", set.satisfied("thresholds")
                           ? thresholds_text
                           : std::string("default grid f* +- {0.05,0.1,0.15,0.2}")},
        {"threads", std::to_string(threads)},
    };
    persist(records, out, meta);
    std::cout << "wrote " << out << " (" << n_passed << "/" << records.size()
              << " bounds hold)\n";
    return 0;
}

int cmd_spectrum(std::vector<std::string> args, const json* cfg) {
    CLI::App app{"eigenvalue histogram with the Marchenko-Pastur overlay",
                 "risklab spectrum"};
    double alpha = 0.0;
    std::string out;
    std::size_t n = 400;
    std::size_t bins = 40;
    std::size_t samples = 1;
    std::uint64_t seed = 1;
    OptionSet set(cfg);
    bind_double(set, app.add_option("--alpha", alpha, "scenario ratio (> 0)"),
                "alpha", &alpha);
    bind_size(set, app.add_option("--n", n, "assets per matrix (default 400)"),
              "n", &n);
    bind_size(set,
              app.add_option("--bins", bins,
                             "histogram bins over [0, 1.1*lambda_plus] "
                             "(default 40)"),
              "bins", &bins);
    bind_size(set,
              app.add_option("--samples", samples,
                             "matrices averaged (default 1)"),
              "samples", &samples);
    bind_u64(set, app.add_option("--seed", seed, "master seed (default 1)"),
             "seed", &seed);
    bind_string(set,
                app.add_option("--out", out,
                               "output CSV path (default "
                               "spectrum_<alpha>_<N>_<seed>.csv)"),
                "out", &out);
    if (!parse_or_help(app, std::move(args))) return 0;
    set.merge();
    set.require("--alpha", "alpha");
    if (!(alpha > 0.0)) throw UsageError("--alpha must be > 0");
    if (n < 2) throw UsageError("--n must be >= 2");
    if (bins < 1) throw UsageError("--bins must be >= 1");
    if (samples < 1) throw UsageError("--samples must be >= 1");
    seed = resolve_seed(set, seed);
    if (out.empty()) out = auto_out("spectrum", fmt_g(alpha), std::to_string(n), seed);

    EnsembleSpec spec;
    spec.n_assets = n;
    spec.scenario_ratio = alpha;
    spec.master_seed = seed;
    spec.n_samples = samples;

    std::vector<double> edges;
    std::vector<double> density;
    double zero_fraction = 0.0;
    const bool has_atom = alpha < 1.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const ReturnMatrix x = sample_return_matrix(spec, s);
        const Histogram h = empirical_spectrum(x, bins);
        if (density.empty()) {
            edges = h.edges;
            density.assign(h.density.size(), 0.0);
        }
        for (std::size_t b = 0; b < density.size(); ++b)
            density[b] += h.density[b];
        if (has_atom) {
            const std::vector<double> evals = eigenvalues_sym(covariance(x));
            std::size_t zeros = 0;
            for (double ev : evals)
                if (ev < 1e-8) ++zeros;
            zero_fraction += static_cast<double>(zeros) / static_cast<double>(n);
        }
    }
    for (double& d : density) d /= static_cast<double>(samples);
    zero_fraction /= static_cast<double>(samples);

    const double realized_alpha = static_cast<double>(spec.n_scenarios()) /
                                  static_cast<double>(n);
    const MpLaw law = mp_law(realized_alpha);

    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open for writing: " + out);
    file << "bin_left,bin_right,density,mp_density\n";
    for (std::size_t b = 0; b < density.size(); ++b) {
        file << format_g12(edges[b]) << ',' << format_g12(edges[b + 1]) << ','
             << format_g12(density[b]) << ','
             << format_g12(mp_bin_average(law, edges[b], edges[b + 1])) << '\n';
    }
    file.flush();
    if (!file) throw IoError("write failed: " + out);

    Metadata meta;
    meta.command = "spectrum";
    meta.seed = seed;
    meta.config = {
        {"alpha", fmt_g(alpha)},
        {"n_assets", std::to_string(n)},
        {"bins", std::to_string(bins)},
        {"n_samples", std::to_string(samples)},
    };
    if (has_atom) {
        meta.config.emplace_back("zero_atom_empirical", fmt_g(zero_fraction));
        meta.config.emplace_back("zero_atom_theory",
                                 fmt_g(law.point_mass_at_zero));
    }
    write_metadata_sidecar(out, meta);

    std::cout << "wrote " << out << "\n";
    if (has_atom)
        std::cout << "zero_atom: empirical=" << fmt_g(zero_fraction)
                  << " theory=" << fmt_g(law.point_mass_at_zero)
                  << " (eigenvalues < 1e-8)\n";
    return 0;
}

int cmd_game(std::vector<std::string> args, const json* cfg) {
    CLI::App app{"rock-paper-scissors: annealed vs quenched expected scores",
                 "risklab game"};
    std::string case_label;
    std::size_t trials = 100000;
    int rounds = 300;
    int sets = 1;
    std::uint64_t seed = 1;
    OptionSet set(cfg);
    bind_string(set,
                app.add_option("--case", case_label,
                               "a: annealed analytic; b: quenched free; c: "
                               "quenched equal counts; d: quenched one hand "
                               "per set"),
                "case", &case_label);
    bind_size(set,
              app.add_option("--trials", trials,
                             "Monte Carlo trials (default 100000)"),
              "trials", &trials);
    bind_int(set,
             app.add_option("--rounds", rounds, "rounds per set (default 300)"),
             "rounds", &rounds);
    bind_int(set,
             app.add_option("--sets", sets,
                            "sets per trial (default 1; case d defaults to 5)"),
             "sets", &sets);
    bind_u64(set, app.add_option("--seed", seed, "master seed (default 1)"),
             "seed", &seed);
    if (!parse_or_help(app, std::move(args))) return 0;
    set.merge();
    set.require("--case", "case");
    if (case_label != "a" && case_label != "b" && case_label != "c" &&
        case_label != "d")
        throw UsageError("--case must be one of a, b, c, d");
    if (trials < 1) throw UsageError("--trials must be >= 1");
    if (rounds < 1) throw UsageError("--rounds must be >= 1");
    if (!set.satisfied("sets")) sets = (case_label == "d") ? 5 : 1;
    if (sets < 1) throw UsageError("--sets must be >= 1");
    if (case_label == "c" && rounds % 3 != 0)
        throw UsageError("--rounds must be divisible by 3 for case c");
    seed = resolve_seed(set, seed);

    std::printf("%-12s %-18s %-18s %s\n", "case", "analytic", "mc_mean",
                "mc_stderr");
    if (case_label == "a") {
        GameSpec g;
        g.rounds = rounds;
        g.sets = sets;
        const double uniform = expected_score_annealed(Mix{}, g);
        GameSpec gb = g;
        gb.bob_mix = Mix{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0};
        const double vs_biased =
            expected_score_annealed(Mix{0.0, 1.0, 0.0}, gb);
        std::printf("%-12s %-18s %-18s %s\n", "a/uniform",
                    fmt_g10(uniform).c_str(), "-", "-");
        std::printf("%-12s %-18s %-18s %s\n", "a/biased-bob",
                    fmt_g10(vs_biased).c_str(), "-", "-");
        return 0;
    }

    GameSpec g;
    g.rounds = rounds;
    g.sets = sets;
    g.knowledge = Knowledge::quenched;
    std::string analytic = "-";
    if (case_label == "b") {
        g.constraint = Constraint::none;
        analytic = fmt_g10(static_cast<double>(rounds) * sets);
    } else if (case_label == "c") {
        g.constraint = Constraint::equal_counts;
        analytic = fmt_g10(equal_counts_quenched_value(g));
    } else {
        g.constraint = Constraint::same_hand_each_set;
    }
    const McScore mc = expected_score_quenched(g, trials, seed);
    std::printf("%-12s %-18s %-18s %s\n", case_label.c_str(), analytic.c_str(),
                fmt_g10(mc.mean).c_str(), fmt_g10(mc.std_error).c_str());

    GameSpec ga = g;
    ga.knowledge = Knowledge::annealed;
    double best_annealed = -1e300;
    const Mix pure[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const Mix& m : pure)
        best_annealed =
            std::max(best_annealed, expected_score_annealed(m, ga));
    const bool geq = mc.mean >= best_annealed - 3.0 * mc.std_error;
    std::printf("quenched>=annealed: %s (quenched %s, best annealed %s)\n",
                geq ? "pass" : "FAIL", fmt_g10(mc.mean).c_str(),
                fmt_g10(best_annealed).c_str());
    return 0;
}

int cmd_risk(std::vector<std::string> args, const json* cfg) {
    CLI::App app{"minimal risk of a single return matrix",
                 "risklab risk"};
    std::string file;
    std::string weights_out;
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t n = 0;
    std::size_t sample_index = 0;
    std::uint64_t seed = 1;
    OptionSet set(cfg);
    bind_string(set,
                app.add_option("--file", file,
                               "CSV of raw returns, N rows x p columns "
                               "(excludes --alpha/--n)"),
                "file", &file);
    bind_double(set,
                app.add_option("--alpha", alpha,
                               "scenario ratio for a seeded draw"),
                "alpha", &alpha);
    bind_size(set, app.add_option("--n", n, "assets for a seeded draw"), "n",
              &n);
    bind_size(set,
              app.add_option("--sample-index", sample_index,
                             "which ensemble sample to draw (default 0)"),
              "sample-index", &sample_index);
    bind_u64(set, app.add_option("--seed", seed, "master seed (default 1)"),
             "seed", &seed);
    bind_double(set,
                app.add_option("--beta", beta,
                               "also report the free energy f(beta, X)"),
                "beta", &beta);
    bind_string(set,
                app.add_option("--weights-out", weights_out,
                               "write the optimal weights, one per line"),
                "weights-out", &weights_out);
    if (!parse_or_help(app, std::move(args))) return 0;
    set.merge();

    ReturnMatrix x;
    if (set.satisfied("file")) {
        if (set.satisfied("alpha") || set.satisfied("n") ||
            set.satisfied("sample-index"))
            throw UsageError("--file excludes --alpha/--n/--sample-index");
        x = load_return_matrix_csv(file);
    } else {
        set.require("--alpha", "alpha");
        set.require("--n", "n");
        if (!(alpha > 0.0)) throw UsageError("--alpha must be > 0");
        if (n < 2) throw UsageError("--n must be >= 2");
        seed = resolve_seed(set, seed);
        EnsembleSpec spec;
        spec.n_assets = n;
        spec.scenario_ratio = alpha;
        spec.master_seed = seed;
        spec.n_samples = sample_index + 1;
        x = sample_return_matrix(spec, sample_index);
    }
    if (set.satisfied("beta") && !(beta > 0.0))
        throw UsageError("--beta must be > 0");

    const RiskReport r = minimal_risk(x);
    std::printf("alpha_realized=%s eps=%s qw=%s\n",
                format_g12(r.realized_alpha).c_str(),
                format_g12(r.epsilon).c_str(), format_g12(r.q_w).c_str());
    if (set.satisfied("beta")) {
        const FreeEnergySample f = free_energy(beta, x);
        std::printf("beta=%s f=%s\n", fmt_g(beta).c_str(),
                    format_g12(f.f_value).c_str());
    }
    if (set.satisfied("weights-out")) {
        const Portfolio w = optimal_portfolio(covariance(x));
        std::ofstream wf(weights_out, std::ios::binary | std::ios::trunc);
        if (!wf) throw IoError("cannot open for writing: " + weights_out);
        for (double v : w.weights) wf << format_g12(v) << '\n';
        wf.flush();
        if (!wf) throw IoError("write failed: " + weights_out);
        std::cout << "wrote " << weights_out << "\n";
    }
    return 0;
}

// ---- dispatch ----------------------------------------------------------------

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot open: " + path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("--config: " + std::string(e.what()));
    }
    if (!cfg.is_object())
        throw UsageError("--config: top level must be a JSON object");
    return cfg;
}

int dispatch(std::vector<std::string> args) {
    json cfg;
    bool have_cfg = false;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw UsageError("--config requires a file path");
            cfg = load_config_file(args[i + 1]);
            have_cfg = true;
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            cfg = load_config_file(args[i].substr(9));
            have_cfg = true;
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }

    std::string command;
    if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
        command = args[0];
        args.erase(args.begin());
    }
    if (command.empty() && !args.empty()) {
        if (args[0] == "--help" || args[0] == "-h") {
            std::cout << kUsage;
            return 0;
        }
        if (args[0] == "--version") {
            std::cout << kVersion << "\n";
            return 0;
        }
    }
    if (command.empty() && have_cfg && cfg.contains("command"))
        command = cfg_string(cfg.at("command"), "command");
    if (command.empty()) {
        std::cerr << kUsage;
        return 1;
    }

    const json* cp = have_cfg ? &cfg : nullptr;
    if (command == "theory") return cmd_theory(std::move(args), cp);
    if (command == "sweep") return cmd_sweep(std::move(args), cp);
    if (command == "scan") return cmd_scan(std::move(args), cp);
    if (command == "chernoff") return cmd_chernoff(std::move(args), cp);
    if (command == "spectrum") return cmd_spectrum(std::move(args), cp);
    if (command == "game") return cmd_game(std::move(args), cp);
    if (command == "risk") return cmd_risk(std::move(args), cp);
    std::cerr << "risklab: unknown command '" << command << "'\n\n" << kUsage;
    return 1;
}

}  // namespace

std::vector<double> parse_alpha_grid(const std::string& text) {
    const auto parse_num = [&](const std::string& tok, std::size_t col) {
        double v = 0.0;
        if (!try_parse_double(tok, &v))
            throw ParseError(1, col,
                             "alpha grid: not a number: '" + tok + "'");
        return v;
    };
    if (text.find_first_not_of(" \t") == std::string::npos)
        throw ParseError(1, 1, "alpha grid: empty specification");

    if (text.find(':') != std::string::npos) {
        const std::vector<std::string> parts = split(text, ':');
        if (parts.size() != 3)
            throw ParseError(1, 1,
                             "alpha grid: expected start:stop:step, got '" +
                                 text + "'");
        const double start = parse_num(parts[0], 1);
        const double stop = parse_num(parts[1], 2);
        const double step = parse_num(parts[2], 3);
        if (!(step > 0.0))
            throw ParseError(1, 3, "alpha grid: step must be > 0");
        if (stop < start - 0.5 * step)
            throw ParseError(1, 2, "alpha grid: stop is below start");
        std::vector<double> out;
        for (std::size_t k = 0;; ++k) {
            const double v = start + static_cast<double>(k) * step;
            if (v > stop + 0.5 * step) break;
            if (out.size() >= 1000000)
                throw ParseError(1, 3, "alpha grid: more than 1e6 points");
            out.push_back(v);
        }
        return out;
    }

    std::vector<double> out;
    const std::vector<std::string> parts = split(text, ',');
    for (std::size_t i = 0; i < parts.size(); ++i)
        out.push_back(parse_num(parts[i], i + 1));
    return out;
}

ReturnMatrix load_return_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<double> raw;
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const std::vector<std::string> cells = split(line, ',');
        ++n_rows;
        if (n_rows == 1) n_cols = cells.size();
        if (cells.size() != n_cols)
            throw ParseError(n_rows, std::min(cells.size(), n_cols) + 1,
                             path + ": ragged row (expected " +
                                 std::to_string(n_cols) + " columns, got " +
                                 std::to_string(cells.size()) + ")");
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            if (!try_parse_double(cells[c], &v))
                throw ParseError(n_rows, c + 1,
                                 path + ": not a number: '" + cells[c] + "'");
            raw.push_back(v);
        }
    }
    if (n_rows == 0) throw ParseError(1, 1, path + ": empty CSV");
    return return_matrix_from_raw(n_rows, n_cols, raw);
}

void write_return_matrix_csv(const ReturnMatrix& x, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    const double scale = std::sqrt(static_cast<double>(x.n_assets));
    for (std::size_t k = 0; k < x.n_assets; ++k) {
        for (std::size_t mu = 0; mu < x.n_scenarios; ++mu) {
            if (mu > 0) out << ',';
            out << format_g12(x.at(k, mu) * scale);
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    if (argc > 1) args.assign(argv + 1, argv + argc);
    try {
        return dispatch(std::move(args));
    } catch (const UsageError& e) {
        std::cerr << "risklab: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "risklab: parse error at row " << e.row() << ", column "
                  << e.col() << ": " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "risklab: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        // SingularError, ConvergenceError, DomainError, ConstraintError, or a
        // harness abort: the computation itself failed.
        std::cerr << "risklab: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "risklab: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace risklab::cli
