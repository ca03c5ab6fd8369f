// errors.hpp -- typed error hierarchy shared by all risklab modules.
//
// Every failure mode is a distinct exception type so callers (and the CLI
// exit-code mapping) can distinguish configuration mistakes from genuine
// numerical failures.

#ifndef RISKLAB_ERRORS_HPP
#define RISKLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace risklab {

// Base class for all risklab errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A symmetric matrix failed SPD factorization (non-positive pivot); signals
// p <= N or a degenerate draw, where the covariance matrix is not regular.
class SingularError : public Error {
public:
    SingularError(std::size_t pivot_index, const std::string& msg)
        : Error(msg), pivot_index_(pivot_index) {}
    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

// An iterative eigensolver exceeded its sweep budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// A closed-form evaluator was called outside its mathematical domain
// (e.g. alpha <= 1, beta <= 0, or 1 + n*beta <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

// A game-demo constraint is unsatisfiable (e.g. equal hand counts with a
// round count not divisible by 3).
class ConstraintError : public Error {
public:
    using Error::Error;
};

// Malformed textual input; carries the 1-based row/column location.
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::size_t col, const std::string& msg)
        : Error(msg), row_(row), col_(col) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

// File-system failure; message carries the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace risklab

#endif  // RISKLAB_ERRORS_HPP
