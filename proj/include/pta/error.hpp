// ============================================================================
// pta/error.hpp: exception types shared by all modules
// ============================================================================

#ifndef PTA_ERROR_HPP
#define PTA_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pta {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally invalid automaton or an operation applied outside its
/// precondition (wrong number of parametric clocks, clock overlap, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A delay or action step that is not enabled in the timed transition system.
/// `step` is the index in the replayed script (0 when not replaying).
class StepError : public Error {
public:
    StepError(const std::string& message, std::size_t step = 0)
        : Error(message), step_(step) {}

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// Inconsistent verdicts between backends, or a query the chosen backend
/// cannot answer.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace pta

#endif  // PTA_ERROR_HPP
