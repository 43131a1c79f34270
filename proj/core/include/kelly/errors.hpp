#ifndef KELLY_ERRORS_HPP
#define KELLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kelly {

// Bad arguments: unknown vertex, missing arc, malformed cycle, invalid order.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Input exceeds a size bound of an exact algorithm.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant that the algorithms rely on failed to hold.
// Reaching this is a bug in the library, never a caller error.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Malformed textual input; line is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Replaying a witness script failed at a specific step.
class ReplayError : public DomainError {
public:
    ReplayError(const std::string& what, std::size_t step_index)
        : DomainError("step " + std::to_string(step_index) + ": " + what),
          step_index_(step_index) {}
    std::size_t step_index() const { return step_index_; }

private:
    std::size_t step_index_;
};

} // namespace kelly

#endif
