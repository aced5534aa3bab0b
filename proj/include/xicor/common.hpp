#pragma once

#include <stdexcept>
#include <string>

namespace xicor {

// Violated precondition on an operation's input (CLI exit code 3).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to converge or met non-finite values (CLI exit code 4).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file (CLI exit code 2). Carries a 1-based line number when known.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what, long line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

} // namespace xicor
