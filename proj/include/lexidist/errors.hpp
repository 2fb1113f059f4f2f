#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexidist {

// Error classes map onto the CLI exit contract: parse/encoding problems are
// input errors (exit 2), validation/analysis problems are exit 1.

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(msg), line_(line) {}

    // 1-based source line, 0 when unknown
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Invalid byte sequences in input files.
class encoding_error : public parse_error {
public:
    using parse_error::parse_error;
};

class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Comparison/classification failures: no overlap, malformed matrix, ...
class analysis_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lexidist
