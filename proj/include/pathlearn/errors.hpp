#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathlearn {

/// Malformed input text (CSV dataset, graph edge list, structure spec).
/// Row and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0);

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// A well-formed request the domain cannot answer (bad indices, target among
/// its own parents, solver size limits, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidQuery : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidStructure : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raised by exhaustive or exact solvers when the instance exceeds their size limit.
class LimitExceeded : public DomainError {
public:
    LimitExceeded(const std::string& what, std::size_t size, std::size_t limit)
        : DomainError(what), size_(size), limit_(limit) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t size_;
    std::size_t limit_;
};

}  // namespace pathlearn
