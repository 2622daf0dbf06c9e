#include "pathlearn/errors.hpp"

namespace pathlearn {

namespace {

std::string located(const std::string& what, std::size_t row, std::size_t column) {
    if (row == 0) return what;
    std::string msg = "line " + std::to_string(row);
    if (column != 0) msg += ", column " + std::to_string(column);
    return msg + ": " + what;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t column)
    : std::runtime_error(located(what, row, column)), row_(row), column_(column) {}

}  // namespace pathlearn
