#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace olmap {

// Broad failure classes. The C API status codes and the CLI exit codes map
// one-to-one onto these (0 is reserved for success, 1 for usage errors).
enum class ErrorCategory {
    Usage = 1,    // bad invocation or bad API arguments
    Mapping = 2,  // mapping document is broken (syntax, validation, templates)
    Source = 3,   // source data unavailable or unreadable (files, endpoints)
    Output = 4,   // output document cannot be opened, built or written
};

class Error : public std::runtime_error {
public:
    explicit Error(std::string message) : std::runtime_error(std::move(message)) {}
};

// 1-based text position; line 0 means "unknown".
struct TextPosition {
    std::size_t line = 0;
    std::size_t column = 0;
};

inline std::string describePosition(const TextPosition& pos) {
    if (pos.line == 0) return "";
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

}  // namespace olmap
