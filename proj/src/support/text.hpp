#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "support/error.hpp"

namespace olmap::text {

// Returns the byte offset of the first invalid UTF-8 sequence, or nullopt if
// the whole input is valid. Overlong encodings and surrogates are rejected.
std::optional<std::size_t> findInvalidUtf8(std::string_view bytes);

// Appends the UTF-8 encoding of a Unicode scalar value. The caller is
// responsible for range checks (<= U+10FFFF, no surrogates).
void appendUtf8(std::string& out, std::uint32_t codepoint);

// Line/column (1-based) of a byte offset, counting '\n' as the line separator.
TextPosition positionAt(std::string_view textBytes, std::size_t offset);

// True when the string starts with a URI scheme ("letters+digits+.-" then ':').
bool hasIriScheme(std::string_view iri);

// RFC 3986 reference resolution. `base` must be absolute. The result is the
// target IRI with dot-segments removed.
std::string resolveIriReference(std::string_view base, std::string_view reference);

// file:// IRI for an absolute filesystem path; reserved bytes are
// percent-encoded so the result is a syntactically valid IRI.
std::string fileIriForPath(const std::string& absolutePath);

bool isAsciiAlpha(char c);
bool isAsciiDigit(char c);
bool isAsciiAlnum(char c);

}  // namespace olmap::text
