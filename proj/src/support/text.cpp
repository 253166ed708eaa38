#include "support/text.hpp"

#include <vector>

namespace olmap::text {

bool isAsciiAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool isAsciiDigit(char c) { return c >= '0' && c <= '9'; }
bool isAsciiAlnum(char c) { return isAsciiAlpha(c) || isAsciiDigit(c); }

void appendUtf8(std::string& out, std::uint32_t codepoint) {
    if (codepoint < 0x80) {
        out += static_cast<char>(codepoint);
    } else if (codepoint < 0x800) {
        out += static_cast<char>(0xC0 | (codepoint >> 6));
        out += static_cast<char>(0x80 | (codepoint & 0x3F));
    } else if (codepoint < 0x10000) {
        out += static_cast<char>(0xE0 | (codepoint >> 12));
        out += static_cast<char>(0x80 | ((codepoint >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (codepoint & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (codepoint >> 18));
        out += static_cast<char>(0x80 | ((codepoint >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((codepoint >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (codepoint & 0x3F));
    }
}

std::optional<std::size_t> findInvalidUtf8(std::string_view bytes) {
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(bytes[i]);
        if (b0 < 0x80) {
            ++i;
            continue;
        }
        std::size_t len;
        unsigned long cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1Fu;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0Fu;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07u;
        } else {
            return i;
        }
        if (i + len > n) return i;
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char bk = static_cast<unsigned char>(bytes[i + k]);
            if ((bk & 0xC0) != 0x80) return i;
            cp = (cp << 6) | (bk & 0x3Fu);
        }
        // overlong, surrogate and out-of-range sequences
        if (len == 2 && cp < 0x80) return i;
        if (len == 3 && cp < 0x800) return i;
        if (len == 4 && cp < 0x10000) return i;
        if (cp >= 0xD800 && cp <= 0xDFFF) return i;
        if (cp > 0x10FFFF) return i;
        i += len;
    }
    return std::nullopt;
}

TextPosition positionAt(std::string_view textBytes, std::size_t offset) {
    TextPosition pos{1, 1};
    if (offset > textBytes.size()) offset = textBytes.size();
    for (std::size_t i = 0; i < offset; ++i) {
        if (textBytes[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

bool hasIriScheme(std::string_view iri) {
    if (iri.empty() || !isAsciiAlpha(iri[0])) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        const char c = iri[i];
        if (c == ':') return true;
        if (!isAsciiAlnum(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

namespace {

struct IriParts {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;
};

IriParts splitIri(std::string_view iri) {
    IriParts parts;
    // fragment
    if (auto hash = iri.find('#'); hash != std::string_view::npos) {
        parts.fragment = std::string(iri.substr(hash + 1));
        iri = iri.substr(0, hash);
    }
    // query
    if (auto qm = iri.find('?'); qm != std::string_view::npos) {
        parts.query = std::string(iri.substr(qm + 1));
        iri = iri.substr(0, qm);
    }
    // scheme
    if (!iri.empty() && isAsciiAlpha(iri[0])) {
        for (std::size_t i = 1; i < iri.size(); ++i) {
            const char c = iri[i];
            if (c == ':') {
                parts.scheme = std::string(iri.substr(0, i));
                iri = iri.substr(i + 1);
                break;
            }
            if (!isAsciiAlnum(c) && c != '+' && c != '-' && c != '.') break;
        }
    }
    // authority
    if (iri.size() >= 2 && iri[0] == '/' && iri[1] == '/') {
        iri = iri.substr(2);
        const auto slash = iri.find('/');
        if (slash == std::string_view::npos) {
            parts.authority = std::string(iri);
            iri = {};
        } else {
            parts.authority = std::string(iri.substr(0, slash));
            iri = iri.substr(slash);
        }
    }
    parts.path = std::string(iri);
    return parts;
}

// RFC 3986 section 5.2.4
std::string removeDotSegments(std::string input) {
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);  // keep leading '/'
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0 || input == "/..") {
            if (input == "/..")
                input = "/";
            else
                input.erase(0, 3);
            const auto lastSlash = output.find_last_of('/');
            output.erase(lastSlash == std::string::npos ? 0 : lastSlash);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            std::size_t start = input[0] == '/' ? 1 : 0;
            const auto next = input.find('/', start);
            if (next == std::string::npos) {
                output += input;
                input.clear();
            } else {
                output += input.substr(0, next);
                input.erase(0, next);
            }
        }
    }
    return output;
}

std::string mergePaths(const IriParts& base, const std::string& refPath) {
    if (base.authority && base.path.empty()) return "/" + refPath;
    const auto lastSlash = base.path.find_last_of('/');
    if (lastSlash == std::string::npos) return refPath;
    return base.path.substr(0, lastSlash + 1) + refPath;
}

std::string recompose(const IriParts& parts) {
    std::string out;
    if (parts.scheme) {
        out += *parts.scheme;
        out += ':';
    }
    if (parts.authority) {
        out += "//";
        out += *parts.authority;
    }
    out += parts.path;
    if (parts.query) {
        out += '?';
        out += *parts.query;
    }
    if (parts.fragment) {
        out += '#';
        out += *parts.fragment;
    }
    return out;
}

}  // namespace

std::string resolveIriReference(std::string_view base, std::string_view reference) {
    const IriParts ref = splitIri(reference);
    if (ref.scheme) {
        IriParts target = ref;
        target.path = removeDotSegments(target.path);
        return recompose(target);
    }
    const IriParts baseParts = splitIri(base);
    IriParts target;
    target.scheme = baseParts.scheme;
    target.fragment = ref.fragment;
    if (ref.authority) {
        target.authority = ref.authority;
        target.path = removeDotSegments(ref.path);
        target.query = ref.query;
    } else {
        target.authority = baseParts.authority;
        if (ref.path.empty()) {
            target.path = baseParts.path;
            target.query = ref.query ? ref.query : baseParts.query;
        } else {
            target.query = ref.query;
            if (ref.path[0] == '/')
                target.path = removeDotSegments(ref.path);
            else
                target.path = removeDotSegments(mergePaths(baseParts, ref.path));
        }
    }
    return recompose(target);
}

std::string fileIriForPath(const std::string& absolutePath) {
    static const char* hex = "0123456789ABCDEF";
    std::string out = "file://";
    for (const char c : absolutePath) {
        const auto b = static_cast<unsigned char>(c);
        const bool keep = isAsciiAlnum(c) || c == '/' || c == '.' || c == '-' || c == '_' ||
                          c == '~' || c == '+' || c == ',' || c == '=' || c == ':' || c == '@';
        if (keep && b < 0x80) {
            out += c;
        } else {
            out += '%';
            out += hex[b >> 4];
            out += hex[b & 0xF];
        }
    }
    return out;
}

}  // namespace olmap::text
