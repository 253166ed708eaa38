#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "support/error.hpp"
#include "xml/dom.hpp"

namespace olmap::xpath {

class PathSyntaxError : public Error {
public:
    PathSyntaxError(const std::string& message, std::size_t column)
        : Error("container path error at column " + std::to_string(column) + ": " + message),
          column_(column) {}

    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// XPath that exists but falls outside the supported subset. Everything the
// engine accepts must be creatable, which rules out read-only constructs.
class UnsupportedXPath : public Error {
public:
    explicit UnsupportedXPath(const std::string& construct)
        : Error("unsupported XPath construct: " + construct), construct_(construct) {}

    const std::string& construct() const { return construct_; }

private:
    std::string construct_;
};

class RootConflictError : public Error {
public:
    explicit RootConflictError(const std::string& message) : Error(message) {}
};

struct AttrEquals {
    std::string attribute;
    std::string value;
};

struct Step {
    std::string elementName;
    std::vector<AttrEquals> predicates;
};

// An absolute path of child steps, e.g. /robot[@id='ABC']/parameters.
struct ContainerPath {
    std::vector<Step> steps;
};

// Parses a fully substituted container expression. Grammar: one or more
// steps, each "/name" plus any number of [@attr='value'] predicates with
// single- or double-quoted values. Anything else that is valid XPath
// (descendant axis, wildcards, positional predicates, functions, ...) raises
// UnsupportedXPath naming the construct; the rest is PathSyntaxError.
ContainerPath parseContainer(std::string_view text);

struct ResolveResult {
    // Leaf frontier in document order; owned by the document.
    std::vector<xml::XmlElement*> nodes;
    // Elements created during this resolution, at most one per step.
    std::size_t created = 0;
};

// Walks the path from the root, collecting every child that matches each
// step (name and all predicates). A step whose match set comes up empty gets
// exactly one new element, created under the first parent in document order
// with the predicate attributes filled in; descent continues through the
// matches otherwise. An empty document grows a root from the first step; an
// existing root that fails the first step raises RootConflictError.
ResolveResult resolveOrCreate(xml::XmlDocument& doc, const ContainerPath& path);

}  // namespace olmap::xpath
