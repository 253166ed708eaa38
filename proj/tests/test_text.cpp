#include <string>
#include <string_view>

#include "doctest.h"
#include "support/text.hpp"

using namespace olmap;

TEST_SUITE_BEGIN("support");

TEST_CASE("findInvalidUtf8 accepts well-formed sequences") {
    CHECK(!text::findInvalidUtf8(""));
    CHECK(!text::findInvalidUtf8("plain ascii"));
    CHECK(!text::findInvalidUtf8("caf\xC3\xA9"));              // U+00E9
    CHECK(!text::findInvalidUtf8("\xE2\x82\xAC"));             // U+20AC
    CHECK(!text::findInvalidUtf8("\xF0\x9F\x99\x82"));         // U+1F642
    CHECK(!text::findInvalidUtf8(std::string_view("a\0b", 3))  // NUL is valid UTF-8
    );
}

TEST_CASE("findInvalidUtf8 reports the offset of the first bad byte") {
    CHECK(text::findInvalidUtf8("\x80") == 0);                  // stray continuation
    CHECK(text::findInvalidUtf8("ab\xC3") == 2);                // truncated sequence
    CHECK(text::findInvalidUtf8("\xC0\xAF") == 0);              // overlong '/'
    CHECK(text::findInvalidUtf8("\xE0\x80\xA0") == 0);          // overlong
    CHECK(text::findInvalidUtf8("\xED\xA0\x80") == 0);          // surrogate
    CHECK(text::findInvalidUtf8("\xF4\x90\x80\x80") == 0);      // beyond U+10FFFF
    CHECK(text::findInvalidUtf8("x\xFFy") == 1);
    CHECK(text::findInvalidUtf8("ok\xC3\x28") == 2);            // bad continuation
}

TEST_CASE("positionAt counts 1-based lines and columns") {
    const std::string_view doc = "abc\ndef\n\nxy";
    CHECK(text::positionAt(doc, 0).line == 1);
    CHECK(text::positionAt(doc, 0).column == 1);
    CHECK(text::positionAt(doc, 2).column == 3);
    CHECK(text::positionAt(doc, 4).line == 2);
    CHECK(text::positionAt(doc, 4).column == 1);
    CHECK(text::positionAt(doc, 8).line == 3);
    CHECK(text::positionAt(doc, 9).line == 4);
    CHECK(text::positionAt(doc, 10).column == 2);
    // offsets past the end clamp instead of reading out of bounds
    CHECK(text::positionAt(doc, 999).line == 4);
}

TEST_CASE("hasIriScheme") {
    CHECK(text::hasIriScheme("http://example.org/x"));
    CHECK(text::hasIriScheme("urn:olmap:vocab#DataMap"));
    CHECK(text::hasIriScheme("file:///tmp/x.ttl"));
    CHECK(text::hasIriScheme("a+b-c.d:rest"));
    CHECK(!text::hasIriScheme(""));
    CHECK(!text::hasIriScheme("no-colon"));
    CHECK(!text::hasIriScheme("/relative/path"));
    CHECK(!text::hasIriScheme("1http:x"));     // scheme must start with a letter
    CHECK(!text::hasIriScheme("pre fix:x"));   // spaces break the scheme
    CHECK(!text::hasIriScheme("#fragment"));
}

TEST_CASE("resolveIriReference follows the RFC 3986 reference table") {
    const std::string base = "http://a/b/c/d;p?q";
    auto resolve = [&](std::string_view ref) { return text::resolveIriReference(base, ref); };

    // normal examples
    CHECK(resolve("g:h") == "g:h");
    CHECK(resolve("g") == "http://a/b/c/g");
    CHECK(resolve("./g") == "http://a/b/c/g");
    CHECK(resolve("g/") == "http://a/b/c/g/");
    CHECK(resolve("/g") == "http://a/g");
    CHECK(resolve("//g") == "http://g");
    CHECK(resolve("?y") == "http://a/b/c/d;p?y");
    CHECK(resolve("g?y") == "http://a/b/c/g?y");
    CHECK(resolve("#s") == "http://a/b/c/d;p?q#s");
    CHECK(resolve("g#s") == "http://a/b/c/g#s");
    CHECK(resolve("g?y#s") == "http://a/b/c/g?y#s");
    CHECK(resolve(";x") == "http://a/b/c/;x");
    CHECK(resolve("g;x") == "http://a/b/c/g;x");
    CHECK(resolve("g;x?y#s") == "http://a/b/c/g;x?y#s");
    CHECK(resolve("") == "http://a/b/c/d;p?q");
    CHECK(resolve(".") == "http://a/b/c/");
    CHECK(resolve("./") == "http://a/b/c/");
    CHECK(resolve("..") == "http://a/b/");
    CHECK(resolve("../") == "http://a/b/");
    CHECK(resolve("../g") == "http://a/b/g");
    CHECK(resolve("../..") == "http://a/");
    CHECK(resolve("../../") == "http://a/");
    CHECK(resolve("../../g") == "http://a/g");

    // abnormal examples
    CHECK(resolve("../../../g") == "http://a/g");
    CHECK(resolve("../../../../g") == "http://a/g");
    CHECK(resolve("/./g") == "http://a/g");
    CHECK(resolve("/../g") == "http://a/g");
    CHECK(resolve("g.") == "http://a/b/c/g.");
    CHECK(resolve(".g") == "http://a/b/c/.g");
    CHECK(resolve("g..") == "http://a/b/c/g..");
    CHECK(resolve("..g") == "http://a/b/c/..g");
    CHECK(resolve("./../g") == "http://a/b/g");
    CHECK(resolve("./g/.") == "http://a/b/c/g/");
    CHECK(resolve("g/./h") == "http://a/b/c/g/h");
    CHECK(resolve("g/../h") == "http://a/b/c/h");
    CHECK(resolve("g;x=1/./y") == "http://a/b/c/g;x=1/y");
    CHECK(resolve("g;x=1/../y") == "http://a/b/c/y");
    CHECK(resolve("g?y/./x") == "http://a/b/c/g?y/./x");
    CHECK(resolve("g?y/../x") == "http://a/b/c/g?y/../x");
    CHECK(resolve("g#s/./x") == "http://a/b/c/g#s/./x");
    CHECK(resolve("g#s/../x") == "http://a/b/c/g#s/../x");
    CHECK(resolve("http:g") == "http:g");
}

TEST_CASE("resolveIriReference against a fragment-capable base") {
    CHECK(text::resolveIriReference("file:///tmp/maps/robot.ttl", "#ParameterMapping") ==
          "file:///tmp/maps/robot.ttl#ParameterMapping");
    CHECK(text::resolveIriReference("http://host/dir/doc.ttl", "other.ttl") ==
          "http://host/dir/other.ttl");
}

TEST_CASE("fileIriForPath percent-encodes reserved bytes") {
    CHECK(text::fileIriForPath("/tmp/data.ttl") == "file:///tmp/data.ttl");
    CHECK(text::fileIriForPath("/tmp/my data.ttl") == "file:///tmp/my%20data.ttl");
    CHECK(text::fileIriForPath("/a#b/c?d") == "file:///a%23b/c%3Fd");
    CHECK(text::fileIriForPath("/caf\xC3\xA9") == "file:///caf%C3%A9");
}

TEST_SUITE_END();
