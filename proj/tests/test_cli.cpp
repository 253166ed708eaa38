#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "testutil.hpp"

namespace fs = std::filesystem;

namespace {

fs::path freshDir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() /
                         ("olmap-cli-" + std::to_string(static_cast<long>(::getpid()))) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string writeFile(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
    REQUIRE(out.good());
    return path.string();
}

struct RunResult {
    int exitCode = -1;
    std::string out;
    std::string err;
};

// Runs the installed binary through the shell, capturing both streams.
// `prefix` can carry environment assignments ("NAME=value ").
RunResult runCli(const std::string& arguments, const fs::path& dir,
                 const std::string& prefix = "") {
    const fs::path outFile = dir / "cli-stdout.txt";
    const fs::path errFile = dir / "cli-stderr.txt";
    const std::string command = prefix + std::string(OLMAP_CLI_PATH) + " " + arguments + " >" +
                                outFile.string() + " 2>" + errFile.string();
    const int raw = std::system(command.c_str());
    REQUIRE(raw != -1);
    RunResult result;
    result.exitCode = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = testutil::readFile(outFile.string());
    result.err = testutil::readFile(errFile.string());
    fs::remove(outFile);
    fs::remove(errFile);
    return result;
}

// Snapshot of every regular file under dir, for "nothing changed" checks.
std::map<std::string, std::string> dirContents(const fs::path& dir) {
    std::map<std::string, std::string> contents;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            contents[entry.path().string()] = testutil::readFile(entry.path().string());
        }
    }
    return contents;
}

const std::string kPairSource =
    "@prefix ex: <http://example.org/#> .\n"
    "ex:a ex:name \"one\" .\n"
    "ex:b ex:name \"two\" .\n";

std::string pairMapping(const std::string& container, const std::string& snippet) {
    return "@prefix ol: <urn:olmap:vocab#> .\n"
           "<#Map> a ol:DataMap ;\n"
           "    ol:ontologicalSource [ ol:source \"pairs.ttl\" ; ol:sourceType ol:File ;\n"
           "        ol:queryLanguage ol:SPARQL ;\n"
           "        ol:query \"SELECT ?name WHERE { ?x <http://example.org/#name> ?name }\" ] ;\n"
           "    ol:container \"" + container + "\" ;\n"
           "    ol:snippet \"" + snippet + "\" .\n";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("the robot mapping runs to exit 0 with a summary on stderr") {
    const fs::path dir = freshDir("robot");
    const std::string output = (dir / "parameters.xml").string();

    const RunResult result =
        runCli("-m " + testutil::fixturePath("robot-mapping.ttl") + " -o " + output, dir);

    CHECK(result.exitCode == 0);
    CHECK(result.out.empty());
    CHECK(result.err.find("3 rows") != std::string::npos);
    CHECK(result.err.find("3 snippets inserted") != std::string::npos);
    const std::string written = testutil::readFile(output);
    CHECK(written.find("<name>arm1</name><value>200</value>") != std::string::npos);
    CHECK(written.find("<name>arm3</name><value>220</value>") != std::string::npos);
}

TEST_CASE("no arguments is a usage error") {
    const fs::path dir = freshDir("usage");
    const RunResult result = runCli("", dir);
    CHECK(result.exitCode == 1);
    CHECK_FALSE(result.err.empty());
}

TEST_CASE("--help and --version exit 0") {
    const fs::path dir = freshDir("help");
    const RunResult help = runCli("--help", dir);
    CHECK(help.exitCode == 0);
    CHECK(help.out.find("--mapping") != std::string::npos);
    CHECK(help.out.find("--dry-run") != std::string::npos);

    const RunResult version = runCli("--version", dir);
    CHECK(version.exitCode == 0);
    CHECK(version.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("a missing output flag without --dry-run is a usage error") {
    const fs::path dir = freshDir("no-output");
    const RunResult result =
        runCli("-m " + testutil::fixturePath("robot-mapping.ttl"), dir);
    CHECK(result.exitCode == 1);
    CHECK(result.err.find("--output") != std::string::npos);
}

TEST_CASE("a missing mapping file exits 3 naming the path") {
    const fs::path dir = freshDir("missing-mapping");
    const RunResult result =
        runCli("-m " + (dir / "absent.ttl").string() + " -o " + (dir / "o.xml").string(), dir);
    CHECK(result.exitCode == 3);
    CHECK(result.err.find("absent.ttl") != std::string::npos);
}

TEST_CASE("an invalid mapping document exits 2 on one line") {
    const fs::path dir = freshDir("invalid-mapping");
    const std::string mapping = writeFile(
        dir / "invalid.ttl",
        "@prefix ol: <urn:olmap:vocab#> .\n<#M> a ol:DataMap ; ol:container \"\" .\n");
    const RunResult result =
        runCli("-m " + mapping + " -o " + (dir / "o.xml").string(), dir);
    CHECK(result.exitCode == 2);
    CHECK(result.err.find("invalid mapping document") != std::string::npos);
    // The multi-line issue list was flattened.
    CHECK(result.err.find("olmap: ") != std::string::npos);
    CHECK(result.err.substr(result.err.find("olmap: ")).find('\n') ==
          result.err.size() - result.err.find("olmap: ") - 1);
}

TEST_CASE("a corrupt output document exits 4") {
    const fs::path dir = freshDir("corrupt-output");
    const std::string output = writeFile(dir / "corrupt.xml", "<broken");
    const RunResult result =
        runCli("-m " + testutil::fixturePath("robot-mapping.ttl") + " -o " + output, dir);
    CHECK(result.exitCode == 4);
    CHECK(result.err.find("corrupt.xml") != std::string::npos);
}

TEST_CASE("--dry-run prints the document and leaves the filesystem alone") {
    const fs::path dir = freshDir("dry-run");
    writeFile(dir / "pairs.ttl", kPairSource);
    const std::string mapping =
        writeFile(dir / "map.ttl", pairMapping("/out", "<v>${name}</v>"));
    const auto before = dirContents(dir);

    const RunResult result = runCli("-m " + mapping + " --dry-run", dir);

    CHECK(result.exitCode == 0);
    CHECK(result.out ==
          "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          "<out><v>one</v><v>two</v></out>\n");
    CHECK(dirContents(dir) == before);

    // With -o it previews the merge against the existing document.
    const std::string output = writeFile(dir / "existing.xml", "<out><keep/></out>\n");
    const auto beforeMerge = dirContents(dir);
    const RunResult merge = runCli("-m " + mapping + " -o " + output + " --dry-run", dir);
    CHECK(merge.exitCode == 0);
    CHECK(merge.out == "<out><keep/><v>one</v><v>two</v></out>\n");
    CHECK(dirContents(dir) == beforeMerge);
}

TEST_CASE("--pairing selects how rows meet container nodes") {
    const fs::path dir = freshDir("pairing");
    writeFile(dir / "pairs.ttl", kPairSource);
    const std::string mapping = writeFile(
        dir / "map.ttl", pairMapping("/groups/group[@name='${name}']", "<v>${name}</v>"));

    const RunResult cartesian = runCli("-m " + mapping + " --dry-run", dir);
    const RunResult rowPaired = runCli("-m " + mapping + " --pairing row --dry-run", dir);

    CHECK(cartesian.exitCode == 0);
    CHECK(rowPaired.exitCode == 0);
    CHECK(cartesian.out.find("<group name=\"one\"><v>one</v><v>two</v></group>") !=
          std::string::npos);
    CHECK(rowPaired.out.find("<group name=\"one\"><v>one</v></group>") != std::string::npos);
}

TEST_CASE("--pretty indents the written document") {
    const fs::path dir = freshDir("pretty");
    const std::string output = (dir / "parameters.xml").string();
    const RunResult result = runCli(
        "-m " + testutil::fixturePath("robot-mapping.ttl") + " -o " + output + " --pretty", dir);
    CHECK(result.exitCode == 0);
    CHECK(testutil::readFile(output).find("\n  <parameter>\n") != std::string::npos);
}

TEST_CASE("strictness flags choose between failing and warning") {
    const fs::path dir = freshDir("strictness");
    writeFile(dir / "pairs.ttl", kPairSource);
    const std::string mapping =
        writeFile(dir / "map.ttl", pairMapping("/out", "<v>${missing}</v>"));

    const RunResult strict = runCli("-m " + mapping + " --dry-run", dir);
    CHECK(strict.exitCode == 2);
    CHECK(strict.err.find("missing") != std::string::npos);

    const RunResult lenient = runCli("-m " + mapping + " --dry-run --lenient", dir);
    CHECK(lenient.exitCode == 0);
    CHECK(lenient.err.find("warning:") != std::string::npos);
    CHECK(lenient.out.find("<v/>") != std::string::npos);

    const RunResult both = runCli("-m " + mapping + " --strict --lenient --dry-run", dir);
    CHECK(both.exitCode == 1);
}

TEST_CASE("--verbose adds per-row traces to stderr") {
    const fs::path dir = freshDir("verbose");
    const RunResult result = runCli(
        "-m " + testutil::fixturePath("robot-mapping.ttl") + " --dry-run --verbose", dir);
    CHECK(result.exitCode == 0);
    CHECK(result.err.find("row 1") != std::string::npos);
    CHECK(result.err.find("parameterName='arm1'") != std::string::npos);
}

TEST_CASE("endpoint timeout comes from the flag or the environment") {
    const fs::path dir = freshDir("timeout");
    const std::string mappingArgs =
        "-m " + testutil::fixturePath("robot-mapping.ttl") + " --dry-run";

    CHECK(runCli(mappingArgs + " --endpoint-timeout 0", dir).exitCode == 1);

    // An unusable environment value falls back to the default, with a note.
    const RunResult ignored = runCli(mappingArgs, dir, "MAPPER_ENDPOINT_TIMEOUT=abc ");
    CHECK(ignored.exitCode == 0);
    CHECK(ignored.err.find("MAPPER_ENDPOINT_TIMEOUT") != std::string::npos);

    const RunResult sane = runCli(mappingArgs, dir, "MAPPER_ENDPOINT_TIMEOUT=5 ");
    CHECK(sane.exitCode == 0);
    CHECK(sane.err.find("MAPPER_ENDPOINT_TIMEOUT") == std::string::npos);

    // The flag wins over the environment.
    const RunResult flagWins =
        runCli(mappingArgs + " --endpoint-timeout 7", dir, "MAPPER_ENDPOINT_TIMEOUT=abc ");
    CHECK(flagWins.exitCode == 0);
    CHECK(flagWins.err.find("MAPPER_ENDPOINT_TIMEOUT") == std::string::npos);
}

}  // TEST_SUITE
