#include <doctest.h>

#include <cstdlib>

#include "support.hpp"

#ifndef COGNATE_CLI
#define COGNATE_CLI "cognate"
#endif

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const cognate::testing::TempDir& dir, const std::string& args) {
    auto out = dir / "stdout.txt";
    auto err = dir / "stderr.txt";
    std::string command = std::string(COGNATE_CLI) + " " + args + " > '" + out + "' 2> '" + err + "'";
    int status = std::system(command.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, cognate::testing::read_file(out), cognate::testing::read_file(err)};
}

std::string base(const cognate::testing::TempDir& dir) {
    return "--config '" + cognate::testing::fixture_path("fixture.conf") + "' --output-dir '" + dir.str() + "/out'";
}

}  // namespace

TEST_CASE("exit codes: success, usage, data") {
    cognate::testing::TempDir dir("cli");
    auto ok = run(dir, base(dir) + " ingest");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("hi,19,21,1") != std::string::npos);
    CHECK(ok.err.find("synset 19") != std::string::npos);

    CHECK(run(dir, base(dir) + " frobnicate").code == 1);
    CHECK(run(dir, base(dir) + " --threshold 1.5 gen-cognates").code == 1);
    CHECK(run(dir, "--targets mr ingest").code == 1);  // no seed

    auto missing = run(dir, base(dir) + " --targets ta ingest");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("ta.wordnet.tsv") != std::string::npos);

    CHECK(run(dir, base(dir) + " export-worksheet").code == 2);  // no candidates yet
}

TEST_CASE("malformed wordnet lines are reported with file and line") {
    cognate::testing::TempDir dir("cli-bad");
    for (const char* lang : {"hi", "mr"}) {
        std::filesystem::copy_file(cognate::testing::fixture_path(std::string("wordnet/") + lang + ".wordnet.tsv"),
                                   dir / (std::string(lang) + ".wordnet.tsv"));
    }
    std::ofstream(dir / "mr.wordnet.tsv", std::ios::app) << "21\tnoun\n";
    auto r = run(dir, base(dir) + " --targets mr --wordnet-dir '" + dir.str() + "' ingest");
    CHECK(r.code == 2);
    CHECK(r.err.find("mr.wordnet.tsv:21:") != std::string::npos);
}

TEST_CASE("overrides via --set and config keys") {
    cognate::testing::TempDir dir("cli-set");
    auto r = run(dir, base(dir) + " --set threshold=0.95 gen-cognates");
    CHECK(r.code == 0);
    CHECK(r.out.find("Potential Candidates,9,6") != std::string::npos);
    CHECK(run(dir, base(dir) + " --set bogus=1 ingest").code == 1);
}
