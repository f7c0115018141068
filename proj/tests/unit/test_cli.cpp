#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harness.hpp"

namespace fs = std::filesystem;

namespace {

struct Output {
    int exit_code = -1;
    std::string text;
};

// Runs hrmctl with stdout captured; stderr is appended when `merge` is set.
Output run(const std::string& args, bool merge = false) {
    const std::string cmd = std::string(HRMCTL_PATH) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
    Output out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.text.append(buf, n);
    }
    const int status = pclose(pipe);
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempWorkspace {
    TempWorkspace() {
        dir = fs::temp_directory_path() / ("hrmctl-test-" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        config = dir / "hrm.json";
        std::ofstream(config) << R"({"store_path": ")" << (dir / "hrm.db").string() << R"("})";
    }
    ~TempWorkspace() { fs::remove_all(dir); }

    std::string with(const std::string& args) const { return "-c " + config.string() + " " + args; }

    fs::path dir;
    fs::path config;
};

}  // namespace

TEST_CASE("export-grades reproduces the bundled seed file", "[cli]") {
    auto out = run("export-grades");
    CHECK(out.exit_code == 0);
    CHECK(out.text == slurp(std::string(HRM_SOURCE_DIR) + "/data/grades.jsonl"));
}

TEST_CASE("replay prints the final state", "[cli]") {
    auto out = run("replay " + testing::fixture("procedure.jsonl"));
    CHECK(out.exit_code == 0);
    CHECK(out.text == "Recognized\n");

    auto missing = run("replay /nonexistent.jsonl", true);
    CHECK(missing.exit_code == 1);
    CHECK(missing.text.rfind("error: FileUnreadable", 0) == 0);
}

TEST_CASE("seeded store supports the one-shot commands", "[cli]") {
    TempWorkspace ws;
    auto seeded = run(ws.with("seed-demo"));
    REQUIRE(seeded.exit_code == 0);
    CHECK(testing::json::parse(seeded.text)["procedures"].size() == 2);
    CHECK(run(ws.with("seed-demo")).exit_code == 1);

    auto review = run(ws.with("expiry-review --as-of 2014-11-20"));
    CHECK(review.exit_code == 0);
    CHECK(review.text ==
          "person,grade,valid_to,status,deadline_to_initiate\n"
          "person-1,assistant professor,2014-12-01,InitiationDue,2014-09-01\n"
          "person-2,associate professor,2015-01-15,InitiationDue,2014-10-15\n");
    CHECK(run(ws.with("expiry-review --as-of 2014-13-01")).exit_code == 1);

    auto backlog = run(ws.with("backlog"));
    CHECK(backlog.text.find("[M] Must Have") < backlog.text.find("[S] Should Have"));

    const auto log = ws.dir / "procedure-1.jsonl";
    auto exported = run(ws.with("export-procedure procedure-1"));
    REQUIRE(exported.exit_code == 0);
    std::ofstream(log) << exported.text;
    CHECK(run("replay " + log.string()).text == "Recognized\n");
    CHECK(run(ws.with("export-procedure procedure-9")).exit_code == 1);

    auto manifest = run(ws.with("attachment-manifest procedure-1"));
    CHECK(manifest.text.rfind("document_id,path,declared_format,attached_at,description\ndocument-1,", 0) == 0);

    auto imported = run(ws.with("import-employees " + testing::fixture("employees.csv")));
    REQUIRE(imported.exit_code == 0);
    auto report = testing::json::parse(imported.text);
    // The demo already holds Ana Horvat with the same birth date.
    CHECK(report["created"] == 2);
    CHECK(report["skipped"].size() == 2);
    CHECK(report["errors"][0]["line"] == 4);

    const auto reqs = ws.dir / "reqs.csv";
    std::ofstream(reqs) << ",Packaging,C,Ship a container image\n";
    CHECK(run(ws.with("import-requirements " + reqs.string())).exit_code == 0);
    auto csv = run(ws.with("export-requirements"));
    CHECK(csv.text.find("Packaging,C,Ship a container image") != std::string::npos);
}

TEST_CASE("bad invocations fail", "[cli]") {
    CHECK(run("").exit_code != 0);
    CHECK(run("no-such-command").exit_code != 0);
    auto bad_config = run("-c /nonexistent.json backlog", true);
    CHECK(bad_config.exit_code == 1);
    CHECK(bad_config.text.find("FileUnreadable") != std::string::npos);
}
