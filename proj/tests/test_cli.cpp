#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::filesystem::path work_dir() {
    auto d = std::filesystem::temp_directory_path() / "fairsynth-cli-test";
    std::filesystem::create_directories(d);
    return d;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult cli(const std::string& args) {
    const char* bin = std::getenv("FAIRSYNTH_CLI");
    REQUIRE(bin != nullptr);
    auto d = work_dir();
    auto out = d / "stdout.txt";
    auto err = d / "stderr.txt";
    std::string cmd = std::string(bin) + " " + args + " > " + out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("generate, analyse and validate a built-in specification") {
    auto d = work_dir();
    auto al = (d / "fig3-alphabet.json").string();
    auto df = (d / "fig3-dfa.json").string();
    auto r = cli("gen fig3 --alphabet-out " + al + " --dfa-out " + df);
    REQUIRE(r.exit_code == 0);

    r = cli("validate " + al + " " + df);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("OK") != std::string::npos);

    r = cli("fairness " + al + " " + df);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "4\n");

    r = cli("--json fairness " + al + " " + df);
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["fairness"] == 4);

    // The combined form prints one object holding both parts.
    r = cli("gen appendixG");
    REQUIRE(r.exit_code == 0);
    auto both = nlohmann::json::parse(r.out);
    CHECK(both.contains("alphabet"));
    CHECK(both["dfa"]["states"].size() == 2);
}

TEST_CASE("broken input files map to the I/O exit code") {
    auto d = work_dir();
    auto bad = d / "bad.json";
    write_file(bad, "{ not json");
    auto r = cli("validate " + bad.string() + " " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error:") != std::string::npos);

    r = cli("fairness " + (d / "does-not-exist.json").string() + " x.json");
    CHECK(r.exit_code == 2);
}

TEST_CASE("synthesis round trip: build, run, explore, compare") {
    auto d = work_dir();
    auto al = (d / "fig1-alphabet.json").string();
    auto df = (d / "fig1-dfa.json").string();
    REQUIRE(cli("gen fig1 --alphabet-out " + al + " --dfa-out " + df).exit_code == 0);

    auto aa = (d / "fig1-aa.json").string();
    auto r = cli("synthesize " + al + " " + df + " --k 3 -o " + aa);
    REQUIRE(r.exit_code == 0);
    auto payload = nlohmann::json::parse(slurp(aa));
    CHECK(payload["stats"]["global_states"].get<int>() > 0);
    CHECK(payload["stats"]["theorem_bound"].get<double>() > 0);
    CHECK(r.err.find("local states") != std::string::npos);

    r = cli("run " + aa + " abc");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ACCEPTED") == 0);
    r = cli("run " + aa + " ab");
    CHECK(r.out.find("REJECTED") == 0);
    r = cli("--json run " + aa + " ca");
    CHECK(nlohmann::json::parse(r.out)["enabled"] == false);

    // Seeded exploration is reproducible.
    auto e1 = cli("explore " + aa + " --steps 25 --seed 7");
    auto e2 = cli("explore " + aa + " --steps 25 --seed 7");
    CHECK(e1.exit_code == 0);
    CHECK(e1.out == e2.out);

    r = cli("equiv " + aa + " " + al + " " + df);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "EQUIVALENT\n");

    // Comparing against a different specification yields a counterexample.
    auto al3 = (d / "g-alphabet.json").string();
    auto df3 = (d / "g-dfa.json").string();
    REQUIRE(cli("gen appendixG --alphabet-out " + al3 + " --dfa-out " + df3).exit_code == 0);
    auto aag = (d / "g-aa.json").string();
    REQUIRE(cli("synthesize " + al3 + " " + df3 + " --mode unfair --k 1 -o " + aag).exit_code == 0);
    r = cli("equiv " + aag + " " + al3 + " " + df3);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("DIFFER") == 0);

    r = cli("semantics " + aag);
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out).contains("dfa"));
}

TEST_CASE("fair synthesis refuses a specification that is not fair enough") {
    auto d = work_dir();
    auto al = (d / "fig3-alphabet.json").string();
    auto df = (d / "fig3-dfa.json").string();
    REQUIRE(cli("gen fig3 --alphabet-out " + al + " --dfa-out " + df).exit_code == 0);
    auto r = cli("synthesize " + al + " " + df + " --k 3");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("not 3-fair") != std::string::npos);
    CHECK(r.err.find("dbd") != std::string::npos);
}

TEST_CASE("DOT export") {
    auto d = work_dir();
    auto al = (d / "fig1-alphabet.json").string();
    auto df = (d / "fig1-dfa.json").string();
    REQUIRE(cli("gen fig1 --alphabet-out " + al + " --dfa-out " + df).exit_code == 0);
    auto r = cli("dot --alphabet " + al + " --dfa " + df);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("digraph") != std::string::npos);

    auto aa = (d / "fig1-aa.json").string();
    REQUIRE(cli("synthesize " + al + " " + df + " --k 3 -o " + aa).exit_code == 0);
    r = cli("dot --aa " + aa);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("->") != std::string::npos);

    r = cli("dot");
    CHECK(r.exit_code == 1);
}

TEST_CASE("tree-of-bags synthesis through the interface") {
    auto d = work_dir();
    auto al = (d / "fig1-alphabet.json").string();
    auto df = (d / "fig1-dfa.json").string();
    REQUIRE(cli("gen fig1 --alphabet-out " + al + " --dfa-out " + df).exit_code == 0);
    auto arch = d / "fig1-arch.json";
    write_file(arch, R"({
        "bags": {"P1": ["p1"], "P2": ["p2"]},
        "outer": {"P1": "p1", "P2": "p2"},
        "parent": {"P2": "P1"}
    })");

    auto r = cli("fairness " + al + " " + df + " --arch " + arch.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("P1: 1") != std::string::npos);
    CHECK(r.out.find("P2: 1") != std::string::npos);

    auto aa = (d / "fig1-tree-aa.json").string();
    r = cli("synthesize " + al + " " + df + " --arch " + arch.string() + " -o " + aa);
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(slurp(aa))["stats"]["bag_fairness"]["P1"] == 1);
    r = cli("equiv " + aa + " " + al + " " + df);
    CHECK(r.exit_code == 0);
}
