#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "bgossip/cli.hpp"

using namespace bgossip;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("bgossip_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("classes") {
    const auto paw = temp_file("paw.edges", "1 2\n2 3\n3 1\n3 4\n");
    const auto r = cli({"classes", "--graph", paw});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "chi=3 (predicted) chi=3 (brute force) MATCH"));
    CHECK(contains(r.out, "shape=odd-cycle"));

    const auto other = cli({"classes", "--graph", "make:line:3", "--rules", "2,3"});
    CHECK(other.code == 0);
    CHECK(contains(other.out, "(brute force)"));
}

TEST_CASE("absorbing") {
    const auto r = cli({"absorbing", "--graph", "make:cycle:4", "--rules", "2,B"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "ABSORBING (bipartiteness rule: no odd cycle); brute force agrees"));
    CHECK(contains(r.out, "absorbing_states=2"));

    const auto odd = cli({"absorbing", "--graph", "make:cycle:5", "--rules", "2,B"});
    CHECK(contains(odd.out, "NOT ABSORBING (bipartiteness rule: odd cycle present)"));

    const auto none = cli({"absorbing", "--graph", "make:line:3", "--rules", "8"});
    CHECK(contains(none.out, "neither consensus state is absorbing"));
}

TEST_CASE("absorption probabilities") {
    const auto r = cli({"absorb-prob", "--graph", "make:line:2", "--rules", "7,1", "--probs", "0.3,0.7", "--start",
                        "01"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "11,0.1551724137931"));
    const auto at = r.out.find("# total=");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(r.out.substr(at + 8)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(cli({"absorb-prob", "--graph", "make:line:2", "--start", "00"}).code == 2);
    CHECK(cli({"absorb-prob", "--graph", "make:line:2", "--rules", "8", "--start", "01"}).code == 2);
}

TEST_CASE("simulate") {
    const auto r = cli({"simulate", "--graph", "make:complete:6", "--rules", "1,7", "--horizon", "60", "--rounds",
                        "20", "--seed", "3", "--overlay"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,density,kind\n", 0) == 0);
    CHECK(contains(r.out, "empirical"));
    CHECK(contains(r.out, "meanfield_closed"));
    CHECK(contains(r.err, "seed=3"));
    CHECK(cli({"simulate", "--graph", "make:complete:6", "--horizon", "60", "--rounds", "20", "--seed", "3",
               "--overlay"})
              .out == r.out);

    const auto csv = std::filesystem::temp_directory_path() / "bgossip_test_sim.csv";
    const auto to_file = cli({"simulate", "--graph", "make:line:4", "--horizon", "40", "--seed", "1", "--out",
                              csv.string()});
    CHECK(to_file.code == 0);
    CHECK(contains(to_file.out, "seed=1"));
    CHECK(std::filesystem::file_size(csv) > 0);

    const auto unseeded = cli({"simulate", "--graph", "make:line:4", "--horizon", "5"});
    CHECK(contains(unseeded.err, "seed="));
}

TEST_CASE("meanfield") {
    const auto r = cli({"meanfield", "--p-star", "0.49", "--n", "100", "--horizon", "1000", "--every", "100",
                        "--recursion"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "0,0.5,meanfield_closed"));
    CHECK(contains(r.out, "meanfield_recursion"));
    CHECK(cli({"meanfield", "--n", "100", "--horizon", "10"}).code == 2);
}

TEST_CASE("sweep and exports") {
    const auto sweep = cli({"sweep-rules", "--graph", "make:line:2"});
    CHECK(contains(sweep.out, "rule_sets=65535"));
    CHECK(contains(sweep.out, "\"2,B\",1,1,1,2"));

    const auto dot = cli({"export-dot", "--graph", "make:line:3"});
    CHECK(dot.code == 0);
    CHECK(contains(dot.out, "1 -- 2"));
    const auto chain = cli({"export-dot", "--graph", "make:line:2", "--chain"});
    CHECK(contains(chain.out, "digraph"));
    const auto rows = cli({"transitions", "--graph", "make:line:2", "--rules", "1"});
    CHECK(contains(rows.out, "01,00,1"));
}

TEST_CASE("input errors") {
    CHECK(cli({"classes"}).code == 2);
    CHECK(cli({"classes", "--graph", "make:hexagon:4"}).code == 2);
    CHECK(cli({"classes", "--graph", "/nonexistent/graph.edges"}).code == 2);
    CHECK(cli({"classes", "--graph", temp_file("bad.edges", "1 2\n2 z\n")}).code == 2);
    CHECK(cli({"classes", "--graph", temp_file("split.edges", "1 2\n3 4\n")}).code == 2);
    CHECK(cli({"classes", "--graph", "make:line:3", "--rules", "Q"}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("installed binary") {
    const std::string cmd = std::string(BGOSSIP_CLI_PATH) + " absorbing --graph make:cycle:3 --rules 2,B > /dev/null";
    const int status = std::system(cmd.c_str());
    CHECK(status == 0);
    const std::string bad = std::string(BGOSSIP_CLI_PATH) + " classes --graph make:nope:3 2> /dev/null";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);
}
