#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args) {
    std::string cmd = std::string(SHARING_CLI) + " " + args + " 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

bool has(const std::string &hay, const std::string &needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("analyze reports and exit codes") {
    Run a = run("analyze --f '1/z+exp(z)' --g '1/z+exp(z)/z' --alpha '1/z' --region -2,2,-2,2 --sense value --weight inf");
    CHECK(a.code == 1);
    CHECK(has(a.out, "status: fails at 0"));

    Run b = run("analyze --f z --g z --alpha 'sin(z)' --region -4,4,-1,1 --sense vanishing --weight 0");
    CHECK(b.code == 0);
    CHECK(has(b.out, "status: shares"));

    Run c = run("analyze --f 'sin(z)+sin(z)*exp(z^2)' --g 'sin(z)+sin(z)^2*exp(z^2)' --alpha 'sin(z)' "
                "--region -7,7,-1,1 --sense value --weight 0 --transfer");
    CHECK(c.code == 1);
    CHECK(has(c.out, "status: shares"));
    CHECK(has(c.out, "transfer value/0: transfer_fails -2*pi -pi 0 pi 2*pi"));

    Run d = run("analyze --f 'z+z^2*exp(z)' --g 'z+z^3*exp(z)' --alpha z --sense value --weight 0 --mobius 0,1,1,0");
    CHECK(d.code == 0);
    CHECK(has(d.out, ": consistent"));
}

TEST_CASE("usage errors exit with 3") {
    CHECK(run("analyze --f 'exp(z' --g z --alpha z").code == 3);
    CHECK(has(run("analyze --f 'exp(z' --g z --alpha z").out, "offset 5"));
    CHECK(run("analyze --f z --g z --alpha z --weight -1").code == 3);
    CHECK(run("analyze --f z --g z --alpha 1 --region 1,0,0,1").code == 3);
    CHECK(run("analyze --f z --g z --alpha 1 --sense sideways").code == 3);
    CHECK(run("analyze --f z --g z --alpha 1 --mobius 1,2,2,4").code == 3);
    CHECK(run("analyze --f z --g z").code == 3);
    CHECK(run("").code == 3);
    CHECK(run("analyze --help").code == 0);
}

TEST_CASE("undecided exits with 2") {
    Run u = run("analyze --f '1/z + (sin(pi/4) - cos(pi/4))/z^2' --g '2/z' --alpha '1/z' --region -1,1,-1,1");
    CHECK(u.code == 2);
    CHECK(has(u.out, "cannot be distinguished from zero"));
}

TEST_CASE("json output is deterministic") {
    std::string args = "analyze --f '1/z+exp(z)' --g '1/z+z*exp(z)' --alpha '1/z' --sense value --weight 1 --transfer --json ";
    // shares at weight 1, but the quotients do not share 1 at weight 1
    CHECK(run(args + "cli_a.json").code == 1);
    CHECK(run(args + "cli_b.json").code == 1);
    std::string a = slurp("cli_a.json"), b = slurp("cli_b.json");
    CHECK_FALSE(a.empty());
    CHECK(a == b);
    CHECK(has(a, "\"weight\": \"1\""));
    CHECK(has(a, "\"status\": \"shares\""));
    CHECK(has(a, "\"outcome\": \"transfer_fails\""));
}

TEST_CASE("corpus run") {
    Run r = run("corpus");
    CHECK(r.code == 0);
    CHECK_FALSE(has(r.out, "FAIL"));
    CHECK_FALSE(has(r.out, "UNDECIDED"));
    for (int k = 1; k <= 11; ++k) CHECK(has(r.out, "Example " + std::to_string(k) + " "));
}
