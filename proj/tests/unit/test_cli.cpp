#include "galoiskit/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {
    struct Run {
        int code;
        std::string out;
        std::string err;
    };

    Run run(std::vector<std::string> args) {
        args.insert(args.begin(), {"-i", std::string(GALOISKIT_FIXTURES) + "/boolean.gk"});
        std::ostringstream out, err;
        const int code = gk::run_cli(args, out, err);
        return {code, out.str(), err.str()};
    }

    bool has(const std::string& haystack, const std::string& needle) {
        return haystack.find(needle) != std::string::npos;
    }
}

TEST_CASE("satisfies reports verdicts through the exit status") {
    CHECK(run({"satisfies", "--fn", "AND", "--constraint", "mono"}).code == gk::exit_ok);
    const auto xor_ord = run({"satisfies", "--fn", "XOR", "--cluster", "ord"});
    CHECK(xor_ord.code == gk::exit_violated);
    CHECK(has(xor_ord.out, "output=(0,1,1,0)"));
    CHECK(run({"satisfies", "--fn", "NOT", "--constraint", "mono"}).code == gk::exit_violated);
    CHECK(run({"satisfies", "--fn", "XOR", "--cluster", "ord", "--breadth", "1"}).code == gk::exit_usage);
}

TEST_CASE("errors map to exit statuses") {
    CHECK(run({"satisfies", "--fn", "NOPE", "--constraint", "mono"}).code == gk::exit_usage);
    CHECK(run({"verify", "bogus"}).code == gk::exit_usage);
    CHECK(run({"frobnicate"}).code == gk::exit_usage);
    CHECK(run({"--budget", "10", "pol", "--clusters", "ord"}).code == gk::exit_budget);
    std::ostringstream out, err;
    CHECK(gk::run_cli({"satisfies", "--fn", "AND", "--constraint", "mono", "-i", "/nonexistent.gk"}, out, err) ==
          gk::exit_usage);
}

TEST_CASE("pol and close print classes in the text format") {
    const auto pol = run({"pol", "--clusters", "ord", "--name", "ordpol"});
    CHECK(pol.code == gk::exit_ok);
    CHECK(has(pol.out, "galois-kit v1"));
    CHECK(has(pol.out, "18 members"));
    const auto close = run({"close", "--class", "notclass", "--ops", "composition", "--cap", "1"});
    CHECK(close.code == gk::exit_ok);
    CHECK(has(close.out, "2 members"));
}

TEST_CASE("separate emits a verified separator or reports none") {
    const auto sep = run({"separate", "--class", "mono", "--fn", "NOT", "--kind", "constraint"});
    CHECK(sep.code == gk::exit_ok);
    CHECK(has(sep.out, "constraint "));
    CHECK(has(sep.out, "# verified"));
    const auto none = run({"separate", "--class", "proj2", "--fn", "P21", "--kind", "cluster"});
    CHECK(none.code == gk::exit_violated);
    CHECK(has(none.out, "# no-separator"));
}

TEST_CASE("json-lines output is one object per line") {
    const auto r = run({"--format", "json-lines", "satisfies", "--fn", "XOR", "--cluster", "ord"});
    CHECK(r.code == gk::exit_violated);
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
        ++count;
    }
    CHECK(count >= 1);
}

TEST_CASE("verify runs a named suite") {
    const auto r = run({"verify", "malcev"});
    CHECK(r.code == gk::exit_ok);
    CHECK(has(r.out, "PASS"));
}

TEST_CASE("identical invocations give byte-identical output") {
    const std::vector<std::string> args = {"inv", "--class", "proj2", "--kind", "cluster", "--cap", "2", "--breadth", "4"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == gk::exit_ok);
    CHECK(a.out == b.out);
    CHECK(has(a.out, "cluster proj2_inv_2 arity=4"));
    CHECK(run({"verify", "minors"}).out == run({"verify", "minors"}).out);
}

TEST_CASE("a printed witness reproduces the violation when fed back") {
    const std::string path = "galoiskit_cli_witness.gk";
    for (const auto& [kind, name] : {std::pair{"--cluster", "ord"}, std::pair{"--constraint", "mono"}}) {
        const auto first = run({"satisfies", "--fn", "XOR", kind, name});
        REQUIRE(first.code == gk::exit_violated);
        {
            std::ofstream f(path);
            f << first.out;
        }
        std::vector<std::string> again = {"-i", path, "satisfies", "--fn", "XOR", kind, name, "--matrix", "witness"};
        if (std::string(kind) == "--cluster") {
            again.push_back("--rest");
            again.push_back("rest");
        }
        const auto second = run(again);
        CHECK(second.code == gk::exit_violated);
        const auto and_check = run({"-i", path, "satisfies", "--fn", "AND", kind, name, "--matrix", "witness"});
        CHECK(and_check.code == gk::exit_ok);
    }
    std::remove(path.c_str());
}

TEST_CASE("close and inv write loadable files") {
    const auto closed = run({"close", "--class", "mono", "--ops", "zeta,tau,nabla", "--cap", "3"});
    CHECK(closed.code == gk::exit_ok);
    CHECK(has(closed.out, "op mono_closed_1_0"));
    const auto inv = run({"inv", "--class", "mono", "--kind", "constraint", "--cap", "2", "--rows", "3"});
    CHECK(inv.code == gk::exit_ok);
    const std::string path = "galoiskit_cli_inv.gk";
    {
        std::ofstream f(path);
        f << inv.out;
    }
    std::ostringstream out, err;
    CHECK(gk::run_cli({"-i", path, "pol", "--constraints", "mono_inv_0", "--k", "2"}, out, err) == gk::exit_ok);
    std::remove(path.c_str());
}
