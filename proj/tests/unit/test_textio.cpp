#include "galoiskit/textio.hpp"

#include <doctest.h>

#include <string>

using namespace gk;

namespace {
    std::string fixture(const char* name) { return std::string(GALOISKIT_FIXTURES) + "/" + name; }
}

TEST_CASE("the boolean fixture loads every kind of object") {
    Workspace ws;
    load_file(ws, fixture("boolean.gk"));
    CHECK(ws.operations.size() == 13);
    CHECK(ws.operation("MAJ").arity() == 3);
    CHECK(ws.operation_class("mono").size() == 9);
    CHECK(ws.operation_class("proj2") == projections_class(2, 2));
    CHECK(ws.constraint("eq2") == equality_constraint(2, 2, 2));
    CHECK(ws.cluster("ord").arity() == 4);
    CHECK(ws.scheme("exists_mid").vars() == std::vector<std::string>{"u"});
    CHECK(ws.constraint("mono").consequent() == Relation(2, 2, {{0, 0}, {0, 1}, {1, 1}}));
    CHECK_THROWS_AS(ws.operation("nope"), PreconditionError);
}

TEST_CASE("the linear fixture") {
    Workspace ws;
    load_file(ws, fixture("linear3.gk"));
    CHECK(ws.operation_class("lin3") == linear_class_fixture(3, 2, 3));
    CHECK(ws.operation("SUM3").arity() == 3);
}

TEST_CASE("single objects round-trip through their text forms") {
    const Operation maj(2, 3, {0, 0, 0, 1, 0, 1, 1, 1});
    Workspace ws = parse_workspace(std::string(format_header) + "\n" + format_operation("M", maj));
    CHECK(ws.operation("M") == maj);

    RepetitionFunction phi(2, 3, ExtNat::infinity());
    phi.set(Tuple{0, 2}, ExtNat(0));
    phi.set(Tuple{1, 1}, ExtNat(4));
    CHECK(parse_repetition_function("rf " + format_repetition_function(phi)) == phi);

    const FiniteMultiset s(2, {{0, 1}, {0, 1}, {1, 0}});
    CHECK(parse_multiset(format_multiset(s)) == s);

    const auto m = TupleMatrix::from_rows({{0, 1, 2}, {2, 2, 0}}, 3);
    CHECK(parse_matrix(format_matrix(m)) == m);

    const MinorScheme h(2, {"u", "v"}, {{SchemeEntry::coord(0), SchemeEntry::var(1)}, {SchemeEntry::var(0)}});
    CHECK(parse_scheme(format_scheme(h)) == h);
}

TEST_CASE("named objects round-trip through a workspace") {
    Workspace ws;
    load_file(ws, fixture("boolean.gk"));
    std::string text = std::string(format_header) + "\n";
    text += format_class("mono", ws.operation_class("mono"));
    text += format_constraint("c", ws.constraint("mono")) + "\n";
    text += format_cluster("ord", ws.cluster("ord")) + "\n";
    text += format_cluster("empty", empty_cluster(2, 2)) + "\n";
    Workspace back;
    parse_into(back, text, "<round-trip>", "mono");
    CHECK(back.operation_class("mono") == ws.operation_class("mono"));
    CHECK(back.constraint("c") == ws.constraint("mono"));
    CHECK(back.cluster("ord").generators() == ws.cluster("ord").generators());
    CHECK(back.cluster("empty").generators().empty());
}

TEST_CASE("parse errors carry the line number") {
    const std::string header = std::string(format_header) + "\n";
    auto message = [&](const std::string& body) -> std::string {
        try {
            parse_workspace(header + body, "t.gk");
        } catch (const ParseError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message("op A k=2 arity=2 : 0 1 1\nop B k=2 arity=1 : 0 1\n").find("t.gk:3") != std::string::npos);
    CHECK(message("\nop A k=2 arity=1 : 0 3\n").find("t.gk:3") != std::string::npos);
    CHECK(message("op A k=2 arity=1 : 0 1\nop A k=2 arity=1 : 1 0\n") != "");
    CHECK(message("frobnicate\n") != "");
    CHECK(message("class c : MISSING\n") != "");
    CHECK_THROWS_AS(parse_workspace("galois-kit v2\nop A k=2 arity=1 : 0 1\n"), ParseError);
    CHECK(parse_workspace("op A k=2 arity=1 : 0 1\n").operations.size() == 1);
    CHECK_THROWS_AS(parse_operation("k=2 arity=1 : 0"), ParseError);
}
