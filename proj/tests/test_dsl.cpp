#include <doctest.h>

#include <filesystem>

#include "solnscope/dsl.hpp"
#include "solnscope/errors.hpp"
#include "solnscope/specfile.hpp"
#include "support.hpp"

using namespace solnscope;

namespace {

int parse_error_column(const std::string& text, std::size_t n) {
    try {
        parse_function(text, n);
    } catch (const ParseError& e) {
        return e.column();
    }
    return -1;
}

}  // namespace

TEST_SUITE("dsl") {

TEST_CASE("atoms parse into the catalog") {
    FuncExpr h = parse_function("hinge(x1)", 2);
    REQUIRE(h.terms.size() == 1);
    CHECK(h.terms[0].kind == Atom::Hinge);
    CHECK(h.terms[0].w == QVec{1, 0});

    FuncExpr a = parse_function("hinge(abs(x1) - 1)", 2);
    REQUIRE(a.terms.size() == 1);
    CHECK(a.terms[0].kind == Atom::HingeAbs);
    CHECK(a.terms[0].c == 1);

    FuncExpr w = parse_function("3/2*exp(2*x1 - x2 + 1) + lin(1,-1)", 2);
    REQUIRE(w.terms.size() == 1);
    CHECK(w.terms[0].lambda == Q(3, 2));
    CHECK(w.terms[0].w == QVec{2, -1});
    CHECK(w.terms[0].c == 1);
    CHECK(w.lin == QVec{1, -1});

    FuncExpr n1 = parse_function("norm1()", 4);
    CHECK(n1.norm1);
    CHECK(n1.terms.size() == 4);
}

TEST_CASE("canonical text is a fixed point") {
    for (const char* s : {"hinge(x1)", "hinge(abs(x1) - 1)", "exp(x1)", "neglog(x1)", "hinge_expdiff(x1,x2)", "norm1()",
                          "lin(1,0)", "2*abs(x1) + hinge(x1 - 1/2*x2 + 3)", "quadshift(x2,-1) + ind_hyperbola(x1,x2)"}) {
        std::string once = to_dsl(parse_function(s, 2));
        CHECK(to_dsl(parse_function(once, 2)) == once);
    }
}

TEST_CASE("error positions") {
    try {
        parse_function("hinge(x1", 2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 6);
        CHECK(std::string(e.what()).find("unclosed") != std::string::npos);
    }
    CHECK(parse_error_column("abs(x1) +", 2) == 10);
    CHECK(parse_error_column("exp(x1) exp(x2)", 2) == 9);
    CHECK_THROWS_AS(parse_function("hinge(x3)", 2), DimensionError);
    CHECK_THROWS_AS(parse_function("lin(1,2,3)", 2), DimensionError);
    CHECK_THROWS_AS(parse_function("softplus(x1)", 2), UnknownAtom);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK(parse_rational("-6/4") == Q(-3, 2));
}

TEST_CASE("spec files") {
    ProblemSpec s = parse_spec("kind = regularized\nfunction = hinge(x1)\nA = [[0,1]]\nb = [1]\n");
    CHECK(s.kind == ProblemKind::Regularized);
    CHECK(s.A == QMat{{0, 1}});
    CHECK(s.b == QVec{1});
    CHECK(s.f.terms.size() == 1);

    ProblemSpec c = parse_spec("# comment\nkind = constrained\nfunction = neglog(x1)\nA = [[1]]\nb = [0]\nchecks = existence, uniqueness\n");
    CHECK(c.kind == ProblemKind::Constrained);
    CHECK(c.checks == std::vector<std::string>{"existence", "uniqueness"});
}

TEST_CASE("spec errors carry positions") {
    try {
        parse_spec("kind = regularized\nfunction = hinge(x1\nA = [[0,1]]\nb = [1]\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 17);  // the '(' after "function = hinge"
    }
    CHECK_THROWS_AS(parse_spec("kind = regularized\nfunction = hinge(x1)\nA = [[0,1],[1]]\nb = [1]\n"), DimensionError);
    CHECK_THROWS_AS(parse_spec("kind = regularized\nfunction = hinge(x1)\nA = [[0,1]]\nb = [1,2]\n"), DimensionError);
    CHECK_THROWS_AS(parse_spec("kind = regularized\nfunction = hinge(x1)\nA = [[0,1]]\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("kind = other\nfunction = hinge(x1)\nA = [[0,1]]\nb = [1]\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("kind = regularized\nkind = regularized\nfunction = hinge(x1)\nA = [[0,1]]\nb = [1]\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("kind = regularized\nfunction = hinge(x1)\nA = [[0,1]]\nb = [1]\nchecks = speed\n"), ParseError);
    CHECK_THROWS_AS(parse_spec("kind = regularized\nfunction = wobble(x1)\nA = [[0,1]]\nb = [1]\n"), UnknownAtom);
}

TEST_CASE("render and parse round-trip byte-identically") {
    for (const auto& entry : std::filesystem::directory_iterator(testing::source_path("specs"))) {
        ProblemSpec s = parse_spec(testing::read_file(entry.path().string()));
        std::string once = render_spec(s);
        CHECK(render_spec(parse_spec(once)) == once);
    }
    testing::Rng R(81);
    const std::vector<std::string> atoms{"abs(x%)", "exp(x% - 1)", "hinge(2*x% + 1/3)", "quadshift(x%,2)", "neglog(x% + 4)"};
    for (int t = 0; t < 50; ++t) {
        std::size_t n = R.integer(1, 4), m = R.integer(1, 3);
        std::string fn;
        for (std::size_t k = 0; k < n; ++k) {
            std::string a = atoms[R.integer(0, atoms.size() - 1)];
            a.replace(a.find('%'), 1, std::to_string(k + 1));
            fn += (k ? " + " : "") + (R.coin() ? qstr(R.rational(1, 3, 2)) + "*" : std::string()) + a;
        }
        ProblemSpec s;
        s.kind = R.coin() ? ProblemKind::Regularized : ProblemKind::Constrained;
        s.f = parse_function(fn, n);
        s.function = to_dsl(s.f);
        s.A = R.mat(m, n, -5, 5);
        for (std::size_t i = 0; i < m; ++i) s.A(i, 0) = R.rational(-3, 3, 4);
        s.b = R.vec(m, -3, 3, 5);
        std::string once = render_spec(s);
        CHECK(render_spec(parse_spec(once)) == once);
    }
}

}
