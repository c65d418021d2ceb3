#include <doctest.h>

#include <string>

#include "test_support.hpp"
#include "trieig/problem_io.hpp"

using namespace trieig;

TEST_CASE("JSON problem parsing") {
    const std::string text = R"({
        "n": 2,
        "a": [[1, 2], [3, 4]],
        "b": [[-1, 1]],
        "name": "demo"
    })";
    const ProblemFile p = parse_problem_json(text, "demo.json");
    CHECK(p.matrix.order() == 2);
    CHECK(p.matrix.diag(0) == Interval(1, 2));
    CHECK(p.matrix.off(0) == Interval(-1, 1));
    CHECK(p.name == "demo");
}

TEST_CASE("JSON parse errors carry location information") {
    CHECK_THROWS_WITH_AS(parse_problem_json("{\"n\": 2,\n  garbage", "bad.json"),
                         doctest::Contains("line 2"), ParseError);

    SUBCASE("lo > hi is rejected with the offending field") {
        const std::string text = R"({"n": 2, "a": [[2, 1], [0, 1]], "b": [[0, 0]]})";
        CHECK_THROWS_WITH_AS(parse_problem_json(text, "bad.json"), doctest::Contains("a[0]"), ParseError);
    }
    SUBCASE("length mismatch is rejected") {
        const std::string text = R"({"n": 3, "a": [[0, 1], [0, 1]], "b": [[0, 0], [0, 0]]})";
        CHECK_THROWS_AS(parse_problem_json(text, "bad.json"), ParseError);
    }
    SUBCASE("non-finite endpoints are rejected") {
        const std::string text = R"({"n": 1, "a": [[1e999, 1e999]], "b": []})";
        CHECK_THROWS_AS(parse_problem_json(text, "bad.json"), ParseError);
    }
}

TEST_CASE("CSV problem parsing") {
    const std::string text =
        "a_lo,a_hi,b_lo,b_hi\n"
        "2975,3025,-2015,-1985\n"
        "4965,5035,-3020,-2980\n"
        "6955,7045,-4025,-3975\n"
        "8945,9055\n";
    const ProblemFile p = parse_problem_csv(text, "demo.csv");
    CHECK(p.matrix == testsupport::example4x4_original());
}

TEST_CASE("CSV rejects malformed rows with line numbers") {
    CHECK_THROWS_WITH_AS(parse_problem_csv("1,2,3,4\n5,6,oops,8\n9,10\n", "bad.csv"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_problem_csv("1,2,3,4\n", "bad.csv"), ParseError);  // final row carries b
    CHECK_THROWS_AS(parse_problem_csv("", "bad.csv"), ParseError);
    CHECK_THROWS_AS(parse_problem_csv("3,1,0,0\n1,2\n", "bad.csv"), ParseError);  // a_lo > a_hi
}

TEST_CASE("problem JSON round-trip") {
    ProblemFile p;
    p.matrix = testsupport::example4x4_original();
    p.name = "roundtrip";
    const ProblemFile q = parse_problem_json(problem_to_json(p), "mem.json");
    CHECK(q.matrix == p.matrix);
    CHECK(q.name == p.name);
}

TEST_CASE("directed formatting floors lower and ceils upper endpoints") {
    CHECK(format_directed(842.925097, 4, false) == "842.9250");
    CHECK(format_directed(967.108237, 4, true) == "967.1083");
    CHECK(format_directed(12720.227272, 4, true) == "12720.2273");
    CHECK(format_directed(12560.837715, 4, false) == "12560.8377");
    CHECK(format_directed(-1.00005, 4, false) == "-1.0001");
    CHECK(format_directed(-1.00005, 4, true) == "-1.0000");
    CHECK(format_directed(2.0, 4, true) == "2.0000");
    CHECK(format_directed(2.0, 4, false) == "2.0000");
}
