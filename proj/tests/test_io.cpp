#include "doctest.h"
#include "generators.hpp"

#include "oscillift/io.hpp"

using namespace oscillift;
using nlohmann::json;

TEST_CASE("number parsing is exact") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("0.0125") == Rational(1, 80));
    CHECK(parse_rational("1.5e2") == Rational(150));
    CHECK(parse_rational("25E-2") == Rational(1, 4));
    CHECK(parse_rational(" 7 ") == Rational(7));
    CHECK(parse_rational("1/-2") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("2x"), InputError);

    CHECK(parse_number(json(5)) == Rational(5));
    CHECK(parse_number(json("5/3")) == Rational(5, 3));
    // a float is taken at its binary value
    CHECK(parse_number(json(0.5)) == Rational(1, 2));
    CHECK_THROWS_AS(parse_number(json::array()), InputError);
}

TEST_CASE("family parsing") {
    auto f = parse_family(json::parse(R"({"k": 2, "beta": [0, "1/2", 1, 2], "gamma": [1, 2, "3/2"]})"));
    CHECK(f.beta_at(1) == Rational(1, 2));
    CHECK(f.gamma_at(3) == Rational(3, 2));
    CHECK(f.head == 2);
    CHECK_THROWS_AS(parse_family(json::parse(R"({"k": 2, "beta": [0, 0, 0, 0], "gamma": [1, 1, 1], "x": 1})")),
                    InputError);
    CHECK_THROWS_AS(parse_family(json::parse(R"({"k": 2, "beta": [0, 0, 0], "gamma": [1, 1, 1]})")), InputError);
    CHECK_THROWS_AS(parse_family(json::parse(R"({"k": 2, "beta": [0, 0, 0, 0], "gamma": [1, -1, 1]})")), InputError);
    auto q = parse_family(
        json::parse(R"({"k": 2, "beta": [0, 0, 0, 0], "gamma": [1, -1, 1], "definiteness": "quasi"})"));
    CHECK(q.definiteness == Definiteness::quasi);
    CHECK_THROWS_AS(parse_family(json::parse(R"({"k": 2, "beta_head": 1, "beta": [0, 0, 0], "gamma": [1, 1, 1]})")),
                    InputError);
}

TEST_CASE("a longer head survives a round trip") {
    auto f = with_beta_head<Rational>(gen::family(0, 1, 2, 3, 1, 2, 3), {Rational(4), Rational(5), Rational(6)});
    json j = family_to_json(f);
    CHECK(j.at("beta_head") == 3);
    auto g = parse_family(j);
    CHECK(g.head == 3);
    for (std::size_t n = 0; n < 8; ++n) CHECK(g.beta_at(n) == f.beta_at(n));
    CHECK_FALSE(family_to_json(gen::family(0, 1, 2, 3, 1, 2, 3)).contains("beta_head"));
}

TEST_CASE("grids") {
    auto g = parse_grid("-1/2:1/2:1/4");
    REQUIRE(g.size() == 5);
    CHECK(g[0] == Rational(-1, 2));
    CHECK(g[2] == 0);
    CHECK(g[4] == Rational(1, 2));
    // exact stepping: 0.1 * 10 lands on 1
    CHECK(parse_grid("0:1:0.1").size() == 11);
    CHECK(parse_grid("3/7") == std::vector<Rational>{Rational(3, 7)});
    CHECK_THROWS_AS(parse_grid("0:1"), InputError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), InputError);
    CHECK_THROWS_AS(parse_grid("1:0:1"), InputError);
}

TEST_CASE("config parsing") {
    auto c = parse_config(json::parse(R"({
        "family": {"k": 2, "beta": [0, 0, 1, 0], "gamma": [1, 2, 1]},
        "request": {"case": "V", "lambda": "0:1/2:1/4", "theta": [1, 2]},
        "truncation_dim": 12,
        "tolerances": {"zero": 1e-12}
    })"));
    REQUIRE(c.request.tag);
    CHECK(*c.request.tag == CaseTag::V);
    CHECK(c.request.grids.lambdas.size() == 3);
    CHECK(c.request.grids.thetas.size() == 2);
    CHECK(c.truncation_dim == 12);
    CHECK(c.tolerances.zero == 1e-12);

    auto bare = parse_config(json::parse(R"({"k": 2, "beta": [0, 0, 1, 0], "gamma": [1, 2, 1]})"));
    CHECK_FALSE(bare.request.tag);

    CHECK_THROWS_AS(parse_config(json::parse(R"({"family": {"k": 2, "beta": [0, 0, 1, 0], "gamma": [1, 2, 1]},
                                                 "request": {"case": "IX"}})")),
                    InputError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"family": {"k": 2, "beta": [0, 0, 1, 0], "gamma": [1, 2, 1]},
                                                 "request": {"mode": 1}})")),
                    InputError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"family": {"k": 2, "beta": [0, 0, 1, 0], "gamma": [1, 2, 1]},
                                                 "tolerances": {"zero": -1}})")),
                    InputError);
    CHECK_THROWS_AS(parse_config(json::parse("[1, 2]")), InputError);
}

namespace {

SolutionSet case_two_set() {
    SolutionSet set;
    set.family = gen::family(0, 0, 1, 0, 1, 2, 1);
    SolutionRecord rec;
    rec.id = "II-0";
    rec.exact = solve_case_II(set.family);
    rec.value = solve_case_II(family_cast<HighFloat>(set.family));
    set.solutions.push_back(rec);
    set.notes.push_back("a note");
    return set;
}

}  // namespace

TEST_CASE("solution sets round trip") {
    auto set = case_two_set();
    json j = solution_set_to_json(set);
    auto back = parse_solution_set(j);
    CHECK(back.notes.empty());  // notes are informational and not read back
    REQUIRE(back.solutions.size() == 1);
    const auto& r = back.solutions[0];
    CHECK(r.id == "II-0");
    CHECK(r.value.tag == CaseTag::II);
    CHECK(r.value.a2 == HighFloat(-4));
    REQUIRE(r.exact);
    CHECK(r.exact->beta_tilde == std::array<Rational, 3>{-2, 2, 1});
    CHECK_FALSE(r.exact_conflict);
    CHECK(r.value.q_family.head == 3);
    j.erase("notes");
    CHECK(solution_set_to_json(back).dump() == j.dump());
}

TEST_CASE("a hand-edited decimal field conflicts with the exact record") {
    json j = solution_set_to_json(case_two_set());
    j["solutions"][0]["a2"] = "-3.5";
    auto back = parse_solution_set(j);
    CHECK(back.solutions[0].exact_conflict);

    json k = solution_set_to_json(case_two_set());
    k["solutions"][0].erase("beta_tilde");
    CHECK_THROWS_AS(parse_solution_set(k), InputError);
    k = solution_set_to_json(case_two_set());
    k["solutions"][0]["q_family"]["beta"] = json::array({0, 0});
    CHECK_THROWS_AS(parse_solution_set(k), InputError);
    CHECK_THROWS_AS(parse_solution_set(json::object()), InputError);
}

TEST_CASE("report serialization") {
    VerificationReport r;
    r.solution_id = "I-0";
    r.passed = false;
    r.oracle_first_bad_degree = 2;
    r.reasons = {"nope"};
    json j = report_to_json(r);
    CHECK(j.at("verdict") == "fail");
    CHECK(j.at("oracle_first_bad_degree") == 2);
    CHECK(j.at("reasons").size() == 1);
}
