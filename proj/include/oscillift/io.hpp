#pragma once

#include "oscillift/lift_solver.hpp"
#include "oscillift/recurrence.hpp"
#include "oscillift/verification.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oscillift {

struct Tolerances {
    double zero = 1e-10;
    double residual = 1e-9;
    double case_routing = 1e-9;
};

struct CaseRequest {
    std::optional<CaseTag> tag;  // empty means every case
    Grids grids;
    bool paper_literal = false;
};

struct RunConfig {
    Family<Rational> family;
    CaseRequest request;
    std::size_t truncation_dim = 64;
    Tolerances tolerances;
};

Rational parse_number(const nlohmann::json& j);
Family<Rational> parse_family(const nlohmann::json& j);
nlohmann::json family_to_json(const Family<Rational>& f);
nlohmann::json family_to_json(const Family<HighFloat>& f);

// Accepts either {"family": ..., "request": ...} or a bare family object.
RunConfig parse_config(const nlohmann::json& j);

// "a:b:step", inclusive of b when it lies on the lattice.
std::vector<Rational> parse_grid(const std::string& spec);

// A solved lift in working precision, with exact values when they exist.
struct SolutionRecord {
    std::string id;
    LiftSolution<HighFloat> value;
    std::optional<LiftSolution<Rational>> exact;
    bool exact_conflict = false;  // exact and decimal fields describe different lifts
};

struct SolutionSet {
    Family<Rational> family;
    bool paper_literal = false;
    std::vector<SolutionRecord> solutions;
    std::vector<std::string> notes;
};

nlohmann::json solution_set_to_json(const SolutionSet& s);
SolutionSet parse_solution_set(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& r);

}  // namespace oscillift
