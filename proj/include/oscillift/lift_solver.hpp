#pragma once

#include "oscillift/polynomial.hpp"
#include "oscillift/recurrence.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace oscillift {

enum class CaseTag { I, II, III, IV, V, VI, VII, VIII };

std::string to_string(CaseTag tag);
CaseTag parse_case_tag(const std::string& text);

// Family routed to a solver whose preconditions it does not meet.
class WrongCase : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <class T>
struct StructuralConstants {
    T s1{};
    std::optional<T> s2, s3;  // absent when beta_3 == beta_1
    std::optional<T> w;       // w for III/IV, w_lambda for V..VIII
    std::optional<T> lambda;  // V/VI
    std::optional<T> theta;   // VII/VIII, when known
    std::optional<T> ratio;   // a2 / a1^2
    std::optional<T> C;       // C or D quantity of the case
};

template <class T>
struct LiftSolution {
    CaseTag tag = CaseTag::I;
    T a1{}, a2{};
    std::array<T, 3> beta_tilde{};
    Family<T> q_family;
    StructuralConstants<T> constants;
    bool admissible = false;
    std::string reason;  // why not admissible; empty otherwise
    // beta~0 beta~1 - (beta0 beta1 - a1 beta0 + a2 (beta0 (beta3-beta1) + gamma1) / gamma3)
    T head_defect{};
};

struct SolverOptions {
    // Use the literal closed forms instead of the corrected ones.
    bool paper_literal = false;
};

template <class T>
StructuralConstants<T> structural_constants(const Family<T>& P);

// gamma3 + a1 (beta2 - beta3) != 0
template <class T>
bool admissibility_check(const Family<T>& P, const T& a1);

template <class T>
LiftSolution<T> solve_case_I(const Family<T>& P, const SolverOptions& opt = {});
template <class T>
LiftSolution<T> solve_case_II(const Family<T>& P, const SolverOptions& opt = {});
template <class T>
std::vector<LiftSolution<T>> solve_case_III(const Family<T>& P, const SolverOptions& opt = {});
template <class T>
std::vector<LiftSolution<T>> solve_case_IV(const Family<T>& P, const SolverOptions& opt = {});
template <class T>
std::vector<LiftSolution<T>> solve_case_V(const Family<T>& P, const T& lambda, const SolverOptions& opt = {});
template <class T>
std::vector<LiftSolution<T>> solve_case_VI(const Family<T>& P, const T& lambda, const SolverOptions& opt = {});
// theta in (0, pi); not available for Rational since cos is transcendental
template <class T>
std::vector<LiftSolution<T>> solve_case_VII_VIII(const Family<T>& P, const T& theta, const SolverOptions& opt = {});

// Cases III..VIII parameterised directly by c = a2/a1^2. The tag picks the
// literal formula variant in literal mode and labels the result.
template <class T>
std::vector<LiftSolution<T>> solve_with_ratio(const Family<T>& P, const T& c, CaseTag tag,
                                              const SolverOptions& opt = {});

// Defining polynomial for w in cases III/V/VII, ascending, with L = 1/c.
// The corrected one is a cubic; the two literal ones are quartics.
template <class T>
Poly<T> defining_polynomial(const Family<T>& P, const T& L);
template <class T>
Poly<T> literal_case_III_quartic(const Family<T>& P);
template <class T>
Poly<T> literal_lambda_quartic(const Family<T>& P, const T& L);

struct Grids {
    std::vector<Rational> lambdas;
    std::vector<Rational> thetas;
};

// Admissible solutions of every case applicable to P, ordered by case tag,
// then grid value, then w. For Rational the theta grid is skipped.
template <class T>
std::vector<LiftSolution<T>> enumerate_solutions(const Family<T>& P, const Grids& grids,
                                                 const SolverOptions& opt = {});

// Every candidate, admissible or not, for a single requested case.
template <class T>
std::vector<LiftSolution<T>> solve_requested(const Family<T>& P, CaseTag tag, const Grids& grids,
                                             const SolverOptions& opt = {});

enum class Branch { i, ii, iii, iv };
std::string to_string(Branch b);

struct Classification {
    Branch branch = Branch::i;
    HighFloat parameter{0};  // lambda for iii, theta for iv
};

template <class T>
Classification classify_branch(const T& a1, const T& a2);

template <class T>
T ratio_from_lambda(const T& lambda) {
    return lambda / ((1 + lambda) * (1 + lambda));
}

}  // namespace oscillift
