#pragma once

#include "oscillift/lift_solver.hpp"
#include "oscillift/recurrence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oscillift {

template <class T>
struct OracleStep {
    std::size_t n = 0;
    T beta{}, gamma{};  // derived beta~_n, gamma~_n (gamma~_0 unused)
    bool beta_match = true, gamma_match = true;
};

template <class T>
struct OracleResult {
    bool remainder_zero = true;   // Q obeys some three-term recurrence through n_max
    bool matches = true;          // and that recurrence is the candidate's
    std::optional<std::size_t> first_bad_degree;
    std::string failure;
    std::vector<OracleStep<T>> steps;
    bool ok() const { return remainder_zero && matches; }
};

// Builds Q_0 = 1, Q_1, Q_2 from the candidate head (beta~0, beta~1, gamma1)
// and Q_n = P_n + a1 P_{n-1} + a2 P_{n-2} for n >= 3, then peels
// x Q_n - Q_{n+1} = beta~_n Q_n + gamma~_n Q_{n-1} for n = 0..n_max-1.
// Rational is exact; floating types compare with the working tolerance.
template <class T>
OracleResult<T> recurrence_oracle(const Family<T>& P, const T& a1, const T& a2, const Family<T>& q_candidate,
                                  std::size_t n_max);

inline OracleResult<Rational> exact_recurrence_oracle(const Family<Rational>& P, const Rational& a1,
                                                      const Rational& a2, const Family<Rational>& q_candidate,
                                                      std::size_t n_max) {
    return recurrence_oracle(P, a1, a2, q_candidate, n_max);
}

// Reconstructs the head a Q family would need for a given (a1, a2) by running
// the recurrence downward from Q_4, Q_3. Used to build hard negative controls.
std::optional<Family<Rational>> derive_candidate(const Family<Rational>& P, const Rational& a1, const Rational& a2);

// Chebyshev points of the first kind on [lo, hi].
std::vector<double> chebyshev_samples(std::size_t count, double lo = -4.0, double hi = 4.0);

// max over n = 3..n_max and x of |Q_n - (P_n + a1 P_{n-1} + a2 P_{n-2})| / max(1, |Q_n|)
template <class T>
T linear_relation_residual(const Family<T>& P, const LiftSolution<T>& sol, std::size_t n_max,
                           const std::vector<T>& samples);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_quadrature(const Family<double>& f, std::size_t order);

struct GramReport {
    double max_offdiag = 0;
    double max_diag_dev = 0;
};

// order 0 picks 2 n_max + 2
GramReport quadrature_orthogonality(const Family<double>& f, std::size_t n_max, std::size_t order = 0);

struct ConstraintCheck {
    std::string name;
    bool pass = true;
    std::optional<std::size_t> first_bad_index;
};

struct ConstraintReport {
    char alternative = 'A';  // A: a1 = 0, B: a1 != 0
    std::vector<ConstraintCheck> checks;
    // whether gamma_n + a1(beta_{n-1} - beta_n) equals gamma_n on n >= k+1
    bool shifted_gamma_equals_gamma = true;
    bool pass() const;
};

template <class T>
ConstraintReport k_general_constraints(const Family<T>& P, const std::vector<T>& a, int k);

unsigned long long variant_count(int k);

struct VerificationReport {
    std::string solution_id;
    double residual = 0;
    bool oracle_match = false;
    bool oracle_exact = false;
    std::optional<std::size_t> oracle_first_bad_degree;
    double gram_offdiag = 0;
    double gram_diag_dev = 0;
    bool passed = false;
    std::vector<std::string> reasons;
};

struct VerificationSettings {
    std::size_t oracle_degree = 12;
    std::size_t residual_degree = 20;
    std::size_t sample_count = 50;
    double residual_tol = 1e-9;
    std::size_t gram_degree = 15;
    double gram_tol = 1e-10;
};

// Checks one solution. The exact oracle runs when rational data are given,
// otherwise the working-precision one.
VerificationReport verify_solution(const std::string& id, const Family<HighFloat>& P,
                                   const LiftSolution<HighFloat>& sol, const Family<Rational>* P_exact,
                                   const LiftSolution<Rational>* sol_exact, const VerificationSettings& settings = {});

}  // namespace oscillift
