#pragma once

#include "oscillift/recurrence.hpp"

#include <Eigen/Dense>

#include <vector>

namespace oscillift {

// Finite section of the generalised oscillator on span{phi_0..phi_{dim-1}}.
struct OscillatorTruncation {
    std::size_t dim = 0;
    std::vector<double> b;       // b_n = sqrt(gamma_{n+1})
    Eigen::MatrixXd a_plus;      // sqrt(2) b_n on the subdiagonal
    Eigen::MatrixXd a_minus;     // sqrt(2) b_{n-1} on the superdiagonal
    Eigen::MatrixXd number_op;   // diag(0, 1, ..., dim-1)
    std::vector<double> B_diag;  // B(N) phi_n = gamma_n phi_n, B_0 = 0
    std::vector<double> hamiltonian_diag;
};

// Requires gamma > 0 and dim >= 2.
OscillatorTruncation build_truncation(const Family<double>& f, std::size_t dim);

struct RelationReport {
    double annihilate_create = 0;  // a- a+ - 2 B(N+1)
    double create_annihilate = 0;  // a+ a- - 2 B(N)
    double commutator_plus = 0;    // [N, a+] - a+
    double commutator_minus = 0;   // [N, a-] + a-
    double max() const;
};

// Maximum deviation over interior indices 0..dim-2.
RelationReport verify_algebra_relations(const OscillatorTruncation& t);

struct Spectrum {
    std::vector<double> eigenvalues;  // interior indices 0..dim-2
    std::vector<double> closed_form;  // 2 gamma_1, 2(gamma_n + gamma_{n+1})
    double max_rel_dev = 0;
    double max_offdiag = 0;           // H is diagonal in the phi basis
};

Spectrum hamiltonian_spectrum(const OscillatorTruncation& t, const Family<double>& f);

// Same structure function: gamma~_n = gamma_n for all n >= 1. Checked on the
// head plus enough indices to cover both periods.
template <class T>
bool algebras_equal(const Family<T>& P, const Family<T>& Q);

enum class DimensionVerdict { finite_candidate, infinite };
std::string to_string(DimensionVerdict v);

// Fits b_n^2 = (a0 + a2 n)(1 + n) on n = 0..2k+3.
DimensionVerdict dimension_check(const Family<double>& f);
DimensionVerdict dimension_check_sequence(const std::vector<double>& b_squared);

}  // namespace oscillift
