#pragma once

#include "oscillift/numeric.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace oscillift {

enum class Definiteness { positive, quasi };

// Monic family xP_n = P_{n+1} + beta_n P_n + gamma_n P_{n-1} whose coefficients
// repeat with period k from index 2 on.
template <class T>
struct Family {
    int k = 2;
    std::size_t head = 2;  // beta_0 .. beta_{head-1} sit outside the period
    std::vector<T> beta;   // head entries, then k tail entries
    std::vector<T> gamma;  // gamma_1, then k tail entries
    Definiteness definiteness = Definiteness::positive;

    const T& beta_at(std::size_t n) const;
    const T& gamma_at(std::size_t n) const;  // n >= 1
    std::pair<T, T> coefficients_at(std::size_t n) const;

    // k=2 shorthands
    const T& b(std::size_t i) const { return beta.at(i); }
    const T& g(std::size_t i) const { return gamma.at(i - 1); }
};

// Validates lengths and the Favard conditions; throws InputError.
template <class T>
Family<T> make_family(int k, std::vector<T> beta, std::vector<T> gamma,
                      Definiteness definiteness = Definiteness::positive, std::size_t head = 2);

// P with beta_0..beta_{h-1} replaced; the new head has length h, so the
// period of the remaining coefficients is kept even when h > 2.
template <class T>
Family<T> with_beta_head(const Family<T>& P, const std::vector<T>& new_head) {
    Family<T> out = P;
    out.head = new_head.size();
    out.beta = new_head;
    for (std::size_t n = 0; n < static_cast<std::size_t>(P.k); ++n) out.beta.push_back(P.beta_at(out.head + n));
    return out;
}

template <class To, class From>
Family<To> family_cast(const Family<From>& f) {
    Family<To> out;
    out.k = f.k;
    out.head = f.head;
    out.definiteness = f.definiteness;
    for (const auto& v : f.beta) out.beta.push_back(convert<To>(v));
    for (const auto& v : f.gamma) out.gamma.push_back(convert<To>(v));
    return out;
}

template <class T>
T eval_monic(const Family<T>& f, std::size_t n, const T& x);

// Values P_0(x) .. P_n(x).
template <class T>
std::vector<T> eval_monic_all(const Family<T>& f, std::size_t n, const T& x);

// Ascending coefficients of P_n; leading entry is exactly 1.
std::vector<Rational> coefficient_vector(const Family<Rational>& f, std::size_t n);

template <class T>
struct JacobiMatrix {
    std::size_t dim = 0;
    std::vector<T> diagonal;     // beta_0 .. beta_{dim-1}
    std::vector<T> superdiagonal;  // all ones
    std::vector<T> subdiagonal;  // gamma_1 .. gamma_{dim-1}

    T at(std::size_t row, std::size_t col) const;
};

template <class T>
JacobiMatrix<T> jacobi_matrix(const Family<T>& f, std::size_t dim);

template <class T>
struct OrthonormalCoefficients {
    std::vector<T> b;      // b_n = sqrt(gamma_{n+1})
    std::vector<T> alpha;  // P_n = alpha_n phi_n
};

// Requires gamma > 0. Fills b_0..b_{count-1} and alpha_0..alpha_{count-1}.
template <class T>
OrthonormalCoefficients<T> symmetrize(const Family<T>& f, std::size_t count);

// Orthonormal values phi_0(x) .. phi_n(x) from the symmetric recurrence.
template <class T>
std::vector<T> eval_orthonormal_all(const Family<T>& f, std::size_t n, const T& x);

}  // namespace oscillift
