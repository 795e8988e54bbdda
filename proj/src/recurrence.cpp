#include "oscillift/recurrence.hpp"

#include "oscillift/polynomial.hpp"

#include <cmath>
#include <string>

namespace oscillift {

namespace {

template <class T>
T square_root(const T& x) {
    using std::sqrt;
    return sqrt(x);
}

}  // namespace

template <class T>
const T& Family<T>::beta_at(std::size_t n) const {
    if (n < head) return beta[n];
    return beta[head + (n - head) % static_cast<std::size_t>(k)];
}

template <class T>
const T& Family<T>::gamma_at(std::size_t n) const {
    if (n == 0) throw std::out_of_range("gamma_0 is undefined");
    if (n == 1) return gamma[0];
    return gamma[1 + (n - 2) % static_cast<std::size_t>(k)];
}

template <class T>
std::pair<T, T> Family<T>::coefficients_at(std::size_t n) const {
    if (n == 0) throw std::out_of_range("gamma_0 is undefined");
    return {beta_at(n), gamma_at(n)};
}

template <class T>
Family<T> make_family(int k, std::vector<T> beta, std::vector<T> gamma, Definiteness definiteness,
                      std::size_t head) {
    if (k < 1) throw InputError("period k must be positive");
    if (head < 2) throw InputError("beta head must have at least two entries");
    if (beta.size() != static_cast<std::size_t>(k) + head)
        throw InputError("beta needs " + std::to_string(head) + "+k = " + std::to_string(k + head) + " entries");
    if (gamma.size() != static_cast<std::size_t>(k) + 1)
        throw InputError("gamma needs k+1 = " + std::to_string(k + 1) + " entries");
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i] == 0) throw InputError("gamma_" + std::to_string(i + 1) + " is zero");
        if (definiteness == Definiteness::positive && gamma[i] < 0)
            throw InputError("gamma_" + std::to_string(i + 1) + " is negative in a positive-definite family");
    }
    Family<T> f;
    f.k = k;
    f.head = head;
    f.beta = std::move(beta);
    f.gamma = std::move(gamma);
    f.definiteness = definiteness;
    return f;
}

template <class T>
std::vector<T> eval_monic_all(const Family<T>& f, std::size_t n, const T& x) {
    std::vector<T> out;
    out.reserve(n + 1);
    if constexpr (std::is_same_v<T, double>) {
        // monic values grow quickly; accumulate in extended precision
        long double prev = 0, cur = 1;
        out.push_back(1.0);
        for (std::size_t j = 0; j < n; ++j) {
            long double beta = f.beta_at(j);
            long double gamma = j == 0 ? 0.0L : static_cast<long double>(f.gamma_at(j));
            long double next = (x - beta) * cur - gamma * prev;
            prev = cur;
            cur = next;
            out.push_back(static_cast<double>(cur));
        }
    } else {
        T prev(0), cur(1);
        out.push_back(cur);
        for (std::size_t j = 0; j < n; ++j) {
            T next = (x - f.beta_at(j)) * cur;
            if (j > 0) next -= f.gamma_at(j) * prev;
            prev = cur;
            cur = next;
            out.push_back(cur);
        }
    }
    return out;
}

template <class T>
T eval_monic(const Family<T>& f, std::size_t n, const T& x) {
    return eval_monic_all(f, n, x).back();
}

std::vector<Rational> coefficient_vector(const Family<Rational>& f, std::size_t n) {
    Poly<Rational> prev{}, cur{Rational(1)};
    for (std::size_t j = 0; j < n; ++j) {
        Poly<Rational> next = poly_sub(poly_mul_x(cur), poly_scale(cur, f.beta_at(j)));
        if (j > 0) next = poly_sub(next, poly_scale(prev, f.gamma_at(j)));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

template <class T>
T JacobiMatrix<T>::at(std::size_t row, std::size_t col) const {
    if (row >= dim || col >= dim) throw std::out_of_range("Jacobi matrix index");
    if (row == col) return diagonal[row];
    if (col == row + 1) return superdiagonal[row];
    if (row == col + 1) return subdiagonal[col];
    return T(0);
}

template <class T>
JacobiMatrix<T> jacobi_matrix(const Family<T>& f, std::size_t dim) {
    if (dim == 0) throw InputError("Jacobi matrix needs dim >= 1");
    JacobiMatrix<T> J;
    J.dim = dim;
    for (std::size_t n = 0; n < dim; ++n) J.diagonal.push_back(f.beta_at(n));
    for (std::size_t n = 1; n < dim; ++n) {
        J.superdiagonal.push_back(T(1));
        J.subdiagonal.push_back(f.gamma_at(n));
    }
    return J;
}

template <class T>
OrthonormalCoefficients<T> symmetrize(const Family<T>& f, std::size_t count) {
    for (std::size_t i = 0; i < f.gamma.size(); ++i)
        if (!(f.gamma[i] > 0)) throw InputError("symmetrization requires positive-definite family");

    OrthonormalCoefficients<T> out;
    for (std::size_t n = 0; n < count; ++n) out.b.push_back(square_root(f.gamma_at(n + 1)));

    // alpha_n = sqrt(g1) (g2..gs)^(m/2) (g_{s+1}..g_{k+1})^((m-1)/2), n = (m-1)k + s
    const std::size_t k = static_cast<std::size_t>(f.k);
    for (std::size_t n = 0; n < count; ++n) {
        if (n == 0) {
            out.alpha.push_back(T(1));
            continue;
        }
        if (n == 1) {
            out.alpha.push_back(square_root(f.gamma[0]));
            continue;
        }
        std::size_t m = (n - 2) / k + 1;
        std::size_t s = n - (m - 1) * k;
        T head(1), rest(1);
        for (std::size_t j = 2; j <= s; ++j) head *= f.gamma[j - 1];
        for (std::size_t j = s + 1; j <= k + 1; ++j) rest *= f.gamma[j - 1];
        T value = square_root(f.gamma[0]);
        // integer powers first, then at most one square root each
        T head_pow(1), rest_pow(1);
        for (std::size_t i = 0; i < m / 2; ++i) head_pow *= head;
        for (std::size_t i = 0; i < (m - 1) / 2; ++i) rest_pow *= rest;
        if (m % 2 == 1) head_pow *= square_root(head);
        if ((m - 1) % 2 == 1) rest_pow *= square_root(rest);
        out.alpha.push_back(value * head_pow * rest_pow);
    }
    return out;
}

template <class T>
std::vector<T> eval_orthonormal_all(const Family<T>& f, std::size_t n, const T& x) {
    auto sym = symmetrize(f, n + 1);
    std::vector<T> phi;
    phi.reserve(n + 1);
    phi.push_back(T(1));
    if (n == 0) return phi;
    phi.push_back((x - f.beta_at(0)) / sym.b[0]);
    for (std::size_t j = 1; j < n; ++j)
        phi.push_back(((x - f.beta_at(j)) * phi[j] - sym.b[j - 1] * phi[j - 1]) / sym.b[j]);
    return phi;
}

#define OSCILLIFT_INSTANTIATE(T)                                                                    \
    template struct Family<T>;                                                                      \
    template struct JacobiMatrix<T>;                                                                \
    template Family<T> make_family<T>(int, std::vector<T>, std::vector<T>, Definiteness, std::size_t);           \
    template std::vector<T> eval_monic_all<T>(const Family<T>&, std::size_t, const T&);             \
    template T eval_monic<T>(const Family<T>&, std::size_t, const T&);                              \
    template JacobiMatrix<T> jacobi_matrix<T>(const Family<T>&, std::size_t);

OSCILLIFT_INSTANTIATE(double)
OSCILLIFT_INSTANTIATE(Rational)
OSCILLIFT_INSTANTIATE(HighFloat)
#undef OSCILLIFT_INSTANTIATE

template OrthonormalCoefficients<double> symmetrize<double>(const Family<double>&, std::size_t);
template OrthonormalCoefficients<HighFloat> symmetrize<HighFloat>(const Family<HighFloat>&, std::size_t);
template std::vector<double> eval_orthonormal_all<double>(const Family<double>&, std::size_t, const double&);
template std::vector<HighFloat> eval_orthonormal_all<HighFloat>(const Family<HighFloat>&, std::size_t,
                                                                 const HighFloat&);

}  // namespace oscillift
