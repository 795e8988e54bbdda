#include "oscillift/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>

namespace oscillift {

namespace {

template <class T>
Poly<T> drop_negligible_top(Poly<T> p) {
    T scale(0);
    for (const auto& c : p) scale = std::max(scale, abs_value(c));
    while (!p.empty() && negligible(p.back(), scale, NumTraits<T>::zero_tol())) p.pop_back();
    return p;
}

std::vector<double> companion_candidates(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<double> out;
    if (n < 1) return out;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i] / c[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = es.eigenvalues()[i];
        // loose filter; the residual test after polishing is the real gate
        if (std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z.real()))) out.push_back(z.real());
    }
    return out;
}

template <class W>
W newton_polish(const Poly<W>& p, W x) {
    Poly<W> dp;
    for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * W(static_cast<double>(i)));
    for (int iter = 0; iter < 200; ++iter) {
        W fx = poly_eval(p, x);
        W dfx = poly_eval(dp, x);
        if (fx == 0 || dfx == 0) break;
        W step = fx / dfx;
        W next = x - step;
        if (next == x) break;
        x = next;
    }
    return x;
}

template <class T>
std::vector<double> to_double(const Poly<T>& p) {
    std::vector<double> out;
    for (const auto& c : p) out.push_back(convert<double>(c));
    return out;
}

}  // namespace

template <>
std::vector<double> real_roots<double>(const Poly<double>& coeffs) {
    Poly<double> p = drop_negligible_top(coeffs);
    std::vector<double> roots;
    if (p.size() < 2) return roots;
    Poly<long double> pl(p.begin(), p.end());
    for (double z : companion_candidates(p)) {
        long double r = newton_polish(pl, static_cast<long double>(z));
        double rd = static_cast<double>(r);
        double res = std::abs(poly_eval(p, rd));
        if (res <= 1e-10 * poly_residual_scale(p, rd)) roots.push_back(rd);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || std::abs(r - out.back()) > 1e-8 * (1.0 + std::abs(r))) out.push_back(r);
    return out;
}

template <>
std::vector<HighFloat> real_roots<HighFloat>(const Poly<HighFloat>& coeffs) {
    Poly<HighFloat> p = drop_negligible_top(coeffs);
    std::vector<HighFloat> roots;
    if (p.size() < 2) return roots;
    const HighFloat tol = NumTraits<HighFloat>::zero_tol();
    for (double z : companion_candidates(to_double(p))) {
        HighFloat r = newton_polish(p, HighFloat(z));
        HighFloat res = abs_value(poly_eval(p, r));
        // multiple roots only reach about half the working digits
        if (res <= tol * poly_residual_scale(p, r)) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<HighFloat> out;
    HighFloat merge = boost::multiprecision::sqrt(tol);
    for (const auto& r : roots)
        if (out.empty() || abs_value(HighFloat(r - out.back())) > merge * (1 + abs_value(r))) out.push_back(r);
    return out;
}

template <>
std::vector<Rational> real_roots<Rational>(const Poly<Rational>& coeffs) {
    Poly<Rational> p = poly_trim(coeffs);
    std::vector<Rational> roots;
    if (p.size() < 2) return roots;
    if (p.size() == 2) return {Rational(-p[0] / p[1])};
    Poly<HighFloat> ph;
    for (const auto& c : p) ph.push_back(HighFloat(c));
    const Integer max_den = boost::multiprecision::pow(Integer(10), working_digits() / 3);
    for (double z : companion_candidates(to_double(p))) {
        HighFloat r = newton_polish(ph, HighFloat(z));
        Rational q = rationalize(r, max_den);
        if (poly_eval(p, q) == 0) roots.push_back(q);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace oscillift
