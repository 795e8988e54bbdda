#pragma once

#include "oscillift/numeric.hpp"

#include <vector>

namespace oscillift {

// Dense polynomial, ascending coefficients.
template <class T>
using Poly = std::vector<T>;

template <class T>
Poly<T> poly_trim(Poly<T> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

template <class T>
Poly<T> poly_add(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> out(std::max(a.size(), b.size()), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

template <class T>
Poly<T> poly_sub(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> out(std::max(a.size(), b.size()), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

template <class T>
Poly<T> poly_scale(const Poly<T>& a, const T& s) {
    Poly<T> out(a);
    for (auto& c : out) c *= s;
    return out;
}

template <class T>
Poly<T> poly_mul_x(const Poly<T>& a) {
    Poly<T> out;
    out.reserve(a.size() + 1);
    out.push_back(T(0));
    out.insert(out.end(), a.begin(), a.end());
    return out;
}

template <class T>
T poly_coeff(const Poly<T>& a, std::size_t i) {
    return i < a.size() ? a[i] : T(0);
}

template <class T>
T poly_eval(const Poly<T>& a, const T& x) {
    T acc(0);
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

// Backward-error scale sum |c_i| |x|^i used to judge a root residual.
template <class T>
T poly_residual_scale(const Poly<T>& a, const T& x) {
    T acc(0);
    T ax = abs_value(x);
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * ax + abs_value(a[i]);
    return acc;
}

// Real roots, ascending, without repetition. Candidates come from the
// eigenvalues of the companion matrix and are polished by Newton steps.
// Rational input yields only the exactly rational roots.
template <class T>
std::vector<T> real_roots(const Poly<T>& coeffs);

}  // namespace oscillift
