#include "oscillift/verification.hpp"

#include "oscillift/oscillator.hpp"
#include "oscillift/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>

namespace oscillift {

namespace {

template <class T>
std::vector<Poly<T>> monic_polys(const Family<T>& f, std::size_t n) {
    std::vector<Poly<T>> out;
    out.push_back(Poly<T>{T(1)});
    for (std::size_t j = 0; j < n; ++j) {
        Poly<T> next = poly_sub(poly_mul_x(out[j]), poly_scale(out[j], f.beta_at(j)));
        if (j > 0) next = poly_sub(next, poly_scale(out[j - 1], f.gamma_at(j)));
        out.push_back(std::move(next));
    }
    return out;
}

template <class T>
Poly<T> lifted(const std::vector<Poly<T>>& P, std::size_t n, const T& a1, const T& a2) {
    return poly_add(poly_add(P[n], poly_scale(P[n - 1], a1)), poly_scale(P[n - 2], a2));
}

template <class T>
T max_coeff(const Poly<T>& p) {
    T m(0);
    for (const auto& c : p) m = std::max(m, abs_value(c));
    return m;
}

}  // namespace

template <class T>
OracleResult<T> recurrence_oracle(const Family<T>& P, const T& a1, const T& a2, const Family<T>& q, std::size_t n_max) {
    if (n_max < 3) throw InputError("oracle needs n_max >= 3");
    auto Pp = monic_polys(P, n_max);
    std::vector<Poly<T>> Q;
    Q.push_back(Poly<T>{T(1)});
    Q.push_back(Poly<T>{T(-q.beta_at(0)), T(1)});
    Q.push_back(poly_sub(poly_sub(poly_mul_x(Q[1]), poly_scale(Q[1], q.beta_at(1))), poly_scale(Q[0], q.gamma_at(1))));
    for (std::size_t n = 3; n <= n_max; ++n) Q.push_back(lifted(Pp, n, a1, a2));

    OracleResult<T> res;
    for (std::size_t n = 0; n < n_max; ++n) {
        Poly<T> R = poly_sub(poly_mul_x(Q[n]), Q[n + 1]);
        T scale = std::max(max_coeff(poly_mul_x(Q[n])), max_coeff(Q[n + 1]));
        OracleStep<T> step;
        step.n = n;
        step.beta = poly_coeff(R, n);
        R = poly_sub(R, poly_scale(Q[n], step.beta));
        if (n > 0) {
            step.gamma = poly_coeff(R, n - 1);
            R = poly_sub(R, poly_scale(Q[n - 1], step.gamma));
        }
        bool zero = true;
        for (const auto& c : R) zero = zero && is_zero(c, scale);
        if (!zero) {
            res.remainder_zero = false;
            if (!res.first_bad_degree) res.first_bad_degree = n;
            res.failure = "nonzero remainder at degree " + std::to_string(n);
            res.steps.push_back(step);
            break;
        }
        const T& want_beta = q.beta_at(n);
        step.beta_match = is_zero(T(step.beta - want_beta), std::max(abs_value(step.beta), abs_value(want_beta)));
        if (n > 0) {
            const T& want_gamma = P.gamma_at(n);
            step.gamma_match =
                is_zero(T(step.gamma - want_gamma), std::max(abs_value(step.gamma), abs_value(want_gamma)));
        }
        if ((!step.beta_match || !step.gamma_match) && res.matches) {
            res.matches = false;
            if (!res.first_bad_degree) res.first_bad_degree = n;
            res.failure = std::string(step.beta_match ? "gamma~" : "beta~") + "_" + std::to_string(n) +
                          " differs from the candidate";
        }
        res.steps.push_back(step);
    }
    return res;
}

template OracleResult<Rational> recurrence_oracle<Rational>(const Family<Rational>&, const Rational&, const Rational&,
                                                            const Family<Rational>&, std::size_t);
template OracleResult<HighFloat> recurrence_oracle<HighFloat>(const Family<HighFloat>&, const HighFloat&,
                                                              const HighFloat&, const Family<HighFloat>&, std::size_t);
template OracleResult<double> recurrence_oracle<double>(const Family<double>&, const double&, const double&,
                                                        const Family<double>&, std::size_t);

std::optional<Family<Rational>> derive_candidate(const Family<Rational>& P, const Rational& a1, const Rational& a2) {
    auto Pp = monic_polys(P, 4);
    Poly<Rational> upper = lifted(Pp, 4, a1, a2);
    Poly<Rational> lower = lifted(Pp, 3, a1, a2);
    std::array<Rational, 4> beta{};
    for (std::size_t n = 3; n >= 1; --n) {
        Poly<Rational> R = poly_sub(poly_mul_x(lower), upper);
        beta[n] = poly_coeff(R, n);
        R = poly_trim(poly_sub(R, poly_scale(lower, beta[n])));
        Rational g = poly_coeff(R, n - 1);
        if (g == 0) return std::nullopt;
        upper = lower;
        lower = poly_scale(R, Rational(1 / g));
    }
    // lower is now Q_0; Q_1 = x - beta~_0
    beta[0] = -poly_coeff(upper, 0);
    return with_beta_head(P, {beta[0], beta[1], beta[2]});
}

std::vector<double> chebyshev_samples(std::size_t count, double lo, double hi) {
    const double pi = boost::math::constants::pi<double>();
    std::vector<double> xs;
    for (std::size_t j = 0; j < count; ++j)
        xs.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos((2.0 * j + 1.0) * pi / (2.0 * count)));
    std::sort(xs.begin(), xs.end());
    return xs;
}

template <class T>
T linear_relation_residual(const Family<T>& P, const LiftSolution<T>& sol, std::size_t n_max,
                           const std::vector<T>& samples) {
    if (n_max < 3) throw InputError("residual needs n_max >= 3");
    T worst(0);
    for (const T& x : samples) {
        auto p = eval_monic_all(P, n_max, x);
        auto q = eval_monic_all(sol.q_family, n_max, x);
        for (std::size_t n = 3; n <= n_max; ++n) {
            T diff = abs_value(T(q[n] - (p[n] + sol.a1 * p[n - 1] + sol.a2 * p[n - 2])));
            T denom = std::max(T(1), abs_value(q[n]));
            worst = std::max(worst, T(diff / denom));
        }
    }
    return worst;
}

template double linear_relation_residual<double>(const Family<double>&, const LiftSolution<double>&, std::size_t,
                                                 const std::vector<double>&);
template HighFloat linear_relation_residual<HighFloat>(const Family<HighFloat>&, const LiftSolution<HighFloat>&,
                                                       std::size_t, const std::vector<HighFloat>&);
template Rational linear_relation_residual<Rational>(const Family<Rational>&, const LiftSolution<Rational>&,
                                                     std::size_t, const std::vector<Rational>&);

namespace {

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits) : saved_(HighFloat::default_precision()) {
        HighFloat::default_precision(digits);
    }
    ~PrecisionScope() { HighFloat::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

struct PreciseRule {
    std::vector<HighFloat> nodes, weights;
};

// Double-precision Golub-Welsch nodes, Newton-polished on the monic P_m at the
// current precision, with Christoffel weights 1 / sum phi_n(x)^2.
PreciseRule precise_rule(const Family<double>& f, std::size_t order, unsigned digits) {
    auto sym = symmetrize(f, order);
    const Eigen::Index m = static_cast<Eigen::Index>(order);
    const Family<HighFloat> fh = family_cast<HighFloat>(f);
    PreciseRule rule;
    if (m == 1) {
        rule.nodes = {fh.beta_at(0)};
        rule.weights = {HighFloat(1)};
        return rule;
    }
    Eigen::VectorXd diag(m), sub(m - 1);
    for (Eigen::Index i = 0; i < m; ++i) diag(i) = f.beta_at(static_cast<std::size_t>(i));
    for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = sym.b[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    const HighFloat tol = boost::multiprecision::pow(HighFloat(10), -static_cast<long>(digits) + 5);
    for (Eigen::Index j = 0; j < m; ++j) {
        HighFloat x = es.eigenvalues()(j);
        for (int it = 0; it < 200; ++it) {
            HighFloat p_prev(0), p(1), d_prev(0), d(0);
            for (std::size_t n = 0; n < order; ++n) {
                HighFloat g = n ? fh.gamma_at(n) : HighFloat(0);
                HighFloat p_next = (x - fh.beta_at(n)) * p - g * p_prev;
                HighFloat d_next = p + (x - fh.beta_at(n)) * d - g * d_prev;
                p_prev = p;
                p = p_next;
                d_prev = d;
                d = d_next;
            }
            if (d == 0) break;
            HighFloat step = p / d;
            x -= step;
            if (abs_value(step) <= tol * (1 + abs_value(x))) break;
        }
        auto phi = eval_orthonormal_all(fh, order - 1, x);
        HighFloat sum(0);
        for (const auto& v : phi) sum += v * v;
        rule.nodes.push_back(x);
        rule.weights.push_back(1 / sum);
    }
    return rule;
}

// Near an isolated mass point the forward recurrence amplifies any node error
// geometrically, so a fixed precision cannot certify every family. Precision
// doubles until two consecutive levels agree on what `measure` extracts.
template <class Measure>
std::vector<double> stable_at_increasing_precision(const Family<double>& f, std::size_t order, double agree,
                                                   Measure measure) {
    unsigned digits = std::max(50u, working_digits());
    std::vector<double> previous;
    for (;;) {
        std::vector<double> current;
        {
            PrecisionScope scope(digits);
            current = measure(precise_rule(f, order, digits));
        }
        if (!previous.empty()) {
            double diff = 0;
            for (std::size_t i = 0; i < current.size(); ++i)
                diff = std::max(diff, std::abs(current[i] - previous[i]) / std::max(1.0, std::abs(current[i])));
            if (diff <= agree || digits >= 3200) return current;
        }
        previous = std::move(current);
        digits *= 2;
    }
}

}  // namespace

QuadratureRule gauss_quadrature(const Family<double>& f, std::size_t order) {
    if (order < 1) throw InputError("quadrature order must be >= 1");
    auto flat = stable_at_increasing_precision(f, order, 1e-15, [](const PreciseRule& r) {
        std::vector<double> out;
        for (const auto& x : r.nodes) out.push_back(x.convert_to<double>());
        // weights compared on a log scale so tiny ones count as well
        for (const auto& w : r.weights) out.push_back(boost::multiprecision::log(w).convert_to<double>());
        return out;
    });
    QuadratureRule rule;
    rule.nodes.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(order));
    for (std::size_t j = 0; j < order; ++j) rule.weights.push_back(std::exp(flat[order + j]));
    return rule;
}

GramReport quadrature_orthogonality(const Family<double>& f, std::size_t n_max, std::size_t order) {
    if (order == 0) order = 2 * n_max + 2;
    if (order < n_max + 1) throw InputError("quadrature order must exceed n_max");
    // entries of G - I, upper triangle
    auto dev = stable_at_increasing_precision(f, order, 1e-14, [&](const PreciseRule& rule) {
        const Family<HighFloat> fh = family_cast<HighFloat>(f);
        std::vector<std::vector<HighFloat>> phi;
        for (const auto& x : rule.nodes) phi.push_back(eval_orthonormal_all(fh, n_max, x));
        std::vector<double> out;
        for (std::size_t a = 0; a <= n_max; ++a)
            for (std::size_t b = a; b <= n_max; ++b) {
                HighFloat g(0);
                for (std::size_t j = 0; j < rule.nodes.size(); ++j) g += rule.weights[j] * phi[j][a] * phi[j][b];
                if (a == b) g -= 1;
                out.push_back(g.convert_to<double>());
            }
        return out;
    });
    GramReport rep;
    std::size_t i = 0;
    for (std::size_t a = 0; a <= n_max; ++a)
        for (std::size_t b = a; b <= n_max; ++b, ++i) {
            if (a == b)
                rep.max_diag_dev = std::max(rep.max_diag_dev, std::abs(dev[i]));
            else
                rep.max_offdiag = std::max(rep.max_offdiag, std::abs(dev[i]));
        }
    return rep;
}

bool ConstraintReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConstraintCheck& c) { return c.pass; });
}

template <class T>
ConstraintReport k_general_constraints(const Family<T>& P, const std::vector<T>& a, int k) {
    if (k < 1 || a.size() != static_cast<std::size_t>(k)) throw InputError("need exactly k coefficients a_1..a_k");
    if (a.back() == 0) throw InputError("a_k must be nonzero");
    const std::size_t K = static_cast<std::size_t>(k);
    const std::size_t N = 3 * K + 4;
    const T& a1 = a.front();
    auto eq = [](const T& x, const T& y) { return is_zero(T(x - y), std::max(abs_value(x), abs_value(y))); };
    auto shifted = [&](std::size_t n) { return T(P.gamma_at(n) + a1 * (P.beta_at(n - 1) - P.beta_at(n))); };

    ConstraintReport rep;
    rep.alternative = is_zero(a1, T(1)) ? 'A' : 'B';
    auto add = [&rep](std::string name, std::size_t from, std::size_t to, auto&& holds) {
        ConstraintCheck c{std::move(name), true, std::nullopt};
        for (std::size_t n = from; n <= to; ++n)
            if (!holds(n)) {
                c.pass = false;
                c.first_bad_index = n;
                break;
            }
        rep.checks.push_back(std::move(c));
    };

    add("1) gamma~_n = gamma_n, n >= k+1", K + 1, N, [&](std::size_t n) { return eq(shifted(n), P.gamma_at(n)); });
    add("2) a_k != 0 and gamma_n != 0", 1, N, [&](std::size_t n) { return !is_zero(P.gamma_at(n), T(1)); });
    add("3) gamma_n + a1(beta_{n-1} - beta_n) != 0, n >= k+1", K + 1, N,
        [&](std::size_t n) { return !is_zero(shifted(n), P.gamma_at(n)); });
    add("4) gamma_n - gamma_{n-k} = a1(beta_{n-1} - beta_n), n >= k+2", K + 2, N, [&](std::size_t n) {
        return eq(T(P.gamma_at(n) - P.gamma_at(n - K)), T(a1 * (P.beta_at(n - 1) - P.beta_at(n))));
    });
    if (rep.alternative == 'B')
        add("alternative B: beta_n = beta_k, n >= k", K, N, [&](std::size_t n) { return eq(P.beta_at(n), P.beta_at(K)); });
    add("gamma_n = gamma_{n-k}, n >= k+2", K + 2, N, [&](std::size_t n) { return eq(P.gamma_at(n), P.gamma_at(n - K)); });

    for (std::size_t n = K + 1; n <= N; ++n)
        if (!eq(shifted(n), P.gamma_at(n))) rep.shifted_gamma_equals_gamma = false;
    return rep;
}

template ConstraintReport k_general_constraints<Rational>(const Family<Rational>&, const std::vector<Rational>&, int);
template ConstraintReport k_general_constraints<double>(const Family<double>&, const std::vector<double>&, int);
template ConstraintReport k_general_constraints<HighFloat>(const Family<HighFloat>&, const std::vector<HighFloat>&,
                                                           int);

unsigned long long variant_count(int k) {
    if (k < 1) throw InputError("variant count needs k >= 1");
    if (k > 64) throw InputError("variant count overflows for k > 64");
    return 1ULL << (k - 1);
}

VerificationReport verify_solution(const std::string& id, const Family<HighFloat>& P,
                                   const LiftSolution<HighFloat>& sol, const Family<Rational>* P_exact,
                                   const LiftSolution<Rational>* sol_exact, const VerificationSettings& settings) {
    VerificationReport rep;
    rep.solution_id = id;

    if (P_exact && sol_exact) {
        auto o = exact_recurrence_oracle(*P_exact, sol_exact->a1, sol_exact->a2, sol_exact->q_family,
                                         settings.oracle_degree);
        rep.oracle_exact = true;
        rep.oracle_match = o.ok();
        rep.oracle_first_bad_degree = o.first_bad_degree;
        if (!o.ok()) rep.reasons.push_back("exact oracle: " + o.failure);
    } else {
        auto o = recurrence_oracle(P, sol.a1, sol.a2, sol.q_family, settings.oracle_degree);
        rep.oracle_match = o.ok();
        rep.oracle_first_bad_degree = o.first_bad_degree;
        if (!o.ok()) rep.reasons.push_back("oracle: " + o.failure);
    }

    std::vector<HighFloat> xs;
    for (double x : chebyshev_samples(settings.sample_count)) xs.push_back(HighFloat(x));
    rep.residual = linear_relation_residual(P, sol, settings.residual_degree, xs).convert_to<double>();
    if (!(rep.residual <= settings.residual_tol))
        rep.reasons.push_back("linear relation residual " + to_decimal(rep.residual));

    if (!algebras_equal(P, sol.q_family)) rep.reasons.push_back("gamma sequences differ: algebras not equal");

    bool positive = std::all_of(sol.q_family.gamma.begin(), sol.q_family.gamma.end(),
                                [](const HighFloat& g) { return g > 0; });
    if (positive) {
        auto gram = quadrature_orthogonality(family_cast<double>(sol.q_family), settings.gram_degree);
        rep.gram_offdiag = gram.max_offdiag;
        rep.gram_diag_dev = gram.max_diag_dev;
        if (!(gram.max_offdiag <= settings.gram_tol && gram.max_diag_dev <= settings.gram_tol))
            rep.reasons.push_back("quadrature Gram deviation " + to_decimal(std::max(gram.max_offdiag, gram.max_diag_dev)));
    }
    rep.passed = rep.reasons.empty();
    return rep;
}

}  // namespace oscillift
