#include "oscillift/lift_solver.hpp"

#include <algorithm>
#include <cmath>

namespace oscillift {

std::string to_string(CaseTag tag) {
    static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
    return names[static_cast<int>(tag)];
}

CaseTag parse_case_tag(const std::string& text) {
    for (int i = 0; i < 8; ++i)
        if (to_string(static_cast<CaseTag>(i)) == text) return static_cast<CaseTag>(i);
    throw InputError("unknown case '" + text + "'");
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::i: return "i";
        case Branch::ii: return "ii";
        case Branch::iii: return "iii";
        case Branch::iv: return "iv";
    }
    return "?";
}

namespace {

template <class T>
void require_period_two(const Family<T>& P) {
    if (P.k != 2) throw InputError("the lift solver handles period k = 2 only");
}

template <class T>
bool split_tail(const Family<T>& P) {
    return !same_for_routing(P.b(3), P.b(1));
}

template <class T>
T max_abs(std::initializer_list<T> values) {
    T m(0);
    for (const auto& v : values) m = std::max(m, abs_value(v));
    return m;
}

template <class T>
T head_defect(const Family<T>& P, const T& a1, const T& a2, const std::array<T, 3>& t, T& scale) {
    const T d = P.b(3) - P.b(1);
    T lhs = t[0] * t[1];
    T base = P.b(0) * P.b(1);
    T shift = a1 * P.b(0);
    T extra = a2 * (P.b(0) * d + P.g(1)) / P.g(3);
    scale = max_abs<T>({lhs, base, shift, extra});
    return lhs - (base - shift + extra);
}

template <class T>
LiftSolution<T> finalize(const Family<T>& P, CaseTag tag, const T& a1, const T& a2, const std::array<T, 3>& t,
                         StructuralConstants<T> constants, const SolverOptions& opt) {
    LiftSolution<T> s;
    s.tag = tag;
    s.a1 = a1;
    s.a2 = a2;
    s.beta_tilde = t;
    s.constants = std::move(constants);
    s.q_family = with_beta_head(P, {t[0], t[1], t[2]});

    std::vector<std::string> reasons;
    if (is_zero(a2, max_abs<T>({a1 * a1, P.g(3)}))) reasons.push_back("a2 = 0");
    if (!admissibility_check(P, a1)) reasons.push_back("gamma3 + a1(beta2 - beta3) = 0");
    T scale;
    s.head_defect = head_defect(P, a1, a2, t, scale);
    if (!opt.paper_literal) {
        bool a1_zero = is_zero(a1, T(1));
        if (!a1_zero && (!same_for_routing(P.b(2), P.b(3)) || !same_for_routing(P.g(2), P.g(3))))
            reasons.push_back("a1 != 0 needs a constant tail (beta2 = beta3, gamma2 = gamma3)");
        else if (!is_zero(s.head_defect, scale))
            reasons.push_back("head defect " + to_decimal(convert<double>(s.head_defect)) + ": Q would change gamma1");
    }
    s.admissible = reasons.empty();
    for (std::size_t i = 0; i < reasons.size(); ++i) s.reason += (i ? "; " : "") + reasons[i];
    return s;
}

// C for cases III..VIII at a given w, corrected form.
template <class T>
T c_corrected(const Family<T>& P, const T& L, const T& a1, const T& a2, const T& w) {
    const T& b0 = P.b(0);
    T bracket = -(P.g(1) / P.g(3)) * (P.b(2) - a1 * (w + 1)) + b0 * (L * (w * w + w) + 1);
    return a2 * bracket - a1 * w * (b0 * (P.b(2) - P.b(1)) + P.g(1));
}

// C in literal form: the case III form carries 4w^3+4w+1, the lambda form L(w^2+w)+1,
// and both use beta0(beta1+beta2).
template <class T>
T c_literal(const Family<T>& P, const T& L, const T& a1, const T& a2, const T& w, bool case_three_form) {
    const T& b0 = P.b(0);
    T poly = case_three_form ? T(4 * w * w * w + 4 * w + 1) : T(L * (w * w + w) + 1);
    T bracket = -(P.g(1) / P.g(3)) * (P.b(2) - a1 * (w + 1)) + b0 * poly;
    return a2 * bracket - a1 * w * (b0 * (P.b(1) + P.b(2)) + P.g(1));
}

template <class T>
std::array<T, 3> lifted_head(const Family<T>& P, const T& a1, const T& w, const T& C) {
    return {T(P.b(0) - C / P.g(2)), T(P.b(1) + C / P.g(2) + a1 * w), T(P.b(2) - a1 * (w + 1))};
}

bool uses_case_three_form(CaseTag tag) { return tag == CaseTag::III || tag == CaseTag::IV; }

template <class T>
std::vector<LiftSolution<T>> split_family_ratio(const Family<T>& P, const T& c, CaseTag tag,
                                                const SolverOptions& opt) {
    if (!split_tail(P)) throw WrongCase("case " + to_string(tag) + " needs beta1 != beta3");
    const T L = 1 / c;
    StructuralConstants<T> sc = structural_constants(P);
    Poly<T> poly;
    if (opt.paper_literal)
        poly = tag == CaseTag::III ? literal_case_III_quartic(P) : literal_lambda_quartic(P, L);
    else
        poly = defining_polynomial(P, L);

    std::vector<LiftSolution<T>> out;
    for (const T& w : real_roots(poly)) {
        T a1 = L * (*sc.s3 * w + *sc.s2);
        if (is_zero(a1, max_abs<T>({L * *sc.s3 * w, L * *sc.s2}))) continue;  // belongs to case I
        T a2 = c * a1 * a1;
        T C = opt.paper_literal ? c_literal(P, L, a1, a2, w, tag == CaseTag::III) : c_corrected(P, L, a1, a2, w);
        StructuralConstants<T> k = sc;
        k.w = w;
        k.ratio = c;
        k.C = C;
        out.push_back(finalize(P, tag, a1, a2, lifted_head(P, a1, w, C), k, opt));
    }
    return out;
}

template <class T>
std::vector<LiftSolution<T>> flat_family_ratio(const Family<T>& P, const T& c, CaseTag tag,
                                               const SolverOptions& opt) {
    if (split_tail(P)) throw WrongCase("case " + to_string(tag) + " needs beta1 = beta3");
    const T L = 1 / c;
    StructuralConstants<T> sc = structural_constants(P);
    const T w = -P.g(2) / P.g(3);
    Poly<T> poly;
    if (opt.paper_literal) {
        T r = P.g(2) / P.g(3);
        poly = {T(r * (P.b(2) - P.b(1))), T(-(r + c * (P.g(1) / P.g(3) - 1))), T(r * r)};
    } else {
        // a1 != 0 is possible only when the whole tail, gamma1 included, is flat
        if (!same_for_routing(P.b(2), P.b(1)) || !same_for_routing(P.g(1), P.g(2)) ||
            !same_for_routing(P.g(2), P.g(3)))
            return {};
        const T e = P.b(0) - P.b(1);
        const T g = P.g(2);
        poly = {T(-e * g * g), T(c * g * (g - e * e)), T(c * e * g), T(c * c * e * e)};
    }
    std::vector<LiftSolution<T>> out;
    for (const T& a1 : real_roots(poly)) {
        if (is_zero(a1, T(1))) continue;
        T a2 = c * a1 * a1;
        T C = opt.paper_literal ? c_literal(P, L, a1, a2, w, uses_case_three_form(tag))
                                : c_corrected(P, L, a1, a2, w);
        StructuralConstants<T> k = sc;
        k.w = w;
        k.ratio = c;
        k.C = C;
        out.push_back(finalize(P, tag, a1, a2, lifted_head(P, a1, w, C), k, opt));
    }
    return out;
}

template <class T>
void check_lambda(const T& lambda) {
    if (!(lambda > -1 && lambda < 1) || lambda == 0)
        throw InputError("lambda must lie in (-1, 1) without 0, got " + to_decimal(lambda));
}

}  // namespace

template <class T>
StructuralConstants<T> structural_constants(const Family<T>& P) {
    require_period_two(P);
    StructuralConstants<T> sc;
    const T d = P.b(3) - P.b(1);
    sc.s1 = (P.g(3) - P.g(1) - (P.b(2) - P.b(1)) * d) / P.g(3);
    if (split_tail(P)) {
        sc.s2 = P.g(2) / d;
        sc.s3 = P.g(3) / d;
    }
    return sc;
}

template <class T>
bool admissibility_check(const Family<T>& P, const T& a1) {
    T shift = a1 * (P.b(2) - P.b(3));
    T value = P.g(3) + shift;
    T scale = std::max({abs_value(P.g(3)), abs_value(shift), T(1)});
    return !negligible(value, scale, NumTraits<T>::zero_tol());
}

template <class T>
Poly<T> defining_polynomial(const Family<T>& P, const T& L) {
    StructuralConstants<T> sc = structural_constants(P);
    if (!sc.s3) throw WrongCase("defining polynomial needs beta1 != beta3");
    const T &s1 = sc.s1, &s2 = *sc.s2, &s3 = *sc.s3;
    T c0 = s1 * s2 + P.g(2) / P.g(3) * (P.b(2) - P.b(1));
    return {c0, T(L * s2 + s1 * s3), T(2 * L * s3), T(L * s3)};
}

template <class T>
Poly<T> literal_case_III_quartic(const Family<T>& P) {
    StructuralConstants<T> sc = structural_constants(P);
    if (!sc.s3) throw WrongCase("defining polynomial needs beta1 != beta3");
    const T &s1 = sc.s1, &s2 = *sc.s2, &s3 = *sc.s3;
    T c0 = s1 * s2 + P.g(2) / P.g(3) * (P.b(2) - P.b(1));
    return {c0, T(4 * s2 + s1 * s3), T(16 * s2 * s2 + 4 * s3 * s3), T(32 * s2 * s3), T(16 * s3 * s3)};
}

template <class T>
Poly<T> literal_lambda_quartic(const Family<T>& P, const T& L) {
    StructuralConstants<T> sc = structural_constants(P);
    if (!sc.s3) throw WrongCase("defining polynomial needs beta1 != beta3");
    const T &s1 = sc.s1, &s2 = *sc.s2, &s3 = *sc.s3;
    T c0 = s1 * s2 + P.g(2) / P.g(3) * (P.b(2) - P.b(1));
    return {c0, T(L * s2 + s1 * s3), T(L * L * s2 * s2 + L * s3), T(2 * L * s2 * s3), T(L * L * s3 * s3)};
}

template <class T>
LiftSolution<T> solve_case_I(const Family<T>& P, const SolverOptions& opt) {
    require_period_two(P);
    if (!split_tail(P)) throw WrongCase("wrong case for family: case I needs beta1 != beta3");
    StructuralConstants<T> sc = structural_constants(P);
    const T &s1 = sc.s1, &s3 = *sc.s3;
    const T& b0 = P.b(0);
    const T d = P.b(3) - P.b(1);
    T a2 = -s1 * s3 * s3;
    std::array<T, 3> t;
    if (opt.paper_literal) {
        t[0] = b0 + (d - b0) * P.g(1) / (P.g(2) * P.g(3)) * a2;
        t[1] = P.b(1) + a2 / s3 - t[0];
        t[2] = -a2 / s3;
    } else {
        t[2] = P.b(2) - a2 / s3;
        T bracket = (b0 * d + P.g(1)) * t[2] - (b0 * P.b(1) - P.g(1)) * d - b0 * P.g(3);
        t[0] = b0 + a2 / (P.g(2) * P.g(3)) * bracket;
        t[1] = b0 + P.b(1) + a2 / s3 - t[0];
    }
    return finalize(P, CaseTag::I, T(0), a2, t, sc, opt);
}

template <class T>
LiftSolution<T> solve_case_II(const Family<T>& P, const SolverOptions& opt) {
    require_period_two(P);
    if (split_tail(P)) throw WrongCase("wrong case for family: case II needs beta1 = beta3");
    if (!same_for_routing(P.g(3), P.g(1))) throw WrongCase("wrong case for family: case II needs gamma3 = gamma1");
    if (same_for_routing(P.b(2), P.b(0))) throw WrongCase("wrong case for family: case II needs beta2 != beta0");
    const T delta = P.b(2) - P.b(0);
    const T q = P.g(2) / delta;
    std::array<T, 3> t{T(P.b(1) - q), T(P.b(0) + q), P.b(2)};
    T a2 = P.g(2) * (P.b(1) - P.b(0)) / delta - q * q;
    return finalize(P, CaseTag::II, T(0), a2, t, structural_constants(P), opt);
}

template <class T>
std::vector<LiftSolution<T>> solve_with_ratio(const Family<T>& P, const T& c, CaseTag tag, const SolverOptions& opt) {
    require_period_two(P);
    if (c == 0) throw InputError("ratio a2/a1^2 must be nonzero");
    switch (tag) {
        case CaseTag::III:
        case CaseTag::V:
        case CaseTag::VII: return split_family_ratio(P, c, tag, opt);
        case CaseTag::IV:
        case CaseTag::VI:
        case CaseTag::VIII: return flat_family_ratio(P, c, tag, opt);
        default: throw InputError("cases I and II have a1 = 0 and no ratio");
    }
}

template <class T>
std::vector<LiftSolution<T>> solve_case_III(const Family<T>& P, const SolverOptions& opt) {
    return solve_with_ratio(P, T(Rational(1, 4)), CaseTag::III, opt);
}

template <class T>
std::vector<LiftSolution<T>> solve_case_IV(const Family<T>& P, const SolverOptions& opt) {
    return solve_with_ratio(P, T(Rational(1, 4)), CaseTag::IV, opt);
}

template <class T>
std::vector<LiftSolution<T>> solve_case_V(const Family<T>& P, const T& lambda, const SolverOptions& opt) {
    check_lambda(lambda);
    auto out = solve_with_ratio(P, ratio_from_lambda(lambda), CaseTag::V, opt);
    for (auto& s : out) s.constants.lambda = lambda;
    return out;
}

template <class T>
std::vector<LiftSolution<T>> solve_case_VI(const Family<T>& P, const T& lambda, const SolverOptions& opt) {
    check_lambda(lambda);
    auto out = solve_with_ratio(P, ratio_from_lambda(lambda), CaseTag::VI, opt);
    for (auto& s : out) s.constants.lambda = lambda;
    return out;
}

template <class T>
std::vector<LiftSolution<T>> solve_case_VII_VIII(const Family<T>& P, const T& theta, const SolverOptions& opt) {
    if constexpr (NumTraits<T>::exact) {
        (void)P;
        (void)theta;
        (void)opt;
        throw InputError("cases VII/VIII from theta need floating point; use solve_with_ratio");
    } else {
        using std::acos;
        using std::cos;
        const T pi = acos(T(-1));
        if (!(theta > 0 && theta < pi)) throw InputError("theta must lie in (0, pi), got " + to_decimal(theta));
        T half = cos(theta / 2);
        T c = 1 / (4 * half * half);
        CaseTag tag = split_tail(P) ? CaseTag::VII : CaseTag::VIII;
        auto out = solve_with_ratio(P, c, tag, opt);
        for (auto& s : out) s.constants.theta = theta;
        return out;
    }
}

template <class T>
std::vector<LiftSolution<T>> solve_requested(const Family<T>& P, CaseTag tag, const Grids& grids,
                                             const SolverOptions& opt) {
    require_period_two(P);
    std::vector<Rational> lambdas = grids.lambdas, thetas = grids.thetas;
    std::sort(lambdas.begin(), lambdas.end());
    std::sort(thetas.begin(), thetas.end());
    std::vector<LiftSolution<T>> out;
    auto append = [&out](std::vector<LiftSolution<T>> more) {
        for (auto& s : more) out.push_back(std::move(s));
    };
    switch (tag) {
        case CaseTag::I: out.push_back(solve_case_I(P, opt)); break;
        case CaseTag::II: out.push_back(solve_case_II(P, opt)); break;
        case CaseTag::III: append(solve_case_III(P, opt)); break;
        case CaseTag::IV: append(solve_case_IV(P, opt)); break;
        case CaseTag::V:
        case CaseTag::VI:
            if ((tag == CaseTag::V) != split_tail(P))
                throw WrongCase("wrong case for family: case " + to_string(tag) +
                                (tag == CaseTag::V ? " needs beta1 != beta3" : " needs beta1 = beta3"));
            for (const auto& l : lambdas)
                append(tag == CaseTag::V ? solve_case_V(P, convert<T>(l), opt) : solve_case_VI(P, convert<T>(l), opt));
            break;
        case CaseTag::VII:
        case CaseTag::VIII:
            if ((tag == CaseTag::VII) != split_tail(P))
                throw WrongCase("wrong case for family: case " + to_string(tag) +
                                (tag == CaseTag::VII ? " needs beta1 != beta3" : " needs beta1 = beta3"));
            if constexpr (!NumTraits<T>::exact)
                for (const auto& th : thetas) append(solve_case_VII_VIII(P, convert<T>(th), opt));
            break;
    }
    return out;
}

template <class T>
std::vector<LiftSolution<T>> enumerate_solutions(const Family<T>& P, const Grids& grids, const SolverOptions& opt) {
    require_period_two(P);
    std::vector<CaseTag> tags;
    if (split_tail(P))
        tags = {CaseTag::I, CaseTag::III, CaseTag::V, CaseTag::VII};
    else
        tags = {CaseTag::II, CaseTag::IV, CaseTag::VI, CaseTag::VIII};
    std::vector<LiftSolution<T>> out;
    for (CaseTag tag : tags) {
        std::vector<LiftSolution<T>> found;
        try {
            found = solve_requested(P, tag, grids, opt);
        } catch (const WrongCase&) {
            continue;  // case II side conditions not met
        }
        for (auto& s : found)
            if (s.admissible) out.push_back(std::move(s));
    }
    return out;
}

template <class T>
Classification classify_branch(const T& a1, const T& a2) {
    if (a2 == 0) throw InputError("classification needs a2 != 0");
    Classification out;
    HighFloat A1 = convert<HighFloat>(a1), A2 = convert<HighFloat>(a2);
    if constexpr (NumTraits<T>::exact) {
        if (a1 == 0) return out;
        T disc = a1 * a1 - 4 * a2;
        if (disc == 0) {
            out.branch = Branch::ii;
            return out;
        }
        out.branch = disc > 0 ? Branch::iii : Branch::iv;
    } else {
        using std::sqrt;
        if (abs_value(a1) <= NumTraits<T>::routing_tol() * std::max(T(1), T(sqrt(abs_value(a2))))) return out;
        T disc = a1 * a1 - 4 * a2;
        if (negligible(disc, std::max(T(a1 * a1), T(4 * abs_value(a2))), NumTraits<T>::routing_tol())) {
            out.branch = Branch::ii;
            return out;
        }
        out.branch = disc > 0 ? Branch::iii : Branch::iv;
    }
    if (out.branch == Branch::iii) {
        // a2 l^2 + (2 a2 - a1^2) l + a2 = 0; the two roots multiply to 1
        HighFloat B = 2 * A2 - A1 * A1;
        HighFloat D = A1 * A1 * (A1 * A1 - 4 * A2);
        HighFloat q = -(B + (B < 0 ? -1 : 1) * boost::multiprecision::sqrt(D)) / 2;
        HighFloat r1 = q / A2, r2 = A2 / q;
        out.parameter = abs_value(r1) < 1 ? r1 : r2;
    } else {
        HighFloat cs = A1 * A1 / (2 * A2) - 1;
        cs = std::clamp(cs, HighFloat(-1), HighFloat(1));
        out.parameter = boost::multiprecision::acos(cs);
    }
    return out;
}

#define OSCILLIFT_INSTANTIATE(T)                                                                                     \
    template StructuralConstants<T> structural_constants<T>(const Family<T>&);                                       \
    template bool admissibility_check<T>(const Family<T>&, const T&);                                                \
    template Poly<T> defining_polynomial<T>(const Family<T>&, const T&);                                             \
    template Poly<T> literal_case_III_quartic<T>(const Family<T>&);                                                  \
    template Poly<T> literal_lambda_quartic<T>(const Family<T>&, const T&);                                          \
    template LiftSolution<T> solve_case_I<T>(const Family<T>&, const SolverOptions&);                                \
    template LiftSolution<T> solve_case_II<T>(const Family<T>&, const SolverOptions&);                               \
    template std::vector<LiftSolution<T>> solve_case_III<T>(const Family<T>&, const SolverOptions&);                 \
    template std::vector<LiftSolution<T>> solve_case_IV<T>(const Family<T>&, const SolverOptions&);                  \
    template std::vector<LiftSolution<T>> solve_case_V<T>(const Family<T>&, const T&, const SolverOptions&);         \
    template std::vector<LiftSolution<T>> solve_case_VI<T>(const Family<T>&, const T&, const SolverOptions&);        \
    template std::vector<LiftSolution<T>> solve_case_VII_VIII<T>(const Family<T>&, const T&, const SolverOptions&);  \
    template std::vector<LiftSolution<T>> solve_with_ratio<T>(const Family<T>&, const T&, CaseTag,                   \
                                                              const SolverOptions&);                                 \
    template std::vector<LiftSolution<T>> solve_requested<T>(const Family<T>&, CaseTag, const Grids&,                \
                                                             const SolverOptions&);                                  \
    template std::vector<LiftSolution<T>> enumerate_solutions<T>(const Family<T>&, const Grids&,                     \
                                                                 const SolverOptions&);                              \
    template Classification classify_branch<T>(const T&, const T&);

OSCILLIFT_INSTANTIATE(double)
OSCILLIFT_INSTANTIATE(Rational)
OSCILLIFT_INSTANTIATE(HighFloat)
#undef OSCILLIFT_INSTANTIATE

}  // namespace oscillift
