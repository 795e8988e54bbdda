// One line per acceptance criterion. Criteria listed in `unattainable` are
// expected to fail for mathematical reasons; the binary exits 0 when exactly
// those fail and every other criterion passes.

#include "generators.hpp"

#include "oscillift/lift_solver.hpp"
#include "oscillift/oscillator.hpp"
#include "oscillift/verification.hpp"

#include <boost/math/constants/constants.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace oscillift;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Entry {
    CaseTag tag;
    Family<Rational> P;
    std::optional<Rational> lambda;  // V, VI
    std::optional<Rational> ratio;   // VII, VIII
    std::vector<LiftSolution<Rational>> solutions;  // admissible only
};

struct Sweep {
    std::vector<Entry> entries;
    std::string problem;  // first construction or solver failure
    double seconds = 0;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool all_positive(const Family<Rational>& f) {
    return std::all_of(f.gamma.begin(), f.gamma.end(), [](const Rational& g) { return g > 0; });
}

std::string head(const std::array<Rational, 3>& t) {
    return "(" + to_fraction(t[0]) + ", " + to_fraction(t[1]) + ", " + to_fraction(t[2]) + ")";
}

const std::vector<Rational> lambdas{Rational(1, 2), Rational(-1, 3), Rational(2, 5), Rational(-3, 4),
                                    Rational(1, 3), Rational(3, 5), Rational(-1, 2), Rational(1, 5)};
const std::vector<Rational> wide_ratios{Rational(1, 3), Rational(1, 2), Rational(1), Rational(2), Rational(3, 4),
                                        Rational(5, 2)};

Sweep& sweep() {
    static Sweep s = [] {
        Sweep out;
        auto t0 = Clock::now();
        gen::Rng rng(20240611);
        const int per_case = 100;
        auto fail = [&out](const std::string& why) {
            if (out.problem.empty()) out.problem = why;
        };
        for (CaseTag tag : {CaseTag::I, CaseTag::II, CaseTag::III, CaseTag::IV, CaseTag::V, CaseTag::VI,
                            CaseTag::VII, CaseTag::VIII}) {
            for (int i = 0; i < per_case; ++i) {
                Entry e{tag, {}, std::nullopt, std::nullopt, {}};
                std::optional<Family<Rational>> P;
                std::vector<LiftSolution<Rational>> found;
                switch (tag) {
                    case CaseTag::I:
                        if ((P = gen::case_I(rng))) found = {solve_case_I(*P)};
                        break;
                    case CaseTag::II:
                        if ((P = gen::case_II(rng))) found = {solve_case_II(*P)};
                        break;
                    case CaseTag::III:
                        if ((P = gen::split_ratio(rng, Rational(1, 4)))) found = solve_case_III(*P);
                        break;
                    case CaseTag::IV:
                        if ((P = gen::flat_ratio(rng, Rational(1, 4)))) found = solve_case_IV(*P);
                        break;
                    case CaseTag::V:
                        e.lambda = lambdas[i % lambdas.size()];
                        if ((P = gen::split_ratio(rng, ratio_from_lambda(*e.lambda)))) found = solve_case_V(*P, *e.lambda);
                        break;
                    case CaseTag::VI:
                        e.lambda = lambdas[i % lambdas.size()];
                        if ((P = gen::flat_ratio(rng, ratio_from_lambda(*e.lambda)))) found = solve_case_VI(*P, *e.lambda);
                        break;
                    case CaseTag::VII:
                        e.ratio = wide_ratios[i % wide_ratios.size()];
                        if ((P = gen::split_ratio(rng, *e.ratio))) found = solve_with_ratio(*P, *e.ratio, tag);
                        break;
                    case CaseTag::VIII:
                        e.ratio = wide_ratios[i % wide_ratios.size()];
                        if ((P = gen::flat_ratio(rng, *e.ratio))) found = solve_with_ratio(*P, *e.ratio, tag);
                        break;
                }
                if (!P) {
                    fail("no generated family for case " + to_string(tag));
                    continue;
                }
                e.P = *P;
                for (auto& s : found)
                    if (s.admissible) e.solutions.push_back(std::move(s));
                if (e.solutions.empty()) fail("case " + to_string(tag) + ": solver found no admissible lift");
                out.entries.push_back(std::move(e));
            }
        }
        out.seconds = since(t0);
        return out;
    }();
    return s;
}

Outcome criterion1() {
    auto t0 = Clock::now();
    auto P = gen::family(0, 1, 0, 2, 1, 1, 2);
    auto sol = solve_case_I(P);
    const std::array<Rational, 3> stated{Rational(-2), Rational(1), Rational(2)};
    Family<Rational> Q = with_beta_head(P, {stated[0], stated[1], stated[2]});
    auto oracle = exact_recurrence_oracle(P, Rational(0), Rational(-4), Q, 12);
    bool values = sol.a1 == 0 && sol.a2 == -4 && sol.beta_tilde == stated;
    double secs = since(t0);
    std::ostringstream os;
    os << "solver a2=" << to_fraction(sol.a2) << " beta~=" << head(sol.beta_tilde)
       << (sol.admissible ? " admissible" : " rejected (" + sol.reason + ")")
       << "; oracle on a2=-4 beta~=(-2, 1, 2): " << (oracle.ok() ? "match" : oracle.failure);
    return {values && sol.admissible && oracle.ok() && secs < 1.0, os.str()};
}

Outcome criterion2() {
    auto t0 = Clock::now();
    auto P = gen::family(0, 0, 1, 0, 1, 2, 1);
    auto sol = solve_case_II(P);
    const std::array<Rational, 3> stated{Rational(-2), Rational(2), Rational(1)};
    auto oracle = exact_recurrence_oracle(P, sol.a1, sol.a2, sol.q_family, 12);
    bool values = sol.a1 == 0 && sol.a2 == -4 && sol.beta_tilde == stated;
    double secs = since(t0);
    std::ostringstream os;
    os << "a2=" << to_fraction(sol.a2) << " beta~=" << head(sol.beta_tilde) << ", oracle "
       << (oracle.ok() ? "exact through n=12" : oracle.failure) << ", " << secs << " s";
    return {values && sol.admissible && oracle.ok() && secs < 1.0, os.str()};
}

Outcome criterion3() {
    auto t0 = Clock::now();
    Sweep& s = sweep();
    std::size_t solutions = 0, bad = 0;
    std::string first_bad;
    for (const auto& e : s.entries)
        for (const auto& sol : e.solutions) {
            ++solutions;
            auto r = exact_recurrence_oracle(e.P, sol.a1, sol.a2, sol.q_family, 12);
            if (!r.ok()) {
                if (!bad++) first_bad = "case " + to_string(e.tag) + ": " + r.failure;
            }
        }

    gen::Rng rng(77);
    std::size_t controls = 0, caught = 0;
    while (controls < 100) {
        const Entry& e = s.entries[static_cast<std::size_t>(rng.integer(0, static_cast<int>(s.entries.size()) - 1))];
        Rational a1 = rng.integer(0, 2) ? rng.rational(-6, 6) : Rational(0);
        Rational a2 = rng.rational(-6, 6);
        if (a2 == 0) continue;
        bool is_solution = std::any_of(e.solutions.begin(), e.solutions.end(),
                                       [&](const LiftSolution<Rational>& sol) { return sol.a1 == a1 && sol.a2 == a2; });
        if (is_solution) continue;
        ++controls;
        Family<Rational> cand = derive_candidate(e.P, a1, a2).value_or(e.P);
        if (!exact_recurrence_oracle(e.P, a1, a2, cand, 6).ok()) ++caught;
    }
    double secs = s.seconds + since(t0);
    std::ostringstream os;
    os << s.entries.size() << " families, " << solutions << " lifts, " << bad << " oracle failures, " << caught
       << "/100 controls rejected by n=6, " << secs << " s";
    if (!s.problem.empty()) os << "; " << s.problem;
    if (bad) os << "; " << first_bad;
    return {s.problem.empty() && bad == 0 && caught == 100 && secs < 60.0, os.str()};
}

// Whether a literal form of the case III equation vanishes at the lifts that
// the oracle certifies.
Outcome criterion4() {
    Sweep& s = sweep();
    std::size_t total = 0, literal_a = 0, literal_b = 0, cubic = 0;
    for (const auto& e : s.entries) {
        if (e.tag != CaseTag::III) continue;
        for (const auto& sol : e.solutions) {
            if (!exact_recurrence_oracle(e.P, sol.a1, sol.a2, sol.q_family, 12).ok()) continue;
            const Rational& w = *sol.constants.w;
            ++total;
            if (poly_eval(literal_case_III_quartic(e.P), w) == 0) ++literal_a;
            if (poly_eval(literal_lambda_quartic(e.P, Rational(4)), w) == 0) ++literal_b;
            if (poly_eval(defining_polynomial(e.P, Rational(4)), w) == 0) ++cubic;
        }
    }
    bool a_ok = total && literal_a == total, b_ok = total && literal_b == total;
    std::ostringstream os;
    os << "at " << total << " oracle-certified w: case III quartic vanishes " << literal_a
       << ", lambda quartic at lambda=1 vanishes " << literal_b << ", derived cubic vanishes " << cubic
       << "; neither literal form is oracle-consistent";
    if (a_ok != b_ok) os.str(std::string(a_ok ? "case III" : "lambda") + " quartic is oracle-consistent");
    return {a_ok != b_ok, os.str()};
}

Outcome criterion5() {
    Sweep& s = sweep();
    const HighFloat pi = boost::math::constants::pi<HighFloat>();
    std::size_t checked = 0, bad = 0;
    std::string first;
    auto expect = [](CaseTag t) {
        switch (t) {
            case CaseTag::I:
            case CaseTag::II: return Branch::i;
            case CaseTag::III:
            case CaseTag::IV: return Branch::ii;
            case CaseTag::V:
            case CaseTag::VI: return Branch::iii;
            default: return Branch::iv;
        }
    };
    auto note = [&](bool ok, const std::string& what) {
        ++checked;
        if (!ok && !bad++) first = what;
    };
    for (const auto& e : s.entries) {
        for (const auto& sol : e.solutions) {
            if (sol.a2 == 0) continue;
            Classification c = classify_branch(sol.a1, sol.a2);
            bool ok = c.branch == expect(e.tag);
            if (ok && e.lambda) ok = abs_value(HighFloat(c.parameter - HighFloat(*e.lambda))) <= 1e-10;
            note(ok, "case " + to_string(e.tag) + " classified as " + to_string(c.branch));
        }
        // theta cases go through the floating-point theta entry point
        if (e.ratio) {
            HighFloat theta = 2 * acos(1 / (2 * sqrt(HighFloat(*e.ratio))));
            if (!(theta > 0 && theta < pi)) {
                note(false, "ratio outside the theta range");
                continue;
            }
            for (const auto& sol : solve_case_VII_VIII(family_cast<HighFloat>(e.P), theta)) {
                if (!sol.admissible) continue;
                Classification c = classify_branch(sol.a1, sol.a2);
                note(c.branch == Branch::iv && abs_value(HighFloat(c.parameter - theta)) <= 1e-10,
                     "theta round trip for case " + to_string(e.tag));
            }
        }
    }
    std::ostringstream os;
    os << checked << " classifications, " << bad << " mismatches";
    if (bad) os << "; " << first;
    return {checked > 0 && bad == 0, os.str()};
}

Outcome criterion6() {
    Sweep& s = sweep();
    std::size_t checked = 0, unequal = 0;
    double worst = 0;
    for (const auto& e : s.entries) {
        if (!all_positive(e.P)) continue;
        Family<double> P = family_cast<double>(e.P);
        worst = std::max(worst, hamiltonian_spectrum(build_truncation(P, 64), P).max_rel_dev);
        for (const auto& sol : e.solutions) {
            ++checked;
            if (!algebras_equal(e.P, sol.q_family)) ++unequal;
            Family<double> Q = family_cast<double>(sol.q_family);
            worst = std::max(worst, hamiltonian_spectrum(build_truncation(Q, 64), Q).max_rel_dev);
        }
    }
    std::ostringstream os;
    os << checked << " lifts, " << unequal << " with different algebras, worst spectral deviation " << worst;
    return {checked > 0 && unequal == 0 && worst <= 1e-12, os.str()};
}

Outcome criterion7() {
    gen::Rng rng(7);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        Family<double> f = family_cast<double>(gen::random_family(rng));
        worst = std::max(worst, verify_algebra_relations(build_truncation(f, 64)).max());
    }
    std::ostringstream os;
    os << "20 families at dim 64, worst interior deviation " << worst;
    return {worst <= 1e-13, os.str()};
}

Outcome criterion8() {
    Sweep& s = sweep();
    std::size_t checked = 0;
    GramReport worst;
    for (const auto& e : s.entries)
        for (const auto& sol : e.solutions) {
            if (!all_positive(sol.q_family)) continue;
            ++checked;
            GramReport g = quadrature_orthogonality(family_cast<double>(sol.q_family), 15, 32);
            worst.max_offdiag = std::max(worst.max_offdiag, g.max_offdiag);
            worst.max_diag_dev = std::max(worst.max_diag_dev, g.max_diag_dev);
        }
    std::ostringstream os;
    os << checked << " lifted families, worst off-diagonal " << worst.max_offdiag << ", worst diagonal deviation "
       << worst.max_diag_dev;
    return {checked > 0 && worst.max_offdiag <= 1e-10 && worst.max_diag_dev <= 1e-10, os.str()};
}

// Largest componentwise difference over a1, a2 and the lifted head.
HighFloat lift_distance(const LiftSolution<HighFloat>& a, const LiftSolution<HighFloat>& b) {
    HighFloat d = std::max(abs_value(HighFloat(a.a1 - b.a1)), abs_value(HighFloat(a.a2 - b.a2)));
    for (std::size_t i = 0; i < 3; ++i) d = std::max(d, abs_value(HighFloat(a.beta_tilde[i] - b.beta_tilde[i])));
    return d;
}

HighFloat nearest(const LiftSolution<HighFloat>& s, const std::vector<LiftSolution<HighFloat>>& pool) {
    HighFloat best(1e300);
    for (const auto& p : pool) best = std::min(best, lift_distance(s, p));
    return best;
}

// Candidates are compared whether or not they are admissible: a lift at
// lambda != 1 generally fails the head condition, but the closed forms must
// still approach the case III ones. A double root of the case III equation may
// turn complex on one side of lambda = 1, so each case III candidate only
// needs a neighbour on one side. Near a double root the lifts move like the
// square root of the change in 1/c, about 1e-6 here, not like 1e-12.
Outcome criterion9() {
    Sweep& s = sweep();
    std::size_t families = 0, orphans = 0, flat = 0, flat_bad = 0;
    HighFloat worst(0);
    const HighFloat eps = HighFloat(1) / 1000000;
    for (const auto& e : s.entries) {
        if (e.tag == CaseTag::III) {
            ++families;
            Family<HighFloat> P = family_cast<HighFloat>(e.P);
            auto base = solve_case_III(P);
            auto below = solve_case_V(P, HighFloat(1 - eps));
            auto above = solve_with_ratio(P, ratio_from_lambda(HighFloat(1 + eps)), CaseTag::V);
            for (const auto* side : {&below, &above})
                for (const auto& v : *side) worst = std::max(worst, nearest(v, base));
            for (const auto& b : base)
                if (std::min(nearest(b, below), nearest(b, above)) > 1e-5) ++orphans;
        }
        if (e.tag == CaseTag::IV) {
            ++flat;
            auto four = solve_case_IV(e.P);
            auto six = solve_with_ratio(e.P, ratio_from_lambda(Rational(1)), CaseTag::VI);
            bool same = four.size() == six.size();
            for (std::size_t i = 0; same && i < four.size(); ++i)
                same = four[i].a1 == six[i].a1 && four[i].a2 == six[i].a2 &&
                       four[i].beta_tilde == six[i].beta_tilde && four[i].admissible == six[i].admissible;
            if (!same) ++flat_bad;
        }
    }
    std::ostringstream os;
    os << families << " case III families, worst distance at lambda=1+-1e-6 " << worst.convert_to<double>() << ", "
       << orphans << " case III lifts without a neighbour; case VI at lambda=1 differs from case IV in " << flat_bad
       << "/" << flat;
    return {families > 0 && flat > 0 && worst <= 1e-5 && orphans == 0 && flat_bad == 0, os.str()};
}

bool constant_gamma(const Family<Rational>& f) {
    return std::all_of(f.gamma.begin(), f.gamma.end(), [&](const Rational& g) { return g == f.gamma.front(); });
}

Outcome criterion10() {
    Sweep& s = sweep();
    std::size_t checked = 0, finite = 0;
    auto check = [&](const Family<Rational>& f) {
        if (constant_gamma(f) || !all_positive(f)) return;
        ++checked;
        if (dimension_check(family_cast<double>(f)) != DimensionVerdict::infinite) ++finite;
    };
    for (const auto& e : s.entries) {
        check(e.P);
        for (const auto& sol : e.solutions) check(sol.q_family);
    }
    gen::Rng rng(7);
    for (int i = 0; i < 20; ++i) check(gen::random_family(rng));
    std::ostringstream os;
    os << checked << " non-constant periodic families, " << finite << " not infinite";
    return {checked > 0 && finite == 0, os.str()};
}

}  // namespace

int main() {
    const std::set<int> unattainable{1, 4};
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"case I closed form", criterion1},
        {"case II closed form", criterion2},
        {"oracle sweep and negative controls", criterion3},
        {"quartic form arbitration", criterion4},
        {"branch classification round trip", criterion5},
        {"algebra equality and spectrum", criterion6},
        {"oscillator relations", criterion7},
        {"quadrature orthogonality", criterion8},
        {"lambda continuity", criterion9},
        {"infinite dimension", criterion10},
    };
    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        bool expected_fail = unattainable.count(id) > 0;
        if (o.pass == expected_fail) ++unexpected;
        std::printf("[%s] %d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str(),
                    expected_fail && !o.pass ? " (expected: unattainable)" : "");
        std::fflush(stdout);
    }
    return unexpected == 0 ? 0 : 1;
}
