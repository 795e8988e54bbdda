#include "oscillift/io.hpp"

#include <set>

namespace oscillift {

using nlohmann::json;

namespace {

std::vector<Rational> number_list(const json& j, const std::string& what) {
    std::vector<Rational> out;
    if (j.is_array()) {
        for (const auto& v : j) out.push_back(parse_number(v));
    } else if (j.is_number() || j.is_string()) {
        out.push_back(parse_number(j));
    } else {
        throw InputError("'" + what + "' must be a number or a list of numbers");
    }
    return out;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw InputError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
json constants_to_json(const StructuralConstants<T>& c) {
    json out;
    out["s1"] = to_decimal(c.s1);
    auto put = [&out](const char* key, const std::optional<T>& v) {
        if (v) out[key] = to_decimal(*v);
    };
    put("s2", c.s2);
    put("s3", c.s3);
    put("w", c.w);
    put("lambda", c.lambda);
    put("theta", c.theta);
    put("ratio", c.ratio);
    put("C", c.C);
    return out;
}

HighFloat parse_high(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.find('/') != std::string::npos) return HighFloat(parse_rational(s));
        try {
            return HighFloat(s);
        } catch (const std::exception&) {
            throw InputError("not a number: '" + s + "'");
        }
    }
    return HighFloat(parse_number(j));
}

std::optional<HighFloat> optional_high(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return parse_high(j.at(key));
}

}  // namespace

Rational parse_number(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
    if (j.is_number_float()) return rational_from_double(j.get<double>());
    throw InputError("expected a number or a \"p/q\" string, got " + j.dump());
}

Family<Rational> parse_family(const json& j) {
    if (!j.is_object()) throw InputError("family must be a JSON object");
    reject_unknown_keys(j, {"k", "beta_head", "beta", "gamma", "definiteness"}, "family");
    int k = 2;
    if (j.contains("k")) {
        if (!j.at("k").is_number_integer()) throw InputError("'k' must be an integer");
        k = j.at("k").get<int>();
    }
    std::size_t head = 2;
    if (j.contains("beta_head")) {
        if (!j.at("beta_head").is_number_integer() || j.at("beta_head").get<long long>() < 2)
            throw InputError("'beta_head' must be an integer >= 2");
        head = j.at("beta_head").get<std::size_t>();
    }
    if (!j.contains("beta") || !j.at("beta").is_array()) throw InputError("family needs a 'beta' list");
    if (!j.contains("gamma") || !j.at("gamma").is_array()) throw InputError("family needs a 'gamma' list");
    Definiteness def = Definiteness::positive;
    if (j.contains("definiteness")) {
        const auto& d = j.at("definiteness");
        if (d == "positive")
            def = Definiteness::positive;
        else if (d == "quasi")
            def = Definiteness::quasi;
        else
            throw InputError("definiteness must be \"positive\" or \"quasi\"");
    }
    return make_family(k, number_list(j.at("beta"), "beta"), number_list(j.at("gamma"), "gamma"), def, head);
}

json family_to_json(const Family<Rational>& f) {
    json out;
    out["k"] = f.k;
    if (f.head != 2) out["beta_head"] = f.head;
    out["beta"] = json::array();
    out["gamma"] = json::array();
    for (const auto& b : f.beta) out["beta"].push_back(to_fraction(b));
    for (const auto& g : f.gamma) out["gamma"].push_back(to_fraction(g));
    out["definiteness"] = f.definiteness == Definiteness::positive ? "positive" : "quasi";
    return out;
}

json family_to_json(const Family<HighFloat>& f) {
    json out;
    out["k"] = f.k;
    if (f.head != 2) out["beta_head"] = f.head;
    out["beta"] = json::array();
    out["gamma"] = json::array();
    for (const auto& b : f.beta) out["beta"].push_back(to_decimal(b));
    for (const auto& g : f.gamma) out["gamma"].push_back(to_decimal(g));
    out["definiteness"] = f.definiteness == Definiteness::positive ? "positive" : "quasi";
    return out;
}

std::vector<Rational> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        auto pos = spec.find(':', start);
        parts.push_back(spec.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() == 1) return {parse_rational(parts[0])};
    if (parts.size() != 3) throw InputError("grid must look like a:b:step, got '" + spec + "'");
    Rational a = parse_rational(parts[0]), b = parse_rational(parts[1]), step = parse_rational(parts[2]);
    if (step <= 0) throw InputError("grid step must be positive");
    if (b < a) throw InputError("grid end lies before its start");
    std::vector<Rational> out;
    for (Rational x = a; x <= b; x += step) {
        out.push_back(x);
        if (out.size() > 100000) throw InputError("grid has too many points");
    }
    return out;
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw InputError("config must be a JSON object");
    RunConfig cfg;
    if (!j.contains("family")) {
        cfg.family = parse_family(j);
        return cfg;
    }
    reject_unknown_keys(j, {"family", "request", "truncation_dim", "tolerances", "output", "solutions", "paper_literal"},
                        "config");
    cfg.family = parse_family(j.at("family"));
    if (j.contains("request")) {
        const json& r = j.at("request");
        if (!r.is_object()) throw InputError("'request' must be an object");
        reject_unknown_keys(r, {"case", "lambda", "theta", "paper_literal"}, "request");
        if (r.contains("case")) {
            if (!r.at("case").is_string()) throw InputError("'case' must be a string");
            std::string c = r.at("case").get<std::string>();
            if (c != "all") cfg.request.tag = parse_case_tag(c);
        }
        // a list of values or an "a:b:step" grid
        auto values = [](const json& v, const std::string& what) {
            return v.is_string() ? parse_grid(v.get<std::string>()) : number_list(v, what);
        };
        if (r.contains("lambda")) cfg.request.grids.lambdas = values(r.at("lambda"), "lambda");
        if (r.contains("theta")) cfg.request.grids.thetas = values(r.at("theta"), "theta");
        if (r.contains("paper_literal")) {
            if (!r.at("paper_literal").is_boolean()) throw InputError("'paper_literal' must be a boolean");
            cfg.request.paper_literal = r.at("paper_literal").get<bool>();
        }
    }
    if (j.contains("truncation_dim")) {
        if (!j.at("truncation_dim").is_number_integer()) throw InputError("'truncation_dim' must be an integer");
        long long d = j.at("truncation_dim").get<long long>();
        if (d < 1) throw InputError("'truncation_dim' must be positive");
        cfg.truncation_dim = static_cast<std::size_t>(d);
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        reject_unknown_keys(t, {"zero", "residual", "case_routing"}, "tolerances");
        auto get = [&t](const char* key, double& slot) {
            if (!t.contains(key)) return;
            if (!t.at(key).is_number() || t.at(key).get<double>() <= 0)
                throw InputError(std::string("tolerance '") + key + "' must be a positive number");
            slot = t.at(key).get<double>();
        };
        get("zero", cfg.tolerances.zero);
        get("residual", cfg.tolerances.residual);
        get("case_routing", cfg.tolerances.case_routing);
    }
    return cfg;
}

json solution_set_to_json(const SolutionSet& s) {
    json out;
    out["family"] = family_to_json(s.family);
    out["paper_literal"] = s.paper_literal;
    out["precision_digits"] = working_digits();
    out["solutions"] = json::array();
    for (const auto& rec : s.solutions) {
        const auto& v = rec.value;
        json js;
        js["id"] = rec.id;
        js["case"] = to_string(v.tag);
        js["a1"] = to_decimal(v.a1);
        js["a2"] = to_decimal(v.a2);
        js["beta_tilde"] = json::array();
        for (const auto& b : v.beta_tilde) js["beta_tilde"].push_back(to_decimal(b));
        js["q_family"] = family_to_json(v.q_family);
        js["constants"] = constants_to_json(v.constants);
        js["admissible"] = v.admissible;
        js["reason"] = v.reason;
        js["head_defect"] = to_decimal(v.head_defect);
        if (rec.exact) {
            const auto& e = *rec.exact;
            json je;
            je["a1"] = to_fraction(e.a1);
            je["a2"] = to_fraction(e.a2);
            je["beta_tilde"] = json::array();
            for (const auto& b : e.beta_tilde) je["beta_tilde"].push_back(to_fraction(b));
            je["q_family"] = family_to_json(e.q_family);
            js["exact"] = je;
        }
        out["solutions"].push_back(js);
    }
    if (!s.notes.empty()) out["notes"] = s.notes;
    return out;
}

SolutionSet parse_solution_set(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j.contains("solutions") || !j.at("solutions").is_array())
        throw InputError("solutions file needs 'family' and a 'solutions' list");
    SolutionSet s;
    s.family = parse_family(j.at("family"));
    if (j.contains("paper_literal")) s.paper_literal = j.at("paper_literal").get<bool>();
    const Family<HighFloat> P = family_cast<HighFloat>(s.family);
    std::size_t index = 0;
    for (const auto& js : j.at("solutions")) {
        SolutionRecord rec;
        rec.id = js.contains("id") ? js.at("id").get<std::string>() : "solution-" + std::to_string(index);
        ++index;
        auto& v = rec.value;
        if (!js.contains("case") || !js.contains("a1") || !js.contains("a2") || !js.contains("beta_tilde"))
            throw InputError("solution '" + rec.id + "' needs case, a1, a2 and beta_tilde");
        v.tag = parse_case_tag(js.at("case").get<std::string>());
        v.a1 = parse_high(js.at("a1"));
        v.a2 = parse_high(js.at("a2"));
        const auto& bt = js.at("beta_tilde");
        if (!bt.is_array() || bt.size() != 3) throw InputError("beta_tilde needs three entries");
        for (std::size_t i = 0; i < 3; ++i) v.beta_tilde[i] = parse_high(bt[i]);
        if (js.contains("q_family")) {
            const auto& q = js.at("q_family");
            Family<HighFloat> qf = P;
            qf.head = q.value("beta_head", std::size_t{2});
            qf.beta.clear();
            qf.gamma.clear();
            for (const auto& b : q.at("beta")) qf.beta.push_back(parse_high(b));
            for (const auto& g : q.at("gamma")) qf.gamma.push_back(parse_high(g));
            if (qf.head < 2 || qf.beta.size() != qf.head + static_cast<std::size_t>(P.k) ||
                qf.gamma.size() != P.gamma.size())
                throw InputError("q_family of '" + rec.id + "' has the wrong shape");
            v.q_family = qf;
        } else {
            v.q_family = with_beta_head(P, {v.beta_tilde[0], v.beta_tilde[1], v.beta_tilde[2]});
        }
        if (js.contains("constants")) {
            const auto& c = js.at("constants");
            if (c.contains("s1")) v.constants.s1 = parse_high(c.at("s1"));
            v.constants.s2 = optional_high(c, "s2");
            v.constants.s3 = optional_high(c, "s3");
            v.constants.w = optional_high(c, "w");
            v.constants.lambda = optional_high(c, "lambda");
            v.constants.theta = optional_high(c, "theta");
            v.constants.ratio = optional_high(c, "ratio");
            v.constants.C = optional_high(c, "C");
        }
        v.admissible = js.value("admissible", true);
        v.reason = js.value("reason", std::string());
        if (js.contains("exact")) {
            const auto& je = js.at("exact");
            LiftSolution<Rational> e;
            e.tag = v.tag;
            e.a1 = parse_number(je.at("a1"));
            e.a2 = parse_number(je.at("a2"));
            for (std::size_t i = 0; i < 3; ++i) e.beta_tilde[i] = parse_number(je.at("beta_tilde")[i]);
            e.q_family = je.contains("q_family") ? parse_family(je.at("q_family"))
                                                 : with_beta_head(s.family, {e.beta_tilde[0], e.beta_tilde[1], e.beta_tilde[2]});
            e.admissible = v.admissible;
            // the exact record must describe the same lift as the decimal one
            HighFloat drift = abs_value(HighFloat(HighFloat(e.a1) - v.a1)) + abs_value(HighFloat(HighFloat(e.a2) - v.a2));
            for (std::size_t i = 0; i < 3; ++i) drift += abs_value(HighFloat(HighFloat(e.beta_tilde[i]) - v.beta_tilde[i]));
            HighFloat scale = 1 + abs_value(v.a1) + abs_value(v.a2);
            rec.exact_conflict = drift > NumTraits<HighFloat>::zero_tol() * scale;
            rec.exact = e;
        }
        s.solutions.push_back(std::move(rec));
    }
    return s;
}

json report_to_json(const VerificationReport& r) {
    json out;
    out["solution"] = r.solution_id;
    out["residual"] = r.residual;
    out["oracle_match"] = r.oracle_match;
    out["oracle_exact"] = r.oracle_exact;
    if (r.oracle_first_bad_degree) out["oracle_first_bad_degree"] = *r.oracle_first_bad_degree;
    out["gram_offdiag"] = r.gram_offdiag;
    out["gram_diag_dev"] = r.gram_diag_dev;
    out["verdict"] = r.passed ? "pass" : "fail";
    out["reasons"] = r.reasons;
    return out;
}

}  // namespace oscillift
