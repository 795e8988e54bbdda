#include "oscillift/cli.hpp"

#include "oscillift/oscillator.hpp"

#include "CLI11.hpp"

#include <boost/math/constants/constants.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace oscillift::cli {

using nlohmann::json;

namespace {

struct Options {
    std::string input;
    std::string output;
    std::string format = "json";
    std::size_t dim = 0;
    bool paper_literal = false;
    std::string case_tag;
    std::vector<std::string> lambda_grids;
    std::vector<std::string> theta_grids;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw InputError("cannot write '" + o.output + "'");
    out << text;
}

RunConfig load_config(const Options& o) {
    RunConfig cfg = parse_config(read_json(o.input));
    if (o.paper_literal) cfg.request.paper_literal = true;
    if (!o.case_tag.empty()) {
        if (o.case_tag == "all")
            cfg.request.tag.reset();
        else
            cfg.request.tag = parse_case_tag(o.case_tag);
    }
    // grids given on the command line replace those in the file
    if (!o.lambda_grids.empty()) cfg.request.grids.lambdas.clear();
    if (!o.theta_grids.empty()) cfg.request.grids.thetas.clear();
    for (const auto& g : o.lambda_grids)
        for (auto& v : parse_grid(g)) cfg.request.grids.lambdas.push_back(v);
    for (const auto& g : o.theta_grids)
        for (auto& v : parse_grid(g)) cfg.request.grids.thetas.push_back(v);
    if (o.dim) cfg.truncation_dim = o.dim;
    return cfg;
}

// Grid points outside the parameter domains are dropped and reported.
Grids clean_grids(const Grids& in, std::vector<std::string>& notes) {
    Grids out;
    for (const auto& l : in.lambdas) {
        if (l > -1 && l < 1 && l != 0)
            out.lambdas.push_back(l);
        else
            notes.push_back("lambda " + to_fraction(l) + " skipped: it must lie in (-1,1) and differ from 0");
    }
    const HighFloat pi = boost::math::constants::pi<HighFloat>();
    for (const auto& t : in.thetas) {
        HighFloat th(t);
        if (th > 0 && th < pi)
            out.thetas.push_back(t);
        else
            notes.push_back("theta " + to_fraction(t) + " skipped: it must lie in (0,pi)");
    }
    std::sort(out.lambdas.begin(), out.lambdas.end());
    out.lambdas.erase(std::unique(out.lambdas.begin(), out.lambdas.end()), out.lambdas.end());
    std::sort(out.thetas.begin(), out.thetas.end());
    out.thetas.erase(std::unique(out.thetas.begin(), out.thetas.end()), out.thetas.end());
    return out;
}

bool same_lift(const LiftSolution<HighFloat>& h, const LiftSolution<Rational>& q) {
    if (h.tag != q.tag) return false;
    if (h.constants.lambda.has_value() != q.constants.lambda.has_value()) return false;
    if (h.constants.lambda && *h.constants.lambda != HighFloat(*q.constants.lambda)) return false;
    HighFloat drift = abs_value(HighFloat(h.a1 - HighFloat(q.a1))) + abs_value(HighFloat(h.a2 - HighFloat(q.a2)));
    for (std::size_t i = 0; i < 3; ++i) drift += abs_value(HighFloat(h.beta_tilde[i] - HighFloat(q.beta_tilde[i])));
    HighFloat scale = 1 + abs_value(h.a1) + abs_value(h.a2);
    for (const auto& b : h.beta_tilde) scale += abs_value(b);
    return drift <= NumTraits<HighFloat>::zero_tol() * scale;
}

std::string brief(const HighFloat& x) { return x.str(17, std::ios_base::fmtflags(0)); }

std::string solutions_text(const SolutionSet& s) {
    std::ostringstream os;
    os << s.solutions.size() << " solution(s)" << (s.paper_literal ? " [paper-literal]" : "") << "\n";
    for (const auto& rec : s.solutions) {
        const auto& v = rec.value;
        os << rec.id << ":";
        if (v.constants.lambda) os << " lambda=" << brief(*v.constants.lambda);
        if (v.constants.theta) os << " theta=" << brief(*v.constants.theta);
        os << " a1=" << brief(v.a1) << " a2=" << brief(v.a2) << " beta~=(";
        for (std::size_t i = 0; i < 3; ++i) os << (i ? ", " : "") << brief(v.beta_tilde[i]);
        os << ")";
        if (rec.exact) {
            os << " exact a1=" << to_fraction(rec.exact->a1) << " a2=" << to_fraction(rec.exact->a2) << " beta~=(";
            for (std::size_t i = 0; i < 3; ++i) os << (i ? ", " : "") << to_fraction(rec.exact->beta_tilde[i]);
            os << ")";
        }
        os << "\n";
    }
    for (const auto& n : s.notes) os << "note: " << n << "\n";
    return os.str();
}

std::vector<VerificationReport> verify_set(const SolutionSet& set, double residual_tol) {
    const Family<HighFloat> P = family_cast<HighFloat>(set.family);
    VerificationSettings settings;
    settings.residual_tol = residual_tol;
    std::vector<VerificationReport> reports;
    for (const auto& rec : set.solutions) {
        const LiftSolution<Rational>* exact = rec.exact ? &*rec.exact : nullptr;
        VerificationReport r = verify_solution(rec.id, P, rec.value, exact ? &set.family : nullptr, exact, settings);
        for (std::size_t i = 0; i < 3; ++i)
            if (rec.value.q_family.beta[i] != rec.value.beta_tilde[i]) {
                r.reasons.push_back("q_family head disagrees with beta_tilde");
                break;
            }
        if (rec.exact_conflict) r.reasons.push_back("exact and decimal records describe different lifts");
        r.passed = r.reasons.empty();
        reports.push_back(std::move(r));
    }
    return reports;
}

json spectrum_json(const Family<double>& f, std::size_t dim) {
    OscillatorTruncation t = build_truncation(f, dim);
    Spectrum s = hamiltonian_spectrum(t, f);
    json out;
    out["dim"] = dim;
    out["eigenvalues"] = s.eigenvalues;
    out["closed_form"] = s.closed_form;
    out["max_rel_dev"] = s.max_rel_dev;
    out["max_offdiag"] = s.max_offdiag;
    if (dim >= 3) {
        RelationReport rel = verify_algebra_relations(t);
        out["relations"] = {{"annihilate_create", rel.annihilate_create},
                            {"create_annihilate", rel.create_annihilate},
                            {"commutator_plus", rel.commutator_plus},
                            {"commutator_minus", rel.commutator_minus}};
    }
    return out;
}

bool positive(const Family<Rational>& f) {
    return std::all_of(f.gamma.begin(), f.gamma.end(), [](const Rational& g) { return g > 0; });
}

int cmd_solve(const Options& o) {
    RunConfig cfg = load_config(o);
    std::vector<std::string> notes;
    SolutionSet set = solve(cfg, notes);
    emit(o, o.format == "text" ? solutions_text(set) : solution_set_to_json(set).dump(2) + "\n");
    if (set.solutions.empty()) {
        std::cerr << "no admissible solution (" << notes.size() << " note(s) in the output)\n";
        return empty_result;
    }
    return ok;
}

int cmd_verify(const Options& o) {
    SolutionSet set = parse_solution_set(read_json(o.input));
    if (set.solutions.empty()) {
        std::cerr << "nothing to verify\n";
        return empty_result;
    }
    auto reports = verify_set(set, Tolerances{}.residual);
    bool all = std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.passed; });
    if (o.format == "text") {
        std::ostringstream os;
        for (const auto& r : reports) {
            os << r.solution_id << ": " << (r.passed ? "pass" : "fail") << " residual=" << r.residual
               << " oracle=" << (r.oracle_match ? "match" : "mismatch") << (r.oracle_exact ? " (exact)" : "")
               << " gram=" << r.gram_offdiag << "\n";
            for (const auto& why : r.reasons) os << "  " << why << "\n";
        }
        emit(o, os.str());
    } else {
        json out;
        out["reports"] = json::array();
        for (const auto& r : reports) out["reports"].push_back(report_to_json(r));
        out["all_pass"] = all;
        emit(o, out.dump(2) + "\n");
    }
    return all ? ok : verification_failed;
}

int cmd_spectrum(const Options& o) {
    json in = read_json(o.input);
    SolutionSet set;
    std::size_t dim = 64;
    if (in.is_object() && in.contains("solutions")) {
        set = parse_solution_set(in);
    } else {
        RunConfig cfg = parse_config(in);
        set.family = cfg.family;
        dim = cfg.truncation_dim;
    }
    if (o.dim) dim = o.dim;
    if (!positive(set.family)) throw InputError("spectrum requires positive-definite family");
    if (dim < 2) throw InputError("spectrum needs dim >= 2");
    Family<double> P = family_cast<double>(set.family);
    json out = spectrum_json(P, dim);
    out["dimension"] = to_string(dimension_check(P));
    out["lifts"] = json::array();
    for (const auto& rec : set.solutions) {
        Family<double> Q = family_cast<double>(rec.value.q_family);
        json q = spectrum_json(Q, dim);
        q["id"] = rec.id;
        q["algebras_equal"] = algebras_equal(family_cast<HighFloat>(set.family), rec.value.q_family);
        q["same_spectrum"] = q["eigenvalues"] == out["eigenvalues"];
        out["lifts"].push_back(q);
    }
    if (o.format == "text") {
        std::ostringstream os;
        os << "dim " << dim << ", max relative deviation " << out["max_rel_dev"].get<double>() << "\n";
        os << "eigenvalues:";
        for (double v : out["eigenvalues"]) os << " " << v;
        os << "\n";
        for (const auto& q : out["lifts"])
            os << q["id"].get<std::string>() << ": algebras_equal=" << q["algebras_equal"].get<bool>()
               << " same_spectrum=" << q["same_spectrum"].get<bool>() << "\n";
        emit(o, os.str());
    } else {
        emit(o, out.dump(2) + "\n");
    }
    return ok;
}

int cmd_report(const Options& o) {
    RunConfig cfg = load_config(o);
    std::vector<std::string> notes;
    SolutionSet set = solve(cfg, notes);
    auto reports = verify_set(set, cfg.tolerances.residual);
    bool all = std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.passed; });
    json spec;
    if (positive(cfg.family) && cfg.truncation_dim >= 2) {
        Family<double> P = family_cast<double>(cfg.family);
        spec = spectrum_json(P, cfg.truncation_dim);
        spec["dimension"] = to_string(dimension_check(P));
    }
    if (o.format == "json") {
        json out;
        out["solve"] = solution_set_to_json(set);
        out["reports"] = json::array();
        for (const auto& r : reports) out["reports"].push_back(report_to_json(r));
        out["all_pass"] = all;
        if (!spec.is_null()) out["spectrum"] = spec;
        emit(o, out.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << solutions_text(set);
        for (const auto& r : reports) {
            os << r.solution_id << ": " << (r.passed ? "verified" : "FAILED") << "\n";
            for (const auto& why : r.reasons) os << "  " << why << "\n";
        }
        if (!spec.is_null())
            os << "spectrum: dim " << cfg.truncation_dim << ", max relative deviation "
               << spec["max_rel_dev"].get<double>() << ", dimension " << spec["dimension"].get<std::string>() << "\n";
        emit(o, os.str());
    }
    if (set.solutions.empty()) return empty_result;
    return all ? ok : verification_failed;
}

}  // namespace

SolutionSet solve(const RunConfig& cfg, std::vector<std::string>& notes) {
    SolutionSet set;
    set.family = cfg.family;
    set.paper_literal = cfg.request.paper_literal;
    if (cfg.family.k != 2) throw InputError("the lift solver handles period k = 2 only");
    Grids grids = clean_grids(cfg.request.grids, notes);
    SolverOptions opt;
    opt.paper_literal = cfg.request.paper_literal;

    const Family<HighFloat> P = family_cast<HighFloat>(cfg.family);
    std::vector<LiftSolution<HighFloat>> found;
    std::vector<LiftSolution<Rational>> exact;
    if (cfg.request.tag) {
        for (auto& s : solve_requested(P, *cfg.request.tag, grids, opt)) {
            if (s.admissible)
                found.push_back(std::move(s));
            else {
                std::string at = s.constants.lambda ? " at lambda " + brief(*s.constants.lambda)
                                 : s.constants.theta ? " at theta " + brief(*s.constants.theta)
                                                     : "";
                notes.push_back("case " + to_string(s.tag) + at + " candidate rejected: " + s.reason);
            }
        }
        for (auto& s : solve_requested(cfg.family, *cfg.request.tag, grids, opt))
            if (s.admissible) exact.push_back(std::move(s));
    } else {
        found = enumerate_solutions(P, grids, opt);
        exact = enumerate_solutions(cfg.family, grids, opt);
    }

    std::map<CaseTag, int> counters;
    for (auto& s : found) {
        SolutionRecord rec;
        rec.id = to_string(s.tag) + "-" + std::to_string(counters[s.tag]++);
        for (const auto& e : exact)
            if (same_lift(s, e)) {
                rec.exact = e;
                break;
            }
        rec.value = std::move(s);
        set.solutions.push_back(std::move(rec));
    }
    set.notes = notes;
    return set;
}

int run(int argc, char** argv) {
    CLI::App app{"Lifts of orthogonal polynomial families that keep the generalised oscillator algebra"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--input", o.input, "config, family or solutions JSON")->required();
        sub->add_option("--output", o.output, "write here instead of stdout");
        sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };
    auto add_solver = [&o](CLI::App* sub) {
        sub->add_flag("--paper-literal", o.paper_literal, "use the literal closed forms instead of the corrected ones");
        sub->add_option("--case", o.case_tag, "I..VIII or all");
        sub->add_option("--lambda-grid", o.lambda_grids, "a:b:step for cases V/VI");
        sub->add_option("--theta-grid", o.theta_grids, "a:b:step in radians for cases VII/VIII");
        sub->add_option("--dim", o.dim, "truncation dimension");
    };
    CLI::App* solve_cmd = app.add_subcommand("solve", "find every admissible lift");
    CLI::App* verify_cmd = app.add_subcommand("verify", "check a solutions file");
    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Hamiltonian spectrum of P and its lifts");
    CLI::App* report_cmd = app.add_subcommand("report", "solve, verify and summarise");
    for (CLI::App* sub : {solve_cmd, verify_cmd, spectrum_cmd, report_cmd}) add_common(sub);
    add_solver(solve_cmd);
    add_solver(report_cmd);
    spectrum_cmd->add_option("--dim", o.dim, "truncation dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }
    if (report_cmd->parsed() && report_cmd->count("--format") == 0) o.format = "text";

    try {
        working_digits();
        if (solve_cmd->parsed()) return cmd_solve(o);
        if (verify_cmd->parsed()) return cmd_verify(o);
        if (spectrum_cmd->parsed()) return cmd_spectrum(o);
        return cmd_report(o);
    } catch (const WrongCase& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON field: " << e.what() << "\n";
        return input_error;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> storage{"oscillift"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace oscillift::cli
