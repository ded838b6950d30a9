// diffalg: batch front end for exact difference-algebra experiments.
//
// Subcommands: validate | solve | certificate | relation | corpus | independence
// Every report embeds the exact configuration that produced it; outputs are
// deterministic byte-for-byte for a fixed command line and seed.

#include <CLI11.hpp>

#include <diffalg/io.hpp>

#include <fstream>
#include <iostream>

using namespace diffalg;

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct PairArgs {
    std::string case_name = "2M";
    std::string phi = "2";
    std::string sigma = "3";

    void attach(CLI::App* cmd) {
        cmd->add_option("--case", case_name, "operator case: 2S, 2Q, or 2M")->capture_default_str();
        cmd->add_option("--phi", phi, "phi parameter (field element expression)")->capture_default_str();
        cmd->add_option("--sigma", sigma, "sigma parameter (field element expression)")->capture_default_str();
    }

    OperatorPair build() const {
        GaussianRational p = parse_constant(phi), s = parse_constant(sigma);
        if (case_name == "2S") return OperatorPair(OpCase::shift_2s, p, s);
        if (case_name == "2Q") return OperatorPair(OpCase::qdiff_2q, p, s);
        if (case_name == "2M") return OperatorPair(OpCase::mahler_2m, p, s);
        throw std::invalid_argument("unknown case '" + case_name + "' (expected 2S, 2Q, or 2M)");
    }

    Json config() const {
        Json j;
        j["case"] = case_name;
        j["phi"] = phi;
        j["sigma"] = sigma;
        return j;
    }
};

Json base_report(const std::string& command, Json config, long seed) {
    Json j;
    j["tool"] = "diffalg";
    j["version"] = kToolVersion;
    j["command"] = command;
    config["seed"] = seed;
    j["config"] = std::move(config);
    return j;
}

void emit(const Json& report, const std::string& out, const std::vector<std::string>& summary) {
    for (const auto& line : summary) std::cout << "# " << line << "\n";
    std::string text = report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file " + out);
        f << text;
        std::cout << "# report written to " << out << "\n";
    }
}

OpRole parse_role(const std::string& s) {
    if (s == "phi") return OpRole::phi;
    if (s == "sigma") return OpRole::sigma;
    throw std::invalid_argument("role must be phi or sigma");
}

// input specs: mahler:<p> | rational:<expr> | file:<path>
struct ResolvedInput {
    RelationInput input;
    std::string spec;
    bool is_rational_source = false;
    RationalFunction rational;
    std::optional<long> mahler_p;
};

ResolvedInput resolve_input(const std::string& spec, long order, const std::string& name) {
    ResolvedInput out;
    out.spec = spec;
    out.input.name = name;
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "mahler") {
        long p = std::stol(arg);
        out.mahler_p = p;
        out.input.series = mahler_power_sum(p, order).series;
        out.input.extend = [p](long n) { return mahler_power_sum(p, n).series; };
        return out;
    }
    if (kind == "rational") {
        RationalFunction f = parse_rational_function(arg);
        out.is_rational_source = true;
        out.rational = f;
        out.input.series = to_series_at_zero(f, order);
        out.input.extend = [f](long n) { return to_series_at_zero(f, n); };
        return out;
    }
    if (kind == "file") {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("cannot open series file " + arg);
        Json j = Json::parse(in);
        out.input.series = series_from_json<Locus::at_zero>(j);
        return out;
    }
    throw std::invalid_argument("unknown input spec '" + spec + "' (expected mahler:<p>, rational:<expr>, file:<path>)");
}

int run(int argc, char** argv) {
    CLI::App app{"exact toolkit for linear difference equations under shift, q-difference, and Mahler operators"};
    app.require_subcommand(1);
    app.fallthrough();
    long seed = 0;
    app.add_option("--seed", seed, "seed recorded in reports (property suites are seeded externally)");

    // ---- validate ----
    auto* validate = app.add_subcommand("validate", "check the independence hypotheses of an operator pair");
    PairArgs vp;
    vp.attach(validate);
    std::string v_out;
    validate->add_option("--out", v_out, "write the report to a file");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "solve phi(y) = a*y + b as a truncated series");
    PairArgs sp;
    sp.attach(solve);
    std::string s_role = "phi", s_a = "1", s_b = "0", s_out;
    long s_order = 32;
    solve->add_option("--role", s_role, "which operator of the pair acts")->capture_default_str();
    solve->add_option("--a", s_a, "coefficient a (rational function expression)")->capture_default_str();
    solve->add_option("--b", s_b, "inhomogeneity b")->capture_default_str();
    solve->add_option("--order", s_order, "target trusted order")->capture_default_str();
    solve->add_option("--out", s_out, "write the report to a file");

    // ---- certificate ----
    auto* cert = app.add_subcommand("certificate", "decide a = c*x^n*phi(b)/b and verify the witness");
    PairArgs cp;
    cp.attach(cert);
    std::string c_role = "phi", c_a = "1", c_out;
    long c_kmax = 64, c_order = 256, c_bound = 24;
    cert->add_option("--role", c_role)->capture_default_str();
    cert->add_option("--a", c_a, "the coefficient to test")->capture_default_str();
    cert->add_option("--kmax", c_kmax, "bounded discrete-log search limit (|q| = 1)")->capture_default_str();
    cert->add_option("--order", c_order, "solve order for the Mahler route")->capture_default_str();
    cert->add_option("--bound", c_bound, "guess degree bound for the Mahler route")->capture_default_str();
    cert->add_option("--out", c_out, "write the report to a file");

    // ---- relation ----
    auto* rel = app.add_subcommand("relation", "bounded-degree relation search / sigma probes / dimension profiles");
    PairArgs rp;
    rp.attach(rel);
    std::string r_inputs, r_out;
    long r_deg = 2, r_xdeg = 4, r_order = 120, r_probe = -1, r_imax = -1;
    rel->add_option("--inputs", r_inputs, "comma-separated input specs (mahler:<p>, rational:<expr>, file:<path>)")
        ->required();
    rel->add_option("--deg", r_deg, "total degree bound D")->capture_default_str();
    rel->add_option("--xdeg", r_xdeg, "x-degree bound Dx")->capture_default_str();
    rel->add_option("--order", r_order, "truncation N")->capture_default_str();
    rel->add_option("--probe", r_probe, "run sigma_probe with this many twists (single input)");
    rel->add_option("--imax", r_imax, "emit a sigma-dimension profile up to this twist count (single input)");
    rel->add_option("--out", r_out, "write the report to a file");

    // ---- corpus ----
    auto* corpus = app.add_subcommand("corpus", "generate a named series with its annihilator");
    std::string k_name = "mahler_power_sum", k_q = "2", k_alphas, k_betas, k_prefix = "corpus_member", k_out;
    long k_p = 2, k_order = 128;
    corpus->add_option("--name", k_name, "mahler_power_sum or basic_hypergeometric")->capture_default_str();
    corpus->add_option("--p", k_p, "Mahler parameter")->capture_default_str();
    corpus->add_option("--q", k_q, "q parameter for basic_hypergeometric")->capture_default_str();
    corpus->add_option("--alphas", k_alphas, "comma-separated alpha parameters");
    corpus->add_option("--betas", k_betas, "comma-separated beta parameters");
    corpus->add_option("--order", k_order, "trusted order")->capture_default_str();
    corpus->add_option("--prefix", k_prefix, "output file prefix")->capture_default_str();
    corpus->add_option("--out", k_out, "write the manifest to a file");

    // ---- independence ----
    auto* indep = app.add_subcommand("independence", "desk-scale algebraic-independence experiment for two series");
    std::string i_f = "mahler:2", i_g = "mahler:3", i_out;
    long i_deg = 4, i_xdeg = 8, i_order = 300, i_guess = 20;
    indep->add_option("--f", i_f, "first input spec")->capture_default_str();
    indep->add_option("--g", i_g, "second input spec")->capture_default_str();
    indep->add_option("--deg", i_deg, "total degree bound D")->capture_default_str();
    indep->add_option("--xdeg", i_xdeg, "x-degree bound Dx")->capture_default_str();
    indep->add_option("--order", i_order, "truncation N")->capture_default_str();
    indep->add_option("--guessbound", i_guess, "rationality guess degree bound")->capture_default_str();
    indep->add_option("--out", i_out, "write the report to a file");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        OperatorPair pair = vp.build();
        ValidationReport rep = validate_pair(pair);
        Json report = base_report("validate", vp.config(), seed);
        report["validation"] = to_json(rep);
        std::vector<std::string> summary = {
            "validate " + pair.str(),
            std::string("hard conditions: ") + (rep.hard_ok() ? "pass" : "FAIL"),
            std::string("independence hypotheses (incl. warnings): ") + (rep.hypotheses_ok() ? "pass" : "FAIL")};
        emit(report, v_out, summary);
        return 0;
    }

    if (solve->parsed()) {
        OperatorPair pair = sp.build();
        OpRole role = parse_role(s_role);
        RationalFunction a = parse_rational_function(s_a), b = parse_rational_function(s_b);
        Json config = sp.config();
        config["role"] = s_role;
        config["a"] = s_a;
        config["b"] = s_b;
        config["order"] = s_order;
        Json report = base_report("solve", std::move(config), seed);
        std::vector<std::string> summary;
        try {
            Order1Solution sol = solve_order1(a, b, pair, role, s_order);
            report["verdict"] = "Solved";
            Json j;
            if (std::holds_alternative<PuiseuxSeries>(sol.series)) {
                j["series"] = to_json(sol.puiseux());
                summary.push_back("solution: " + sol.puiseux().str());
            } else {
                j["series"] = to_json(sol.at_infinity());
                summary.push_back("solution: " + sol.at_infinity().str());
            }
            j["satisfied_equation"] = to_json(sol.satisfied);
            j["stripped_constant"] = sol.stripped_constant.str();
            j["stripped_exponent"] = rational_str(sol.stripped_exponent);
            Json free_choices = Json::array();
            for (auto& [e, v] : sol.free_choices) {
                Json fc;
                fc["exponent"] = rational_str(e);
                fc["value"] = v.str();
                free_choices.push_back(std::move(fc));
            }
            j["normalizations"] = std::move(free_choices);
            ResidualReport rc = std::holds_alternative<PuiseuxSeries>(sol.series)
                                    ? residual_check(sol.satisfied, sol.puiseux())
                                    : residual_check(sol.satisfied, sol.at_infinity());
            j["residual"] = rc.zero ? "Zero" : "Nonzero";
            j["residual_checked_to"] = rational_str(rc.checked_order);
            report["solution"] = std::move(j);
            summary.push_back("residual: Zero to order " + rational_str(rc.checked_order));
        } catch (const Resonance& r) {
            report["verdict"] = "Resonance";
            report["obstructed_exponent"] = rational_str(r.exponent);
            summary.push_back("resonance obstructs exponent " + rational_str(r.exponent));
        } catch (const NoFormalSolution& e) {
            report["verdict"] = "NoFormalSolution";
            report["detail"] = e.what();
            summary.push_back(e.what());
        }
        emit(report, s_out, summary);
        return 0;
    }

    if (cert->parsed()) {
        OperatorPair pair = cp.build();
        OpRole role = parse_role(c_role);
        RationalFunction a = parse_rational_function(c_a);
        CertificateOptions opts;
        opts.k_max = c_kmax;
        opts.mahler_order = c_order;
        opts.mahler_guess_bound = c_bound;
        Json config = cp.config();
        config["role"] = c_role;
        config["a"] = c_a;
        config["kmax"] = c_kmax;
        config["order"] = c_order;
        config["bound"] = c_bound;
        Json report = base_report("certificate", std::move(config), seed);
        std::vector<std::string> summary;
        auto dec = decide_certificate(a, pair, role, opts);
        switch (dec.status) {
            case CertificateDecision::Status::found: {
                report["verdict"] = "CertificateFound";
                report["certificate"] = to_json(*dec.certificate);
                auto ver = verify_certificate(a, *dec.certificate, pair, role);
                report["verified"] = ver.valid;
                if (!ver.valid) throw std::logic_error("returned certificate failed verification");
                summary.push_back("certificate: c=" + dec.certificate->c.str() + ", n=" +
                                  rational_str(dec.certificate->n) + ", b=" + dec.certificate->b.str());
                summary.push_back("verified exactly");
                break;
            }
            case CertificateDecision::Status::no_certificate:
                report["verdict"] = "NoCertificate";
                report["detail"] = dec.detail;
                summary.push_back("no certificate: " + dec.detail);
                break;
            case CertificateDecision::Status::inconclusive:
                report["verdict"] = "Inconclusive";
                report["bound"] = dec.bound;
                report["detail"] = dec.detail;
                summary.push_back("inconclusive at bound " + std::to_string(dec.bound) + ": " + dec.detail);
                break;
        }
        if (pair.op_case() == OpCase::shift_2s)
            report["h1_divisor"] = to_json(shift_divisor(a, pair.param(role)));
        emit(report, c_out, summary);
        return 0;
    }

    if (rel->parsed()) {
        Json config = rp.config();
        config["inputs"] = r_inputs;
        config["deg"] = r_deg;
        config["xdeg"] = r_xdeg;
        config["order"] = r_order;
        if (r_probe >= 0) config["probe"] = r_probe;
        if (r_imax >= 0) config["imax"] = r_imax;
        Json report = base_report("relation", std::move(config), seed);
        std::vector<ResolvedInput> inputs;
        {
            std::string rest = r_inputs;
            size_t idx = 1;
            while (!rest.empty()) {
                auto comma = rest.find(',');
                std::string spec = rest.substr(0, comma);
                rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
                inputs.push_back(resolve_input(spec, r_order, "Y" + std::to_string(idx++)));
            }
        }
        if (inputs.empty()) throw std::invalid_argument("no inputs given");
        RelationQuery query{r_deg, r_xdeg, r_order, true};
        std::vector<std::string> summary;
        if (r_imax >= 0) {
            if (inputs.size() != 1) throw std::invalid_argument("--imax takes exactly one input");
            OperatorPair pair = rp.build();
            DimensionProfile prof = sigma_dimension_profile(inputs[0].input, pair, r_imax, query);
            report["dimension_profile"] = to_json(prof);
            std::string line = "profile:";
            for (long d : prof.d) line += " " + std::to_string(d);
            summary.push_back(line);
        } else if (r_probe >= 0) {
            if (inputs.size() != 1) throw std::invalid_argument("--probe takes exactly one input");
            OperatorPair pair = rp.build();
            RelationResult res = sigma_probe(inputs[0].input, pair, r_probe, query);
            report["relation"] = to_json(res);
            summary.push_back(res.note);
        } else {
            std::vector<RelationInput> ins;
            for (auto& in : inputs) ins.push_back(in.input);
            RelationResult res = find_relation(ins, query);
            report["relation"] = to_json(res);
            summary.push_back(res.note);
        }
        emit(report, r_out, summary);
        return 0;
    }

    if (corpus->parsed()) {
        Json config;
        config["name"] = k_name;
        config["order"] = k_order;
        std::optional<NamedSeries> member;
        Json params;
        if (k_name == "mahler_power_sum") {
            params["p"] = k_p;
            member = mahler_power_sum(k_p, k_order);
        } else if (k_name == "basic_hypergeometric") {
            auto parse_list = [](const std::string& text) {
                std::vector<GaussianRational> out;
                std::string rest = text;
                while (!rest.empty()) {
                    auto comma = rest.find(',');
                    out.push_back(parse_constant(rest.substr(0, comma)));
                    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
                }
                return out;
            };
            params["q"] = k_q;
            params["alphas"] = k_alphas;
            params["betas"] = k_betas;
            member = basic_hypergeometric(parse_list(k_alphas), parse_list(k_betas), parse_constant(k_q), k_order);
        } else {
            throw std::invalid_argument("unknown corpus member '" + k_name + "'");
        }
        config["params"] = params;
        Json report = base_report("corpus", std::move(config), seed);
        std::string series_file = k_prefix + ".series.json";
        std::string equation_file = k_prefix + ".equation.json";
        {
            std::ofstream sf(series_file, std::ios::binary);
            sf << to_json(member->series).dump(2) << "\n";
            Json eqs;
            eqs["annihilator"] = to_json(member->equation);
            Json extra = Json::array();
            for (auto& e : member->extra_equations) extra.push_back(to_json(e));
            eqs["derived_forms"] = std::move(extra);
            std::ofstream ef(equation_file, std::ios::binary);
            ef << eqs.dump(2) << "\n";
        }
        report["manifest"] = Json{{"name", k_name}, {"params", params}, {"series_file", series_file},
                                  {"equation_file", equation_file}};
        emit(report, k_out, {"wrote " + series_file + " and " + equation_file, "provenance: " + member->provenance});
        return 0;
    }

    if (indep->parsed()) {
        Json config;
        config["f"] = i_f;
        config["g"] = i_g;
        config["deg"] = i_deg;
        config["xdeg"] = i_xdeg;
        config["order"] = i_order;
        config["guessbound"] = i_guess;
        Json report = base_report("independence", std::move(config), seed);
        std::vector<std::string> summary;

        ResolvedInput f = resolve_input(i_f, i_order, "f");
        ResolvedInput g = resolve_input(i_g, i_order, "g");

        // validate the pair when both inputs carry Mahler parameters
        if (f.mahler_p && g.mahler_p) {
            OperatorPair pair = OperatorPair::mahler(*f.mahler_p, *g.mahler_p);
            ValidationReport rep = validate_pair(pair);
            report["validation"] = to_json(rep);
            summary.push_back(std::string("pair (p1=") + std::to_string(*f.mahler_p) + ", p2=" +
                              std::to_string(*g.mahler_p) + ") hypotheses: " + (rep.hypotheses_ok() ? "pass" : "FAIL"));
            if (!rep.hard_ok()) {
                report["verdict"] = "PairHypothesesFail";
                emit(report, i_out, summary);
                return 0;
            }
        }

        // rationality screen: "unless one of them is rational"
        for (auto* in : {&f, &g}) {
            std::optional<RationalFunction> guess;
            try {
                guess = rationality_guess(in->input.series, i_guess);
            } catch (const InsufficientOrder&) {
                guess = std::nullopt;
            }
            if (guess) {
                report["verdict"] = "RationalWitness";
                report["rational_input"] = in->input.name;
                report["witness"] = guess->str();
                summary.push_back("input " + in->input.name + " is rational: " + guess->str());
                summary.push_back("the independence question is vacuous for rational inputs");
                emit(report, i_out, summary);
                return 0;
            }
        }
        report["rationality_screen"] = "neither input shows a recurrence at the bound";

        RelationQuery query{i_deg, i_xdeg, i_order, true};
        RelationResult res = find_relation<Locus::at_zero>({f.input, g.input}, query);
        report["relation"] = to_json(res);
        report["verdict"] = res.found ? "RelationFound" : "NoRelationAtBound";
        summary.push_back(res.note);
        emit(report, i_out, summary);
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
