#include "tarry/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tarry/criteria.hpp"
#include "tarry/exact.hpp"
#include "tarry/lemma.hpp"
#include "tarry/nl_order.hpp"
#include "tarry/quad.hpp"
#include "tarry/report.hpp"
#include "tarry/structure.hpp"

namespace tarry::cli {

namespace {

using nlohmann::json;

std::string fmt(const Rational& q) {
    std::string s = std::to_string(q.numerator());
    if (q.denominator() != 1) s += "/" + std::to_string(q.denominator());
    return s;
}

std::string join_tags(const std::vector<Theorem>& ts) {
    std::string s;
    for (auto t : ts) s += (s.empty() ? "" : ", ") + std::string(to_string(t));
    return s;
}

json error_object(const std::string& kind, const std::string& message) {
    return {{"schema", kReportSchema}, {"error", {{"kind", kind}, {"message", message}}}};
}

PolynomialShape need_poly(const RunConfig& cfg) {
    if (cfg.poly.empty()) throw InputError("--poly is required");
    return load_polynomial(cfg.poly);
}

std::vector<std::string> bounds_summary(const ConvergenceReport& rep) {
    std::vector<std::string> lines;
    auto line = [](const char* name, const std::optional<Threshold>& t) {
        if (!t) return std::string(name) + " = none";
        return std::string(name) + " = " + fmt(t->value) + " (" + join_tags(t->sources) + ")";
    };
    lines.push_back(line("gamma_low", rep.gamma_low));
    lines.push_back(line("gamma_high", rep.gamma_high));
    std::string div = "divergent 2k:";
    for (const auto& c : rep.divergence) div += " " + std::to_string(c.two_k()) + "[" + to_string(c.tag) + "]";
    if (rep.divergence.empty()) div += " none";
    lines.push_back(div);
    if (rep.convergence)
        lines.push_back("convergent for 2k >= " + std::to_string(rep.convergence->two_k()) + " [" +
                        to_string(rep.convergence->tag) + "]");
    else
        lines.push_back("no convergence certificate");
    return lines;
}

json analyze(const RunConfig& cfg) {
    const auto p = need_poly(cfg);
    const auto M = exponent_matrix(p);
    const auto s = shape_invariants(p);
    const auto rep = convergence_report(p);
    const auto sd = structure_decompose(M);
    json senior = json::array();
    for (auto i : senior_form_support(p)) senior.push_back(i + 1);
    json out{
        {"shape", to_json(p)},
        {"r", s.r},
        {"N", s.N},
        {"m", s.m},
        {"S", s.S},
        {"exponent_matrix", to_json(M)},
        {"rank", rank_exact(M)},
        {"rho", s.rho},
        {"structure", s.structure},
        {"structure_detail", to_json(sd)},
        {"decomposition", to_json(is_decomposable(p))},
        {"senior_form", {{"support", senior}, {"full", s.senior_form_full}}},
        {"v_max", s.v_max},
        {"v_witness", to_json(rep)["v_witness"]},
        {"real_thresholds", to_json(rep)["real_thresholds"]},
    };
    out["summary"] = bounds_summary(rep);
    return out;
}

json order(const RunConfig& cfg) {
    const auto p = need_poly(cfg);
    const auto sorted = nl_sort(p);
    json out = to_json(sorted);
    const auto h = high_member(p);
    out["high_member"] = std::vector<int>(h.exponents().begin(), h.exponents().end());
    std::string line = "n.-l. order:";
    for (const auto& v : sorted.monomials()) line += " " + to_string(v);
    out["summary"] = json::array({line});
    return out;
}

json bounds(const RunConfig& cfg) {
    const auto rep = convergence_report(need_poly(cfg));
    json out = to_json(rep);
    out["summary"] = bounds_summary(rep);
    return out;
}

json estimate(const RunConfig& cfg, bool& failed) {
    const auto p = need_poly(cfg);
    EstimateConfig ec;
    ec.two_k = cfg.two_k;
    ec.a_max = cfg.a_max;
    ec.shells = cfg.shells;
    ec.samples = cfg.samples;
    ec.seed = cfg.seed;
    ec.eps = cfg.eps;
    const auto rep = classify_empirical(p, ec);
    failed = rep.agreement == Agreement::disagree;
    json out = to_json(rep);
    out["summary"] = json::array({std::string("classification ") + to_string(rep.fit.classification) +
                                  ", certified " + to_string(rep.certified) + ", agreement " +
                                  to_string(rep.agreement)});
    return out;
}

json verify(const RunConfig& cfg, bool& failed) {
    json checks = json::array();
    if (cfg.prop3) {
        const auto rep = prop3_rank_check(need_poly(cfg), cfg.trials, cfg.seed);
        checks.push_back(to_json(rep, cfg.min_fraction));
    }
    if (!cfg.lemma1.empty()) {
        if (cfg.lemma1.size() != 2) throw InputError("--lemma1 takes n and m");
        checks.push_back(to_json(verify_lemma1(cfg.lemma1[0], cfg.lemma1[1])));
    }
    if (cfg.singular) {
        const auto rep = singular_fraction(need_poly(cfg), cfg.k, cfg.lambda, cfg.trials, cfg.seed, cfg.delta);
        checks.push_back(to_json(rep, cfg.min_fraction));
    }
    if (cfg.lemma2) {
        if (cfg.exponents.empty()) throw InputError("--lemma2 needs --exponents");
        const ExponentVector kvec(cfg.exponents);
        const auto rep = cfg.exact ? verify_lemma2_exact(kvec, cfg.trials, cfg.seed)
                                   : verify_lemma2(kvec, cfg.trials, cfg.seed, cfg.delta);
        checks.push_back(to_json(rep));
    }
    if (checks.empty()) throw InputError("verify needs at least one of --prop3, --lemma1, --singular, --lemma2");
    bool all = true;
    std::vector<std::string> summary;
    for (const auto& c : checks) {
        all = all && c["pass"].get<bool>();
        summary.push_back(c["check"].get<std::string>() + ": " + (c["pass"].get<bool>() ? "pass" : "FAIL"));
    }
    failed = !all;
    return {{"checks", checks}, {"pass", all}, {"summary", summary}};
}

void emit(std::ostream& out, const std::string& format, const json& doc) {
    if (format == "text")
        out << render_text(doc);
    else
        out << doc.dump(2) << '\n';
}

}  // namespace

json to_json(const RunConfig& cfg) {
    json c{{"seed", cfg.seed}};
    const auto& sub = cfg.subcommand;
    if (sub != "verify" || cfg.prop3 || cfg.singular) c["poly"] = cfg.poly;
    if (sub == "estimate") {
        c["two_k"] = cfg.two_k;
        c["a_max"] = cfg.a_max;
        c["shells"] = cfg.shells ? json(*cfg.shells) : json(nullptr);
        c["samples"] = cfg.samples;
        c["eps"] = cfg.eps;
    }
    if (sub == "verify") {
        c["trials"] = cfg.trials;
        c["min_fraction"] = cfg.min_fraction;
        c["prop3"] = cfg.prop3;
        c["lemma1"] = cfg.lemma1;
        c["singular"] = cfg.singular;
        if (cfg.singular) {
            c["k"] = cfg.k;
            c["lambda"] = std::isinf(cfg.lambda) ? json("inf") : json(cfg.lambda);
            c["delta"] = cfg.delta;
        }
        c["lemma2"] = cfg.lemma2;
        if (cfg.lemma2) {
            c["exponents"] = cfg.exponents;
            c["exact"] = cfg.exact;
            if (!cfg.exact) c["delta"] = cfg.delta;
        }
    }
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    // The format is needed for error reporting even when parsing fails.
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--format") cfg.format = args[i + 1] == "text" ? "text" : "json";

    CLI::App app{"Convergence analysis of the special integral of a Tarry system", "tarry"};
    app.require_subcommand(1);
    std::string lambda_text = "0";
    auto common = [&](CLI::App* sub, bool poly_required) {
        auto* o = sub->add_option("--poly", cfg.poly, "polynomial shape JSON {\"r\": .., \"monomials\": [[..], ..]}");
        if (poly_required) o->required();
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    };
    auto* an = app.add_subcommand("analyze", "exponent matrix, rank, structure, hypotheses and thresholds");
    common(an, true);
    auto* od = app.add_subcommand("order", "monomials in n.-l. order");
    common(od, true);
    auto* bd = app.add_subcommand("bounds", "divergence and convergence certificates");
    common(bd, true);
    auto* es = app.add_subcommand("estimate", "Monte Carlo shell masses and decay classification");
    common(es, true);
    es->add_option("--two-k", cfg.two_k, "even power 2k")->capture_default_str();
    es->add_option("--a-max", cfg.a_max, "outer sup-norm radius")->capture_default_str();
    es->add_option("--shells", cfg.shells, "number of doubling shells (a0 = a_max / 2^shells)");
    es->add_option("--samples", cfg.samples, "samples per shell")->capture_default_str();
    es->add_option("--eps", cfg.eps, "decay margin")->capture_default_str();
    auto* vf = app.add_subcommand("verify", "randomized and exact checks");
    common(vf, false);
    vf->add_option("--trials", cfg.trials, "samples per check")->capture_default_str();
    vf->add_option("--min-fraction", cfg.min_fraction, "pass threshold for sampled checks")->capture_default_str();
    vf->add_flag("--prop3", cfg.prop3, "rank of the assembled K matrices");
    vf->add_option("--lemma1", cfg.lemma1, "structure of the complete two-variable matrix")->expected(2);
    vf->add_flag("--singular", cfg.singular, "fraction of samples in D_lambda");
    vf->add_option("--k", cfg.k, "k for --singular")->capture_default_str();
    vf->add_option("--lambda", lambda_text, "threshold for --singular (real or inf)")->capture_default_str();
    vf->add_option("--delta", cfg.delta, "lower edge of the sampling box")->capture_default_str();
    vf->add_flag("--lemma2", cfg.lemma2, "Hessian determinant identity");
    vf->add_option("--exponents", cfg.exponents, "exponent vector, e.g. 2,1")->delimiter(',');
    vf->add_flag("--exact", cfg.exact, "exact rational points for --lemma2");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "tarry: " << e.what() << '\n';
        emit(out, cfg.format, error_object("usage", e.what()));
        return kInputError;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    try {
        if (lambda_text == "inf" || lambda_text == "+inf") {
            cfg.lambda = std::numeric_limits<double>::infinity();
        } else {
            std::size_t used = 0;
            try {
                cfg.lambda = std::stod(lambda_text, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != lambda_text.size() || !std::isfinite(cfg.lambda))
                throw InputError("--lambda must be a real number or inf");
        }
        json doc{{"schema", kReportSchema}, {"command", cfg.subcommand}, {"config", to_json(cfg)}};
        bool failed = false;
        json body;
        if (cfg.subcommand == "analyze")
            body = analyze(cfg);
        else if (cfg.subcommand == "order")
            body = order(cfg);
        else if (cfg.subcommand == "bounds")
            body = bounds(cfg);
        else if (cfg.subcommand == "estimate")
            body = estimate(cfg, failed);
        else
            body = verify(cfg, failed);
        json summary = body.contains("summary") ? body["summary"] : json::array();
        body.erase("summary");
        doc["report"] = body;
        if (cfg.format == "text") doc["summary"] = summary;
        emit(out, cfg.format, doc);
        return failed ? kCheckFailure : kOk;
    } catch (const InputError& e) {
        err << "tarry: " << e.what() << '\n';
        emit(out, cfg.format, error_object("input", e.what()));
        return kInputError;
    } catch (const QuadratureError& e) {
        err << "tarry: " << e.what() << '\n';
        emit(out, cfg.format, error_object("quadrature", e.what()));
        return kInputError;
    }
}

}  // namespace tarry::cli
