#include "tarry/report.hpp"

#include <cmath>
#include <sstream>

namespace tarry {

namespace {

nlohmann::json one_based(const std::vector<std::size_t>& idx) {
    nlohmann::json out = nlohmann::json::array();
    for (auto i : idx) out.push_back(i + 1);
    return out;
}

nlohmann::json tags(const std::vector<Theorem>& ts) {
    nlohmann::json out = nlohmann::json::array();
    for (auto t : ts) out.push_back(to_string(t));
    return out;
}

nlohmann::json threshold(const std::optional<Threshold>& t) {
    if (!t) return nullptr;
    auto j = to_json(t->value);
    j["sources"] = tags(t->sources);
    return j;
}

nlohmann::json finite_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

}  // namespace

nlohmann::json to_json(const Rational& q) {
    std::string exact = std::to_string(q.numerator());
    if (q.denominator() != 1) exact += "/" + std::to_string(q.denominator());
    return {{"value", static_cast<double>(q.numerator()) / static_cast<double>(q.denominator())}, {"exact", exact}};
}

nlohmann::json to_json(const ExponentMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<int>(m.row(i).begin(), m.row(i).end()));
    return rows;
}

nlohmann::json to_json(const StructureDecomposition& d) {
    nlohmann::json spans = nlohmann::json::array();
    for (const auto& [a, b] : d.spans) spans.push_back({a + 1, b});
    return {{"rho", d.rho}, {"blocks", d.blocks}, {"q", d.q()}, {"row_spans", spans}, {"uniform", d.uniform()}};
}

nlohmann::json to_json(const Decomposition& d) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : d.components) comps.push_back(one_based(c));
    return {{"decomposable", d.decomposable}, {"components", comps}, {"unused_variables", one_based(d.unused)}};
}

nlohmann::json to_json(const ConvergenceReport& rep) {
    const auto& s = rep.shape;
    nlohmann::json div = nlohmann::json::array();
    for (const auto& c : rep.divergence) div.push_back({{"k", c.k}, {"two_k", c.two_k()}, {"theorem", to_string(c.tag)}});
    nlohmann::json conv = nullptr;
    if (rep.convergence)
        conv = {{"k", rep.convergence->k}, {"two_k", rep.convergence->two_k()}, {"theorem", to_string(rep.convergence->tag)}};
    auto opt_k = [](const std::optional<int>& k) -> nlohmann::json {
        if (!k) return nullptr;
        return {{"k", *k}, {"two_k", 2 * *k}};
    };
    nlohmann::json table = nlohmann::json::array();
    for (const auto& e : rep.table)
        table.push_back({{"k", e.k}, {"two_k", 2 * e.k}, {"status", to_string(e.status)}, {"theorems", tags(e.tags)}});
    nlohmann::json exact = nullptr;
    if (auto g = rep.exact_exponent()) exact = to_json(*g);
    return {
        {"r", s.r},
        {"N", s.N},
        {"m", s.m},
        {"S", s.S},
        {"rho", s.rho},
        {"q", s.q},
        {"structure", s.structure},
        {"v_max", s.v_max},
        {"v_witness", one_based(s.v_witness)},
        {"hypothesis_flags",
         {{"senior_form_full", s.senior_form_full},
          {"indecomposable", s.indecomposable},
          {"uniform_structure", s.uniform_structure}}},
        {"divergence_region", div},
        {"convergence_region", conv},
        {"convergence_by_theorem", {{"T3", opt_k(rep.t3_k)}, {"T4", opt_k(rep.t4_k)}, {"C", opt_k(rep.c_k)}}},
        {"real_thresholds",
         {{"gamma_low", threshold(rep.gamma_low)},
          {"gamma_high", threshold(rep.gamma_high)},
          {"exact_exponent", exact}}},
        {"k_table", table},
        {"notes", rep.notes},
    };
}

nlohmann::json to_json(const ShellEstimate& s) {
    return {{"a_lo", s.a_lo},     {"a_hi", s.a_hi},           {"two_k", s.two_k},     {"volume", s.volume},
            {"mass", s.mass},     {"std_error", s.std_error}, {"samples", s.samples}};
}

nlohmann::json to_json(const EmpiricalReport& rep) {
    nlohmann::json shells = nlohmann::json::array();
    for (const auto& s : rep.theta.shells) shells.push_back(to_json(s));
    nlohmann::json out{
        {"two_k", rep.config.two_k},
        {"central_box", to_json(rep.theta.central)},
        {"shells", shells},
        {"partial_sums", rep.theta.partial_sums},
        {"slope", finite_or_null(rep.fit.slope)},
        {"trailing_ratios", rep.fit.ratios},
        {"shells_used", rep.fit.shells_used},
        {"classification", to_string(rep.fit.classification)},
        {"certified", to_string(rep.certified)},
        {"certificate_theorems", tags(rep.certificate_tags)},
        {"agreement_with_bounds", to_string(rep.agreement)},
    };
    if (rep.fit.classification == DecayClass::converging) {
        out["theta_truncated"] = rep.theta.total;
        out["growth"] = nullptr;
    } else {
        // No value is claimed for a possibly divergent integral.
        out["theta_truncated"] = nullptr;
        out["growth"] = {{"partial_sums", rep.theta.partial_sums}, {"slope", finite_or_null(rep.fit.slope)}};
    }
    return out;
}

nlohmann::json to_json(const Prop3Report& rep, double min_fraction) {
    return {{"check", "prop3"},        {"N", rep.N},
            {"q", rep.q},              {"trials", rep.trials},
            {"passes", rep.passes},    {"fraction", rep.fraction},
            {"min_fraction", min_fraction}, {"pass", rep.fraction >= min_fraction}};
}

nlohmann::json to_json(const SingularSampleReport& rep, double min_fraction) {
    return {{"check", "singular"},
            {"k", rep.k},
            {"lambda", finite_or_null(rep.lambda)},
            {"lambda_is_infinite", std::isinf(rep.lambda)},
            {"delta", rep.delta},
            {"levels", rep.levels},
            {"trials", rep.trials},
            {"passes", rep.in_d_lambda},
            {"fraction", rep.fraction},
            {"min_phi", finite_or_null(rep.min_phi)},
            {"min_fraction", min_fraction},
            {"pass", rep.fraction >= min_fraction},
            {"caveat", "Phi_j are Gram determinants evaluated in double precision; values near zero are "
                       "limited by rounding relative to the Gram scale"}};
}

nlohmann::json to_json(const Lemma2Result& rep) {
    return {{"check", rep.exact ? "lemma2_exact" : "lemma2"},
            {"exponents", rep.exponents},
            {"trials", rep.trials},
            {"passes", rep.passes},
            {"fraction", rep.trials ? static_cast<double>(rep.passes) / static_cast<double>(rep.trials) : 0.0},
            {"max_rel_err", rep.max_relative_error},
            {"sign_ok", rep.sign_ok},
            {"closed_form_factor", rep.closed_form_factor},
            {"tolerance", kLemma2Tolerance},
            {"pass", rep.pass}};
}

nlohmann::json to_json(const Lemma1Report& rep) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : rep.bounded_blocks)
        blocks.push_back({{"first_row", b.first_row + 1}, {"a", b.a}, {"det", b.det}, {"lower_bound", b.lower_bound}});
    return {{"check", "lemma1"},
            {"n", rep.n},
            {"m", rep.m},
            {"rows", rep.rows},
            {"structure", to_json(rep.structure)},
            {"structure_ok", rep.structure_ok},
            {"blocks_nonsingular", rep.blocks_nonsingular},
            {"bounded_mixed_blocks", blocks},
            {"bounds_ok", rep.bounds_ok},
            {"trials", 1},
            {"passes", rep.pass ? 1 : 0},
            {"fraction", rep.pass ? 1.0 : 0.0},
            {"pass", rep.pass}};
}

namespace {

bool scalar_array(const nlohmann::json& j) {
    for (const auto& x : j)
        if (x.is_structured() && !scalar_array(x)) return false;
    return true;
}

void flatten(const nlohmann::json& j, const std::string& path, std::ostringstream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    } else if (j.is_array() && !scalar_array(j)) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else if (j.is_string()) {
        os << path << ": " << j.get<std::string>() << '\n';
    } else {
        os << path << ": " << j.dump() << '\n';
    }
}

}  // namespace

std::string render_text(const nlohmann::json& report) {
    std::ostringstream os;
    if (report.contains("summary") && report["summary"].is_array())
        for (const auto& line : report["summary"]) os << line.get<std::string>() << '\n';
    flatten(report, "", os);
    return os.str();
}

}  // namespace tarry
