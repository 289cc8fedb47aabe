#pragma once

// JSON records for every report type, plus the text projection used by
// `--format text`. Variable indices are printed 1-based.

#include <string>

#include <json.hpp>

#include "tarry/criteria.hpp"
#include "tarry/lemma.hpp"
#include "tarry/quad.hpp"
#include "tarry/structure.hpp"

namespace tarry {

inline constexpr const char* kReportSchema = "tarry-report/1";

nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const ExponentMatrix& m);
nlohmann::json to_json(const StructureDecomposition& d);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const ConvergenceReport& rep);
nlohmann::json to_json(const ShellEstimate& s);
nlohmann::json to_json(const EmpiricalReport& rep);
nlohmann::json to_json(const Prop3Report& rep, double min_fraction);
nlohmann::json to_json(const SingularSampleReport& rep, double min_fraction);
nlohmann::json to_json(const Lemma2Result& rep);
nlohmann::json to_json(const Lemma1Report& rep);

/// Flattens a report into "path: value" lines. Every number in the JSON
/// appears verbatim in the text.
std::string render_text(const nlohmann::json& report);

}  // namespace tarry
