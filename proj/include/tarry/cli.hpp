#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tarry::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kCheckFailure = 3 };

struct RunConfig {
    std::string subcommand;
    std::string poly;
    std::string format = "json";
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    std::size_t samples = 100000;
    int two_k = 6;
    double a_max = 64.0;
    std::optional<std::size_t> shells;
    double eps = 0.1;
    int k = 1;
    double lambda = 0.0;
    double delta = 1.0 / 16.0;
    double min_fraction = 0.99;
    bool prop3 = false;
    std::vector<int> lemma1;
    bool singular = false;
    bool lemma2 = false;
    bool exact = false;
    std::vector<int> exponents;
};

/// The parameters that determine the output of `cfg.subcommand`.
nlohmann::json to_json(const RunConfig& cfg);

/// Parses `args` (without the program name), runs the subcommand and writes
/// the report to `out`. Diagnostics for humans go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tarry::cli
