#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "orthoasym/coeffs.hpp"

namespace orthoasym {

/// The ten test families: power laws with p in {0.01, 0.25, 0.5, 0.75, 0.99}
/// and their detour(q=50, d=3) rearrangements.
std::vector<CoefficientFamily> corpus();

const std::vector<std::string>& experiment_commands();

/**
 * One experiment run. `family` is a family config object, the string "corpus",
 * or a shorthand such as "power-law:p=0.5,c=1" (see parse_family_arg).
 * `params` holds the command-specific knobs.
 */
struct ExperimentSpec {
    std::string command;
    nlohmann::json family;
    nlohmann::json params = nlohmann::json::object();
    std::string out_dir = ".";
    unsigned workers = 0;

    nlohmann::json to_json() const;
    static ExperimentSpec from_json(const nlohmann::json& j);
};

struct RunResult {
    int exit_code = 0;                  ///< 0 ok, 2 inconsistent/violated, 1 operational error
    std::vector<std::string> artifacts; ///< file names written under out_dir
    std::vector<std::string> errors;
    std::string summary;                ///< short human-readable result
};

/// Executes the spec, writes artifacts plus manifest.json. Never throws for task failures.
RunResult run(const ExperimentSpec& spec);

/// File path, inline JSON object, "corpus", or "kind[:key=value,...]".
nlohmann::json parse_family_arg(const std::string& arg);
std::vector<CoefficientFamily> families_from(const nlohmann::json& family);

/// "a:b:n" (n equispaced points) or a comma-separated list.
std::vector<double> parse_grid(const std::string& s);

/// JSON text with every floating value written with 17 significant digits.
std::string dump_json(const nlohmann::json& j);

} // namespace orthoasym
