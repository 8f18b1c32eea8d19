#pragma once

#include "acms/bundle.hpp"
#include "acms/harmonic.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace acms {

struct ScenarioConfig {
    enum class Torus { FullFlag, AloffWallach, Hopf, Span };
    enum class Metric { Unit, Kappa, KahlerFromH, KahlerEinstein };

    nlohmann::json source;  // the parsed input, echoed in reports
    int n = 3;
    Torus torus = Torus::FullFlag;
    int k = 1, l = 1, m = 1;
    std::vector<CartanVector> span;
    std::optional<CartanVector> chamber_seed;
    bool chamber_from_rho = false;
    std::map<int, int> epsilon_override;  // 0-based class index -> +-1
    Metric metric = Metric::Unit;
    std::map<int, double> kappa;          // 0-based class index -> kappa
    CartanVector kahler_h;
    double ke_scale = 1.0;
    std::optional<CartanVector> x0;       // direction of Y_0 = -i X_0
    Tolerances tol;
};

// Throws ConfigError with a JSON-pointer field path, or line/column for syntax errors.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Accepts numbers and strings "p/q" or "p".
double parse_rational(const nlohmann::json& v, const std::string& field);

// Builds the bundle described by the config; errors from the flag and bundle layers propagate.
CircleBundle build_scenario(const ScenarioConfig& cfg);

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool asserted = true;
    bool pass = true;
};

struct VerifyOutcome {
    nlohmann::json report;
    std::string summary;
    std::vector<CheckResult> checks;
    HarmonicityReport verdicts;
    bool passed = true;
    int exit_code = 0;  // 0 pass, 1 invariant violation, 2 configuration error
};

inline constexpr int kSchemaVersion = 1;

VerifyOutcome run_verify(const ScenarioConfig& cfg, bool timings = false);
// Catches configuration and construction errors and reports them with exit code 2.
VerifyOutcome run_verify_safe(const nlohmann::json& config, bool timings = false);

struct SweepConfig {
    nlohmann::json base;  // scenario template
    std::vector<int> k, l;
    std::vector<nlohmann::json> metrics;  // each one a "metric" object
};
SweepConfig parse_sweep(const nlohmann::json& j);

struct SweepRow {
    int k = 0, l = 0;
    int metric_index = 0;
    bool ok = false;           // instance built and verified
    std::string error;
    VerifyOutcome outcome;
};
struct SweepResult {
    std::vector<SweepRow> rows;
    int exit_code = 0;  // 1 if any built instance violates an asserted invariant
};
SweepResult run_sweep(const SweepConfig& cfg);
std::string sweep_csv(const SweepResult& result);

}  // namespace acms
