#include "acms/errors.hpp"
#include "acms/scenario.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

// Relative report paths are resolved against ACMS_REPORT_DIR when it is set.
std::string report_path(const std::string& path) {
    const char* dir = std::getenv("ACMS_REPORT_DIR");
    if (!dir || std::filesystem::path(path).is_absolute()) return path;
    return (std::filesystem::path(dir) / path).string();
}

int write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
    }
    out << content;
    return 0;
}

int emit(const acms::VerifyOutcome& outcome, const std::string& report) {
    if (outcome.exit_code == 2) {
        std::cerr << outcome.summary;
        return 2;
    }
    std::cout << outcome.summary;
    if (!report.empty() && write_file(report_path(report), outcome.report.dump(2) + "\n") != 0) return 2;
    return outcome.exit_code;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant almost contact metric structures on circle bundles over type-A flag manifolds"};
    app.require_subcommand(1);

    std::string config_path, report, out_path, kappa_list, ke_scale;
    double tol_structural = 0.0, tol_verdict = 0.0;
    bool timings = false;
    int k = 1, l = 1, m = 1;

    CLI::App* verify = app.add_subcommand("verify", "Run the full verification suite on a scenario config");
    verify->add_option("--config", config_path, "Scenario JSON file")->required();
    verify->add_option("--report", report, "Write the JSON report to this path");
    verify->add_option("--tol-structural", tol_structural, "Tolerance for structural identities");
    verify->add_option("--tol-verdict", tol_verdict, "Tolerance for harmonicity verdicts");
    verify->add_flag("--timings", timings, "Include wall-clock timings in the JSON report");

    CLI::App* preset = app.add_subcommand("preset", "Verify a built-in example");
    preset->require_subcommand(1);
    CLI::App* aw = preset->add_subcommand("aloff-wallach", "Aloff-Wallach space SU(3)/T_{k,l}");
    aw->add_option("-k", k, "First torus weight")->required();
    aw->add_option("-l", l, "Second torus weight")->required();
    auto* kappa_opt = aw->add_option("--kappa", kappa_list, "Metric kappa_alpha,kappa_beta,kappa_gamma (rationals)");
    aw->add_option("--ke", ke_scale, "Kahler-Einstein metric with this scale")->excludes(kappa_opt);
    aw->add_option("--report", report, "Write the JSON report to this path");
    CLI::App* hp = preset->add_subcommand("hopf", "Hopf fibration S^{2m+1} -> CP^m with Kahler-Einstein base");
    hp->add_option("-m", m, "Complex dimension of the base")->required();
    hp->add_option("--report", report, "Write the JSON report to this path");

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep Aloff-Wallach parameters and metrics");
    sweep->add_option("--config", config_path, "Sweep JSON file")->required();
    sweep->add_option("--out", out_path, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            acms::ScenarioConfig cfg = acms::load_config(config_path);
            if (tol_structural > 0.0) cfg.tol.structural = tol_structural;
            if (tol_verdict > 0.0) cfg.tol.verdict = tol_verdict;
            return emit(acms::run_verify(cfg, timings), report);
        }
        if (aw->parsed()) {
            json metric;
            if (!kappa_list.empty()) {
                json arr = json::array();
                for (const std::string& v : split(kappa_list)) arr.push_back(v);
                metric = {{"kappa", arr}};
            } else if (!ke_scale.empty()) {
                metric = {{"kahler_einstein", ke_scale}};
            } else {
                metric = {{"kahler_einstein", "1"}};
            }
            const json cfg = {{"group", {{"family", "A"}, {"n", 3}}},
                              {"torus", {{"preset", "aloff_wallach"}, {"k", k}, {"l", l}}},
                              {"metric", metric}};
            return emit(acms::run_verify_safe(cfg), report);
        }
        if (hp->parsed()) {
            const json cfg = {{"group", {{"family", "A"}, {"n", m + 1}}},
                              {"torus", {{"preset", "hopf"}, {"m", m}}},
                              {"metric", {{"kahler_einstein", "1"}}}};
            return emit(acms::run_verify_safe(cfg), report);
        }
        if (sweep->parsed()) {
            std::ifstream in(config_path);
            if (!in) throw acms::ConfigError("cannot read sweep file " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            json j;
            try {
                j = json::parse(ss.str());
            } catch (const json::parse_error& e) {
                throw acms::ConfigError(std::string("sweep syntax error: ") + e.what());
            }
            const acms::SweepResult res = acms::run_sweep(acms::parse_sweep(j));
            if (write_file(out_path, acms::sweep_csv(res)) != 0) return 2;
            int ok = 0, errors = 0, failed = 0;
            for (const auto& row : res.rows) {
                if (!row.ok)
                    ++errors;
                else if (!row.outcome.passed)
                    ++failed;
                else
                    ++ok;
            }
            std::cout << "sweep: " << res.rows.size() << " rows, " << ok << " passed, " << failed << " failed, "
                      << errors << " invalid\n";
            return res.exit_code;
        }
    } catch (const acms::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
