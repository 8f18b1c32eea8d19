#include "acms/scenario.hpp"

#include "acms/errors.hpp"
#include "acms/nomizu_checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace acms {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw ConfigError("config field " + field + ": " + msg);
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

int parse_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<int>();
}

CartanVector parse_vector(const json& v, int n, const std::string& field) {
    if (!v.is_array()) fail(field, "expected an array of " + std::to_string(n) + " rationals");
    if (static_cast<int>(v.size()) != n)
        fail(field, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    CartanVector h(n);
    for (int i = 0; i < n; ++i) h(i) = parse_rational(v[i], field + "/" + std::to_string(i));
    return h;
}

CartanVector parse_traceless(const json& v, int n, const std::string& field) {
    CartanVector h = parse_vector(v, n, field);
    if (std::abs(h.sum()) > 1e-12 * (1.0 + h.cwiseAbs().sum())) fail(field, "diagonal vector must be traceless");
    return h;
}

// 1-based class index from an object key.
int parse_class_key(const std::string& key, const std::string& field) {
    try {
        std::size_t used = 0;
        const int idx = std::stoi(key, &used);
        if (used == key.size() && idx >= 1) return idx - 1;
    } catch (const std::exception&) {
    }
    fail(field + "/" + key, "class indices are positive integers (1-based)");
}

void parse_metric(const json& mj, ScenarioConfig& cfg, const std::string& field) {
    if (!mj.is_object() || mj.size() != 1) fail(field, "expected exactly one of kappa, kahler_from_h, kahler_einstein");
    if (const json* kj = find(mj, "kappa")) {
        cfg.metric = ScenarioConfig::Metric::Kappa;
        cfg.kappa.clear();
        const std::string f = field + "/kappa";
        if (kj->is_array()) {
            for (std::size_t i = 0; i < kj->size(); ++i)
                cfg.kappa[static_cast<int>(i)] = parse_rational((*kj)[i], f + "/" + std::to_string(i));
        } else if (kj->is_object()) {
            for (auto it = kj->begin(); it != kj->end(); ++it)
                cfg.kappa[parse_class_key(it.key(), f)] = parse_rational(it.value(), f + "/" + it.key());
        } else {
            fail(f, "expected an array or a map from class index to rational");
        }
        for (const auto& [idx, val] : cfg.kappa)
            if (!(val > 0.0)) fail(f, "kappa for class " + std::to_string(idx + 1) + " must be positive");
    } else if (const json* hj = find(mj, "kahler_from_h")) {
        cfg.metric = ScenarioConfig::Metric::KahlerFromH;
        cfg.kahler_h = parse_traceless(*hj, cfg.n, field + "/kahler_from_h");
    } else if (const json* cj = find(mj, "kahler_einstein")) {
        cfg.metric = ScenarioConfig::Metric::KahlerEinstein;
        cfg.ke_scale = parse_rational(*cj, field + "/kahler_einstein");
        if (!(cfg.ke_scale > 0.0)) fail(field + "/kahler_einstein", "scale must be positive");
    } else {
        fail(field, "expected one of kappa, kahler_from_h, kahler_einstein");
    }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& field) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) fail(field + "/" + it.key(), "unknown field");
    }
}

CartanVector standard_rho(int n) {
    CartanVector r(n);
    for (int i = 0; i < n; ++i) r(i) = 0.5 * (n - 1) - i;
    return r;
}

}  // namespace

double parse_rational(const json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string()) fail(field, "expected a number or a rational string \"p/q\"");
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    auto whole = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            const long long x = std::stoll(t, &used);
            if (used == t.size()) return static_cast<double>(x);
        } catch (const std::exception&) {
        }
        fail(field, "malformed rational \"" + s + "\"");
    };
    if (slash == std::string::npos) return whole(s);
    const double p = whole(s.substr(0, slash));
    const double q = whole(s.substr(slash + 1));
    if (q == 0.0) fail(field, "zero denominator in \"" + s + "\"");
    return p / q;
}

ScenarioConfig parse_config(const json& j) {
    if (!j.is_object()) fail("/", "expected a JSON object");
    check_keys(j, {"group", "torus", "chamber", "epsilon_override", "metric", "x0", "tolerances", "name"}, "");
    ScenarioConfig cfg;
    cfg.source = j;

    const json* tj = find(j, "torus");
    if (!tj || !tj->is_object()) fail("/torus", "required object");
    std::optional<int> implied_n;
    if (const json* pj = find(*tj, "preset")) {
        if (!pj->is_string()) fail("/torus/preset", "expected a string");
        const std::string p = pj->get<std::string>();
        if (p == "full_flag") {
            check_keys(*tj, {"preset"}, "/torus");
            cfg.torus = ScenarioConfig::Torus::FullFlag;
        } else if (p == "aloff_wallach") {
            check_keys(*tj, {"preset", "k", "l"}, "/torus");
            cfg.torus = ScenarioConfig::Torus::AloffWallach;
            const json* kj = find(*tj, "k");
            const json* lj = find(*tj, "l");
            if (!kj) fail("/torus/k", "required");
            if (!lj) fail("/torus/l", "required");
            cfg.k = parse_int(*kj, "/torus/k");
            cfg.l = parse_int(*lj, "/torus/l");
            if (cfg.k == 0 && cfg.l == 0) fail("/torus", "(k,l) must not both vanish");
            implied_n = 3;
        } else if (p == "hopf") {
            check_keys(*tj, {"preset", "m"}, "/torus");
            cfg.torus = ScenarioConfig::Torus::Hopf;
            const json* mj = find(*tj, "m");
            if (!mj) fail("/torus/m", "required");
            cfg.m = parse_int(*mj, "/torus/m");
            if (cfg.m < 1) fail("/torus/m", "must be at least 1");
            implied_n = cfg.m + 1;
        } else {
            fail("/torus/preset", "unknown preset \"" + p + "\"");
        }
    } else if (find(*tj, "span")) {
        check_keys(*tj, {"span"}, "/torus");
        cfg.torus = ScenarioConfig::Torus::Span;
    } else {
        fail("/torus", "expected a preset or a span");
    }

    if (const json* gj = find(j, "group")) {
        if (!gj->is_object()) fail("/group", "expected an object");
        check_keys(*gj, {"family", "n"}, "/group");
        if (const json* fj = find(*gj, "family"))
            if (!fj->is_string() || fj->get<std::string>() != "A") fail("/group/family", "only family \"A\" is supported");
        const json* nj = find(*gj, "n");
        if (!nj) fail("/group/n", "required");
        cfg.n = parse_int(*nj, "/group/n");
        if (cfg.n < 2) fail("/group/n", "must be at least 2");
        if (implied_n && *implied_n != cfg.n)
            fail("/group/n", "preset requires n = " + std::to_string(*implied_n));
    } else if (implied_n) {
        cfg.n = *implied_n;
    } else {
        fail("/group", "required for this torus");
    }

    if (cfg.torus == ScenarioConfig::Torus::Span) {
        const json& sj = (*tj)["span"];
        if (!sj.is_array() || sj.empty()) fail("/torus/span", "expected a non-empty list of diagonal vectors");
        for (std::size_t i = 0; i < sj.size(); ++i)
            cfg.span.push_back(parse_traceless(sj[i], cfg.n, "/torus/span/" + std::to_string(i)));
    }

    if (const json* cj = find(j, "chamber")) {
        if (!cj->is_object() || cj->size() != 1) fail("/chamber", "expected exactly one of seed, auto_from");
        if (const json* sj = find(*cj, "seed")) {
            cfg.chamber_seed = parse_traceless(*sj, cfg.n, "/chamber/seed");
        } else if (const json* aj = find(*cj, "auto_from")) {
            if (!aj->is_string() || aj->get<std::string>() != "rho") fail("/chamber/auto_from", "only \"rho\" is supported");
            cfg.chamber_from_rho = true;
        } else {
            fail("/chamber", "expected seed or auto_from");
        }
    }

    if (const json* ej = find(j, "epsilon_override")) {
        if (!ej->is_object()) fail("/epsilon_override", "expected a map from class index to +1 or -1");
        for (auto it = ej->begin(); it != ej->end(); ++it) {
            const std::string f = "/epsilon_override/" + it.key();
            const int s = parse_int(it.value(), f);
            if (s != 1 && s != -1) fail(f, "must be +1 or -1");
            cfg.epsilon_override[parse_class_key(it.key(), "/epsilon_override")] = s;
        }
    }

    if (const json* mj = find(j, "metric")) parse_metric(*mj, cfg, "/metric");

    if (const json* xj = find(j, "x0")) {
        if (xj->is_string()) {
            if (xj->get<std::string>() != "auto") fail("/x0", "expected \"auto\" or {\"vector\": [...]}");
        } else if (xj->is_object() && xj->size() == 1 && find(*xj, "auto")) {
        } else if (xj->is_object() && xj->size() == 1 && find(*xj, "vector")) {
            cfg.x0 = parse_traceless((*xj)["vector"], cfg.n, "/x0/vector");
            if (cfg.x0->norm() == 0.0) fail("/x0/vector", "must be nonzero");
            if (cfg.torus == ScenarioConfig::Torus::AloffWallach)
                fail("/x0", "the aloff_wallach preset fixes X_0 from (k,l)");
        } else {
            fail("/x0", "expected \"auto\", {\"auto\": true} or {\"vector\": [...]}");
        }
    }

    if (const json* tolj = find(j, "tolerances")) {
        if (!tolj->is_object()) fail("/tolerances", "expected an object");
        check_keys(*tolj, {"structural", "curvature", "verdict"}, "/tolerances");
        auto read = [&](const char* key, double& out) {
            if (const json* v = find(*tolj, key)) {
                out = parse_rational(*v, std::string("/tolerances/") + key);
                if (!(out > 0.0)) fail(std::string("/tolerances/") + key, "must be positive");
            }
        };
        read("structural", cfg.tol.structural);
        read("curvature", cfg.tol.curvature);
        read("verdict", cfg.tol.verdict);
    }
    return cfg;
}

ScenarioConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("config syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + e.what());
    }
    return parse_config(j);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

CircleBundle build_scenario(const ScenarioConfig& cfg) {
    using T = ScenarioConfig::Torus;
    const CompactLieModel model(cfg.n);
    FlagStructure flag = [&] {
        switch (cfg.torus) {
            case T::FullFlag: return full_flag(cfg.n);
            case T::AloffWallach: return aloff_wallach_flag();
            case T::Hopf: return hopf_flag(cfg.m);
            case T::Span: return build_flag(model, cfg.span);
        }
        throw ConfigError("unknown torus");
    }();
    if (cfg.chamber_seed) {
        flag = flag.with_ordering(*cfg.chamber_seed);
    } else if (cfg.chamber_from_rho) {
        flag = flag.with_ordering(flag.project_to_z(standard_rho(cfg.n)));
    }

    const int nc = flag.num_classes();
    auto check_index = [nc](int idx, const std::string& field) {
        if (idx >= nc)
            fail(field, "class index " + std::to_string(idx + 1) + " out of range (there are " + std::to_string(nc) +
                            " classes)");
    };
    if (!cfg.epsilon_override.empty()) {
        InvariantACS eps = flag.acs();
        for (const auto& [idx, s] : cfg.epsilon_override) {
            check_index(idx, "/epsilon_override");
            eps[idx] = s;
        }
        flag = flag.with_epsilon(eps);
    }

    using M = ScenarioConfig::Metric;
    switch (cfg.metric) {
        case M::Unit: flag = flag.with_metric(InvariantMetric(nc, 1.0)); break;
        case M::Kappa: {
            InvariantMetric kappa(nc, 0.0);
            for (const auto& [idx, v] : cfg.kappa) {
                check_index(idx, "/metric/kappa");
                kappa[idx] = v;
            }
            for (int g = 0; g < nc; ++g)
                if (!cfg.kappa.count(g)) fail("/metric/kappa", "missing value for class " + std::to_string(g + 1));
            flag = flag.with_metric(kappa);
            break;
        }
        case M::KahlerFromH: {
            const InvariantMetric kappa = kahler_metric_from(flag, cfg.kahler_h);
            for (int g = 0; g < nc; ++g)
                if (!(kappa[g] > 0.0))
                    fail("/metric/kahler_from_h", "vector is not in the open chamber (class " + std::to_string(g + 1) +
                                                      " gets a nonpositive value)");
            flag = flag.with_metric(kappa);
            break;
        }
        case M::KahlerEinstein: flag = flag.with_metric(kahler_einstein_metric(flag, cfg.ke_scale)); break;
    }

    BundleOptions opt;
    if (cfg.torus == T::AloffWallach) {
        opt.x0 = aloff_wallach_x0(cfg.k, cfg.l);
    } else if (cfg.x0) {
        opt.x0 = model.i_cartan(*cfg.x0);
    }
    return build_bundle(flag, opt);
}

namespace {

json to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

std::string torus_label(const ScenarioConfig& cfg) {
    switch (cfg.torus) {
        case ScenarioConfig::Torus::FullFlag: return "full_flag";
        case ScenarioConfig::Torus::AloffWallach:
            return "aloff_wallach(" + std::to_string(cfg.k) + "," + std::to_string(cfg.l) + ")";
        case ScenarioConfig::Torus::Hopf: return "hopf(" + std::to_string(cfg.m) + ")";
        case ScenarioConfig::Torus::Span: return "span";
    }
    return "";
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string pad(std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
}

class Timer {
public:
    explicit Timer(json& sink) : sink_(sink), last_(std::chrono::steady_clock::now()) {}
    void lap(const char* name) {
        const auto now = std::chrono::steady_clock::now();
        sink_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }

private:
    json& sink_;
    std::chrono::steady_clock::time_point last_;
};

}  // namespace

VerifyOutcome run_verify(const ScenarioConfig& cfg, bool timings) {
    VerifyOutcome out;
    json times = json::object();
    Timer timer(times);
    const Tolerances& tol = cfg.tol;

    const CircleBundle bundle = build_scenario(cfg);
    const FlagStructure& flag = bundle.flag();
    timer.lap("build");
    const HarmonicContext ctx(bundle);
    timer.lap("connection");
    const NomizuConnection base(bundle.base_space());
    const std::array<double, 9> table = verify_connection_table(bundle, ctx.conn());
    const CurvatureSymmetryResiduals sym = curvature_symmetries(ctx.conn());
    const ONeillResiduals oneill = oneill_check(ctx.conn(), base);
    timer.lap("connection_checks");
    const HarmonicityReport rep = verdict(ctx, tol);
    timer.lap("harmonicity");
    out.verdicts = rep;

    const bool ordered = flag.epsilon_from_ordering();
    auto add = [&](const std::string& name, double value, double t, bool asserted) {
        CheckResult c{name, value, t, asserted, true};
        c.pass = std::isfinite(value) && value >= 0.0 && value < t;
        out.checks.push_back(c);
        if (asserted && !c.pass) out.passed = false;
    };
    double table_max = 0.0;
    for (double v : table) table_max = std::max(table_max, v);

    add("acms_axioms", rep.acms.max(), tol.structural, true);
    add("k_closure", flag.k_closure_residual(), tol.structural, true);
    add("reductive_decomposition", bundle.total_space().reductive_residual(), tol.structural, true);
    add("isotropy_invariance", bundle.total_space().isotropy_invariance_residual(), tol.structural, true);
    add("curvature_form_j_invariance", sigma_j_invariance(bundle), tol.structural, true);
    add("connection_table", table_max, tol.structural, true);
    add("reeb_u", reeb_u_residual(bundle, ctx.conn()), tol.structural, true);
    add("torsion", ctx.conn().torsion_residual(), tol.structural, true);
    add("metricity", ctx.conn().metric_residual(), tol.structural, true);
    add("killing_xi", killing_residual(ctx.conn()), tol.structural, true);
    add("curvature_skew", std::max(sym.skew, sym.metric_skew), tol.curvature, true);
    add("curvature_bianchi", sym.bianchi, tol.curvature, true);
    add("curvature_pair_symmetry", sym.pair_symmetry, tol.curvature, true);
    add("oneill_horizontal", oneill.horizontal, tol.curvature, true);
    add("oneill_mixed", oneill.mixed, tol.curvature, true);
    add("oneill_vertical", oneill.vertical, tol.curvature, true);
    add("oneill_vertical_as_printed", oneill.vertical_as_printed, tol.curvature, false);
    add("delta_theta_closed_form", rep.delta_theta.residual, tol.curvature, ordered);
    add("delta_theta_parallel", rep.delta_theta.parallel_residual, tol.curvature, ordered);
    add("laplacian_closed_form", rep.rough_laplacian.value.residual, tol.curvature, true);
    add("laplacian_factor", rep.rough_laplacian.factor_residual, tol.curvature, true);
    add("s_xi", rep.s_xi_norm, tol.curvature, true);
    add("rbar_consistency", rep.hse1.rbar_consistency, tol.curvature, true);
    const NormalityResiduals& nr = rep.normality;
    add("normality_integrability", nr.integrability, tol.curvature, ordered);
    add("normality_eq1", nr.eq1, tol.curvature, ordered);
    add("normality_eq2", nr.eq2, tol.curvature, ordered);
    add("normality_eq3", nr.eq3, tol.curvature, ordered);
    add("normality_eq4", nr.eq4, tol.curvature, ordered);
    add("normality_eq5", nr.eq5, tol.curvature, ordered);
    add("nijenhuis", nr.nijenhuis, tol.curvature, ordered);
    add("nijenhuis_algebraic", nr.nijenhuis_algebraic, tol.curvature, ordered);
    add("nijenhuis_unhalved", nr.nijenhuis_unhalved, tol.curvature, false);
    add("jbar_relation", nr.jbar_relation, tol.curvature, ordered);
    add("hse1_proof_identity", rep.hse1.proof_identity, tol.curvature, rep.normal);
    add("hse1_jlee_identity", rep.hse1.jlee_identity, tol.curvature, rep.normal);
    add("hse1_lee_vs_delta_theta", rep.hse1.lee_vs_delta_theta, tol.curvature, rep.normal);
    add("hse1_eqr", rep.hse1.eqr, tol.curvature, rep.normal);
    add("hse2_equality_of_forms", rep.hse2.equality_of_forms, tol.curvature, rep.normal);
    add("hse1_curvature_form", rep.hse1.curvature_form, tol.verdict, rep.kahler);
    add("hse1_intro_form", rep.hse1.intro_form, tol.verdict, rep.kahler);
    add("hse2_curvature_form", rep.hse2.curvature_form, tol.verdict, rep.kahler);
    add("hse2_intro_form", rep.hse2.intro_form, tol.verdict, rep.kahler);
    add("hme", rep.hme.residual, tol.verdict, rep.kahler);
    if (!rep.kahler_implies_harmonic) out.passed = false;
    out.exit_code = out.passed ? 0 : 1;

    json& r = out.report;
    r["schema_version"] = kSchemaVersion;
    r["config"] = cfg.source;
    r["tolerances"] = {{"structural", tol.structural}, {"curvature", tol.curvature}, {"verdict", tol.verdict}};
    r["dimensions"] = {{"n", cfg.n},
                       {"g", cfg.n * cfg.n - 1},
                       {"k", flag.k().dim()},
                       {"z", flag.z().dim()},
                       {"m", flag.m().dim()},
                       {"total_space", bundle.dim()},
                       {"classes", flag.num_classes()}};
    r["y0"] = to_json(bundle.y0());
    if (flag.chamber_seed()) r["chamber_seed"] = to_json(*flag.chamber_seed());
    r["epsilon_from_ordering"] = ordered;
    json classes = json::array();
    for (int g = 0; g < flag.num_classes(); ++g) {
        const RootClass& rc = flag.classes()[g];
        json roots = json::array();
        for (const Root& a : rc.fiber) roots.push_back(a.label());
        classes.push_back({{"index", g + 1},
                           {"label", rc.label()},
                           {"roots", roots},
                           {"n_gamma", rc.n_gamma()},
                           {"epsilon", flag.epsilon(g)},
                           {"kappa", flag.kappa(g)},
                           {"c_gamma", bundle.c_gamma(g)},
                           {"a_gamma", bundle.a_gamma(g)}});
    }
    r["classes"] = classes;
    json frame = json::array();
    for (const FrameVector& f : bundle.frame()) frame.push_back(f.label());
    r["frame"] = frame;

    r["reeb"] = {{"delta_theta", to_json(rep.delta_theta.vector)},
                 {"delta_theta_coeff", rep.delta_theta.vector(0)},
                 {"delta_theta_closed_form", rep.delta_theta.closed_form},
                 {"rough_laplacian", to_json(rep.rough_laplacian.value.vector)},
                 {"laplacian_coeff", rep.rough_laplacian.value.vector(0)},
                 {"laplacian_closed_form", rep.rough_laplacian.value.closed_form},
                 {"grad_norm_xi_sq", rep.rough_laplacian.grad_norm_sq},
                 {"s_xi", to_json(rep.s_xi)},
                 {"s_xi_norm", rep.s_xi_norm}};
    json table_j = json::array();
    for (double v : table) table_j.push_back(v);
    r["connection"] = {{"connection_table", table_j}};
    r["hme"] = {{"xi_component", rep.hme.xi_component}, {"xi_grad_norm_constant", rep.hme.xi_grad_norm_constant}};
    r["verdicts"] = {{"normal", rep.normal},
                     {"harmonic_section", rep.harmonic_section},
                     {"harmonic_map", rep.harmonic_map},
                     {"xi_harmonic_unit_field", rep.rough_laplacian.harmonic_unit_field},
                     {"kahler", rep.kahler},
                     {"kahler_einstein", rep.kahler_einstein},
                     {"kahler_einstein_c", rep.kahler_einstein ? json(rep.kahler_einstein_c) : json(nullptr)},
                     {"c_sasakian", rep.c_sasakian.is_c_sasakian},
                     {"c_sasakian_c", rep.c_sasakian.c ? json(*rep.c_sasakian.c) : json(nullptr)},
                     {"generic", rep.genericity.generic},
                     {"invariant_field_dim", rep.genericity.invariant_field_dim},
                     {"reeb_closed_forms_hold", rep.reeb_closed_forms_hold},
                     {"kahler_implies_harmonic", rep.kahler_implies_harmonic}};
    json checks = json::array();
    for (const CheckResult& c : out.checks)
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"tolerance", c.tolerance},
                          {"asserted", c.asserted},
                          {"pass", c.pass}});
    r["checks"] = checks;
    r["warnings"] = rep.warnings;
    r["passed"] = out.passed;
    r["exit_code"] = out.exit_code;
    timer.lap("report");
    if (timings) r["timings_ms"] = times;

    std::ostringstream s;
    s << "scenario   SU(" << cfg.n << ") " << torus_label(cfg) << ", dim " << bundle.dim() << ", "
      << flag.num_classes() << " classes\n";
    s << "classes\n";
    for (int g = 0; g < flag.num_classes(); ++g) {
        const RootClass& rc = flag.classes()[g];
        s << "  " << pad(std::to_string(g + 1) + " " + rc.label(), 28) << " n=" << rc.n_gamma()
          << "  eps=" << pad(flag.epsilon(g) > 0 ? "+1" : "-1", 3) << " kappa=" << fmt("%-10.6g", flag.kappa(g))
          << " c=" << fmt("%-10.6g", bundle.c_gamma(g)) << " a=" << fmt("%.6g", bundle.a_gamma(g)) << "\n";
    }
    s << "reeb\n";
    s << "  delta_theta_coeff   " << fmt("%.10g", rep.delta_theta.vector(0)) << "  (closed form "
      << fmt("%.10g", rep.delta_theta.closed_form) << ")\n";
    s << "  laplacian_coeff     " << fmt("%.10g", rep.rough_laplacian.value.vector(0)) << "  (closed form "
      << fmt("%.10g", rep.rough_laplacian.value.closed_form) << ")\n";
    s << "  |grad xi|^2         " << fmt("%.10g", rep.rough_laplacian.grad_norm_sq) << "\n";
    s << "checks\n";
    for (const CheckResult& c : out.checks)
        s << "  " << pad(c.name, 30) << fmt("%10.3e", c.value) << "  tol " << fmt("%8.1e", c.tolerance) << "  "
          << (c.asserted ? (c.pass ? "PASS" : "FAIL") : (c.pass ? "info" : "info (above tol)")) << "\n";
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    s << "verdicts\n";
    s << "  normal              " << yn(rep.normal) << "\n";
    s << "  kahler              " << yn(rep.kahler) << "\n";
    s << "  kahler_einstein     " << yn(rep.kahler_einstein);
    if (rep.kahler_einstein) s << " (c = " << fmt("%.10g", rep.kahler_einstein_c) << ")";
    s << "\n  c_sasakian          " << yn(rep.c_sasakian.is_c_sasakian);
    if (rep.c_sasakian.c) s << " (c = " << fmt("%.10g", *rep.c_sasakian.c) << ")";
    s << "\n  generic             " << yn(rep.genericity.generic) << " (invariant fields "
      << rep.genericity.invariant_field_dim << ")\n";
    s << "  harmonic_section    " << yn(rep.harmonic_section) << "\n";
    s << "  harmonic_map        " << yn(rep.harmonic_map) << "\n";
    for (const std::string& w : rep.warnings) s << "warning: " << w << "\n";
    s << "result     " << (out.passed ? "PASS" : "FAIL") << "\n";
    out.summary = s.str();
    return out;
}

VerifyOutcome run_verify_safe(const json& config, bool timings) {
    try {
        return run_verify(parse_config(config), timings);
    } catch (const Error& e) {
        VerifyOutcome out;
        out.passed = false;
        out.exit_code = 2;
        out.report = {{"schema_version", kSchemaVersion}, {"config", config}, {"error", e.what()}, {"exit_code", 2}};
        out.summary = std::string("error: ") + e.what() + "\n";
        return out;
    }
}

SweepConfig parse_sweep(const json& j) {
    if (!j.is_object()) fail("/", "expected a JSON object");
    check_keys(j, {"template", "grid", "name"}, "");
    SweepConfig cfg;
    const json* tj = find(j, "template");
    if (!tj || !tj->is_object()) fail("/template", "required scenario object");
    cfg.base = *tj;
    const json* gj = find(j, "grid");
    if (!gj || !gj->is_object()) fail("/grid", "required object with k, l and metrics");
    check_keys(*gj, {"k", "l", "metrics"}, "/grid");
    auto ints = [&](const char* key, std::vector<int>& out) {
        const std::string f = std::string("/grid/") + key;
        const json* v = find(*gj, key);
        if (!v || !v->is_array()) fail(f, "expected an array of integers");
        for (std::size_t i = 0; i < v->size(); ++i) out.push_back(parse_int((*v)[i], f + "/" + std::to_string(i)));
    };
    ints("k", cfg.k);
    ints("l", cfg.l);
    if (const json* mj = find(*gj, "metrics")) {
        if (!mj->is_array()) fail("/grid/metrics", "expected an array of metric objects");
        for (const json& m : *mj) cfg.metrics.push_back(m);
    } else {
        cfg.metrics.push_back(cfg.base.contains("metric") ? cfg.base["metric"] : json{{"kappa", {1, 1, 1}}});
    }
    return cfg;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    SweepResult res;
    for (int k : cfg.k)
        for (int l : cfg.l)
            for (std::size_t mi = 0; mi < cfg.metrics.size(); ++mi) {
                SweepRow row;
                row.k = k;
                row.l = l;
                row.metric_index = static_cast<int>(mi);
                json inst = cfg.base;
                inst["torus"] = {{"preset", "aloff_wallach"}, {"k", k}, {"l", l}};
                inst["metric"] = cfg.metrics[mi];
                row.outcome = run_verify_safe(inst);
                row.ok = row.outcome.exit_code != 2;
                if (!row.ok) row.error = row.outcome.report.value("error", "");
                if (row.ok && !row.outcome.passed) res.exit_code = 1;
                res.rows.push_back(std::move(row));
            }
    return res;
}

std::string sweep_csv(const SweepResult& result) {
    std::ostringstream s;
    s << "k,l,metric,status,normal,kahler,kahler_einstein,harmonic_section,harmonic_map,c_sasakian,c,generic,"
         "invariant_field_dim,delta_theta_coeff,laplacian_coeff,hse1,hse2,hse2_intro,hme,s_xi_norm,passed,error\n";
    auto b = [](bool v) { return v ? "true" : "false"; };
    for (const SweepRow& row : result.rows) {
        s << row.k << "," << row.l << "," << row.metric_index << ",";
        if (!row.ok) {
            std::string err = row.error;
            for (char& ch : err)
                if (ch == '"') ch = '\'';
            s << "error" << std::string(18, ',') << "\"" << err << "\"\n";
            continue;
        }
        const HarmonicityReport& r = row.outcome.verdicts;
        s << "ok," << b(r.normal) << "," << b(r.kahler) << "," << b(r.kahler_einstein) << ","
          << b(r.harmonic_section) << "," << b(r.harmonic_map) << "," << b(r.c_sasakian.is_c_sasakian) << ","
          << (r.c_sasakian.c ? fmt("%.12g", *r.c_sasakian.c) : "") << "," << b(r.genericity.generic) << ","
          << r.genericity.invariant_field_dim << "," << fmt("%.12g", r.delta_theta.vector(0)) << ","
          << fmt("%.12g", r.rough_laplacian.value.vector(0)) << "," << fmt("%.3e", r.hse1.curvature_form) << ","
          << fmt("%.3e", r.hse2.curvature_form) << "," << fmt("%.3e", r.hse2.intro_form) << ","
          << fmt("%.3e", r.hme.residual) << "," << fmt("%.3e", r.s_xi_norm) << "," << b(row.outcome.passed) << ",\n";
    }
    return s.str();
}

}  // namespace acms
