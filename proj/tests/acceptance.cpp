#include "acms/harmonic.hpp"
#include "acms/nomizu_checks.hpp"

#include "instances.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace acms;
using namespace acms::testing;

namespace {

// Worst residual over checks with per-check bounds, plus failed boolean checks.
struct Criterion {
    std::string title;
    double worst = 0.0;
    double threshold = 0.0;
    int failures = 0;
    int cases = 0;
    std::string first_failure;

    void residual(double v, double limit, const std::string& where) {
        ++cases;
        if (!(v < limit)) {
            if (failures++ == 0) first_failure = where + " residual " + std::to_string(v);
        }
        worst = std::max(worst, v);
    }
    void expect(bool ok, const std::string& where) {
        ++cases;
        if (!ok && failures++ == 0) first_failure = where;
    }
    bool pass() const { return failures == 0 && cases > 0; }
};

std::string aw_name(int k, int l, const InvariantMetric& kp) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "AW(%d,%d) kappa=(%g,%g,%g)", k, l, kp[0], kp[1], kp[2]);
    return buf;
}

// Kahler metrics of the Aloff-Wallach chamber h1 > h3 > h2: h = rho and two other chamber vectors.
std::vector<CartanVector> aw_chamber_vectors() {
    CartanVector rho(3), h1(3), h2(3);
    rho << 1, -1, 0;
    h1 << 2, -3, 1;
    h2 << 5, -3, -2;
    return {rho, h1, h2};
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Criterion> c(9);
    c[0] = {"Aloff-Wallach closed forms for delta theta and the rough Laplacian", 0, 1e-9};
    c[1] = {"closed forms on 100 random su(3)/su(4) instances, parallel to X_0", 0, 1e-9};
    c[2] = {"connection table of the canonical frame", 0, 1e-10};
    c[3] = {"Levi-Civita structure: torsion, metricity, curvature symmetries, Killing xi", 0, 1e-10};
    c[4] = {"normality for ordering-derived J, non-example detected", 0, 1e-9};
    c[5] = {"harmonic section and map equations on Kahler instances, proof identities", 0, 1e-8};
    c[6] = {"O'Neill curvature identities", 0, 1e-9};
    c[7] = {"Reeb field: rough Laplacian factor and S(xi)", 0, 1e-9};
    c[8] = {"classification: c-Sasakian and genericity", 0, 0};

    // 1. Aloff-Wallach closed forms.
    {
        const HarmonicContext ctx(aloff_wallach(1, 1, {1, 1, 2}));
        c[0].residual(std::abs(delta_theta(ctx).vector(0) - (-3.0 / std::sqrt(2.0))), 1e-9, "AW(1,1) delta theta");
        c[0].residual(std::abs(rough_laplacian_xi(ctx).value.vector(0) - 0.75), 1e-9, "AW(1,1) laplacian");
        const std::vector<std::pair<int, int>> params{{1, 2}, {2, 1}, {1, -1}, {2, -1}};
        const std::vector<InvariantMetric> metrics{{1, 1, 2}, {1, 2, 3}, {0.5, 3, 7}};
        for (const auto& [k, l] : params)
            for (const InvariantMetric& kp : metrics) {
                const HarmonicContext x(aloff_wallach(k, l, kp));
                const std::string name = aw_name(k, l, kp);
                c[0].residual(std::abs(delta_theta(x).vector(0) - aw_delta_theta(k, l, kp)), 1e-9, name + " delta theta");
                c[0].residual(std::abs(rough_laplacian_xi(x).value.vector(0) - aw_laplacian(k, l, kp)), 1e-9,
                              name + " laplacian");
            }
    }

    // Shared instance set for criteria 2-8.
    struct Case {
        std::string name;
        CircleBundle bundle;
        bool random = false;
    };
    std::vector<Case> cases;
    for (Instance& inst : random_instances(100)) cases.push_back({inst.name, std::move(inst.bundle), true});
    for (int m = 1; m <= 3; ++m) cases.push_back({"Hopf m=" + std::to_string(m), hopf(m), false});
    for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
            if (k == 0 && l == 0) continue;
            for (const CartanVector& h : aw_chamber_vectors()) {
                const InvariantMetric kp = kahler_metric_from(aloff_wallach_flag(), h);
                cases.push_back({aw_name(k, l, kp), aloff_wallach(k, l, kp), false});
            }
            const InvariantMetric plain{1, 1, 1};
            cases.push_back({aw_name(k, l, plain), aloff_wallach(k, l, plain), false});
        }

    int kahler_count = 0, normal_count = 0;
    for (const Case& cs : cases) {
        const CircleBundle& b = cs.bundle;
        const HarmonicContext ctx(b);
        const NomizuConnection& conn = ctx.conn();
        const std::string& n = cs.name;

        const ReebQuantity dt = delta_theta(ctx);
        const RoughLaplacian lp = rough_laplacian_xi(ctx);
        if (cs.random) {
            const ClosedFormCoefficients cf = closed_forms(b);
            c[1].residual(std::abs(dt.vector(0) - cf.delta_theta), 1e-9, n + " delta theta");
            c[1].residual(std::abs(lp.value.vector(0) - cf.rough_laplacian), 1e-9, n + " laplacian");
            c[1].residual(dt.parallel_residual, 1e-9, n + " delta theta parallel");
            c[1].residual(lp.value.parallel_residual, 1e-9, n + " laplacian parallel");
        }

        for (double v : verify_connection_table(b, conn)) c[2].residual(v, 1e-10, n);

        if (cs.random) {
            c[3].residual(conn.torsion_residual(), 1e-10, n + " torsion");
            c[3].residual(conn.metric_residual(), 1e-10, n + " metricity");
            c[3].residual(killing_residual(conn), 1e-10, n + " Killing");
            const CurvatureSymmetryResiduals s = curvature_symmetries(conn);
            c[3].residual(std::max({s.skew, s.metric_skew, s.bianchi, s.pair_symmetry}), 1e-9, n + " curvature");
        }

        const NormalityResiduals nr = normality_check(ctx);
        c[4].residual(std::max({nr.integrability, nr.eq1, nr.eq2, nr.eq3, nr.eq4, nr.eq5, nr.nijenhuis}), 1e-9, n);

        const Hse1Residuals h1 = hse1_check(ctx);
        const Hse2Residuals h2 = hse2_check(ctx);
        if (nr.normal(1e-9)) {
            ++normal_count;
            c[5].residual(std::max({h1.proof_identity, h1.jlee_identity, h2.equality_of_forms}), 1e-9, n + " proof identity");
        }
        if (is_kahler(b.flag()).kahler) {
            ++kahler_count;
            const HmeResiduals hm = hme_check(ctx);
            c[5].residual(std::max({h1.curvature_form, h1.intro_form, h2.curvature_form, h2.intro_form, hm.residual}),
                          1e-8, n + " Kahler");
        }

        if (cs.random) {
            const ONeillResiduals on = oneill_check(conn, NomizuConnection(b.base_space()));
            c[6].residual(on.max(), 1e-9, n);
        }

        c[7].residual(lp.factor_residual, 1e-9, n + " factor");
        c[7].residual(std::abs(lp.value.vector(0) - lp.grad_norm_sq), 1e-9, n + " |nabla xi|^2");
        c[7].residual(s_of_xi(ctx).norm(), 1e-9, n + " S(xi)");
    }

    // 5. non-example.
    {
        const FlagStructure f = aloff_wallach_flag().with_metric({1, 1, 2}).with_epsilon({1, 1, -1});
        const NormalityResiduals nr = normality_check(HarmonicContext(build_bundle(f, BundleOptions{aloff_wallach_x0(1, 2), {}})));
        c[4].expect(nr.integrability > 0.1, "epsilon (+1,+1,-1) integrability residual " + std::to_string(nr.integrability) + " not above 0.1");
    }

    // 9. classification.
    {
        const CSasakiTest ke = c_sasaki_test(aloff_wallach(1, 1, {1, 1, 2}));
        c[8].expect(ke.is_c_sasakian && ke.c && std::abs(*ke.c - 1.0 / std::sqrt(2.0)) < 1e-9, "AW(1,1) KE c");
        c[8].expect(!c_sasaki_test(aloff_wallach(1, 2, {1, 2, 3})).is_c_sasakian, "AW(1,2) kappa=(1,2,3)");
        c[8].expect(!c_sasaki_test(aloff_wallach(1, 1, {1, 2, 3})).is_c_sasakian, "AW(1,1) kappa=(1,2,3)");
        for (int k = -2; k <= 2; ++k)
            for (int l = -2; l <= 2; ++l) {
                if (k == 0 && l == 0) continue;
                for (const CartanVector& h : aw_chamber_vectors()) {
                    const InvariantMetric kp = kahler_metric_from(aloff_wallach_flag(), h);
                    const CircleBundle b = aloff_wallach(k, l, kp);
                    if (k < 0 || l < 0) c[8].expect(!c_sasaki_test(b).is_c_sasakian, aw_name(k, l, kp) + " c-Sasakian");
                    const GenericityTest g = genericity_test(b);
                    c[8].expect(g.invariant_field_dim == aw_invariant_field_dim(k, l) &&
                                    g.generic == (aw_invariant_field_dim(k, l) == 1),
                                aw_name(k, l, kp) + " genericity");
                }
            }
    }

    bool all = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Criterion& x = c[i];
        all = all && x.pass();
        std::printf("%s criterion %zu: %s (%d checks", x.pass() ? "PASS" : "FAIL", i + 1, x.title.c_str(), x.cases);
        if (x.threshold > 0) std::printf(", worst residual %.2e, bound %.0e", x.worst, x.threshold);
        std::printf(")\n");
        if (!x.pass()) std::printf("     first failure: %s\n", x.first_failure.c_str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%zu instances, %d Kahler, %d normal, %.2f s\n", cases.size(), kahler_count, normal_count, secs);
    return all ? 0 : 1;
}
