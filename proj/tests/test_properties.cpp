#include "acms/harmonic.hpp"
#include "acms/nomizu_checks.hpp"

#include "doctest.h"

#include "instances.hpp"

using namespace acms;
using namespace acms::testing;

TEST_CASE("random instances: identities of the invariant structure") {
    for (const Instance& inst : random_instances(30, 314159u)) {
        INFO(inst.name);
        const CircleBundle& b = inst.bundle;
        const HarmonicContext ctx(b);
        const NomizuConnection& conn = ctx.conn();

        CHECK(acms_axioms_check(b).max() < 1e-10);
        for (double v : verify_connection_table(b, conn)) CHECK(v < 1e-10);
        CHECK(conn.torsion_residual() < 1e-10);
        CHECK(conn.metric_residual() < 1e-10);
        CHECK(killing_residual(conn) < 1e-10);

        const ReebQuantity dt = delta_theta(ctx);
        const RoughLaplacian lp = rough_laplacian_xi(ctx);
        const ClosedFormCoefficients cf = closed_forms(b);
        CHECK(std::abs(dt.vector(0) - cf.delta_theta) < 1e-9);
        CHECK(std::abs(lp.value.vector(0) - cf.rough_laplacian) < 1e-9);
        CHECK(dt.parallel_residual < 1e-9);
        CHECK(lp.factor_residual < 1e-9);
        CHECK(s_of_xi(ctx).norm() < 1e-9);

        const NormalityResiduals n = normality_check(ctx);
        CHECK(n.max_asserted() < 1e-9);
        const Hse1Residuals h1 = hse1_check(ctx);
        CHECK(h1.proof_identity < 1e-9);
        CHECK(h1.jlee_identity < 1e-9);
        CHECK(h1.rbar_consistency < 1e-9);
        CHECK(hse2_check(ctx).equality_of_forms < 1e-9);

        if (is_kahler(b.flag()).kahler) {
            CHECK(h1.curvature_form < 1e-8);
            CHECK(h1.intro_form < 1e-8);
            CHECK(hme_check(ctx).residual < 1e-8);
        }
    }
}

TEST_CASE("random Kahler instances are harmonic maps") {
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int t = 0; t < 10; ++t) {
        const FlagStructure f = full_flag(4);
        // h in the dominant chamber h1 > h2 > h3 > h4.
        const double a = u(rng), b = u(rng), c = u(rng);
        CartanVector h(4);
        h << a + b + c, b + c, c, 0.0;
        h.array() -= h.mean();
        const FlagStructure k = f.with_ordering(h);
        const CircleBundle bundle = build_bundle(k.with_metric(kahler_metric_from(k, h)));
        const HarmonicityReport r = verdict(HarmonicContext(bundle));
        CHECK(r.kahler);
        CHECK(r.harmonic_section);
        CHECK(r.harmonic_map);
        CHECK(r.kahler_implies_harmonic);
    }
}
