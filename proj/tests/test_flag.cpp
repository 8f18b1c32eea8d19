#include "acms/bundle.hpp"
#include "acms/errors.hpp"
#include "acms/flag.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace acms;

namespace {
CartanVector diag(std::initializer_list<double> v) {
    CartanVector h(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) h(i++) = x;
    return h;
}

bool same_set(std::vector<Root> a, std::vector<Root> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

AlgebraElement random_m(const FlagStructure& f, std::mt19937& rng) {
    std::normal_distribution<double> g;
    AlgebraElement v = AlgebraElement::Zero(f.n(), f.n());
    for (const MVector& mv : f.m_vectors()) v += g(rng) * mv.value;
    return v;
}
}  // namespace

TEST_CASE("full flag of su(3)") {
    const FlagStructure f = full_flag(3);
    CHECK(f.p_roots().empty());
    CHECK(f.q_roots().size() == 6);
    CHECK(f.num_classes() == 3);
    for (const RootClass& c : f.classes()) CHECK(c.n_gamma() == 1);
    CHECK(f.z().dim() == 2);
    CHECK(f.k().dim() == 2);
    CHECK(f.m().dim() == 6);
    CHECK(f.k_closure_residual() < 1e-14);
}

TEST_CASE("Hopf base SU(m+1)/S(U(1)xU(m)) has a single class") {
    for (int m = 1; m <= 3; ++m) {
        const FlagStructure f = hopf_flag(m);
        CHECK(f.num_classes() == 1);
        CHECK(f.n_gamma(0) == m);
        CHECK(f.z().dim() == 1);
        CHECK(f.m().dim() == 2 * m);
        CHECK(f.k().dim() == m * m);
    }
}

TEST_CASE("su(3) with z spanned by i diag[1,1,-2]") {
    const FlagStructure f = build_flag(CompactLieModel(3), {diag({1, 1, -2})});
    CHECK(same_set(f.p_roots(), {{1, 2}, {2, 1}}));
    CHECK(f.q_roots().size() == 4);
    CHECK(f.num_classes() == 1);
    CHECK(f.n_gamma(0) == 2);
}

TEST_CASE("z is the full centre of k even for a degenerate spanning set") {
    // One generic vector of the centre of S(U(2)xU(1)xU(1)) determines the 2-dimensional z.
    const FlagStructure f = build_flag(CompactLieModel(4), {diag({1, 1, 0, -2})});
    CHECK(f.z().dim() == 2);
    CHECK(f.num_classes() == 3);
}

TEST_CASE("Aloff-Wallach ordering from -Y_0 of (1,1)") {
    const FlagStructure f = full_flag(3);
    const CircleBundle b = build_bundle(f, BundleOptions{aloff_wallach_x0(1, 1), {}});
    const std::vector<Root> q = invariant_ordering(f, -b.y0());
    CHECK(same_set(q, {{1, 3}, {3, 2}, {1, 2}}));
    const FlagStructure g = f.with_ordering(-b.y0());
    CHECK(same_set(invariant_ordering(g, g.h_rho()), q));
    CHECK((g.h_rho() - diag({1, -1, 0})).norm() < 1e-14);
    const FlagStructure aw = aloff_wallach_flag();
    REQUIRE(aw.num_classes() == 3);
    CHECK(aw.classes()[0].fiber[0] == Root{1, 3});
    CHECK(aw.classes()[1].fiber[0] == Root{3, 2});
    CHECK(aw.classes()[2].fiber[0] == Root{1, 2});
    CHECK(aw.epsilon_from_ordering());
}

TEST_CASE("a seed on a wall is rejected") {
    const FlagStructure f = full_flag(3);
    CHECK_THROWS_AS(invariant_ordering(f, diag({1, 1, -2})), NotRegularError);
    CHECK_THROWS_AS(f.with_ordering(diag({1, 0, -1}) + diag({0, 1, -1})), NotRegularError);
    const FlagStructure h = hopf_flag(2);
    CHECK_THROWS_AS(h.with_ordering(diag({1, -1, 0})), DomainError);
}

TEST_CASE("KKS form") {
    const FlagStructure f = full_flag(3);
    const CompactLieModel& m = f.model();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 5; ++t) {
        CartanVector h = diag({u(rng), u(rng), u(rng)});
        h.array() -= h.mean();
        const AlgebraElement z = m.i_cartan(h);
        for (const Root& a : m.root_system().roots())
            CHECK(kks_form(m, z, m.x(a), m.y(a)) == doctest::Approx(RootSystem::evaluate(a, h)).epsilon(1e-13));
        const AlgebraElement a = random_m(f, rng), b = random_m(f, rng);
        CHECK(std::abs(kks_form(m, z, a, a)) < 1e-13);
        CHECK(kks_form(m, z, f.apply_j(a), f.apply_j(b)) == doctest::Approx(kks_form(m, z, a, b)).epsilon(1e-12));
    }
}

TEST_CASE("J squares to minus the identity on m and is an isometry") {
    const FlagStructure f = aloff_wallach_flag().with_metric({1, 2, 3});
    std::mt19937 rng(2);
    for (int t = 0; t < 5; ++t) {
        const AlgebraElement a = random_m(f, rng), b = random_m(f, rng);
        CHECK((f.apply_j(f.apply_j(a)) + a).norm() < 1e-13);
        CHECK(f.kappa_m(f.apply_j(a), f.apply_j(b)) == doctest::Approx(f.kappa_m(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("Kahler test on the Aloff-Wallach flag") {
    const FlagStructure f = aloff_wallach_flag();
    CHECK(is_kahler(f.with_metric({1, 2, 3})).kahler);
    CHECK(is_kahler(f.with_metric({1, 1, 2})).kahler);
    const KahlerTest bad = is_kahler(f.with_metric({1, 1, 1}));
    CHECK_FALSE(bad.kahler);
    REQUIRE(bad.witness.has_value());
    CHECK((*bad.witness)[0] == 0);
    CHECK((*bad.witness)[1] == 1);
    CHECK((*bad.witness)[2] == 2);
    const KahlerTest flipped = is_kahler(f.with_metric({1, 2, 3}).with_epsilon({1, 1, -1}));
    CHECK_FALSE(flipped.kahler);
    CHECK_FALSE(flipped.reason.empty());
}

TEST_CASE("Kahler vectors") {
    const FlagStructure f = aloff_wallach_flag();
    const KahlerVectorResult r = kahler_vector(f.with_metric({1, 2, 3}));
    REQUIRE(r.ok);
    CHECK((r.h - diag({4.0 / 3, -5.0 / 3, 1.0 / 3})).norm() < 1e-12);
    CHECK(r.in_chamber);
    const KahlerVectorResult r2 = kahler_vector(f.with_metric({1, 1, 2}));
    REQUIRE(r2.ok);
    CHECK((r2.h - diag({1, -1, 0})).norm() < 1e-12);
    CHECK_FALSE(kahler_vector(f.with_metric({1, 1, 1})).ok);
}

TEST_CASE("Kahler-Einstein test") {
    const FlagStructure f = aloff_wallach_flag();
    const KahlerEinsteinTest a = is_kahler_einstein(f.with_metric({1, 1, 2}));
    CHECK(a.kahler_einstein);
    CHECK(a.c == doctest::Approx(1.0));
    const KahlerEinsteinTest b = is_kahler_einstein(f.with_metric({2, 2, 4}));
    CHECK(b.kahler_einstein);
    CHECK(b.c == doctest::Approx(2.0));
    CHECK_FALSE(is_kahler_einstein(f.with_metric({1, 2, 3})).kahler_einstein);
    const InvariantMetric ke = kahler_einstein_metric(f, 3.0);
    REQUIRE(ke.size() == 3);
    CHECK(ke[0] == doctest::Approx(3.0));
    CHECK(ke[1] == doctest::Approx(3.0));
    CHECK(ke[2] == doctest::Approx(6.0));
    const InvariantMetric kh = kahler_metric_from(f, diag({4.0 / 3, -5.0 / 3, 1.0 / 3}));
    CHECK(kh[0] == doctest::Approx(1.0));
    CHECK(kh[1] == doctest::Approx(2.0));
    CHECK(kh[2] == doctest::Approx(3.0));
}

TEST_CASE("metric and structure validation") {
    const FlagStructure f = full_flag(3);
    CHECK_THROWS_AS(f.with_metric({1, 0, 1}), DomainError);
    CHECK_THROWS_AS(f.with_metric({1, 1}), DomainError);
    CHECK_THROWS_AS(f.with_epsilon({1, 1}), DomainError);
}
