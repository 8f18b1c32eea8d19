#include "acms/bundle.hpp"
#include "acms/errors.hpp"

#include "doctest.h"

#include "instances.hpp"

using namespace acms;
using namespace acms::testing;

namespace {
CartanVector diag(std::initializer_list<double> v) {
    CartanVector h(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) h(i++) = x;
    return h;
}
}  // namespace

TEST_CASE("Aloff-Wallach X_0 is a unit vector orthogonal to the circle") {
    const CompactLieModel m(3);
    for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
            if (k == 0 && l == 0) continue;
            const AlgebraElement x0 = aloff_wallach_x0(k, l);
            CHECK(m.b_form(x0, x0) == doctest::Approx(1.0).epsilon(1e-14));
            const AlgebraElement xm1 =
                m.i_cartan(diag({double(k), double(l), -double(k + l)})) / (aw_gamma(k, l) * std::sqrt(2.0));
            CHECK(std::abs(m.b_form(xm1, x0)) < 1e-15);
            CHECK(m.b_form(xm1, xm1) == doctest::Approx(1.0).epsilon(1e-14));
        }
    CHECK_THROWS_AS(aloff_wallach_x0(0, 0), DomainError);
}

TEST_CASE("frame layout and dimensions") {
    const CircleBundle b = aloff_wallach(1, 2, {1, 2, 3});
    REQUIRE(b.dim() == 7);
    CHECK(b.frame()[0].kind == FrameVector::Kind::Reeb);
    for (int p = 0; p < b.num_roots(); ++p) {
        CHECK(b.frame()[b.x_index(p)].kind == FrameVector::Kind::X);
        CHECK(b.frame()[b.y_index(p)].kind == FrameVector::Kind::Y);
        CHECK(b.frame()[b.x_index(p)].class_index == p);
    }
    CHECK(b.ktilde().dim() == 1);
    CHECK(b.total_space().reductive_residual() < 1e-14);
    const CircleBundle h = hopf(3);
    CHECK(h.dim() == 7);
    CHECK(h.ktilde().dim() == 8);
}

TEST_CASE("projection of i h_lambda onto m~ is c_gamma X_0") {
    for (const Instance& inst : random_instances(10, 99)) {
        const CircleBundle& b = inst.bundle;
        const FlagStructure& f = b.flag();
        for (int g = 0; g < f.num_classes(); ++g)
            for (const Root& a : f.classes()[g].fiber) {
                const Eigen::VectorXd c = b.coords(f.model().i_cartan(f.model().coroot(a)));
                CHECK(c(0) == doctest::Approx(b.c_gamma(g)).epsilon(1e-12));
                CHECK(c.tail(c.size() - 1).norm() < 1e-12);
                CHECK(b.c_gamma(g) == doctest::Approx(RootSystem::evaluate(a, b.y0())).epsilon(1e-12));
            }
    }
}

TEST_CASE("almost contact metric axioms") {
    for (const Instance& inst : random_instances(20, 5)) {
        const AcmsResiduals r = acms_axioms_check(inst.bundle);
        CHECK_MESSAGE(r.max() < 1e-12, inst.name);
    }
    const CircleBundle b = aloff_wallach(2, -1, {1, 1, 2});
    const Eigen::MatrixXd t = b.theta();
    for (int p = 0; p < b.num_roots(); ++p) {
        const Eigen::VectorXd x = Eigen::VectorXd::Unit(b.dim(), b.x_index(p));
        CHECK((t * t * x + x).norm() < 1e-15);
    }
    CHECK((t * t * b.xi()).norm() == 0.0);
}

TEST_CASE("curvature form Sigma of the connection") {
    const CircleBundle b = aloff_wallach(1, 2, {1, 2, 3});
    const auto& fr = b.frame();
    for (int p = 0; p < b.num_roots(); ++p) {
        const int g = fr[b.x_index(p)].class_index;
        CHECK(sigma_form(b, fr[b.x_index(p)].value, fr[b.y_index(p)].value) ==
              doctest::Approx(-b.a_gamma(g)).epsilon(1e-13));
        CHECK(std::abs(sigma_form(b, fr[b.x_index(p)].value, fr[b.x_index(p)].value)) < 1e-15);
    }
    for (const Instance& inst : random_instances(10, 8)) CHECK(sigma_j_invariance(inst.bundle) < 1e-12);
}

TEST_CASE("c-Sasakian detection") {
    const CSasakiTest ke = c_sasaki_test(aloff_wallach(1, 1, {1, 1, 2}));
    CHECK(ke.is_c_sasakian);
    REQUIRE(ke.c.has_value());
    CHECK(std::abs(*ke.c - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK_FALSE(c_sasaki_test(aloff_wallach(1, 1, {1, 2, 3})).is_c_sasakian);
    for (const InvariantMetric& kp : {aw_kahler(1, 1), aw_kahler(1, 2), aw_kahler(3, 0.5)})
        CHECK_FALSE(c_sasaki_test(aloff_wallach(1, -1, kp)).is_c_sasakian);
    const CSasakiTest hp = c_sasaki_test(hopf(2));
    CHECK(hp.is_c_sasakian);
}

TEST_CASE("genericity of Aloff-Wallach spaces") {
    CHECK(genericity_test(aloff_wallach(1, 2, {1, 1, 2})).generic);
    CHECK(genericity_test(aloff_wallach(1, 2, {1, 1, 2})).invariant_field_dim == 1);
    CHECK(genericity_test(aloff_wallach(1, 1, {1, 1, 2})).invariant_field_dim == 3);
    CHECK(genericity_test(aloff_wallach(2, -1, {1, 1, 2})).invariant_field_dim == 3);
    for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
            if (k == 0 && l == 0) continue;
            const GenericityTest g = genericity_test(aloff_wallach(k, l, {1, 2, 3}));
            CHECK(g.invariant_field_dim == aw_invariant_field_dim(k, l));
            CHECK(g.generic == (aw_invariant_field_dim(k, l) == 1));
        }
}

TEST_CASE("X_0 validation and the z~ correction") {
    const FlagStructure f = full_flag(3);
    const CompactLieModel& m = f.model();
    CHECK_THROWS_AS(build_bundle(f, BundleOptions{m.x(Root{1, 2}), {}}), DomainError);
    CHECK_THROWS_AS(build_bundle(f, BundleOptions{AlgebraElement::Zero(3, 3), {}}), DegenerateError);
    BundleOptions opt;
    opt.x0 = m.i_cartan(diag({1, 0, -1}));
    opt.ztilde = {m.i_cartan(diag({1, 1, -2}))};
    const CircleBundle b = build_bundle(f, opt);
    CHECK_FALSE(b.warnings().empty());
    CHECK(std::abs(m.b_form(b.x0(), opt.ztilde[0])) < 1e-14);
    CHECK(m.b_form(b.x0(), b.x0()) == doctest::Approx(1.0));
    const CircleBundle h = hopf(2);
    CHECK((h.x0() - auto_x0(h.flag())).norm() < 1e-14);
    CHECK_THROWS_AS(hopf(0), DomainError);
}
