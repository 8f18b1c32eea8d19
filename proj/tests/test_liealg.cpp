#include "acms/errors.hpp"
#include "acms/liealg.hpp"

#include "doctest.h"

#include <complex>
#include <random>

using namespace acms;
using cd = std::complex<double>;

namespace {
CartanVector diag(std::initializer_list<double> v) {
    CartanVector h(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) h(i++) = x;
    return h;
}

CartanVector random_traceless(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    CartanVector h(n);
    for (int i = 0; i < n; ++i) h(i) = u(rng);
    return h.array() - h.mean();
}

AlgebraElement random_element(const CompactLieModel& m, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXd c(m.algebra().dim());
    for (int i = 0; i < c.size(); ++i) c(i) = g(rng);
    return m.algebra().element(c);
}
}  // namespace

TEST_CASE("Chevalley vectors of e1-e2 in su(3)") {
    const CompactLieModel m(3);
    const Root a{1, 2};
    AlgebraElement x = AlgebraElement::Zero(3, 3), y = AlgebraElement::Zero(3, 3);
    x(0, 1) = 1.0 / std::sqrt(2.0);
    x(1, 0) = -1.0 / std::sqrt(2.0);
    y(0, 1) = cd(0, 1.0 / std::sqrt(2.0));
    y(1, 0) = cd(0, 1.0 / std::sqrt(2.0));
    CHECK((m.x(a) - x).norm() < 1e-15);
    CHECK((m.y(a) - y).norm() < 1e-15);
    CHECK(m.b_form(m.x(a), m.x(a)) == doctest::Approx(1.0));
    CHECK(m.b_form(m.y(a), m.y(a)) == doctest::Approx(1.0));
    CHECK(std::abs(m.b_form(m.x(a), m.y(a))) < 1e-15);
}

TEST_CASE("bracket relations") {
    const CompactLieModel m(3);
    const Root a1{1, 2};
    CHECK((bracket(m.x(a1), m.y(a1)) - m.i_cartan(diag({1, -1, 0}))).norm() < 1e-15);
    std::mt19937 rng(11);
    const AlgebraElement a = random_element(m, rng);
    CHECK(bracket(a, a).norm() < 1e-14);
    for (int t = 0; t < 5; ++t) {
        const CartanVector h = random_traceless(3, rng);
        for (const Root& r : m.root_system().roots())
            CHECK((bracket(m.i_cartan(h), m.x(r)) - RootSystem::evaluate(r, h) * m.y(r)).norm() < 1e-14);
    }
    CHECK_THROWS_AS(bracket(AlgebraElement::Zero(2, 2), AlgebraElement::Zero(3, 3)), DomainError);
}

TEST_CASE("invariant form on the torus is the coroot pairing") {
    for (double scale : {1.0, 2.5}) {
        const CompactLieModel m(4, scale);
        for (const Root& a : m.root_system().roots())
            for (const Root& b : m.root_system().roots())
                CHECK(m.b_form(m.i_cartan(m.coroot(a)), m.i_cartan(m.coroot(b))) ==
                      doctest::Approx(m.pairing(m.coroot(a), m.coroot(b))).epsilon(1e-14));
    }
}

TEST_CASE("invariant form is ad-invariant and positive definite") {
    const CompactLieModel m(4);
    std::mt19937 rng(3);
    for (int t = 0; t < 10; ++t) {
        const AlgebraElement a = random_element(m, rng), b = random_element(m, rng), c = random_element(m, rng);
        CHECK(std::abs(m.b_form(bracket(a, b), c) + m.b_form(b, bracket(a, c))) < 1e-12);
        CHECK(m.b_form(a, a) > 0.0);
        CHECK(m.in_algebra(bracket(a, b), 1e-12));
    }
    CHECK(m.algebra().dim() == 15);
    CHECK(m.torus().dim() == 3);
    CHECK(m.algebra().gram_residual() < 1e-14);
}

TEST_CASE("projection is idempotent and complements are orthogonal") {
    const CompactLieModel m(3);
    std::mt19937 rng(5);
    const Subspace t = m.torus();
    const Subspace rest = t.complement_in(m.algebra());
    CHECK(rest.dim() == 6);
    for (int k = 0; k < 5; ++k) {
        const AlgebraElement v = random_element(m, rng);
        const AlgebraElement p = rest.project(v);
        CHECK((rest.project(p) - p).norm() < 1e-13);
        CHECK((t.project(v) + p - v).norm() < 1e-13);
        CHECK(std::abs(m.b_form(t.project(v), p)) < 1e-13);
    }
    for (const Root& a : m.root_system().roots()) CHECK(rest.project(m.i_cartan(m.coroot(a))).norm() < 1e-14);
    CHECK(t.sum(rest).dim() == 8);
}

TEST_CASE("centralizers") {
    const CompactLieModel m(3);
    const Subspace empty = Subspace::span(m.form(), 3, {});
    CHECK(centralizer_in(m.algebra(), empty).dim() == 8);
    CHECK(centralizer_in(m.algebra(), m.torus()).dim() == 2);
    const Subspace u2 = Subspace::span(m.form(), 3, {m.x(Root{1, 2}), m.y(Root{1, 2}), m.i_cartan(diag({1, -1, 0}))});
    const Subspace c = centralizer_in(m.algebra(), u2);
    REQUIRE(c.dim() == 1);
    CHECK(c.contains(m.i_cartan(diag({1, 1, -2}))));
}

TEST_CASE("span drops dependent vectors") {
    const CompactLieModel m(3);
    const AlgebraElement a = m.x(Root{1, 2});
    const Subspace s = Subspace::span(m.form(), 3, {a, 2.0 * a, m.y(Root{1, 3})});
    CHECK(s.dim() == 2);
    CHECK(s.contains(a));
    CHECK_FALSE(s.contains(m.x(Root{2, 3})));
    const Eigen::VectorXd c = s.coordinates(a);
    CHECK((s.element(c) - a).norm() < 1e-14);
}
