#include <catch2/catch_amalgamated.hpp>

#include "legw/ambient.hpp"

using namespace legw;

namespace {
AmbientVector vec(Real a, Real b, Real c, Real d, Real e, Real f) { return {a, b, c, d, e, f}; }
}  // namespace

TEST_CASE("j0 is the standard complex structure") {
    CHECK(j0(vec(1, 0, 0, 0, 0, 0)) == vec(0, 0, 0, 1, 0, 0));

    const AmbientVector v = vec(1, 2, 3, 4, 5, 6);
    const AmbientVector jj = j0(j0(v));
    for (int k = 0; k < 6; ++k) CHECK(jj[k] == -v[k]);

    const AmbientVector w = vec(1, 1, 0, 0, 2, 0);
    CHECK(dot(j0(w), w) == 0.0);
}

TEST_CASE("contact form on basis examples") {
    const SpherePoint p(vec(1, 0, 0, 0, 0, 0));
    CHECK(contact_form(p, vec(0, 0, 0, 1, 0, 0)) == Catch::Approx(1.0).margin(1e-15));
    CHECK(contact_form(p, vec(0, 1, 0, 0, 0, 0)) == Catch::Approx(0.0).margin(1e-15));

    const Real s = 1.0 / std::sqrt(2.0);
    const SpherePoint q(vec(s, s, 0, 0, 0, 0));
    CHECK(contact_form(q, vec(0, 0, 1, 0, 0, 0)) == Catch::Approx(0.0).margin(1e-15));

    CHECK_THROWS_AS(contact_form(p, vec(1, 0, 0, 0, 0, 0)), NonTangent);
}

TEST_CASE("reeb field") {
    CHECK(reeb(SpherePoint(vec(1, 0, 0, 0, 0, 0))) == vec(0, 0, 0, 1, 0, 0));
    CHECK(reeb(SpherePoint(vec(0, 0, 0, 1, 0, 0))) == vec(-1, 0, 0, 0, 0, 0));

    const SpherePoint p(vec(0.6, 0, 0.8, 0, 0, 0));
    CHECK(contact_form(p, reeb(p)) == Catch::Approx(1.0).margin(1e-14));
    CHECK(norm(reeb(p)) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("extended J") {
    const SpherePoint p(vec(1, 0, 0, 0, 0, 0));
    CHECK(norm(extended_j(p, reeb(p))) <= 1e-15);

    // on the contact plane J acts as J0
    const AmbientVector v = vec(0, 1, 0, 0, 0, 0);
    CHECK(extended_j(p, v) == j0(v));

    // J^2 = -id on xi for a random xi-vector
    auto samples = random_structure_samples(20, 99);
    for (const auto& s : samples) {
        const SpherePoint q(s.p);
        const AmbientVector R = reeb(q);
        AmbientVector xi = s.x;
        const Real a = dot(j0(q.p), xi);
        for (int k = 0; k < 6; ++k) xi[k] -= a * R[k];
        const AmbientVector jj = extended_j(q, extended_j(q, xi));
        CHECK(norm(jj + xi) <= 1e-12);
    }
}

TEST_CASE("sphere covariant derivative") {
    auto samples = random_structure_samples(50, 3);
    for (const auto& s : samples) {
        const SpherePoint p(s.p);
        // nabla_x x for unit tangent x along a great circle: D_x x = 0 in the
        // constant-extension chart, correction <x,x> p.
        AmbientVector x = s.x;
        const Real n = norm(x);
        for (auto& c : x) c /= n;
        const AmbientVector cd = sphere_covariant(p, vzero<Real>(), x, x);
        CHECK(norm(cd - p.p) <= 1e-12);

        // Reeb field: nabla_x R = J x, and the result is tangent.
        const AmbientVector nr = sphere_covariant(p, j0(s.x), s.x, reeb(p));
        CHECK(std::abs(dot(nr, p.p)) <= 1e-10);
        CHECK(norm(nr - extended_j(p, s.x)) <= 1e-10);
    }
    const SpherePoint p(vec(1, 0, 0, 0, 0, 0));
    CHECK_THROWS_AS(sphere_covariant(p, vzero<Real>(), vec(1, 0, 0, 0, 0, 0), vec(0, 1, 0, 0, 0, 0)),
                    NonTangent);
}

TEST_CASE("structure identities on random samples") {
    const auto res = structure_checks(random_structure_samples(100, 7));
    CHECK(res.reeb_derivative <= 1e-10);
    CHECK(res.j_derivative <= 1e-10);
    CHECK(res.metric_compat <= 1e-12);
    CHECK(res.omega_compat <= 1e-12);
}

TEST_CASE("structure identities at special points") {
    // x = y = R: (nabla_R J) R = -g(R,R) R + alpha(R) R = 0.
    const AmbientVector p = vec(1, 0, 0, 0, 0, 0);
    const AmbientVector R = vec(0, 0, 0, 1, 0, 0);
    const auto res = structure_checks({{p, R, R}});
    CHECK(res.j_derivative <= 1e-14);
    CHECK(res.reeb_derivative <= 1e-14);

    // real point with real tangents: the g(x,y)R term is the whole answer
    const auto res2 = structure_checks({{p, vec(0, 1, 0, 0, 0, 0), vec(0, 1, 0, 0, 0, 0)}});
    CHECK(res2.j_derivative <= 1e-14);
}

TEST_CASE("alpha(R)=1 and J(R)=0 pointwise") {
    for (const auto& s : random_structure_samples(200, 13)) {
        const SpherePoint p(s.p);
        CHECK(std::abs(contact_form(p, reeb(p)) - 1.0) <= 1e-14);
        CHECK(norm(extended_j(p, reeb(p))) <= 1e-14);
        // J^2 = -id + alpha tensor R on any tangent vector
        const AmbientVector jj = extended_j(p, extended_j(p, s.x));
        const AmbientVector expect = -s.x + contact_form(p, s.x) * reeb(p);
        CHECK(norm(jj - expect) <= 1e-12);
    }
}
