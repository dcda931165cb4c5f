#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "legw/exemplars.hpp"
#include "legw/variational.hpp"

using namespace legw;

namespace {

Real field_max_abs(const ScalarField& f) {
    Real m = 0;
    for (size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k]));
    return m;
}

Real field_max_norm(const VectorField& f) {
    Real m = 0;
    for (size_t k = 0; k < f.size(); ++k) m = std::max(m, norm(f[k]));
    return m;
}

ScalarField random_band_limited(int n, unsigned seed, int band = 2) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<Real> coef(0.0, 1.0);
    ScalarField s(n, n, 0.0);
    for (int a = 0; a <= band; ++a)
        for (int b = 0; b <= band; ++b) {
            const Real cc = coef(rng), cs = coef(rng);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Real u = 2 * M_PI * i / n, v = 2 * M_PI * j / n;
                    s.at(i, j) += cc * std::cos(a * u + b * v) + cs * std::sin(a * u + b * v);
                }
        }
    // unit amplitude keeps finite-difference truncation small
    Real m = 0;
    for (size_t k = 0; k < s.size(); ++k) m = std::max(m, std::abs(s[k]));
    for (size_t k = 0; k < s.size(); ++k) s[k] /= m;
    return s;
}

Real area_of(const ImmersionGrid& g) { return surface_area(build_fundamental(g)); }

}  // namespace

TEST_CASE("mean curvature on exemplars") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField ff = build_fundamental(flat);
    CHECK(field_max_norm(ff.Hvec) <= 1e-8);
    const NormalFieldCheck nc = check_normal_field(flat, ff, ff.Hvec);
    CHECK(nc.tangential_leakage <= 1e-8);
    CHECK(nc.reeb_component <= 1e-8);
}

TEST_CASE("first variation of area oracle") {
    const ImmersionGrid pert = contact_perturbed_torus(32, 32, 0.01);
    const FundamentalField ff = build_fundamental(pert);
    const ScalarField s = random_band_limited(32, 41, 2);
    const ContactVariation cv = contact_variation(pert, ff, s);
    const Real tau = 1e-4;
    const Real dA = (area_of(deform_and_project(pert, cv.V, tau)) -
                     area_of(deform_and_project(pert, cv.V, -tau))) /
                    (2 * tau);
    ScalarField hv(32, 32);
    for (size_t k = 0; k < hv.size(); ++k) hv[k] = dot(ff.Hvec[k], cv.V[k]);
    const Real analytic = -2.0 * integrate(hv, ff.sqrtg);
    CHECK(std::abs(dA - analytic) / std::abs(analytic) <= 1e-4);

    // volume-variation form of the csL operator: int s div(JH) = -dA/dtau
    const ScalarField csl = csl_residual(pert, ff);
    ScalarField scsl(32, 32);
    for (size_t k = 0; k < scsl.size(); ++k) scsl[k] = s[k] * csl[k];
    CHECK(std::abs(integrate(scsl, ff.sqrtg) + dA) / std::abs(dA) <= 0.02);
}

TEST_CASE("normal Laplacian of H") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField ff = build_fundamental(flat);
    CHECK(field_max_norm(normal_laplacian_H(flat, ff)) <= 1e-6);
}

TEST_CASE("key identity <Delta^nu H, R> = 2 div JH") {
    for (Real eps : {0.0, 0.01}) {
        const ImmersionGrid grid = eps == 0.0 ? sample_to_grid(*flat_minimal_torus(), 32, 32)
                                              : contact_perturbed_torus(32, 32, eps);
        const FundamentalField ff = build_fundamental(grid);
        const VectorField lap = normal_laplacian_H(grid, ff);
        const ScalarField divJH = csl_residual(grid, ff);
        Real worst = 0;
        for (size_t k = 0; k < lap.size(); ++k)
            worst = std::max(worst, std::abs(dot(lap[k], ff[k].reeb) - 2.0 * divJH[k]));
        CHECK(worst <= 1e-4);
    }
}

TEST_CASE("Willmore operator") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField ff = build_fundamental(flat);
    const WillmoreOperatorField W = willmore_operator(flat, ff);
    CHECK(field_max_norm(W.value) <= 1e-6);  // minimal => Willmore
    CHECK(W.route_discrepancy <= 1e-6);

    const ImmersionGrid pert = contact_perturbed_torus(32, 32, 0.01);
    const FundamentalField fp = build_fundamental(pert);
    const WillmoreOperatorField Wp = willmore_operator(pert, fp);
    CHECK(Wp.route_discrepancy <= 1e-6);
    CHECK(check_normal_field(pert, fp, Wp.value).tangential_leakage <= 1e-8);

    // Reeb component of the operator reduces to the key identity
    const ScalarField divJH = csl_residual(pert, fp);
    Real worst = 0;
    for (size_t k = 0; k < Wp.value.size(); ++k)
        worst = std::max(worst, std::abs(dot(Wp.value[k], fp[k].reeb) - 2.0 * divJH[k]));
    CHECK(worst <= 1e-4);
}

TEST_CASE("csL residual on the flat torus") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    CHECK(field_max_abs(csl_residual(flat, build_fundamental(flat))) <= 1e-8);
}

TEST_CASE("csL-Willmore residual and the gradient oracle") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    CHECK(field_max_abs(cslw_residual(flat, build_fundamental(flat))) <= 1e-4);

    const ImmersionGrid pert = contact_perturbed_torus(32, 32, 0.01);
    const FundamentalField ff = build_fundamental(pert);
    const ScalarField sf = cslw_residual(pert, ff);
    const Real tau = 1e-4;
    for (unsigned seed : {1u, 2u, 3u}) {
        const ScalarField s = random_band_limited(32, seed);
        const ContactVariation cv = contact_variation(pert, ff, s);
        const Real Wp = willmore_energy(deform_and_project(pert, cv.V, tau));
        const Real Wm = willmore_energy(deform_and_project(pert, cv.V, -tau));
        const Real fd = (Wp - Wm) / (2 * tau);
        ScalarField prod(32, 32);
        for (size_t k = 0; k < prod.size(); ++k) prod[k] = 0.25 * sf[k] * s[k];
        const Real predicted = integrate(prod, ff.sqrtg);
        CHECK(std::abs(fd - predicted) / std::abs(fd) <= 0.02);
    }
}

TEST_CASE("contact variation basics") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField ff = build_fundamental(flat);

    const ContactVariation zero = contact_variation(flat, ff, ScalarField(32, 32, 0.0));
    CHECK(field_max_norm(zero.V) <= 1e-15);

    const ContactVariation one = contact_variation(flat, ff, ScalarField(32, 32, 1.0));
    Real worst = 0;
    for (size_t k = 0; k < one.V.size(); ++k) worst = std::max(worst, norm(one.V[k] - ff[k].reeb));
    CHECK(worst <= 1e-12);

    const ScalarField s = random_band_limited(32, 77, 2);
    const ContactVariation cv = contact_variation(flat, ff, s);
    Real worst_alpha = 0, worst_radial = 0;
    const VectorField& F = flat.values();
    for (size_t k = 0; k < cv.V.size(); ++k) {
        worst_alpha = std::max(worst_alpha, std::abs(dot(j0(F[k]), cv.V[k]) - s[k]));
        worst_radial = std::max(worst_radial, std::abs(dot(F[k], cv.V[k])));
    }
    CHECK(worst_alpha <= 1e-10);   // alpha(V) = s exactly
    CHECK(worst_radial <= 1e-10);  // tangent to the sphere

    // first-order Legendre preservation under f + tau V (unit-amplitude field)
    const ContactVariation unit = contact_variation(flat, ff, default_perturbation_field(32, 32));
    const ImmersionGrid moved = deform_and_project(flat, unit.V, 1e-3);
    CHECK(legendre_residual(moved) <= 1e-6);
    // and the drift scales at second order in tau
    const ImmersionGrid moved3 = deform_and_project(flat, unit.V, 3e-3);
    const Real ratio = legendre_residual(moved3) / legendre_residual(moved);
    CHECK(ratio >= 6.0);
    CHECK(ratio <= 12.0);
}

TEST_CASE("first variation check") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField ff = build_fundamental(flat);
    const ScalarField s = random_band_limited(32, 123, 2);
    const ContactVariation cv = contact_variation(flat, ff, s);
    const FirstVariationReport flatrep = first_variation_check(flat, ff, cv, {1e-4});
    CHECK(std::abs(flatrep.analytic) <= 1e-6);
    CHECK(std::abs(flatrep.finite_difference) <= 1e-6);

    const ImmersionGrid pert = contact_perturbed_torus(32, 32, 0.01);
    const FundamentalField fp = build_fundamental(pert);
    const ScalarField s2 = random_band_limited(32, 321, 2);
    const ContactVariation cv2 = contact_variation(pert, fp, s2);
    const FirstVariationReport rep = first_variation_check(pert, fp, cv2, {1e-3, 3e-4, 1e-4});
    CHECK(rep.relative_error <= 0.02);
    CHECK(rep.observed_order >= 1.9);

    // linearity: scaling V scales the analytic side exactly
    ScalarField s3(32, 32);
    for (size_t k = 0; k < s3.size(); ++k) s3[k] = 2.5 * s2[k];
    const ContactVariation cv3 = contact_variation(pert, fp, s3);
    const FirstVariationReport rep3 = first_variation_check(pert, fp, cv3, {1e-4});
    CHECK(rep3.analytic == Catch::Approx(2.5 * rep.analytic).epsilon(1e-12));
}
