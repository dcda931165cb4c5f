#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "legw/chart_eval.hpp"
#include "legw/exemplars.hpp"
#include "legw/variational.hpp"

using namespace legw;

TEST_CASE("equatorial sphere pointwise pipeline") {
    auto sphere = equatorial_sphere();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<Real> uth(0.25, M_PI - 0.25), uph(0.0, 2 * M_PI);
    for (int s = 0; s < 50; ++s) {
        const ChartSample cs = evaluate_chart_point(*sphere, uth(rng), uph(rng));
        CHECK(cs.legendre <= 1e-14);
        CHECK(cs.S <= 1e-10);
        CHECK(std::abs(cs.K - 1.0) <= 1e-8);
        CHECK(std::abs(cs.gauss_residual) <= 1e-8);
        CHECK(cs.H_norm <= 1e-10);
        CHECK(cs.h3_max <= 1e-10);
        CHECK(cs.lapH_norm <= 1e-8);
        CHECK(cs.willmore_norm <= 1e-8);
        CHECK(std::abs(cs.key_identity) <= 1e-6);
        CHECK(std::abs(cs.csl) <= 1e-8);
        CHECK(std::abs(cs.cslw) <= 1e-6);
        CHECK(cs.velocity_norm <= 1e-6);
        CHECK(cs.velocity_reeb_defect <= 1e-10);
        CHECK(cs.splitting_residual <= 1e-10);
        CHECK(cs.codazzi_residual <= 1e-10);
        CHECK(cs.h3_identity <= 1e-10);
        CHECK(std::abs(cs.simons_slack) <= 1e-8);
        CHECK(std::abs(cs.simons_equality) <= 1e-8);
        CHECK(cs.mc_closedness <= 1e-8);
        CHECK(std::abs(cs.gap_integrand) <= 1e-8);
        CHECK(cs.willmore_identity_pt <= 1e-10);
    }
}

TEST_CASE("chart domain is enforced") {
    auto sphere = equatorial_sphere();
    CHECK_THROWS_AS(sphere->jet(0.1, 1.0), EvaluationOutsideChart);
    CHECK_THROWS_AS(sphere->jet(M_PI - 0.05, 1.0), EvaluationOutsideChart);
}

TEST_CASE("rotated sphere matches the untouched one") {
    auto controls = negative_controls();
    const AnalyticImmersion& rotated = *controls[2];
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<Real> uth(0.25, M_PI - 0.25), uph(0.0, 2 * M_PI);
    for (int s = 0; s < 25; ++s) {
        const ChartSample cs = evaluate_chart_point(rotated, uth(rng), uph(rng));
        CHECK(cs.legendre <= 1e-10);
        CHECK(cs.S <= 1e-10);
        CHECK(std::abs(cs.K - 1.0) <= 1e-8);
        CHECK(cs.willmore_norm <= 1e-8);
    }
}

// Two derivative sources, one set of formulas: the jet route must agree with
// the spectral route on a band-limited Legendrian torus with H != 0.
TEST_CASE("jet route cross-validates the spectral route") {
    FlatTorus3 torus({0.5, 0.25, 0.25}, {1, -1, -1}, {0, 1, -1}, "flat_legendrian_torus_nonminimal",
                     KnownInvariants{});
    const int n = 32;
    const ImmersionGrid grid = sample_to_grid(torus, n, n);
    CHECK(legendre_residual(grid) <= 1e-12);
    const FundamentalField ff = build_fundamental(grid);
    const VectorField lap = normal_laplacian_H(grid, ff);
    const ScalarField sf = cslw_residual(grid, ff);
    const ScalarField csl = csl_residual(grid, ff);

    Real worstS = 0, worstH = 0, worstLap = 0, worstSf = 0, worstCsl = 0;
    Real maxH = 0, maxSf = 0;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 24; ++t) {
        const int i = pick(rng), j = pick(rng);
        const size_t k = static_cast<size_t>(i) * n + j;
        const ChartSample cs = evaluate_chart_point(torus, 2 * M_PI * i / n, 2 * M_PI * j / n);
        worstS = std::max(worstS, std::abs(cs.S - ff.S[k]));
        worstH = std::max(worstH, std::abs(cs.H_norm - std::sqrt(std::max(ff.H2[k], 0.0))));
        worstLap = std::max(worstLap, std::abs(cs.lapH_norm - norm(lap[k])));
        worstSf = std::max(worstSf, std::abs(cs.cslw - sf[k]));
        worstCsl = std::max(worstCsl, std::abs(cs.csl - csl[k]));
        maxH = std::max(maxH, cs.H_norm);
        maxSf = std::max(maxSf, std::abs(cs.cslw));
        CHECK(std::abs(cs.key_identity) <= 1e-10);
        CHECK(cs.codazzi_residual <= 1e-10);
        CHECK(cs.splitting_residual <= 1e-9);
        CHECK(cs.h3_identity <= 1e-10);
        CHECK(std::abs(cs.simons_equality) <= 1e-8);
    }
    CHECK(maxH >= 0.1);  // the control is genuinely non-minimal
    CHECK(worstS <= 1e-10);
    CHECK(worstH <= 1e-10);
    CHECK(worstLap <= 1e-8);
    CHECK(worstSf <= 1e-8);
    CHECK(worstCsl <= 1e-10);
}
