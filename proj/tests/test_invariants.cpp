#include <catch2/catch_amalgamated.hpp>

#include "legw/exemplars.hpp"
#include "legw/invariants.hpp"

using namespace legw;

namespace {
Real field_max_abs(const ScalarField& f) {
    Real m = 0;
    for (size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k]));
    return m;
}
}  // namespace

TEST_CASE("Willmore energy of the flat minimal torus") {
    const Real analytic = 4.0 * M_PI * M_PI / std::sqrt(3.0);
    const ImmersionGrid grid = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const Real W32 = willmore_energy(grid);

    // independent high-resolution quadrature oracle
    const ImmersionGrid fine = sample_to_grid(*flat_minimal_torus(), 512, 512);
    const Real W512 = willmore_energy(fine);

    CHECK(std::abs(W512 - analytic) / analytic <= 1e-12);
    CHECK(std::abs(W32 - W512) / std::abs(W512) <= 1e-6);
}

TEST_CASE("Willmore energy is continuous in the perturbation size") {
    const Real W0 = willmore_energy(sample_to_grid(*flat_minimal_torus(), 32, 32));
    Real eps[3] = {0.02, 0.01, 0.005};
    Real diff[3];
    for (int i = 0; i < 3; ++i) diff[i] = std::abs(willmore_energy(contact_perturbed_torus(32, 32, eps[i])) - W0);
    CHECK(diff[2] < diff[1]);
    CHECK(diff[1] < diff[0]);
    const Real order = std::log(diff[0] / diff[2]) / std::log(eps[0] / eps[2]);
    CHECK(order >= 1.0);
}

TEST_CASE("gauss residual across exemplars") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    CHECK(field_max_abs(gauss_residual(flat, build_fundamental(flat))) <= 1e-6);
    const ImmersionGrid pert = contact_perturbed_torus(32, 32, 0.01);
    CHECK(field_max_abs(gauss_residual(pert, build_fundamental(pert))) <= 1e-5);
}

TEST_CASE("gap report on the flat torus") {
    const ImmersionGrid grid = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField ff = build_fundamental(grid);
    const GapReport gap = gap_report(ff);
    CHECK(std::abs(gap.s_min - 2.0) <= 1e-8);
    CHECK(std::abs(gap.s_max - 2.0) <= 1e-8);
    CHECK(field_max_abs(gap.gap_integrand) <= 1e-6);
    Real worstdets = 0, worstrho = 0;
    for (size_t k = 0; k < ff.size(); ++k) {
        worstdets = std::max(worstdets, std::abs(gap.dets[k] + 1.0));
        worstrho = std::max(worstrho, -gap.rho2[k]);
    }
    CHECK(worstdets <= 1e-6);   // det h^1 + det h^2 = -S/2
    CHECK(worstrho <= 1e-8);    // rho^2 >= 0
}

TEST_CASE("Simons balance") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField fflat = build_fundamental(flat);
    const SimonsReport sflat = simons_report(flat, fflat, build_shape_derivatives(flat, fflat));
    CHECK(field_max_abs(sflat.slack) <= 1e-4);  // equality case 2+4-4-2=0
    CHECK(std::abs(sflat.divergence_term_integral) <= 1e-6 * surface_area(fflat));
    CHECK(field_max_abs(sflat.equality_residual) <= 1e-6);

    const ImmersionGrid pert = contact_perturbed_torus(32, 32, 0.01);
    const FundamentalField fp = build_fundamental(pert);
    const ShapeDerivativeField sd = build_shape_derivatives(pert, fp);
    const SimonsReport sp = simons_report(pert, fp, sd);
    CHECK(sp.integrated_slack >= -1e-3);
    CHECK(std::abs(sp.divergence_term_integral) <= 1e-6 * surface_area(fp));
    // the slack collapses to S^2/2 - 2 dets^2 pointwise
    Real worst = 0;
    for (size_t k = 0; k < fp.size(); ++k)
        worst = std::max(worst,
                         std::abs(sp.slack[k] - (0.5 * fp.S[k] * fp.S[k] - 2.0 * fp.dets[k] * fp.dets[k])));
    CHECK(worst <= 1e-6);
    CHECK(field_max_abs(sp.equality_residual) <= 1e-6);
}

TEST_CASE("mean curvature form residuals") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField fflat = build_fundamental(flat);
    const MeanCurvatureFormReport mflat = mean_curvature_form_residuals(flat, fflat);
    CHECK(mflat.closedness <= 1e-10);
    CHECK(mflat.coclosedness_link <= 1e-10);

    const ImmersionGrid pert = contact_perturbed_torus(32, 32, 0.01);
    const FundamentalField fp = build_fundamental(pert);
    const MeanCurvatureFormReport mp = mean_curvature_form_residuals(pert, fp);
    CHECK(mp.closedness <= 1e-5);
    CHECK(mp.coclosedness_link <= 1e-10);

    // sensitivity: a random tangent field in place of JH is not closed
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<Real> coef(-1.0, 1.0);
    VectorField fake(32, 32);
    const VectorField& Fu = pert.derivative(1, 0);
    const VectorField& Fv = pert.derivative(0, 1);
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            const Real u = 2 * M_PI * i / 32, v = 2 * M_PI * j / 32;
            fake.at(i, j) = (0.2 * std::cos(u + v)) * Fu.at(i, j) + (0.3 * std::sin(2 * u)) * Fv.at(i, j);
        }
    const MeanCurvatureFormReport mfake = mean_curvature_form_residuals(pert, fp, &fake);
    CHECK(mfake.closedness >= 0.01);
}

TEST_CASE("Willmore identity residual on minimal exemplars") {
    const ImmersionGrid flat = sample_to_grid(*flat_minimal_torus(), 32, 32);
    const FundamentalField ff = build_fundamental(flat);
    const ShapeDerivativeField sd = build_shape_derivatives(flat, ff);
    CHECK(willmore_identity_residual(ff, sd) <= 1e-8);
}

TEST_CASE("trace-free algebra invariants") {
    const ImmersionGrid pert = contact_perturbed_torus(32, 32, 0.01);
    const FundamentalField ff = build_fundamental(pert);
    Real worst_rho4 = 0, worst_ineq = 0;
    for (size_t k = 0; k < ff.size(); ++k) {
        const auto& P = ff[k];
        Real htil[3][2][2], sig[3][3];
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) htil[b][i][j] = P.h[b][i][j] - (i == j ? P.Hc[b] : 0.0);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                sig[a][b] = 0;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) sig[a][b] += htil[a][i][j] * htil[b][i][j];
            }
        // sigma~ is symmetric as assembled
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(sig[a][b] == sig[b][a]);
        // rho^4 = (trace sigma~)^2
        const Real trace = sig[0][0] + sig[1][1] + sig[2][2];
        worst_rho4 = std::max(worst_rho4, std::abs(P.rho2 * P.rho2 - trace * trace));
        // H^2 rho^2 >= sum H^a H^b sigma~_{ab}
        Real shh = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) shh += P.Hc[a] * P.Hc[b] * sig[a][b];
        worst_ineq = std::max(worst_ineq, shh - P.H2 * P.rho2);
    }
    CHECK(worst_rho4 <= 1e-10);
    CHECK(worst_ineq <= 1e-8);
}
