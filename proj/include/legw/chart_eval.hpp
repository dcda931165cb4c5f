#pragma once

#include "legw/analytic.hpp"
#include "legw/pointwise.hpp"

namespace legw {

// Pointwise evaluation of the full pipeline on an analytic immersion through
// order-6 jets. Every chart derivative of an assembled quantity is a Taylor
// coefficient shift, so the deepest chain (the flow velocity, sixth order in
// F) is evaluated exactly at the point.
struct ChartSample {
    Real legendre = 0;
    Real sqrtg = 0;
    Real S = 0, K = 0, gauss_residual = 0, H_norm = 0, h3_max = 0, rho2 = 0, dets = 0;
    Real h_symmetry = 0;
    Real lapH_norm = 0, willmore_norm = 0, route_discrepancy = 0;
    Real key_identity = 0;  // <Delta^nu H, R> - 2 div JH
    Real csl = 0, cslw = 0;
    Real velocity_norm = 0, velocity_reeb_defect = 0;  // |alpha(V) + s_f|
    Real splitting_residual = 0, codazzi_residual = 0, h3_identity = 0;  // h3_ijk + h^k_ij
    Real simons_slack = 0, simons_equality = 0;
    Real mc_closedness = 0;
    Real gap_integrand = 0;
    Real willmore_identity_pt = 0;  // |nabla^nu H|^2 - sigma~_{ab} H^a H^b
};

inline ChartSample evaluate_chart_point(const AnalyticImmersion& surf, Real u, Real v) {
    const JetVec F = surf.jet(u, v);
    const JetVec Fu = jet_du(F), Fv = jet_dv(F);

    Partials3<Jet> d;
    d.F = F;
    d.Fu = Fu;
    d.Fv = Fv;
    d.Fuu = jet_du(Fu);
    d.Fuv = jet_dv(Fu);
    d.Fvv = jet_dv(Fv);
    d.Fuuu = jet_du(d.Fuu);
    d.Fuuv = jet_dv(d.Fuu);
    d.Fuvv = jet_dv(d.Fuv);
    d.Fvvv = jet_dv(d.Fvv);

    const PointFundamental<Jet> P = fundamental_point<Jet>(d);
    ChartSample out;

    out.legendre = std::max(std::abs(scalar_value(P.alpha_u)) / std::sqrt(scalar_value(P.g[0][0])),
                            std::abs(scalar_value(P.alpha_v)) / std::sqrt(scalar_value(P.g[1][1])));
    out.sqrtg = scalar_value(P.sqrtg);
    out.S = scalar_value(P.S);
    out.rho2 = scalar_value(P.rho2);
    out.dets = scalar_value(P.dets);
    out.K = scalar_value(gauss_intrinsic(d));
    out.gauss_residual = 2.0 * out.K - 2.0 - 4.0 * scalar_value(P.H2) + out.S;
    out.H_norm = std::sqrt(std::max(scalar_value(P.H2), 0.0));
    out.gap_integrand = (out.rho2 + 0.5 * out.S) * (2.0 - out.S);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.h3_max = std::max(out.h3_max, std::abs(scalar_value(P.h[2][i][j])));
    // full symmetry of h^k_ij over all index permutations
    out.h_symmetry = std::max(std::abs(scalar_value(P.h[0][0][1]) - scalar_value(P.h[1][0][0])),
                              std::abs(scalar_value(P.h[0][1][1]) - scalar_value(P.h[1][0][1])));

    // nabla^nu_a H and the normal Laplacian.
    const Vec6<Jet> N[2] = {normal_covariant(P, F, Fu, P.H, jet_du(P.H)),
                            normal_covariant(P, F, Fv, P.H, jet_dv(P.H))};
    const DifferentiatedVec<Jet> Nu{N[0], jet_du(N[0]), jet_dv(N[0])};
    const DifferentiatedVec<Jet> Nv{N[1], jet_du(N[1]), jet_dv(N[1])};
    const Vec6<Jet> lap = normal_laplacian_point(P, F, Fu, Fv, Nu, Nv);
    out.lapH_norm = norm(jet_value(lap));

    const Vec6<Jet> Wv = willmore_point(P, lap);
    const Vec6<Jet> Wv2 = willmore_point_tracefree(P, lap);
    out.willmore_norm = norm(jet_value(Wv));
    out.route_discrepancy = norm(jet_value(Wv) - jet_value(Wv2));

    auto div_of = [&](const Vec6<Jet>& X) {
        Jet Xu, Xv;
        chart_components(P, Fu, Fv, X, Xu, Xv);
        const Jet yu = P.sqrtg * Xu, yv = P.sqrtg * Xv;
        return divergence_point(P, yu.du(), yv.dv());
    };

    const Vec6<Jet> JH = extended_j_pt(F, P.H);
    const Jet divJH = div_of(JH);
    out.csl = scalar_value(divJH);
    out.key_identity = scalar_value(dot(lap, P.reeb)) - 2.0 * out.csl;

    const Vec6<Jet> X = extended_j_pt(F, Vec6<Jet>(Wv + 4.0 * P.H));
    const Jet sf = 2.0 * div_of(X);
    out.cslw = scalar_value(sf);

    // velocity = V(-s_f) = -s_f R - (1/2) J grad s_f
    {
        const Jet su = sf.du(), sv = sf.dv();
        const Jet gu = P.ginv[0][0] * su + P.ginv[0][1] * sv;
        const Jet gv = P.ginv[1][0] * su + P.ginv[1][1] * sv;
        const Vec6<Jet> grad_sf = gu * Fu + gv * Fv;
        const Vec6<Jet> vel = -(sf * P.reeb) - 0.5 * extended_j_pt(F, grad_sf);
        out.velocity_norm = norm(jet_value(vel));
        out.velocity_reeb_defect = std::abs(scalar_value(dot(j0(F), vel)) + out.cslw);
    }

    // Derivatives of A and the Simons balance.
    DifferentiatedVec<Jet> Adiff[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) Adiff[a][b] = {P.A[a][b], jet_du(P.A[a][b]), jet_dv(P.A[a][b])};
    const ShapeDerivatives<Jet> SD = shape_derivatives_point(P, F, Fu, Fv, Adiff);

    Real grad_h2 = scalar_value(SD.grad_h2), gradT_h2 = scalar_value(SD.gradT_h2);
    out.splitting_residual = std::abs(grad_h2 - gradT_h2 - out.S);
    for (int beta = 0; beta < 3; ++beta)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    out.codazzi_residual =
                        std::max(out.codazzi_residual, std::abs(scalar_value(SD.hijk[beta][i][j][k]) -
                                                                scalar_value(SD.hijk[beta][i][k][j])));
                    if (beta == 2)
                        out.h3_identity = std::max(
                            out.h3_identity, std::abs(scalar_value(SD.hijk[2][i][j][k]) +
                                                      scalar_value(P.h[k][i][j])));
                }

    Jet n2(0.0), t2(0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            n2 += P.ginv[a][b] * dot(N[a], N[b]);
            t2 += P.ginv[a][b] * (dot(N[a], P.nu[0]) * dot(N[b], P.nu[0]) +
                                  dot(N[a], P.nu[1]) * dot(N[b], P.nu[1]));
        }

    // 1/2 Delta S vs the collected right-hand side.
    {
        const Jet Su = P.S.du(), Sv = P.S.dv();
        const Jet yu = P.sqrtg * (P.ginv[0][0] * Su + P.ginv[0][1] * Sv);
        const Jet yv = P.sqrtg * (P.ginv[1][0] * Su + P.ginv[1][1] * Sv);
        const Real lapS = scalar_value(divergence_point(P, yu.du(), yv.dv()));
        const Vec6<Jet> Yamb = SD.Yframe[0] * P.e[0] + SD.Yframe[1] * P.e[1];
        const Real divterm = scalar_value(div_of(Yamb));
        const Real H2 = scalar_value(P.H2), S = out.S, rho2 = out.rho2, dets = out.dets;
        const Real rhs = gradT_h2 - 4.0 * scalar_value(n2) + divterm + S + 2.0 * (1.0 + H2) * rho2 -
                         rho2 * rho2 - 0.5 * S * S;
        out.simons_slack = 0.5 * lapS - rhs;
        out.simons_equality = 0.5 * lapS - (grad_h2 - 4.0 * scalar_value(n2) + divterm +
                                            2.0 * scalar_value(P.Kext) * rho2 - 2.0 * dets * dets);
    }

    // Closedness of the mean curvature 1-form theta = <JH, F_a> dx^a.
    {
        const Jet tu = dot(JH, Fu), tv = dot(JH, Fv);
        out.mc_closedness = std::abs(scalar_value(tv.du() - tu.dv()) / scalar_value(P.sqrtg));
    }

    // Pointwise integrand of the Willmore identity.
    {
        Real htil[3][2][2];
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    htil[b][i][j] = scalar_value(P.h[b][i][j]) - (i == j ? scalar_value(P.Hc[b]) : 0.0);
        Real acc = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                Real sig = 0;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) sig += htil[a][i][j] * htil[b][i][j];
                acc += sig * scalar_value(P.Hc[a]) * scalar_value(P.Hc[b]);
            }
        out.willmore_identity_pt = std::abs(scalar_value(n2) - acc);
    }

    return out;
}

}  // namespace legw
