#pragma once

#include "legw/geometry_field.hpp"

namespace legw {

// W(f) = 1/2 int (S - 2|H|^2) dmu; the integrand is rho^2 = |A - Hg|^2 >= 0.
inline Real willmore_energy(const FundamentalField& ff) {
    ScalarField integrand(ff.nu, ff.nv);
    for (size_t k = 0; k < integrand.size(); ++k) integrand[k] = 0.5 * ff.rho2[k];
    return integrate(integrand, ff.sqrtg);
}

inline Real willmore_energy(const ImmersionGrid& grid) { return willmore_energy(build_fundamental(grid)); }

// 2K - 2 - 4H^2 + S with K from the metric route; vanishes by the Gauss relation.
inline ScalarField gauss_residual(const ImmersionGrid& grid, const FundamentalField& ff) {
    const ScalarField K = gauss_intrinsic_field(grid);
    ScalarField out(ff.nu, ff.nv);
    for (size_t k = 0; k < out.size(); ++k) out[k] = 2.0 * K[k] - 2.0 - 4.0 * ff.H2[k] + ff.S[k];
    return out;
}

struct GapReport {
    Real s_min = 0, s_max = 0;
    ScalarField rho2;           // S - 2H^2
    ScalarField dets;           // det h^1 + det h^2
    ScalarField gap_integrand;  // (rho^2 + S/2)(2 - S)
    Real integrated_gap = 0;
};

inline GapReport gap_report(const FundamentalField& ff) {
    GapReport r;
    r.rho2 = ff.rho2;
    r.dets = ff.dets;
    r.gap_integrand = ScalarField(ff.nu, ff.nv);
    r.s_min = ff.S[0];
    r.s_max = ff.S[0];
    for (size_t k = 0; k < ff.size(); ++k) {
        r.s_min = std::min(r.s_min, ff.S[k]);
        r.s_max = std::max(r.s_max, ff.S[k]);
        r.gap_integrand[k] = (ff.rho2[k] + 0.5 * ff.S[k]) * (2.0 - ff.S[k]);
    }
    r.integrated_gap = integrate(r.gap_integrand, ff.sqrtg);
    return r;
}

// Simons-type balance: lhs = 1/2 Delta S; rhs collects
//   |nabla^T h|^2 - 4|nabla^nu H|^2 + div-term + S + 2(1+H^2)rho^2 - rho^4 - S^2/2.
// The pointwise slack lhs - rhs equals S^2/2 - 2(det h^1 + det h^2)^2 >= 0.
struct SimonsReport {
    ScalarField lhs, rhs, slack;
    Real divergence_term_integral = 0;
    Real integrated_slack = 0;
    // equality form of the same computation, a full-pipeline regression:
    // 1/2 Delta S = |nabla h|^2 - 4|nabla^nu H|^2 + div-term + 2K rho^2 - 2 dets^2
    ScalarField equality_residual;
};

inline SimonsReport simons_report(const ImmersionGrid& grid, const FundamentalField& ff,
                                  const ShapeDerivativeField& sd) {
    SimonsReport r;
    const ScalarField lapS = laplace_field(grid, ff, ff.S);
    r.lhs = ScalarField(ff.nu, ff.nv);
    r.rhs = ScalarField(ff.nu, ff.nv);
    r.slack = ScalarField(ff.nu, ff.nv);
    r.equality_residual = ScalarField(ff.nu, ff.nv);
    for (size_t k = 0; k < ff.size(); ++k) {
        r.lhs[k] = 0.5 * lapS[k];
        r.rhs[k] = sd.gradT_h2[k] - 4.0 * sd.nrm2_nabla_nu_H[k] + sd.div_term[k] + ff.S[k] +
                   2.0 * (1.0 + ff.H2[k]) * ff.rho2[k] - ff.rho2[k] * ff.rho2[k] - 0.5 * ff.S[k] * ff.S[k];
        r.slack[k] = r.lhs[k] - r.rhs[k];
        r.equality_residual[k] = r.lhs[k] - (sd.grad_h2[k] - 4.0 * sd.nrm2_nabla_nu_H[k] + sd.div_term[k] +
                                             2.0 * ff.Kext[k] * ff.rho2[k] - 2.0 * ff.dets[k] * ff.dets[k]);
    }
    r.divergence_term_integral = integrate(sd.div_term, ff.sqrtg);
    r.integrated_slack = integrate(r.slack, ff.sqrtg);
    return r;
}

// The mean curvature 1-form omega(H,.)|_Sigma is the metric dual of the
// tangent field JH. Closedness is Lemma-level geometry; the codifferential
// link delta(theta) + div(JH) = 0 holds by construction and exercises delta.
struct MeanCurvatureFormReport {
    Real closedness = 0;        // max |d theta| / sqrt(g)
    Real coclosedness_link = 0; // max |delta theta + div JH|
};

inline VectorField jh_field(const FundamentalField& ff, const VectorField& Fpos) {
    VectorField JH(ff.nu, ff.nv);
    for (size_t k = 0; k < JH.size(); ++k) JH[k] = extended_j_pt(Fpos[k], ff.Hvec[k]);
    return JH;
}

inline MeanCurvatureFormReport mean_curvature_form_residuals(const ImmersionGrid& grid,
                                                             const FundamentalField& ff,
                                                             const VectorField* tangent_override = nullptr) {
    const VectorField& F = grid.values();
    const VectorField &Fu = grid.derivative(1, 0), &Fv = grid.derivative(0, 1);
    const VectorField JH = tangent_override ? *tangent_override : jh_field(ff, F);
    ScalarField tu(ff.nu, ff.nv), tv(ff.nu, ff.nv);
    for (size_t k = 0; k < tu.size(); ++k) {
        tu[k] = dot(JH[k], Fu[k]);
        tv[k] = dot(JH[k], Fv[k]);
    }
    const ScalarField dtv = spectral_derivative(tv, 1, 0), dtu = spectral_derivative(tu, 0, 1);
    const ScalarField delta = codifferential_field(grid, ff, tu, tv);
    const ScalarField divJH = divergence_field(grid, ff, JH);
    MeanCurvatureFormReport r;
    for (size_t k = 0; k < tu.size(); ++k) {
        r.closedness = std::max(r.closedness, std::abs((dtv[k] - dtu[k]) / ff[k].sqrtg));
        r.coclosedness_link = std::max(r.coclosedness_link, std::abs(delta[k] + divJH[k]));
    }
    return r;
}

// | int |nabla^nu H|^2 - int sigma~_{ab} H^a H^b | with sigma~ built from the
// trace-free components; an identity on Willmore surfaces only.
inline Real willmore_identity_residual(const FundamentalField& ff, const ShapeDerivativeField& sd) {
    ScalarField rhs(ff.nu, ff.nv);
    for (size_t k = 0; k < ff.size(); ++k) {
        const auto& P = ff[k];
        Real htil[3][2][2];
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) htil[b][i][j] = P.h[b][i][j] - (i == j ? P.Hc[b] : 0.0);
        Real acc = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                Real sig = 0;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) sig += htil[a][i][j] * htil[b][i][j];
                acc += sig * P.Hc[a] * P.Hc[b];
            }
        rhs[k] = acc;
    }
    return std::abs(integrate(sd.nrm2_nabla_nu_H, ff.sqrtg) - integrate(rhs, ff.sqrtg));
}

}  // namespace legw
