#pragma once

#include <vector>

#include "legw/grid.hpp"
#include "legw/pointwise.hpp"
#include "legw/spectral.hpp"

namespace legw {

// Grid-wide fundamental data: the pointwise package at every node plus the
// scalar fields that feed quadrature and spectral passes.
struct FundamentalField {
    int nu = 0, nv = 0;
    std::vector<PointFundamental<Real>> pts;  // row-major like Grid2
    ScalarField sqrtg, S, H2, rho2, dets, Kext;
    VectorField Hvec;

    const PointFundamental<Real>& at(int i, int j) const { return pts[static_cast<size_t>(i) * nv + j]; }
    const PointFundamental<Real>& operator[](size_t k) const { return pts[k]; }
    size_t size() const { return pts.size(); }
};

inline FundamentalField build_fundamental(const ImmersionGrid& grid) {
    FundamentalField ff;
    ff.nu = grid.nu();
    ff.nv = grid.nv();
    const VectorField& F = grid.values();
    const VectorField& Fu = grid.derivative(1, 0);
    const VectorField& Fv = grid.derivative(0, 1);
    const VectorField& Fuu = grid.derivative(2, 0);
    const VectorField& Fuv = grid.derivative(1, 1);
    const VectorField& Fvv = grid.derivative(0, 2);
    ff.pts.reserve(F.size());
    ff.sqrtg = ScalarField(ff.nu, ff.nv);
    ff.S = ScalarField(ff.nu, ff.nv);
    ff.H2 = ScalarField(ff.nu, ff.nv);
    ff.rho2 = ScalarField(ff.nu, ff.nv);
    ff.dets = ScalarField(ff.nu, ff.nv);
    ff.Kext = ScalarField(ff.nu, ff.nv);
    ff.Hvec = VectorField(ff.nu, ff.nv);
    for (size_t k = 0; k < F.size(); ++k) {
        Partials2<Real> d{F[k], Fu[k], Fv[k], Fuu[k], Fuv[k], Fvv[k]};
        ff.pts.push_back(fundamental_point(d));
        const auto& P = ff.pts.back();
        ff.sqrtg[k] = P.sqrtg;
        ff.S[k] = P.S;
        ff.H2[k] = P.H2;
        ff.rho2[k] = P.rho2;
        ff.dets[k] = P.dets;
        ff.Kext[k] = P.Kext;
        ff.Hvec[k] = P.H;
    }
    return ff;
}

// Intrinsic Gauss curvature field (metric route; cross-checks the extrinsic one).
inline ScalarField gauss_intrinsic_field(const ImmersionGrid& grid) {
    const VectorField& F = grid.values();
    ScalarField K(grid.nu(), grid.nv());
    const VectorField &Fu = grid.derivative(1, 0), &Fv = grid.derivative(0, 1);
    const VectorField &Fuu = grid.derivative(2, 0), &Fuv = grid.derivative(1, 1), &Fvv = grid.derivative(0, 2);
    const VectorField &F30 = grid.derivative(3, 0), &F21 = grid.derivative(2, 1), &F12 = grid.derivative(1, 2),
                      &F03 = grid.derivative(0, 3);
    for (size_t k = 0; k < F.size(); ++k) {
        Partials3<Real> d;
        d.F = F[k];
        d.Fu = Fu[k];
        d.Fv = Fv[k];
        d.Fuu = Fuu[k];
        d.Fuv = Fuv[k];
        d.Fvv = Fvv[k];
        d.Fuuu = F30[k];
        d.Fuuv = F21[k];
        d.Fuvv = F12[k];
        d.Fvvv = F03[k];
        K[k] = gauss_intrinsic(d);
    }
    return K;
}

// ---- intrinsic operators on grid fields ----

inline VectorField gradient_field(const ImmersionGrid& grid, const FundamentalField& ff, const ScalarField& s) {
    const ScalarField su = spectral_derivative(s, 1, 0), sv = spectral_derivative(s, 0, 1);
    const VectorField &Fu = grid.derivative(1, 0), &Fv = grid.derivative(0, 1);
    VectorField out(ff.nu, ff.nv);
    for (size_t k = 0; k < out.size(); ++k) {
        const auto& P = ff[k];
        const Real gu = P.ginv[0][0] * su[k] + P.ginv[0][1] * sv[k];
        const Real gv = P.ginv[1][0] * su[k] + P.ginv[1][1] * sv[k];
        out[k] = gu * Fu[k] + gv * Fv[k];
    }
    return out;
}

// div X = (d_u(sqrt(g) X^u) + d_v(sqrt(g) X^v)) / sqrt(g) for an ambient
// tangent field X.
inline ScalarField divergence_field(const ImmersionGrid& grid, const FundamentalField& ff, const VectorField& X) {
    const VectorField &Fu = grid.derivative(1, 0), &Fv = grid.derivative(0, 1);
    ScalarField yu(ff.nu, ff.nv), yv(ff.nu, ff.nv);
    for (size_t k = 0; k < X.size(); ++k) {
        const auto& P = ff[k];
        Real Xu, Xv;
        chart_components(P, Fu[k], Fv[k], X[k], Xu, Xv);
        yu[k] = P.sqrtg * Xu;
        yv[k] = P.sqrtg * Xv;
    }
    const ScalarField dyu = spectral_derivative(yu, 1, 0), dyv = spectral_derivative(yv, 0, 1);
    ScalarField out(ff.nu, ff.nv);
    for (size_t k = 0; k < out.size(); ++k) out[k] = (dyu[k] + dyv[k]) / ff[k].sqrtg;
    return out;
}

inline ScalarField laplace_field(const ImmersionGrid& grid, const FundamentalField& ff, const ScalarField& s) {
    return divergence_field(grid, ff, gradient_field(grid, ff, s));
}

// Codifferential of a 1-form given by chart components: delta(theta) = -div(theta#).
inline ScalarField codifferential_field(const ImmersionGrid&, const FundamentalField& ff,
                                        const ScalarField& theta_u, const ScalarField& theta_v) {
    ScalarField yu(ff.nu, ff.nv), yv(ff.nu, ff.nv);
    for (size_t k = 0; k < yu.size(); ++k) {
        const auto& P = ff[k];
        yu[k] = P.sqrtg * (P.ginv[0][0] * theta_u[k] + P.ginv[0][1] * theta_v[k]);
        yv[k] = P.sqrtg * (P.ginv[1][0] * theta_u[k] + P.ginv[1][1] * theta_v[k]);
    }
    const ScalarField dyu = spectral_derivative(yu, 1, 0), dyv = spectral_derivative(yv, 0, 1);
    ScalarField out(ff.nu, ff.nv);
    for (size_t k = 0; k < out.size(); ++k) out[k] = -(dyu[k] + dyv[k]) / ff[k].sqrtg;
    return out;
}

// ---- derivative package of the second fundamental form ----

struct ShapeDerivativeField {
    std::vector<ShapeDerivatives<Real>> pts;
    ScalarField grad_h2, gradT_h2;       // |nabla h|^2 and the nu_1,nu_2 part
    ScalarField nrm2_nabla_nu_H;         // |nabla^nu H|^2
    ScalarField nrm2_nabla_T_H;          // |nabla^T H|^2
    ScalarField div_term;                // div of Y_j = sum h^b_ij h^b_kki
    VectorField N[2];                    // nabla^nu_a H

    const ShapeDerivatives<Real>& operator[](size_t k) const { return pts[k]; }
};

inline ShapeDerivativeField build_shape_derivatives(const ImmersionGrid& grid, const FundamentalField& ff) {
    const VectorField& F = grid.values();
    const VectorField &Fu = grid.derivative(1, 0), &Fv = grid.derivative(0, 1);

    // Assembled A_ab fields and their chart derivatives.
    VectorField Afield[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Afield[a][b] = VectorField(ff.nu, ff.nv);
            for (size_t k = 0; k < F.size(); ++k) Afield[a][b][k] = ff[k].A[a][b];
        }
    VectorField dA[2][2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            dA[0][a][b] = spectral_derivative(Afield[a][b], 1, 0);
            dA[1][a][b] = spectral_derivative(Afield[a][b], 0, 1);
        }

    ShapeDerivativeField out;
    out.pts.reserve(F.size());
    out.grad_h2 = ScalarField(ff.nu, ff.nv);
    out.gradT_h2 = ScalarField(ff.nu, ff.nv);
    out.nrm2_nabla_nu_H = ScalarField(ff.nu, ff.nv);
    out.nrm2_nabla_T_H = ScalarField(ff.nu, ff.nv);

    VectorField Yamb(ff.nu, ff.nv);
    for (size_t k = 0; k < F.size(); ++k) {
        const auto& P = ff[k];
        DifferentiatedVec<Real> Adiff[2][2];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) Adiff[a][b] = {Afield[a][b][k], dA[0][a][b][k], dA[1][a][b][k]};
        out.pts.push_back(shape_derivatives_point(P, F[k], Fu[k], Fv[k], Adiff));
        const auto& SD = out.pts.back();
        out.grad_h2[k] = SD.grad_h2;
        out.gradT_h2[k] = SD.gradT_h2;
        Yamb[k] = SD.Yframe[0] * P.e[0] + SD.Yframe[1] * P.e[1];
    }
    out.div_term = divergence_field(grid, ff, Yamb);

    // First normal derivatives of H and their norms.
    const VectorField dH[2] = {spectral_derivative(ff.Hvec, 1, 0), spectral_derivative(ff.Hvec, 0, 1)};
    out.N[0] = VectorField(ff.nu, ff.nv);
    out.N[1] = VectorField(ff.nu, ff.nv);
    for (size_t k = 0; k < F.size(); ++k) {
        const auto& P = ff[k];
        const Vec6<Real>* Fa[2] = {&Fu[k], &Fv[k]};
        for (int a = 0; a < 2; ++a) out.N[a][k] = normal_covariant(P, F[k], *Fa[a], ff.Hvec[k], dH[a][k]);
        Real n2 = 0, t2 = 0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                n2 += P.ginv[a][b] * dot(out.N[a][k], out.N[b][k]);
                t2 += P.ginv[a][b] * (dot(out.N[a][k], P.nu[0]) * dot(out.N[b][k], P.nu[0]) +
                                      dot(out.N[a][k], P.nu[1]) * dot(out.N[b][k], P.nu[1]));
            }
        out.nrm2_nabla_nu_H[k] = n2;
        out.nrm2_nabla_T_H[k] = t2;
    }
    return out;
}

// Area element integral helpers.
inline Real surface_area(const FundamentalField& ff) {
    ScalarField one(ff.nu, ff.nv, 1.0);
    return integrate(one, ff.sqrtg);
}

}  // namespace legw
