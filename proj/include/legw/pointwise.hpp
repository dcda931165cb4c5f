#pragma once

#include "legw/ambient.hpp"
#include "legw/core.hpp"
#include "legw/jet.hpp"

namespace legw {

// Pointwise geometry of an immersed surface in S^5, written once over a
// generic scalar T. With T = Real the chart derivatives of assembled fields
// come from spectral passes over the grid; with T = Jet they are read off the
// Taylor coefficients, which is how chart immersions are evaluated.

template <class T>
struct Partials2 {
    Vec6<T> F, Fu, Fv, Fuu, Fuv, Fvv;
};

template <class T>
struct Partials3 : Partials2<T> {
    Vec6<T> Fuuu, Fuuv, Fuvv, Fvvv;
};

// An assembled ambient field together with its first chart derivatives.
template <class T>
struct DifferentiatedVec {
    Vec6<T> v, du, dv;
};

template <class T>
struct PointFundamental {
    T g[2][2], ginv[2][2], detg, sqrtg;
    T cmat[2][2];          // e_i = cmat[i][a] F_a (Gram-Schmidt from F_u)
    Vec6<T> e[2];          // orthonormal tangent frame
    Vec6<T> nu[2];         // nu_i = J e_i
    Vec6<T> reeb;          // nu_3 = R = J0 F
    Vec6<T> A[2][2];       // second fundamental form, ambient valued, chart indices
    Vec6<T> H;             // mean curvature vector (frame free)
    T h[3][2][2];          // components <A(e_i,e_j), nu_beta>, beta=3 against R
    T Hc[3];               // H^beta
    T H2, S, rho2, dets, Kext;
    T Gamma[2][2][2];      // Gamma[c][a][b] = Gamma^c_ab
    T alpha_u, alpha_v;    // contact form on the coordinate tangents
};

template <class T>
inline Vec6<T> project_normal(const PointFundamental<T>& P, const Vec6<T>& F, const Vec6<T>& w) {
    Vec6<T> r = w - dot(w, F) * F;
    r -= dot(r, P.e[0]) * P.e[0];
    r -= dot(r, P.e[1]) * P.e[1];
    return r;
}

template <class T>
inline PointFundamental<T> fundamental_point(const Partials2<T>& d) {
    PointFundamental<T> P;
    const Vec6<T>*const Fd[2] = {&d.Fu, &d.Fv};
    const Vec6<T>* Fdd[2][2] = {{&d.Fuu, &d.Fuv}, {&d.Fuv, &d.Fvv}};

    P.g[0][0] = dot(d.Fu, d.Fu);
    P.g[0][1] = P.g[1][0] = dot(d.Fu, d.Fv);
    P.g[1][1] = dot(d.Fv, d.Fv);
    P.detg = P.g[0][0] * P.g[1][1] - P.g[0][1] * P.g[0][1];
    if (scalar_value(P.detg) <= 1e-10) throw DegenerateMetric("fundamental_point: det g <= 1e-10");
    P.sqrtg = sqrt(P.detg);
    const T inv = T(1.0) / P.detg;
    P.ginv[0][0] = P.g[1][1] * inv;
    P.ginv[1][1] = P.g[0][0] * inv;
    P.ginv[0][1] = P.ginv[1][0] = -P.g[0][1] * inv;

    // Gram-Schmidt frame starting from F_u.
    const T len1 = sqrt(P.g[0][0]);
    P.e[0] = (T(1.0) / len1) * d.Fu;
    Vec6<T> w = d.Fv - dot(d.Fv, P.e[0]) * P.e[0];
    const T len2 = sqrt(dot(w, w));
    P.e[1] = (T(1.0) / len2) * w;
    P.cmat[0][0] = T(1.0) / len1;
    P.cmat[0][1] = T(0.0);
    P.cmat[1][0] = -P.g[0][1] / (P.g[0][0] * len2);
    P.cmat[1][1] = T(1.0) / len2;

    P.reeb = j0(d.F);
    P.nu[0] = extended_j_pt(d.F, P.e[0]);
    P.nu[1] = extended_j_pt(d.F, P.e[1]);
    P.alpha_u = dot(P.reeb, d.Fu);
    P.alpha_v = dot(P.reeb, d.Fv);

    // A(d_a, d_b) = (F_ab + g_ab F) projected off the tangent plane.
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Vec6<T> cand = *Fdd[a][b] + P.g[a][b] * d.F;
            cand -= dot(cand, d.F) * d.F;
            cand -= dot(cand, P.e[0]) * P.e[0];
            cand -= dot(cand, P.e[1]) * P.e[1];
            P.A[a][b] = cand;
        }

    P.H = vzero<T>();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) P.H += (0.5 * P.ginv[a][b]) * P.A[a][b];
    P.H2 = dot(P.H, P.H);

    P.S = T(0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int e = 0; e < 2; ++e) P.S += P.ginv[a][c] * P.ginv[b][e] * dot(P.A[a][b], P.A[c][e]);
    P.rho2 = P.S - 2.0 * P.H2;
    P.Kext = 0.5 * (2.0 + 4.0 * P.H2 - P.S);

    // Orthonormal-frame components of A.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Vec6<T> Aij = vzero<T>();
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) Aij += (P.cmat[i][a] * P.cmat[j][b]) * P.A[a][b];
            P.h[0][i][j] = dot(Aij, P.nu[0]);
            P.h[1][i][j] = dot(Aij, P.nu[1]);
            P.h[2][i][j] = dot(Aij, P.reeb);
        }
    for (int b = 0; b < 3; ++b) P.Hc[b] = 0.5 * (P.h[b][0][0] + P.h[b][1][1]);
    P.dets = P.h[0][0][0] * P.h[0][1][1] - P.h[0][0][1] * P.h[0][1][0] + P.h[1][0][0] * P.h[1][1][1] - P.h[1][0][1] * P.h[1][1][0];

    // Christoffel symbols from d_c g_ab = <F_ca, F_b> + <F_a, F_cb>.
    T dg[2][2][2];
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) dg[c][a][b] = dot(*Fdd[c][a], *Fd[b]) + dot(*Fd[a], *Fdd[c][b]);
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                T s = T(0.0);
                for (int dd = 0; dd < 2; ++dd) s += P.ginv[c][dd] * (dg[a][dd][b] + dg[b][a][dd] - dg[dd][a][b]);
                P.Gamma[c][a][b] = 0.5 * s;
            }
    return P;
}

// Gauss curvature from the metric alone (independent of the extrinsic route):
// Christoffels and their chart derivatives from third partials of F.
template <class T>
inline T gauss_intrinsic(const Partials3<T>& d) {
    const Vec6<T>* F1[2] = {&d.Fu, &d.Fv};
    const Vec6<T>* F2[2][2] = {{&d.Fuu, &d.Fuv}, {&d.Fuv, &d.Fvv}};
    const Vec6<T>* F3[2][2][2] = {{{&d.Fuuu, &d.Fuuv}, {&d.Fuuv, &d.Fuvv}},
                                  {{&d.Fuuv, &d.Fuvv}, {&d.Fuvv, &d.Fvvv}}};
    T g[2][2], dg[2][2][2], ddg[2][2][2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g[a][b] = dot(*F1[a], *F1[b]);
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) dg[c][a][b] = dot(*F2[c][a], *F1[b]) + dot(*F1[a], *F2[c][b]);
    for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    ddg[c][e][a][b] = dot(*F3[c][e][a], *F1[b]) + dot(*F2[e][a], *F2[c][b]) +
                                      dot(*F2[c][a], *F2[e][b]) + dot(*F1[a], *F3[c][e][b]);

    const T detg = g[0][0] * g[1][1] - g[0][1] * g[0][1];
    if (scalar_value(detg) <= 1e-10) throw DegenerateMetric("gauss_intrinsic: det g <= 1e-10");
    const T inv = T(1.0) / detg;
    T gi[2][2];
    gi[0][0] = g[1][1] * inv;
    gi[1][1] = g[0][0] * inv;
    gi[0][1] = gi[1][0] = -g[0][1] * inv;
    T dgi[2][2][2];  // d_c g^{ab} = -g^{ad} dg_de g^{eb}
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                T s = T(0.0);
                for (int dd = 0; dd < 2; ++dd)
                    for (int e = 0; e < 2; ++e) s += gi[a][dd] * dg[c][dd][e] * gi[e][b];
                dgi[c][a][b] = -s;
            }
    T Gam[2][2][2], dGam[2][2][2][2];
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                T s = T(0.0);
                for (int dd = 0; dd < 2; ++dd) s += gi[c][dd] * (dg[a][dd][b] + dg[b][a][dd] - dg[dd][a][b]);
                Gam[c][a][b] = 0.5 * s;
            }
    for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 2; ++c)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    T s = T(0.0);
                    for (int dd = 0; dd < 2; ++dd)
                        s += dgi[i][c][dd] * (dg[a][dd][b] + dg[b][a][dd] - dg[dd][a][b]) +
                             gi[c][dd] * (ddg[i][a][dd][b] + ddg[i][b][a][dd] - ddg[i][dd][a][b]);
                    dGam[i][c][a][b] = 0.5 * s;
                }
    // R^l_{k i j} = d_i Gam^l_{jk} - d_j Gam^l_{ik} + Gam^l_{is} Gam^s_{jk} - Gam^l_{js} Gam^s_{ik}
    auto Rl = [&](int l, int k, int i, int j) {
        T t = dGam[i][l][j][k] - dGam[j][l][i][k];
        for (int s = 0; s < 2; ++s) t += Gam[l][i][s] * Gam[s][j][k] - Gam[l][j][s] * Gam[s][i][k];
        return t;
    };
    return (g[0][0] * Rl(0, 1, 0, 1) + g[0][1] * Rl(1, 1, 0, 1)) * inv;
}

// Normal-bundle covariant derivative of a normal field W along chart axis a.
template <class T>
inline Vec6<T> normal_covariant(const PointFundamental<T>& P, const Vec6<T>& F, const Vec6<T>& Fa,
                                const Vec6<T>& W, const Vec6<T>& dWa) {
    return project_normal(P, F, dWa + dot(Fa, W) * F);
}

// Rough Laplacian on the normal bundle applied to H, given N_a = nabla^nu_a H
// and the chart derivatives of those fields.
template <class T>
inline Vec6<T> normal_laplacian_point(const PointFundamental<T>& P, const Vec6<T>& F,
                                      const Vec6<T>& Fu, const Vec6<T>& Fv,
                                      const DifferentiatedVec<T>& Nu, const DifferentiatedVec<T>& Nv) {
    const Vec6<T>* Fa[2] = {&Fu, &Fv};
    const Vec6<T>* N[2] = {&Nu.v, &Nv.v};
    const Vec6<T>* dN[2][2] = {{&Nu.du, &Nu.dv}, {&Nv.du, &Nv.dv}};
    Vec6<T> lap = vzero<T>();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Vec6<T> Mab = project_normal(P, F, *dN[b][a] + dot(*Fa[a], *N[b]) * F);
            for (int c = 0; c < 2; ++c) Mab -= P.Gamma[c][a][b] * (*N[c]);
            lap += P.ginv[a][b] * Mab;
        }
    return lap;
}

// Euler-Lagrange operator of the Willmore energy:
//   W(f)^alpha = lap^nu H^alpha + sum h^alpha_ij h^beta_ij H^beta - 2|H|^2 H^alpha,
// assembled frame-free by chart contraction. route_tracefree uses the
// trace-free part of A instead; the two agree identically.
template <class T>
inline Vec6<T> willmore_point(const PointFundamental<T>& P, const Vec6<T>& lapH) {
    Vec6<T> alg = vzero<T>();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            T cross = T(0.0);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) cross += P.ginv[a][i] * P.ginv[b][j] * dot(P.A[i][j], P.H);
            alg += cross * P.A[a][b];
        }
    alg -= (2.0 * P.H2) * P.H;
    return lapH + alg;
}

template <class T>
inline Vec6<T> willmore_point_tracefree(const PointFundamental<T>& P, const Vec6<T>& lapH) {
    Vec6<T> A0[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) A0[a][b] = P.A[a][b] - P.g[a][b] * P.H;
    Vec6<T> alg = vzero<T>();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            T cross = T(0.0);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) cross += P.ginv[a][i] * P.ginv[b][j] * dot(A0[i][j], P.H);
            alg += cross * A0[a][b];
        }
    return lapH + alg;
}

// Divergence of a tangent field from the densitised components y_a = sqrt(g) X^a.
template <class T>
inline T divergence_point(const PointFundamental<T>& P, const T& dyu_du, const T& dyv_dv) {
    return (dyu_du + dyv_dv) / P.sqrtg;
}

template <class T>
inline void chart_components(const PointFundamental<T>& P, const Vec6<T>& Fu, const Vec6<T>& Fv,
                             const Vec6<T>& X, T& Xu, T& Xv) {
    const T cu = dot(X, Fu), cv = dot(X, Fv);
    Xu = P.ginv[0][0] * cu + P.ginv[0][1] * cv;
    Xv = P.ginv[1][0] * cu + P.ginv[1][1] * cv;
}

// Covariant derivative of the second fundamental form (normal connection
// included), orthonormal-frame components h^beta_{ijk} = (nabla_{e_k} A)(e_i,e_j).
template <class T>
struct ShapeDerivatives {
    T hijk[3][2][2][2];  // [beta][i][j][k]
    T grad_h2;           // |nabla h|^2, beta = 1..3
    T gradT_h2;          // |nabla^T h|^2, beta = 1..2
    T Yframe[2];         // Y_j = sum_{i,beta} h^beta_ij sum_k h^beta_kki
};

template <class T>
inline ShapeDerivatives<T> shape_derivatives_point(const PointFundamental<T>& P, const Vec6<T>& F,
                                                   const Vec6<T>& Fu, const Vec6<T>& Fv,
                                                   const DifferentiatedVec<T> (&Afield)[2][2]) {
    const Vec6<T>* Fa[2] = {&Fu, &Fv};
    Vec6<T> covA[2][2][2];  // [c][a][b] = (nabla_c A)(d_a, d_b)
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const Vec6<T>& dA = (c == 0) ? Afield[a][b].du : Afield[a][b].dv;
                Vec6<T> v = project_normal(P, F, dA + dot(*Fa[c], Afield[a][b].v) * F);
                for (int dd = 0; dd < 2; ++dd)
                    v -= P.Gamma[dd][c][a] * Afield[dd][b].v + P.Gamma[dd][c][b] * Afield[a][dd].v;
                covA[c][a][b] = v;
            }
    ShapeDerivatives<T> out;
    T comp[3][2][2][2];  // [beta][c][a][b]
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                comp[0][c][a][b] = dot(covA[c][a][b], P.nu[0]);
                comp[1][c][a][b] = dot(covA[c][a][b], P.nu[1]);
                comp[2][c][a][b] = dot(covA[c][a][b], P.reeb);
            }
    out.grad_h2 = T(0.0);
    out.gradT_h2 = T(0.0);
    for (int beta = 0; beta < 3; ++beta)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    T s = T(0.0);
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            for (int c = 0; c < 2; ++c)
                                s += P.cmat[i][a] * P.cmat[j][b] * P.cmat[k][c] * comp[beta][c][a][b];
                    out.hijk[beta][i][j][k] = s;
                    out.grad_h2 += s * s;
                    if (beta < 2) out.gradT_h2 += s * s;
                }
    for (int j = 0; j < 2; ++j) {
        T y = T(0.0);
        for (int beta = 0; beta < 3; ++beta)
            for (int i = 0; i < 2; ++i) {
                T tr = T(0.0);
                for (int k = 0; k < 2; ++k) tr += out.hijk[beta][k][k][i];
                y += P.h[beta][i][j] * tr;
            }
        out.Yframe[j] = y;
    }
    return out;
}

}  // namespace legw
