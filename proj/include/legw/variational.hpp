#pragma once

#include "legw/invariants.hpp"

namespace legw {

// Normal field diagnostics: tangential/radial leakage and the Reeb component.
struct NormalFieldCheck {
    Real tangential_leakage = 0;  // max |proj_{span(e1,e2,F)} w|
    Real reeb_component = 0;      // max |<w, R>|
};

inline NormalFieldCheck check_normal_field(const ImmersionGrid& grid, const FundamentalField& ff,
                                           const VectorField& w) {
    NormalFieldCheck c;
    const VectorField& F = grid.values();
    for (size_t k = 0; k < w.size(); ++k) {
        const auto& P = ff[k];
        const Real t = std::sqrt(dot(w[k], P.e[0]) * dot(w[k], P.e[0]) +
                                 dot(w[k], P.e[1]) * dot(w[k], P.e[1]) + dot(w[k], F[k]) * dot(w[k], F[k]));
        c.tangential_leakage = std::max(c.tangential_leakage, t);
        c.reeb_component = std::max(c.reeb_component, std::abs(dot(w[k], P.reeb)));
    }
    return c;
}

inline const VectorField& mean_curvature(const FundamentalField& ff) { return ff.Hvec; }

// Delta^nu H via two covariant passes; fourth order in F.
inline VectorField normal_laplacian_H(const ImmersionGrid& grid, const FundamentalField& ff) {
    const VectorField& F = grid.values();
    const VectorField &Fu = grid.derivative(1, 0), &Fv = grid.derivative(0, 1);
    const VectorField dH[2] = {spectral_derivative(ff.Hvec, 1, 0), spectral_derivative(ff.Hvec, 0, 1)};
    VectorField N[2] = {VectorField(ff.nu, ff.nv), VectorField(ff.nu, ff.nv)};
    for (size_t k = 0; k < F.size(); ++k) {
        N[0][k] = normal_covariant(ff[k], F[k], Fu[k], ff.Hvec[k], dH[0][k]);
        N[1][k] = normal_covariant(ff[k], F[k], Fv[k], ff.Hvec[k], dH[1][k]);
    }
    const VectorField dNu[2] = {spectral_derivative(N[0], 1, 0), spectral_derivative(N[0], 0, 1)};
    const VectorField dNv[2] = {spectral_derivative(N[1], 1, 0), spectral_derivative(N[1], 0, 1)};
    VectorField lap(ff.nu, ff.nv);
    for (size_t k = 0; k < F.size(); ++k) {
        DifferentiatedVec<Real> Nu{N[0][k], dNu[0][k], dNu[1][k]};
        DifferentiatedVec<Real> Nv{N[1][k], dNv[0][k], dNv[1][k]};
        lap[k] = normal_laplacian_point(ff[k], F[k], Fu[k], Fv[k], Nu, Nv);
    }
    return lap;
}

struct WillmoreOperatorField {
    VectorField value;        // Eq-(4)-type assembly
    Real route_discrepancy;   // sup distance to the trace-free assembly
};

inline WillmoreOperatorField willmore_operator(const ImmersionGrid& grid, const FundamentalField& ff) {
    const VectorField lap = normal_laplacian_H(grid, ff);
    WillmoreOperatorField out;
    out.value = VectorField(ff.nu, ff.nv);
    out.route_discrepancy = 0;
    for (size_t k = 0; k < lap.size(); ++k) {
        out.value[k] = willmore_point(ff[k], lap[k]);
        const Vec6<Real> alt = willmore_point_tracefree(ff[k], lap[k]);
        out.route_discrepancy = std::max(out.route_discrepancy, norm(out.value[k] - alt));
    }
    return out;
}

// csL operator div(JH); vanishing characterises contact-stationary surfaces.
inline ScalarField csl_residual(const ImmersionGrid& grid, const FundamentalField& ff) {
    return divergence_field(grid, ff, jh_field(ff, grid.values()));
}

// Gradient generator of W in the quarter L^2 metric on contact variations:
//   s_f = 2 div(J(Wvec + 4H)),   dW/dtau along V(s) = 1/4 int s_f s dmu.
// The prefactor and the +4 are pinned by the finite-difference oracle.
inline ScalarField cslw_residual(const ImmersionGrid& grid, const FundamentalField& ff) {
    const WillmoreOperatorField W = willmore_operator(grid, ff);
    const VectorField& F = grid.values();
    VectorField X(ff.nu, ff.nv);
    for (size_t k = 0; k < X.size(); ++k)
        X[k] = extended_j_pt(F[k], Vec6<Real>(W.value[k] + 4.0 * ff.Hvec[k]));
    ScalarField out = divergence_field(grid, ff, X);
    for (size_t k = 0; k < out.size(); ++k) out[k] *= 2.0;
    return out;
}

// Contact variation generated by a scalar field: V = s R + (1/2) J grad s.
struct ContactVariation {
    ScalarField s;
    VectorField V;
};

inline ContactVariation contact_variation(const ImmersionGrid& grid, const FundamentalField& ff,
                                          const ScalarField& s) {
    ContactVariation cv;
    cv.s = s;
    cv.V = VectorField(ff.nu, ff.nv);
    const VectorField gr = gradient_field(grid, ff, s);
    const VectorField& F = grid.values();
    for (size_t k = 0; k < cv.V.size(); ++k)
        cv.V[k] = s[k] * ff[k].reeb + 0.5 * extended_j_pt(F[k], gr[k]);
    return cv;
}

// Deform along an ambient field and reproject every sample onto the sphere.
inline ImmersionGrid deform_and_project(const ImmersionGrid& grid, const VectorField& V, Real tau) {
    VectorField out(grid.nu(), grid.nv());
    const VectorField& F = grid.values();
    for (size_t k = 0; k < out.size(); ++k) {
        AmbientVector q = F[k] + tau * V[k];
        const Real n = norm(q);
        for (auto& c : q) c /= n;
        out[k] = q;
    }
    return ImmersionGrid(std::move(out));
}

// Central finite differences of W along f + tau V against the assembled
// first variation int <Wvec, V> dmu (constant pinned empirically).
struct FirstVariationReport {
    Real analytic = 0;            // int <Wvec, V> dmu
    Real finite_difference = 0;   // at the smallest tau
    Real relative_error = 0;
    Real observed_order = 0;      // convergence order of the FD error in tau
};

inline FirstVariationReport first_variation_check(const ImmersionGrid& grid, const FundamentalField& ff,
                                                  const ContactVariation& cv, const std::vector<Real>& taus) {
    const WillmoreOperatorField W = willmore_operator(grid, ff);
    ScalarField integrand(ff.nu, ff.nv);
    for (size_t k = 0; k < integrand.size(); ++k) integrand[k] = dot(W.value[k], cv.V[k]);
    FirstVariationReport rep;
    rep.analytic = integrate(integrand, ff.sqrtg);
    std::vector<Real> errs;
    for (Real tau : taus) {
        const Real Wp = willmore_energy(deform_and_project(grid, cv.V, tau));
        const Real Wm = willmore_energy(deform_and_project(grid, cv.V, -tau));
        rep.finite_difference = (Wp - Wm) / (2.0 * tau);
        errs.push_back(std::abs(rep.finite_difference - rep.analytic));
    }
    const Real denom = std::max(std::abs(rep.analytic), 1e-14);
    rep.relative_error = errs.back() / denom;
    if (taus.size() >= 2) {
        // order from the first and last tau (assumes monotone refinement)
        const Real e0 = std::max(errs.front(), 1e-16), e1 = std::max(errs.back(), 1e-16);
        rep.observed_order = std::log(e0 / e1) / std::log(taus.front() / taus.back());
    }
    return rep;
}

}  // namespace legw
