#pragma once

#include <complex>
#include <functional>

#include "legw/analytic.hpp"
#include "legw/variational.hpp"

namespace legw {

// Flat Legendrian tori xi_k = sqrt(r2_k) exp(i(a_k u + b_k v)).
// Legendrian iff sum r2_k a_k = sum r2_k b_k = 0 (with sum r2_k = 1).
class FlatTorus3 : public AnalyticImmersion {
public:
    FlatTorus3(std::array<Real, 3> r2, std::array<int, 3> a, std::array<int, 3> b, std::string name,
               KnownInvariants knowns)
        : r2_(r2), a_(a), b_(b), name_(std::move(name)), knowns_(std::move(knowns)) {
        Real sr = 0, sa = 0, sb = 0;
        for (int k = 0; k < 3; ++k) {
            sr += r2[k];
            sa += r2[k] * a[k];
            sb += r2[k] * b[k];
        }
        if (std::abs(sr - 1.0) > 1e-14 || std::abs(sa) > 1e-14 || std::abs(sb) > 1e-14)
            throw std::invalid_argument("FlatTorus3: parameters violate the sphere/Legendre conditions");
    }

    std::string name() const override { return name_; }
    std::string topology() const override { return "torus"; }
    bool periodic() const override { return true; }
    KnownInvariants knowns() const override { return knowns_; }

    JetVec jet(Real u, Real v) const override {
        const Jet U = Jet::variable_u(u), V = Jet::variable_v(v);
        JetVec F;
        for (int k = 0; k < 3; ++k) {
            const Jet ph = static_cast<Real>(a_[k]) * U + static_cast<Real>(b_[k]) * V;
            const Real r = std::sqrt(r2_[k]);
            F[k] = r * cos(ph);
            F[3 + k] = r * sin(ph);
        }
        return F;
    }

private:
    std::array<Real, 3> r2_;
    std::array<int, 3> a_, b_;
    std::string name_;
    KnownInvariants knowns_;
};

// The minimal Legendrian hexagonal torus: |xi_k|^2 = 1/3, Im(xi1 xi2 xi3) = 0.
inline std::unique_ptr<AnalyticImmersion> flat_minimal_torus() {
    KnownInvariants k;
    k.S = 2.0;
    k.K = 0.0;
    k.Hmax = 0.0;
    k.W = 4.0 * M_PI * M_PI / std::sqrt(3.0);
    k.dets = -1.0;
    k.legendrian = true;
    k.source = "closed form";
    return std::make_unique<FlatTorus3>(std::array<Real, 3>{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                        std::array<int, 3>{1, 0, -1}, std::array<int, 3>{0, 1, -1},
                                        "flat_minimal_torus", k);
}

// Totally geodesic S^2 = S^5 cap {y = 0}, polar chart with the poles excluded.
class EquatorialSphere : public AnalyticImmersion {
public:
    static constexpr Real kThetaMin = 0.2;
    static constexpr Real kThetaMax = M_PI - 0.2;

    std::string name() const override { return "equatorial_sphere"; }
    std::string topology() const override { return "sphere (chart)"; }
    bool periodic() const override { return false; }
    KnownInvariants knowns() const override {
        KnownInvariants k;
        k.S = 0.0;
        k.K = 1.0;
        k.Hmax = 0.0;
        k.W = 0.0;
        k.legendrian = true;
        k.source = "closed form";
        return k;
    }
    void require_admissible(Real u, Real) const override {
        if (u < kThetaMin || u > kThetaMax)
            throw EvaluationOutsideChart("equatorial_sphere: theta outside [0.2, pi-0.2]");
    }
    JetVec jet(Real u, Real v) const override {
        require_admissible(u, v);
        const Jet th = Jet::variable_u(u), ph = Jet::variable_v(v);
        JetVec F;
        F[0] = sin(th) * cos(ph);
        F[1] = sin(th) * sin(ph);
        F[2] = cos(th);
        F[3] = Jet(0.0);
        F[4] = Jet(0.0);
        F[5] = Jet(0.0);
        return F;
    }
};

// A fixed U(3) rotation of an immersion: preserves the contact structure but
// not the real subspace, so it exercises invariance of every Legendrian check.
class UnitaryRotated : public AnalyticImmersion {
public:
    explicit UnitaryRotated(std::unique_ptr<AnalyticImmersion> base, std::string name)
        : base_(std::move(base)), name_(std::move(name)) {
        const Real s = 1.0 / std::sqrt(2.0);
        U_[0][0] = {s, 0};
        U_[0][1] = {0, s};
        U_[0][2] = {0, 0};
        U_[1][0] = {0, s};
        U_[1][1] = {s, 0};
        U_[1][2] = {0, 0};
        U_[2][0] = {0, 0};
        U_[2][1] = {0, 0};
        U_[2][2] = {std::cos(0.3), std::sin(0.3)};
    }

    std::string name() const override { return name_; }
    std::string topology() const override { return base_->topology(); }
    bool periodic() const override { return base_->periodic(); }
    KnownInvariants knowns() const override { return base_->knowns(); }
    void require_admissible(Real u, Real v) const override { base_->require_admissible(u, v); }

    JetVec jet(Real u, Real v) const override {
        const JetVec F = base_->jet(u, v);
        JetVec G;
        for (int m = 0; m < 3; ++m) {
            Jet xr(0.0), yr(0.0);
            for (int k = 0; k < 3; ++k) {
                const Real re = U_[m][k].real(), im = U_[m][k].imag();
                xr += re * F[k] - im * F[3 + k];
                yr += im * F[k] + re * F[3 + k];
            }
            G[m] = xr;
            G[3 + m] = yr;
        }
        return G;
    }

private:
    std::unique_ptr<AnalyticImmersion> base_;
    std::string name_;
    std::complex<Real> U_[3][3];
};

// Deliberately non-Legendrian control: a product torus inside a C^2 factor.
class ProductTorus : public AnalyticImmersion {
public:
    std::string name() const override { return "negative_control_product_torus"; }
    std::string topology() const override { return "torus (non-Legendrian)"; }
    bool periodic() const override { return true; }
    KnownInvariants knowns() const override {
        KnownInvariants k;
        k.legendrian = false;
        k.source = "closed form";
        return k;
    }
    JetVec jet(Real u, Real v) const override {
        const Jet U = Jet::variable_u(u), V = Jet::variable_v(v);
        const Real r = 1.0 / std::sqrt(2.0);
        JetVec F;
        F[0] = r * cos(U);
        F[3] = r * sin(U);
        F[1] = r * cos(V);
        F[4] = r * sin(V);
        F[2] = Jet(0.0);
        F[5] = Jet(0.0);
        return F;
    }
};

// Non-Legendrian control with a genuinely nonzero Reeb component of A, so the
// A-perp-R check has something to fail on (the product torus has h3 = 0 by
// symmetry even though it is far from Legendrian).
class WarpedTorus : public AnalyticImmersion {
public:
    std::string name() const override { return "negative_control_warped_torus"; }
    std::string topology() const override { return "torus (non-Legendrian)"; }
    bool periodic() const override { return true; }
    KnownInvariants knowns() const override {
        KnownInvariants k;
        k.legendrian = false;
        k.source = "closed form";
        return k;
    }
    JetVec jet(Real u, Real v) const override {
        const Jet U = Jet::variable_u(u), V = Jet::variable_v(v);
        const Jet r1 = 1.0 + 0.3 * cos(V);
        JetVec F;
        F[0] = r1 * cos(U);
        F[3] = r1 * sin(U);
        F[1] = 0.8 * cos(V);
        F[4] = 0.8 * sin(V);
        F[2] = Jet(0.5);
        F[5] = Jet(0.0);
        Jet n2(0.0);
        for (int k = 0; k < 6; ++k) n2 += F[k] * F[k];
        const Jet inv = Jet(1.0) / sqrt(n2);
        for (int k = 0; k < 6; ++k) F[k] = F[k] * inv;
        return F;
    }
};

inline std::unique_ptr<AnalyticImmersion> equatorial_sphere() { return std::make_unique<EquatorialSphere>(); }

inline std::vector<std::unique_ptr<AnalyticImmersion>> negative_controls() {
    std::vector<std::unique_ptr<AnalyticImmersion>> out;
    out.push_back(std::make_unique<ProductTorus>());
    out.push_back(std::make_unique<WarpedTorus>());
    out.push_back(std::make_unique<UnitaryRotated>(equatorial_sphere(), "rotated_equatorial_sphere"));
    return out;
}

// Integrate dF/dtau = V(s) from a Legendrian base grid, recomputing the
// contact variation on the current surface each substep (RK4, sphere
// reprojection every stage). The exact flow of V(s) stays Legendrian; the
// drift measures discretisation only.
inline ImmersionGrid contact_perturb(const ImmersionGrid& base, const ScalarField& s, Real eps,
                                     int n_substeps) {
    if (eps == 0.0 || n_substeps <= 0) return base;
    auto velocity = [&s](const ImmersionGrid& g) {
        const FundamentalField ff = build_fundamental(g);
        return contact_variation(g, ff, s).V;
    };
    ImmersionGrid cur = base;
    const Real dt = eps / n_substeps;
    for (int step = 0; step < n_substeps; ++step) {
        const VectorField k1 = velocity(cur);
        const VectorField k2 = velocity(deform_and_project(cur, k1, 0.5 * dt));
        const VectorField k3 = velocity(deform_and_project(cur, k2, 0.5 * dt));
        const VectorField k4 = velocity(deform_and_project(cur, k3, dt));
        VectorField combo(cur.nu(), cur.nv());
        for (size_t k = 0; k < combo.size(); ++k)
            combo[k] = (1.0 / 6.0) * Vec6<Real>(k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        cur = deform_and_project(cur, combo, dt);
    }
    if (legendre_residual(cur) > 1e-5)
        throw DriftExceeded("contact_perturb: Legendre residual of the output exceeds 1e-5");
    return cur;
}

inline ScalarField default_perturbation_field(int nu, int nv) {
    ScalarField s(nu, nv);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j)
            s.at(i, j) = std::cos(2.0 * M_PI * i / nu) * std::cos(2.0 * M_PI * j / nv);
    return s;
}

inline ImmersionGrid contact_perturbed_torus(int nu, int nv, Real eps, int n_substeps = 20) {
    const ImmersionGrid base = sample_to_grid(*flat_minimal_torus(), nu, nv);
    return contact_perturb(base, default_perturbation_field(nu, nv), eps, n_substeps);
}

struct ExemplarEntry {
    std::string name;
    std::string topology;
    KnownInvariants knowns;
    std::function<std::unique_ptr<AnalyticImmersion>()> make;  // null for generated grids
};

inline std::vector<ExemplarEntry> exemplar_registry() {
    std::vector<ExemplarEntry> out;
    out.push_back({"flat_minimal_torus", "torus", flat_minimal_torus()->knowns(), &flat_minimal_torus});
    out.push_back({"equatorial_sphere", "sphere (chart)", EquatorialSphere().knowns(), &equatorial_sphere});
    {
        KnownInvariants k;
        k.legendrian = true;
        k.source = "generated (contact deformation of the flat torus)";
        out.push_back({"contact_perturbed_torus", "torus", k, nullptr});
    }
    {
        ProductTorus pt;
        out.push_back({pt.name(), pt.topology(), pt.knowns(),
                       [] { return std::unique_ptr<AnalyticImmersion>(std::make_unique<ProductTorus>()); }});
    }
    {
        WarpedTorus wt;
        out.push_back({wt.name(), wt.topology(), wt.knowns(),
                       [] { return std::unique_ptr<AnalyticImmersion>(std::make_unique<WarpedTorus>()); }});
    }
    {
        UnitaryRotated rs(equatorial_sphere(), "rotated_equatorial_sphere");
        out.push_back({rs.name(), rs.topology(), rs.knowns(), [] {
                           return std::unique_ptr<AnalyticImmersion>(
                               std::make_unique<UnitaryRotated>(equatorial_sphere(), "rotated_equatorial_sphere"));
                       }});
    }
    return out;
}

}  // namespace legw
