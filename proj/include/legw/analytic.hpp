#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "legw/core.hpp"
#include "legw/grid.hpp"
#include "legw/jet.hpp"

namespace legw {

// Self-reported reference values an exemplar carries for the test harness.
struct KnownInvariants {
    std::optional<Real> S, K, W, Hmax, dets;
    bool legendrian = false;
    std::string source;  // how the values are known, e.g. "closed form"
};

// Closed-form immersion evaluated through order-6 jets. Periodic immersions
// can be sampled onto grids; chart immersions (with excluded poles) are
// evaluated pointwise only.
class AnalyticImmersion {
public:
    virtual ~AnalyticImmersion() = default;

    virtual std::string name() const = 0;
    virtual std::string topology() const = 0;
    virtual bool periodic() const = 0;
    virtual KnownInvariants knowns() const = 0;

    // Position and all partials up to total order 6 at (u,v).
    virtual JetVec jet(Real u, Real v) const = 0;

    // Chart immersions restrict the admissible (u,v) domain.
    virtual void require_admissible(Real, Real) const {}

    AmbientVector position(Real u, Real v) const { return jet_value(jet(u, v)); }

    // Pointwise Legendre defect |alpha(F_u)|/|F_u| + (same for v).
    Real legendre_defect(Real u, Real v) const {
        const JetVec J = jet(u, v);
        const AmbientVector F = jet_value(J);
        const AmbientVector Fu = jet_value(jet_du(J));
        const AmbientVector Fv = jet_value(jet_dv(J));
        const AmbientVector R = j0(F);
        return std::max(std::abs(dot(R, Fu)) / norm(Fu), std::abs(dot(R, Fv)) / norm(Fv));
    }
};

inline ImmersionGrid sample_to_grid(const AnalyticImmersion& a, int nu, int nv) {
    if (!a.periodic())
        throw NotPeriodic("sample_to_grid: " + a.name() + " is a chart immersion; evaluate it pointwise");
    VectorField values(nu, nv);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) values.at(i, j) = a.position(2.0 * M_PI * i / nu, 2.0 * M_PI * j / nv);
    return ImmersionGrid(std::move(values));
}

}  // namespace legw
