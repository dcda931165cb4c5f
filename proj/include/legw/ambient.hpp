#pragma once

#include <random>
#include <vector>

#include "legw/core.hpp"

namespace legw {

// Standard Sasakian structure on S^5 in R^6 = C^3.
//
// Conventions used throughout the library (fixed once, verified by the
// structure suite and by the finite-difference variation oracles):
//   J0(x,y) = (-y,x)                    multiplication by i
//   alpha_p(v) = <J0 p, v>              restriction of sum(x dy - y dx)
//   R(p) = J0 p                         Reeb field, alpha(R) = 1
//   J(v) = J0(v - alpha(v) R)           extended complex structure, J(R) = 0
//   omega(v,w) = <J0 v, w>              = (1/2) d(alpha); omega(v,Jw) = <v,w> on xi
// With these choices the sphere covariant derivative satisfies
//   nabla_X R = +J X   and   (nabla_X J) Y = -g(X,Y) R + alpha(Y) X.

constexpr Real kTangencyTol = 1e-10;
constexpr Real kUnitNormTol = 1e-12;

template <class T>
inline Vec6<T> j0(const Vec6<T>& v) {
    return Vec6<T>{-v[3], -v[4], -v[5], v[0], v[1], v[2]};
}

struct SpherePoint {
    AmbientVector p;

    explicit SpherePoint(const AmbientVector& q) : p(q) {
        if (std::abs(norm(q) - 1.0) > kUnitNormTol)
            throw NonTangent("SpherePoint: |p| deviates from 1 beyond 1e-12");
    }
};

inline void require_tangent(const SpherePoint& p, const AmbientVector& v, const char* who) {
    if (std::abs(dot(p.p, v)) > kTangencyTol)
        throw NonTangent(std::string(who) + ": vector not tangent to S^5 (|<p,v>| > 1e-10)");
}

inline Real contact_form(const SpherePoint& p, const AmbientVector& v) {
    require_tangent(p, v, "contact_form");
    return dot(j0(p.p), v);
}

inline AmbientVector reeb(const SpherePoint& p) { return j0(p.p); }

// J = J0 after projecting out the Reeb component; closed form J0 v + alpha(v) p.
inline AmbientVector extended_j(const SpherePoint& p, const AmbientVector& v) {
    require_tangent(p, v, "extended_j");
    const Real a = dot(j0(p.p), v);
    return j0(v) + a * p.p;
}

template <class T>
inline Vec6<T> extended_j_pt(const Vec6<T>& p, const Vec6<T>& v) {
    const T a = dot(j0(p), v);
    return j0(v) + a * p;
}

// omega(v,w) = <J0 v, w>; on the contact plane this is half of d(alpha).
inline Real omega(const SpherePoint&, const AmbientVector& v, const AmbientVector& w) {
    return dot(j0(v), w);
}

// Gauss formula for the round sphere: nabla_x y = D_x y + <x,y> p.
inline AmbientVector sphere_covariant(const SpherePoint& p, const AmbientVector& euclid_deriv,
                                      const AmbientVector& x, const AmbientVector& y) {
    require_tangent(p, x, "sphere_covariant");
    require_tangent(p, y, "sphere_covariant");
    return euclid_deriv + dot(x, y) * p.p;
}

struct StructureSample {
    AmbientVector p, x, y;
};

struct StructureResiduals {
    Real reeb_derivative = 0;   // max |nabla_x R - J x|
    Real j_derivative = 0;      // max |(nabla_x J)y + g(x,y)R - alpha(y)x|
    Real metric_compat = 0;     // max |<Jv,Jw> - <v,w>| for v,w in xi
    Real omega_compat = 0;      // max |omega(v,Jw) - <v,w>| for v,w in xi
};

// Closed-form residuals of the structure identities, evaluated with the
// projective extensions X(q) = x - <x,q>q, Y(q) = y - <y,q>q (the identities
// are tensorial, so any smooth extension gives the same value).
inline StructureResiduals structure_checks(const std::vector<StructureSample>& samples) {
    StructureResiduals out;
    for (const auto& s : samples) {
        const SpherePoint p(s.p);
        AmbientVector x = s.x, y = s.y;
        require_tangent(p, x, "structure_checks");
        require_tangent(p, y, "structure_checks");

        // Reeb field R(q) = J0 q: Euclidean derivative along x is J0 x.
        const AmbientVector nabR = sphere_covariant(p, j0(x), x, reeb(p));
        out.reeb_derivative = std::max(out.reeb_derivative, norm(nabR - extended_j(p, x)));

        // Field Y(q) = y - <y,q>q: D_x Y = -<y,x>p - <y,p>x = -<y,x>p at p.
        const AmbientVector DxY = -dot(y, x) * p.p;
        const AmbientVector nabY = sphere_covariant(p, DxY, x, y);
        // Field (JY)(q) = J0 Y + <J0 q, Y> q.
        const Real aY = dot(j0(p.p), y);
        const AmbientVector DxJY = j0(DxY) + (dot(j0(x), y) + dot(j0(p.p), DxY)) * p.p + aY * x;
        const AmbientVector JYp = j0(y) + aY * p.p;
        const AmbientVector nabJY = sphere_covariant(p, DxJY, x, JYp);
        const AmbientVector lhs = nabJY - extended_j(p, nabY);
        const AmbientVector rhs = -dot(x, y) * reeb(p) + aY * x;
        out.j_derivative = std::max(out.j_derivative, norm(lhs - rhs));

        // Project x,y into xi for the compatibility identities.
        const AmbientVector R = reeb(p);
        const AmbientVector v = x - dot(j0(p.p), x) * R;
        const AmbientVector w = y - dot(j0(p.p), y) * R;
        const AmbientVector Jv = extended_j(p, v), Jw = extended_j(p, w);
        out.metric_compat = std::max(out.metric_compat, std::abs(dot(Jv, Jw) - dot(v, w)));
        out.omega_compat = std::max(out.omega_compat, std::abs(dot(j0(v), Jw) - dot(v, w)));
    }
    return out;
}

inline std::vector<StructureSample> random_structure_samples(int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<Real> gauss(0.0, 1.0);
    std::vector<StructureSample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        AmbientVector p;
        for (auto& c : p) c = gauss(rng);
        Real n = norm(p);
        for (auto& c : p) c /= n;
        auto tangent = [&] {
            AmbientVector t;
            for (auto& c : t) c = gauss(rng);
            const Real pr = dot(t, p);
            for (int k = 0; k < 6; ++k) t[k] -= pr * p[k];
            return t;
        };
        out.push_back({p, tangent(), tangent()});
    }
    return out;
}

}  // namespace legw
