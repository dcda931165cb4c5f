#pragma once

#include <array>
#include <cmath>

#include "legw/core.hpp"

namespace legw {

// Truncated bivariate Taylor scalar of total order 6 in (u,v).
// Coefficient c(i,j) multiplies du^i dv^j; storage is graded by total degree.
// Running the pointwise geometry stages on Jet inputs turns every assembled
// field into its own derivative source: d/du of a computed quantity is a
// coefficient shift, which is how chart immersions (no periodic grid) are
// evaluated to sixth order.
class Jet {
public:
    static constexpr int Order = 6;
    static constexpr int NCoef = (Order + 1) * (Order + 2) / 2;  // 28

    Jet() { c_.fill(0.0); }
    /*implicit*/ Jet(Real v) {
        c_.fill(0.0);
        c_[0] = v;
    }

    static Jet variable_u(Real u0) {
        Jet j(u0);
        j.c_[index(1, 0)] = 1.0;
        return j;
    }
    static Jet variable_v(Real v0) {
        Jet j(v0);
        j.c_[index(0, 1)] = 1.0;
        return j;
    }

    static constexpr int index(int i, int j) {
        const int d = i + j;
        return d * (d + 1) / 2 + j;
    }

    Real coef(int i, int j) const { return c_[index(i, j)]; }
    Real& coef(int i, int j) { return c_[index(i, j)]; }
    Real value() const { return c_[0]; }

    // Taylor coefficients of the u-derivative: (i+1) c(i+1,j).
    Jet du() const {
        Jet r;
        for (int d = 0; d < Order; ++d)
            for (int j = 0; j <= d; ++j) r.c_[index(d - j, j)] = (d - j + 1) * c_[index(d - j + 1, j)];
        return r;
    }
    Jet dv() const {
        Jet r;
        for (int d = 0; d < Order; ++d)
            for (int j = 0; j <= d; ++j) r.c_[index(d - j, j)] = (j + 1) * c_[index(d - j, j + 1)];
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k < NCoef; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k < NCoef; ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend Jet operator-(const Jet& a) {
        Jet r;
        for (int k = 0; k < NCoef; ++k) r.c_[k] = -a.c_[k];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int da = 0; da <= Order; ++da)
            for (int ja = 0; ja <= da; ++ja) {
                const Real ca = a.c_[da * (da + 1) / 2 + ja];
                if (ca == 0.0) continue;
                const int ia = da - ja;
                for (int db = 0; db + da <= Order; ++db)
                    for (int jb = 0; jb <= db; ++jb) {
                        const Real cb = b.c_[db * (db + 1) / 2 + jb];
                        if (cb == 0.0) continue;
                        r.c_[index(ia + db - jb, ja + jb)] += ca * cb;
                    }
            }
        return r;
    }
    friend Jet operator*(Real s, const Jet& a) {
        Jet r;
        for (int k = 0; k < NCoef; ++k) r.c_[k] = s * a.c_[k];
        return r;
    }
    friend Jet operator*(const Jet& a, Real s) { return s * a; }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
    friend Jet operator/(const Jet& a, Real s) { return (1.0 / s) * a; }
    friend Jet operator+(const Jet& a, Real s) {
        Jet r = a;
        r.c_[0] += s;
        return r;
    }
    friend Jet operator+(Real s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, Real s) { return a + (-s); }
    friend Jet operator-(Real s, const Jet& a) { return (-a) + s; }

    Jet& operator+=(const Jet& b) {
        for (int k = 0; k < NCoef; ++k) c_[k] += b.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& b) {
        for (int k = 0; k < NCoef; ++k) c_[k] -= b.c_[k];
        return *this;
    }

    // Newton iterations: each doubles the valid order, three cover order 6.
    friend Jet reciprocal(const Jet& a) {
        Jet r(1.0 / a.value());
        for (int it = 0; it < 3; ++it) r = r * (2.0 - a * r);
        return r;
    }

    friend Jet sqrt(const Jet& a) {
        Jet s(std::sqrt(a.value()));
        for (int it = 0; it < 3; ++it) s = 0.5 * (s + a * reciprocal(s));
        return s;
    }

    friend Jet sin(const Jet& a) {
        auto [sn, cn] = sincos_nilpotent(a);
        return std::sin(a.value()) * cn + std::cos(a.value()) * sn;
    }
    friend Jet cos(const Jet& a) {
        auto [sn, cn] = sincos_nilpotent(a);
        return std::cos(a.value()) * cn - std::sin(a.value()) * sn;
    }

private:
    // sin/cos of the nilpotent part n = a - a(0); series terminate at n^6.
    static std::pair<Jet, Jet> sincos_nilpotent(const Jet& a) {
        Jet n = a;
        n.c_[0] = 0.0;
        Jet n2 = n * n, n3 = n2 * n, n4 = n2 * n2, n5 = n4 * n, n6 = n4 * n2;
        Jet sn = n - (1.0 / 6.0) * n3 + (1.0 / 120.0) * n5;
        Jet cn = Jet(1.0) - 0.5 * n2 + (1.0 / 24.0) * n4 - (1.0 / 720.0) * n6;
        return {sn, cn};
    }

    std::array<Real, NCoef> c_;
};

inline Real scalar_value(Real x) { return x; }
inline Real scalar_value(const Jet& x) { return x.value(); }

using JetVec = Vec6<Jet>;

inline JetVec jet_du(const JetVec& v) {
    JetVec r;
    for (int k = 0; k < 6; ++k) r[k] = v[k].du();
    return r;
}
inline JetVec jet_dv(const JetVec& v) {
    JetVec r;
    for (int k = 0; k < 6; ++k) r[k] = v[k].dv();
    return r;
}

inline AmbientVector jet_value(const JetVec& v) {
    AmbientVector r;
    for (int k = 0; k < 6; ++k) r[k] = v[k].value();
    return r;
}

}  // namespace legw
