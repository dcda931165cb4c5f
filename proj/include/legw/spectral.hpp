#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "legw/core.hpp"

namespace legw {

// Row-major (u outer, v inner) field on the uniform [0,2pi)^2 grid.
template <class T>
class Grid2 {
public:
    Grid2() : nu_(0), nv_(0) {}
    Grid2(int nu, int nv) : nu_(nu), nv_(nv), data_(static_cast<size_t>(nu) * nv) {}
    Grid2(int nu, int nv, const T& fill) : nu_(nu), nv_(nv), data_(static_cast<size_t>(nu) * nv, fill) {}

    int nu() const { return nu_; }
    int nv() const { return nv_; }
    size_t size() const { return data_.size(); }

    T& at(int i, int j) { return data_[static_cast<size_t>(i) * nv_ + j]; }
    const T& at(int i, int j) const { return data_[static_cast<size_t>(i) * nv_ + j]; }
    T& operator[](size_t k) { return data_[k]; }
    const T& operator[](size_t k) const { return data_[k]; }

    Real du() const { return 2.0 * M_PI / nu_; }
    Real dv() const { return 2.0 * M_PI / nv_; }

private:
    int nu_, nv_;
    std::vector<T> data_;
};

using ScalarField = Grid2<Real>;
using VectorField = Grid2<AmbientVector>;

namespace detail {

// One cached complex-to-complex 2-D FFT workspace per grid size.
// FFTW_ESTIMATE keeps planning deterministic run to run.
class FftWorkspace {
public:
    FftWorkspace(int nu, int nv) : nu_(nu), nv_(nv) {
        buf_ = fftw_alloc_complex(static_cast<size_t>(nu) * nv);
        fwd_ = fftw_plan_dft_2d(nu, nv, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_2d(nu, nv, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftWorkspace() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;

    // In-place spectral derivative of one real component already loaded in buf_.
    void differentiate(int order_u, int order_v) {
        fftw_execute(fwd_);
        auto* z = reinterpret_cast<std::complex<Real>*>(buf_);
        const Real scale = 1.0 / (static_cast<Real>(nu_) * nv_);
        for (int i = 0; i < nu_; ++i) {
            const int ku = (i <= nu_ / 2) ? i : i - nu_;
            std::complex<Real> mu = ipow(ku, order_u);
            if (order_u % 2 == 1 && i == nu_ / 2) mu = 0.0;
            for (int j = 0; j < nv_; ++j) {
                const int kv = (j <= nv_ / 2) ? j : j - nv_;
                std::complex<Real> mv = ipow(kv, order_v);
                if (order_v % 2 == 1 && j == nv_ / 2) mv = 0.0;
                z[static_cast<size_t>(i) * nv_ + j] *= mu * mv * scale;
            }
        }
        fftw_execute(bwd_);
    }

    fftw_complex* buf() { return buf_; }

private:
    static std::complex<Real> ipow(int k, int order) {
        // (i k)^order
        std::complex<Real> r(1.0, 0.0);
        const std::complex<Real> ik(0.0, static_cast<Real>(k));
        for (int m = 0; m < order; ++m) r *= ik;
        return r;
    }

    int nu_, nv_;
    fftw_complex* buf_;
    fftw_plan fwd_, bwd_;
};

inline FftWorkspace& workspace(int nu, int nv) {
    static std::map<std::pair<int, int>, std::unique_ptr<FftWorkspace>> cache;
    auto key = std::make_pair(nu, nv);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<FftWorkspace>(nu, nv)).first;
    return *it->second;
}

}  // namespace detail

// Fourier spectral derivative; exact for band-limited fields, linear,
// total order capped at 6 (the deepest operator in the flow).
inline ScalarField spectral_derivative(const ScalarField& f, int order_u, int order_v) {
    if (order_u + order_v > 6) throw OrderTooHigh("spectral_derivative: total order > 6");
    auto& ws = detail::workspace(f.nu(), f.nv());
    auto* z = reinterpret_cast<std::complex<Real>*>(ws.buf());
    for (size_t k = 0; k < f.size(); ++k) z[k] = f[k];
    ws.differentiate(order_u, order_v);
    ScalarField out(f.nu(), f.nv());
    for (size_t k = 0; k < f.size(); ++k) out[k] = z[k].real();
    return out;
}

inline VectorField spectral_derivative(const VectorField& f, int order_u, int order_v) {
    if (order_u + order_v > 6) throw OrderTooHigh("spectral_derivative: total order > 6");
    auto& ws = detail::workspace(f.nu(), f.nv());
    auto* z = reinterpret_cast<std::complex<Real>*>(ws.buf());
    VectorField out(f.nu(), f.nv());
    for (int c = 0; c < 6; ++c) {
        for (size_t k = 0; k < f.size(); ++k) z[k] = f[k][c];
        ws.differentiate(order_u, order_v);
        for (size_t k = 0; k < f.size(); ++k) out[k][c] = z[k].real();
    }
    return out;
}

// Trapezoidal rule on the periodic grid (spectrally accurate); the sum is
// accumulated in long double so that flow-step energy differences of order
// 1e-12 stay resolvable.
inline Real integrate(const ScalarField& integrand, const ScalarField& sqrt_det_g) {
    long double s = 0.0L;
    for (size_t k = 0; k < integrand.size(); ++k)
        s += static_cast<long double>(integrand[k]) * static_cast<long double>(sqrt_det_g[k]);
    return static_cast<Real>(s * integrand.du() * integrand.dv());
}

}  // namespace legw
