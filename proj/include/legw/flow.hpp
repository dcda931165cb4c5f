#pragma once

#include <filesystem>
#include <fstream>
#include <optional>

#include "legw/exemplars.hpp"
#include "legw/variational.hpp"

namespace legw {

struct FlowControls {
    enum class DtMode { Auto, Fixed };
    DtMode dt_mode = DtMode::Auto;
    Real dt = 0;            // used in Fixed mode
    Real safety = 0.1;      // in (0,1]; fraction of the calibrated stable step
    long max_steps = 200;
    long checkpoint_every = 50;
    Real drift_ceiling = 1e-5;
    Real stationary_threshold = 1e-8;  // on max|s_f|
    bool legendre_projection = false;  // experimental corrective mode, off by default
    int max_retries = 10;
};

struct HistoryRow {
    long step;
    Real time, dt, W, dissipation, legendre_drift, max_sf;
    long rejections;
};

struct FlowState {
    ImmersionGrid grid;
    Real time = 0;
    long step = 0;
    std::vector<HistoryRow> history;
};

struct FlowEvaluation {
    VectorField velocity;
    ScalarField sf;
    Real W = 0, dissipation = 0, max_sf = 0, drift = 0;
    Real symbol_bound = 0;  // sixth-order symbol estimate for the dt law
};

// velocity = V(-s_f) = -s_f R - (1/2) J grad s_f; tangent to S^5 pointwise.
inline FlowEvaluation evaluate_flow(const ImmersionGrid& grid) {
    const FundamentalField ff = build_fundamental(grid);
    FlowEvaluation ev;
    ev.sf = cslw_residual(grid, ff);
    ScalarField minus_sf(ev.sf.nu(), ev.sf.nv());
    for (size_t k = 0; k < ev.sf.size(); ++k) minus_sf[k] = -ev.sf[k];
    ev.velocity = contact_variation(grid, ff, minus_sf).V;
    ScalarField sq(ev.sf.nu(), ev.sf.nv());
    for (size_t k = 0; k < sq.size(); ++k) {
        sq[k] = 0.25 * ev.sf[k] * ev.sf[k];
        ev.max_sf = std::max(ev.max_sf, std::abs(ev.sf[k]));
    }
    ev.dissipation = integrate(sq, ff.sqrtg);
    ev.W = willmore_energy(ff);
    ev.drift = legendre_residual(grid);
    const Real ku = grid.nu() / 2, kv = grid.nv() / 2;
    Real q = 0;
    for (size_t k = 0; k < ff.size(); ++k) {
        const auto& P = ff[k];
        for (Real s : {-1.0, 1.0})
            q = std::max(q, P.ginv[0][0] * ku * ku + 2.0 * s * P.ginv[0][1] * ku * kv + P.ginv[1][1] * kv * kv);
    }
    ev.symbol_bound = q * q * q;
    return ev;
}

inline VectorField lew_velocity(const ImmersionGrid& grid) { return evaluate_flow(grid).velocity; }

// 1/4 int s_f^2 dmu; equals -dW/dt along the flow.
inline Real dissipation(const ImmersionGrid& grid) { return evaluate_flow(grid).dissipation; }

// Calibrated explicit-RK4 step size: measured blow-up sits near 5*2.78/bound
// at 32x32, so safety=0.1 leaves a ~5x margin and 10x the auto step is
// reliably past the threshold.
inline Real auto_dt(const FlowEvaluation& ev, Real safety) { return safety * 27.8 / ev.symbol_bound; }

inline ImmersionGrid rk4_advance(const ImmersionGrid& grid, const FlowEvaluation& ev0, Real dt) {
    const VectorField& k1 = ev0.velocity;
    const VectorField k2 = lew_velocity(deform_and_project(grid, k1, 0.5 * dt));
    const VectorField k3 = lew_velocity(deform_and_project(grid, k2, 0.5 * dt));
    const VectorField k4 = lew_velocity(deform_and_project(grid, k3, dt));
    VectorField combo(grid.nu(), grid.nv());
    for (size_t k = 0; k < combo.size(); ++k)
        combo[k] = (1.0 / 6.0) * Vec6<Real>(k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    return deform_and_project(grid, combo, dt);
}

// Experimental Legendre corrector: the defect 1-form theta_a = alpha(F_a)
// changes by d(a) under a pure Reeb displacement a R, so the least-squares
// update solves Delta a = -div(theta#) (here with the grid-averaged metric
// symbol as the spectral preconditioner).
inline ImmersionGrid project_legendre(const ImmersionGrid& grid) {
    const FundamentalField ff = build_fundamental(grid);
    const VectorField& F = grid.values();
    const VectorField &Fu = grid.derivative(1, 0), &Fv = grid.derivative(0, 1);
    ScalarField tu(grid.nu(), grid.nv()), tv(grid.nu(), grid.nv());
    Real g00 = 0, g01 = 0, g11 = 0;
    for (size_t k = 0; k < F.size(); ++k) {
        const AmbientVector R = j0(F[k]);
        tu[k] = dot(R, Fu[k]);
        tv[k] = dot(R, Fv[k]);
        g00 += ff[k].ginv[0][0];
        g01 += ff[k].ginv[0][1];
        g11 += ff[k].ginv[1][1];
    }
    g00 /= F.size();
    g01 /= F.size();
    g11 /= F.size();
    const ScalarField mdiv = codifferential_field(grid, ff, tu, tv);  // -div(theta#)
    // spectral solve of (mean metric) Laplacian a = mdiv
    const int nu = grid.nu(), nv = grid.nv();
    std::vector<std::complex<Real>> z(static_cast<size_t>(nu) * nv);
    for (size_t k = 0; k < z.size(); ++k) z[k] = mdiv[k];
    // reuse the FFT workspace through spectral_derivative of shifted data is
    // not possible here; do a direct small DFT via fftw
    auto& ws = detail::workspace(nu, nv);
    auto* buf = reinterpret_cast<std::complex<Real>*>(ws.buf());
    for (size_t k = 0; k < z.size(); ++k) buf[k] = z[k];
    fftw_plan fwd = fftw_plan_dft_2d(nu, nv, ws.buf(), ws.buf(), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            const int kuw = (i <= nu / 2) ? i : i - nu;
            const int kvw = (j <= nv / 2) ? j : j - nv;
            const Real q = g00 * kuw * kuw + 2.0 * g01 * kuw * kvw + g11 * kvw * kvw;
            auto& c = buf[static_cast<size_t>(i) * nv + j];
            c = (q > 0) ? c / (-q) : 0.0;
        }
    fftw_plan bwd = fftw_plan_dft_2d(nu, nv, ws.buf(), ws.buf(), FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    VectorField out(nu, nv);
    const Real scale = 1.0 / (static_cast<Real>(nu) * nv);
    for (size_t k = 0; k < out.size(); ++k) {
        const Real a = buf[k].real() * scale;
        AmbientVector q = F[k] + a * j0(F[k]);
        const Real n = norm(q);
        for (auto& c : q) c /= n;
        out[k] = q;
    }
    return ImmersionGrid(std::move(out));
}

struct StepResult {
    FlowEvaluation eval_after;  // evaluation of the accepted state
    Real dt_used = 0;
    long rejections = 0;
};

// One monitored step: explicit RK4 on the flow velocity plus sphere
// reprojection. A step that raises W beyond 1e-8(1+|W|) is rejected; in auto
// mode it is retried at half the step (at most max_retries times), in fixed
// mode the user pinned dt and the step fails immediately.
inline StepResult flow_step(FlowState& state, const FlowControls& controls, const FlowEvaluation& ev0) {
    Real dt = (controls.dt_mode == FlowControls::DtMode::Auto) ? auto_dt(ev0, controls.safety) : controls.dt;
    const Real tol = 1e-8 * (1.0 + std::abs(ev0.W));
    StepResult res;
    for (int attempt = 0;; ++attempt) {
        ImmersionGrid candidate = rk4_advance(state.grid, ev0, dt);
        if (controls.legendre_projection) candidate = project_legendre(candidate);
        FlowEvaluation ev1 = evaluate_flow(candidate);
        if (ev1.W <= ev0.W + tol) {
            if (ev1.drift > controls.drift_ceiling)
                throw DriftExceeded("flow_step: legendre drift " + std::to_string(ev1.drift) +
                                    " exceeds ceiling " + std::to_string(controls.drift_ceiling));
            state.grid = std::move(candidate);
            state.time += dt;
            state.step += 1;
            res.eval_after = std::move(ev1);
            res.dt_used = dt;
            state.history.push_back({state.step, state.time, dt, res.eval_after.W, res.eval_after.dissipation,
                                     res.eval_after.drift, res.eval_after.max_sf, res.rejections});
            return res;
        }
        res.rejections += 1;
        if (controls.dt_mode == FlowControls::DtMode::Fixed)
            throw StepRejected("flow_step: fixed dt raised W by " + std::to_string(ev1.W - ev0.W));
        if (attempt + 1 >= controls.max_retries)
            throw StepRejected("flow_step: step rejected after " + std::to_string(controls.max_retries) +
                               " halvings");
        dt *= 0.5;
    }
}

struct RunSinks {
    std::ostream* csv = nullptr;
    std::optional<std::filesystem::path> checkpoint_dir;
};

inline void write_csv_row(std::ostream& os, const HistoryRow& r) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step, r.time, r.dt, r.W,
                  r.dissipation, r.legendre_drift, r.max_sf);
    os << buf;
}

struct RunResult {
    FlowState state;
    std::string termination;  // "max_steps" | "stationary"
    Real initial_W = 0;
    Real total_dissipation = 0;  // integral of the dissipation over time
};

// Iterate the flow with monitoring, optional CSV/time series and checkpoints.
// The initial state contributes a history row; errors propagate after partial
// output is flushed.
inline RunResult run_flow(FlowState state, const FlowControls& controls, const RunSinks& sinks = {}) {
    RunResult out{std::move(state), "max_steps"};
    FlowEvaluation ev = evaluate_flow(out.state.grid);
    out.initial_W = ev.W;
    if (ev.drift > controls.drift_ceiling)
        throw DriftExceeded("run_flow: initial grid violates the drift ceiling");
    if (out.state.history.empty()) {
        out.state.history.push_back({out.state.step, out.state.time, 0.0, ev.W, ev.dissipation, ev.drift,
                                     ev.max_sf, 0});
        if (sinks.csv) write_csv_row(*sinks.csv, out.state.history.back());
    }
    auto checkpoint = [&](long step) {
        if (!sinks.checkpoint_dir) return;
        const auto path = *sinks.checkpoint_dir / ("ckpt_" + std::to_string(step) + ".lewgrid");
        write_checkpoint_file(path, out.state.grid.values(), out.state.time);
    };
    for (long k = 0; k < controls.max_steps; ++k) {
        if (ev.max_sf < controls.stationary_threshold) {
            out.termination = "stationary";
            break;
        }
        StepResult sr = flow_step(out.state, controls, ev);
        out.total_dissipation += sr.dt_used * 0.5 * (ev.dissipation + sr.eval_after.dissipation);
        ev = std::move(sr.eval_after);
        if (sinks.csv) {
            write_csv_row(*sinks.csv, out.state.history.back());
            sinks.csv->flush();
        }
        if (controls.checkpoint_every > 0 && out.state.step % controls.checkpoint_every == 0)
            checkpoint(out.state.step);
    }
    checkpoint(out.state.step);
    return out;
}

}  // namespace legw
