// legw: batch front door for the Legendrian Willmore laboratory.
//   legw verify|flow|energy|surfaces [--surface NAME | --checkpoint PATH]
//        [--grid NUxNV] [--steps N] [--dt X | --dt auto] [--out DIR] [--force] [--resume]
// Exit codes: 0 all checks pass / run complete, 1 check or flow failure,
// 2 usage or configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "legw/report.hpp"

namespace fs = std::filesystem;
using namespace legw;

namespace {

struct GridSpec {
    int nu = 32, nv = 32;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    if (std::sscanf(s.c_str(), "%dx%d", &g.nu, &g.nv) != 2)
        throw CLI::ValidationError("--grid", "expected NUxNV, e.g. 32x32");
    auto pow2_in_range = [](int n) { return n >= 16 && n <= 256 && (n & (n - 1)) == 0; };
    if (!pow2_in_range(g.nu) || !pow2_in_range(g.nv))
        throw CLI::ValidationError("--grid", "resolutions must be powers of two between 16 and 256");
    return g;
}

void prepare_out_dir(const fs::path& dir, bool force) {
    if (fs::exists(dir)) {
        if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + " exists and is not a directory");
        if (!fs::is_empty(dir) && !force)
            throw std::runtime_error(dir.string() + " is not empty; pass --force to reuse it");
    } else {
        fs::create_directories(dir);
    }
}

void write_json_atomic(const fs::path& path, const nlohmann::json& j) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp);
        os << j.dump(2) << "\n";
    }
    fs::rename(tmp, path);
}

const ExemplarEntry* find_exemplar(const std::vector<ExemplarEntry>& reg, const std::string& name) {
    for (const auto& e : reg)
        if (e.name == name) return &e;
    return nullptr;
}

int print_and_write_checks(const std::vector<CheckResult>& checks, const fs::path* out_dir,
                           const std::string& surface, const std::string& gridspec) {
    int failed = 0;
    for (const auto& c : checks) {
        if (c.skipped) {
            std::printf("[SKIP] %s\n", c.name.c_str());
        } else {
            std::printf("[%s] %-28s value=%.17g tol=%.17g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                        c.value, c.tolerance);
            if (!c.pass) ++failed;
        }
    }
    std::printf("%s: %d failed\n", surface.c_str(), failed);
    if (out_dir) {
        nlohmann::json j = checks_to_json(checks);
        j["surface"] = surface;
        j["grid"] = gridspec;
        write_json_atomic(*out_dir / "report.json", j);
    }
    return failed == 0 ? 0 : 1;
}

struct CommonOpts {
    std::string surface;
    std::string checkpoint;
    std::string grid = "32x32";
    std::string out;
    bool force = false;
    Real eps = 0.01;
    int substeps = 20;
};

// Build the requested grid surface (exemplar, generated, or checkpoint).
ImmersionGrid load_grid_surface(const CommonOpts& o, Real* time_out = nullptr) {
    if (!o.checkpoint.empty()) {
        Checkpoint c = read_checkpoint_file(o.checkpoint);
        if (time_out) *time_out = c.time;
        return ImmersionGrid(std::move(c.values));
    }
    const GridSpec gs = parse_grid(o.grid);
    if (o.surface == "contact_perturbed_torus") return contact_perturbed_torus(gs.nu, gs.nv, o.eps, o.substeps);
    const auto reg = exemplar_registry();
    const ExemplarEntry* e = find_exemplar(reg, o.surface);
    if (!e || !e->make) throw std::runtime_error("unknown or non-analytic surface: " + o.surface);
    auto surf = e->make();
    return sample_to_grid(*surf, gs.nu, gs.nv);
}

int cmd_verify(const CommonOpts& o, const ToleranceTiers& tiers, bool dump_fields) {
    std::optional<fs::path> out_dir;
    if (!o.out.empty()) {
        prepare_out_dir(o.out, o.force);
        out_dir = fs::path(o.out);
    }
    const auto reg = exemplar_registry();
    const ExemplarEntry* e = o.checkpoint.empty() ? find_exemplar(reg, o.surface) : nullptr;

    if (e && e->make && !e->make()->periodic()) {
        auto surf = e->make();
        const auto checks = verify_chart(*surf, 200, e->knowns, tiers);
        return print_and_write_checks(checks, out_dir ? &*out_dir : nullptr, o.surface, "chart");
    }

    KnownInvariants knowns;
    if (e) knowns = e->knowns;
    if (o.surface == "contact_perturbed_torus" || !o.checkpoint.empty()) knowns = KnownInvariants{};
    const ImmersionGrid grid = load_grid_surface(o);
    const auto checks = verify_grid(grid, knowns, tiers);
    if (out_dir && dump_fields) {
        const FundamentalField ff = build_fundamental(grid);
        dump_field_csv(*out_dir / "S.csv", ff.S);
        dump_field_csv(*out_dir / "rho2.csv", ff.rho2);
        dump_field_csv(*out_dir / "dets.csv", ff.dets);
        dump_field_csv(*out_dir / "K.csv", gauss_intrinsic_field(grid));
        dump_field_csv(*out_dir / "sf.csv", cslw_residual(grid, ff));
        const GapReport gap = gap_report(ff);
        dump_field_csv(*out_dir / "gap_integrand.csv", gap.gap_integrand);
    }
    const std::string label = o.checkpoint.empty() ? o.surface : ("checkpoint:" + o.checkpoint);
    return print_and_write_checks(checks, out_dir ? &*out_dir : nullptr, label, o.grid);
}

int cmd_flow(const CommonOpts& o, const std::string& dt_str, Real safety, long steps, long ckpt_every,
             Real drift_ceiling, bool resume, bool legendre_projection) {
    if (o.out.empty()) throw std::runtime_error("flow requires --out DIR");
    const fs::path dir = o.out;
    if (!resume) prepare_out_dir(dir, o.force);
    if (resume && !fs::exists(dir)) throw std::runtime_error("--resume: " + dir.string() + " does not exist");

    FlowControls controls;
    controls.max_steps = steps;
    controls.checkpoint_every = ckpt_every;
    controls.drift_ceiling = drift_ceiling;
    controls.safety = safety;
    controls.legendre_projection = legendre_projection;
    if (dt_str != "auto") {
        controls.dt_mode = FlowControls::DtMode::Fixed;
        controls.dt = std::stod(dt_str);
        if (controls.dt <= 0) throw std::runtime_error("--dt must be positive");
    }

    FlowState state{ImmersionGrid(VectorField(16, 16, AmbientVector{1, 0, 0, 0, 0, 0})), 0.0, 0, {}};
    std::ios_base::openmode csv_mode = std::ios::out;
    if (resume) {
        long best = -1;
        for (const auto& ent : fs::directory_iterator(dir)) {
            long n;
            if (std::sscanf(ent.path().filename().string().c_str(), "ckpt_%ld.lewgrid", &n) == 1)
                best = std::max(best, n);
        }
        if (best < 0) throw std::runtime_error("--resume: no ckpt_*.lewgrid in " + dir.string());
        Checkpoint c = read_checkpoint_file(dir / ("ckpt_" + std::to_string(best) + ".lewgrid"));
        state = FlowState{ImmersionGrid(std::move(c.values)), c.time, best, {}};
        state.history.push_back({best, c.time, 0, 0, 0, 0, 0, 0});  // suppress the duplicate initial row
        csv_mode = std::ios::app;
    } else {
        state.grid = load_grid_surface(o, &state.time);
    }

    std::ofstream csv(dir / "series.csv", csv_mode);
    if (csv_mode == std::ios::out) csv << "step,time,dt,W,dissipation,legendre_drift,max_sf\n";
    RunSinks sinks;
    sinks.csv = &csv;
    sinks.checkpoint_dir = dir;

    nlohmann::json summary;
    try {
        RunResult rr = run_flow(std::move(state), controls, sinks);
        const auto& h = rr.state.history;
        summary["initial_W"] = rr.initial_W;
        summary["final_W"] = h.empty() ? rr.initial_W : h.back().W;
        summary["total_dissipation"] = rr.total_dissipation;
        summary["steps"] = rr.state.step;
        summary["final_legendre_drift"] = h.empty() ? 0.0 : h.back().legendre_drift;
        summary["termination"] = rr.termination;
        write_json_atomic(dir / "summary.json", summary);
        std::printf("flow: %s after %ld steps; W %.17g -> %.17g\n", rr.termination.c_str(), rr.state.step,
                    rr.initial_W, h.empty() ? rr.initial_W : h.back().W);
        return 0;
    } catch (const StepRejected& e) {
        summary["termination"] = std::string("StepRejected: ") + e.what();
        write_json_atomic(dir / "summary.json", summary);
        std::fprintf(stderr, "flow error: %s\n", e.what());
        return 1;
    } catch (const DriftExceeded& e) {
        summary["termination"] = std::string("DriftExceeded: ") + e.what();
        write_json_atomic(dir / "summary.json", summary);
        std::fprintf(stderr, "flow error: %s\n", e.what());
        return 1;
    }
}

int cmd_energy(const CommonOpts& o) {
    const auto reg = exemplar_registry();
    const ExemplarEntry* e = o.checkpoint.empty() ? find_exemplar(reg, o.surface) : nullptr;
    nlohmann::json j;
    if (e && e->make && !e->make()->periodic()) {
        // band quadrature of the (pointwise zero) integrand over the chart
        auto surf = e->make();
        const int nth = 64, nph = 64;
        const Real th0 = EquatorialSphere::kThetaMin, th1 = EquatorialSphere::kThetaMax;
        long double acc = 0.0L, area = 0.0L;
        const Real dth = (th1 - th0) / nth, dph = 2.0 * M_PI / nph;
        for (int i = 0; i < nth; ++i)
            for (int jj = 0; jj < nph; ++jj) {
                const ChartSample cs = evaluate_chart_point(*surf, th0 + (i + 0.5) * dth, (jj + 0.5) * dph);
                acc += 0.5L * static_cast<long double>(cs.rho2) * cs.sqrtg;
                area += cs.sqrtg;
            }
        j["surface"] = o.surface;
        j["W_band"] = static_cast<Real>(acc * dth * dph);
        j["area_band"] = static_cast<Real>(area * dth * dph);
        std::printf("W over admissible band = %.17g\n", j["W_band"].get<Real>());
    } else {
        const ImmersionGrid grid = load_grid_surface(o);
        const FundamentalField ff = build_fundamental(grid);
        const GapReport gap = gap_report(ff);
        j["surface"] = o.checkpoint.empty() ? o.surface : ("checkpoint:" + o.checkpoint);
        j["W"] = willmore_energy(ff);
        j["area"] = surface_area(ff);
        j["s_min"] = gap.s_min;
        j["s_max"] = gap.s_max;
        j["integrated_gap"] = gap.integrated_gap;
        j["legendre_residual"] = legendre_residual(grid);
        std::printf("W = %.17g  area = %.17g  S in [%.17g, %.17g]\n", j["W"].get<Real>(),
                    j["area"].get<Real>(), gap.s_min, gap.s_max);
    }
    if (!o.out.empty()) {
        prepare_out_dir(o.out, o.force);
        write_json_atomic(fs::path(o.out) / "energy.json", j);
    }
    return 0;
}

int cmd_surfaces() {
    std::printf("%-34s %-24s %s\n", "name", "topology", "known invariants");
    for (const auto& e : exemplar_registry()) {
        std::string inv;
        auto add = [&inv](const std::string& s) { inv += (inv.empty() ? "" : ", ") + s; };
        char buf[64];
        if (e.knowns.S) {
            std::snprintf(buf, sizeof buf, "S=%.17g", *e.knowns.S);
            add(buf);
        }
        if (e.knowns.K) {
            std::snprintf(buf, sizeof buf, "K=%.17g", *e.knowns.K);
            add(buf);
        }
        if (e.knowns.Hmax) {
            std::snprintf(buf, sizeof buf, "|H|=%.17g", *e.knowns.Hmax);
            add(buf);
        }
        if (e.knowns.W) {
            std::snprintf(buf, sizeof buf, "W=%.17g", *e.knowns.W);
            add(buf);
        }
        if (e.knowns.dets) {
            std::snprintf(buf, sizeof buf, "det h1+det h2=%.17g", *e.knowns.dets);
            add(buf);
        }
        add(e.knowns.legendrian ? "Legendrian" : "not Legendrian");
        if (!e.knowns.source.empty()) add("[" + e.knowns.source + "]");
        std::printf("%-34s %-24s %s\n", e.name.c_str(), e.topology.c_str(), inv.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for Willmore energy and the Legendrian Willmore flow on S^5"};
    app.require_subcommand(1);

    CommonOpts o;
    ToleranceTiers tiers;
    bool dump_fields = false;

    auto add_common = [&](CLI::App* sub, bool with_grid = true) {
        sub->add_option("--surface", o.surface, "surface name (see `legw surfaces`)");
        sub->add_option("--checkpoint", o.checkpoint, "LEWGRID checkpoint path");
        if (with_grid) sub->add_option("--grid", o.grid, "resolution NUxNV (powers of two in [16,256])");
        sub->add_option("--out", o.out, "output directory");
        sub->add_flag("--force", o.force, "reuse a non-empty output directory");
        sub->add_option("--eps", o.eps, "contact perturbation amplitude for generated surfaces");
        sub->add_option("--substeps", o.substeps, "substeps for the contact perturbation");
    };

    CLI::App* sv = app.add_subcommand("verify", "run the verification suite, write report.json");
    add_common(sv);
    sv->add_option("--tol-low", tiers.low, "tolerance for quantities up to 2nd derivative order");
    sv->add_option("--tol-mid", tiers.mid, "tolerance for 3rd/4th order quantities");
    sv->add_option("--tol-high", tiers.high, "tolerance for 5th/6th order quantities");
    sv->add_flag("--dump-fields", dump_fields, "write S/K/rho2/dets/sf/gap fields as CSV matrices");

    CLI::App* sf = app.add_subcommand("flow", "integrate the Legendrian Willmore flow");
    add_common(sf);
    std::string dt_str = "auto";
    Real safety = 0.1, drift_ceiling = 1e-5;
    long steps = 200, ckpt_every = 50;
    bool resume = false, legproj = false;
    sf->add_option("--steps", steps, "maximum number of steps");
    sf->add_option("--dt", dt_str, "time step, or 'auto'");
    sf->add_option("--safety", safety, "auto-dt safety factor in (0,1]");
    sf->add_option("--checkpoint-every", ckpt_every, "checkpoint interval in steps");
    sf->add_option("--drift-ceiling", drift_ceiling, "abort when the Legendre drift exceeds this");
    sf->add_flag("--resume", resume, "continue from the latest checkpoint in --out");
    sf->add_flag("--project-legendre", legproj, "experimental Legendre corrector after each step");

    CLI::App* se = app.add_subcommand("energy", "Willmore energy and gap summary");
    add_common(se);

    app.add_subcommand("surfaces", "list the built-in surfaces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("surfaces")) return cmd_surfaces();
        if (!o.checkpoint.empty() && !o.surface.empty())
            throw std::runtime_error("--surface and --checkpoint are mutually exclusive");
        if (app.got_subcommand("verify")) {
            if (o.surface.empty() && o.checkpoint.empty()) throw std::runtime_error("verify needs --surface or --checkpoint");
            return cmd_verify(o, tiers, dump_fields);
        }
        if (app.got_subcommand("flow")) {
            if (o.surface.empty() && o.checkpoint.empty() && !resume)
                throw std::runtime_error("flow needs --surface, --checkpoint, or --resume");
            if (safety <= 0 || safety > 1) throw std::runtime_error("--safety must be in (0,1]");
            return cmd_flow(o, dt_str, safety, steps, ckpt_every, drift_ceiling, resume, legproj);
        }
        if (app.got_subcommand("energy")) {
            if (o.surface.empty() && o.checkpoint.empty()) throw std::runtime_error("energy needs --surface or --checkpoint");
            return cmd_energy(o);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "format error: %s\n", e.what());
        return 2;
    } catch (const StepRejected& e) {
        std::fprintf(stderr, "flow error: %s\n", e.what());
        return 1;
    } catch (const DriftExceeded& e) {
        std::fprintf(stderr, "flow error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    return 2;
}
