#pragma once

#include <json.hpp>

#include <fstream>
#include <random>

#include "legw/chart_eval.hpp"
#include "legw/exemplars.hpp"
#include "legw/flow.hpp"

namespace legw {

struct CheckResult {
    std::string name;
    Real value = 0;
    Real tolerance = 0;
    bool pass = false;
    bool skipped = false;
};

inline CheckResult make_check(std::string name, Real value, Real tol) {
    CheckResult c;
    c.name = std::move(name);
    c.value = value;
    c.tolerance = tol;
    c.pass = std::abs(value) <= tol;
    return c;
}

inline CheckResult skip_check(std::string name) {
    CheckResult c;
    c.name = std::move(name);
    c.skipped = true;
    c.pass = true;
    return c;
}

// Spectral-accuracy tolerance tiers by derivative depth of the quantity.
struct ToleranceTiers {
    Real low = 1e-8;   // up to second order in F
    Real mid = 1e-6;   // third and fourth order
    Real high = 1e-4;  // fifth and sixth order
};

inline const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names = {
        "structure_reeb_derivative", "structure_j_derivative", "structure_metric_compat",
        "structure_omega_compat", "legendre_residual", "frame_orthonormality", "reeb_orthogonality",
        "h_full_symmetry", "gauss_residual", "codazzi_residual", "splitting_identity",
        "h3_derivative_identity", "key_identity", "willmore_route_discrepancy", "hvec_tangential_leakage",
        "simons_slack_negativity", "simons_equality_residual", "simons_divergence_integral",
        "mc_form_closedness", "mc_form_coclosedness_link", "rho2_negativity", "gap_integrand_integral",
        "willmore_identity_residual", "known_S", "known_K", "known_H", "known_W", "known_dets",
        "cslw_residual_max", "willmore_energy"};
    return names;
}

inline std::vector<CheckResult> structure_suite(int samples, unsigned seed, Real tol) {
    const StructureResiduals r = structure_checks(random_structure_samples(samples, seed));
    return {make_check("structure_reeb_derivative", r.reeb_derivative, tol),
            make_check("structure_j_derivative", r.j_derivative, tol),
            make_check("structure_metric_compat", r.metric_compat, tol),
            make_check("structure_omega_compat", r.omega_compat, tol)};
}

// Full verification suite on a periodic grid.
inline std::vector<CheckResult> verify_grid(const ImmersionGrid& grid, const KnownInvariants& knowns,
                                            const ToleranceTiers& t = {}) {
    std::vector<CheckResult> out = structure_suite(1000, 2024, 1e-10);
    const FundamentalField ff = build_fundamental(grid);

    const Real leg = legendre_residual(grid);
    out.push_back(make_check("legendre_residual", leg, 1e-8));
    const bool legendrian = leg <= 1e-8;

    // frame orthonormality of {e1,e2,nu1,nu2,R}
    {
        Real worst = 0;
        for (size_t k = 0; k < ff.size(); ++k) {
            const auto& P = ff[k];
            const Vec6<Real>* f[5] = {&P.e[0], &P.e[1], &P.nu[0], &P.nu[1], &P.reeb};
            for (int a = 0; a < 5; ++a)
                for (int b = a; b < 5; ++b)
                    worst = std::max(worst, std::abs(dot(*f[a], *f[b]) - (a == b ? 1.0 : 0.0)));
        }
        if (legendrian)
            out.push_back(make_check("frame_orthonormality", worst, 1e-10));
        else
            out.push_back(skip_check("frame_orthonormality"));
    }

    {
        Real h3 = 0, hsym = 0;
        for (size_t k = 0; k < ff.size(); ++k) {
            const auto& P = ff[k];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) h3 = std::max(h3, std::abs(P.h[2][i][j]));
            hsym = std::max(hsym, std::abs(P.h[0][0][1] - P.h[1][0][0]));
            hsym = std::max(hsym, std::abs(P.h[0][1][1] - P.h[1][0][1]));
        }
        out.push_back(make_check("reeb_orthogonality", h3, t.low));
        if (legendrian)
            out.push_back(make_check("h_full_symmetry", hsym, t.low));
        else
            out.push_back(skip_check("h_full_symmetry"));
    }

    {
        const ScalarField gr = gauss_residual(grid, ff);
        Real worst = 0;
        for (size_t k = 0; k < gr.size(); ++k) worst = std::max(worst, std::abs(gr[k]));
        out.push_back(make_check("gauss_residual", worst, t.mid));
    }

    {
        Real neg = 0;
        for (size_t k = 0; k < ff.size(); ++k) neg = std::max(neg, -ff.rho2[k]);
        out.push_back(make_check("rho2_negativity", neg, t.low));
    }

    const Real W = willmore_energy(ff);
    {
        CheckResult c;
        c.name = "willmore_energy";
        c.value = W;
        c.tolerance = 0;
        c.pass = true;  // informational; asserted through known_W when available
        out.push_back(c);
    }

    if (!legendrian) {
        // The Legendrian identity suite is meaningless off the class.
        for (const char* n :
             {"codazzi_residual", "splitting_identity", "h3_derivative_identity", "key_identity",
              "willmore_route_discrepancy", "hvec_tangential_leakage", "simons_slack_negativity",
              "simons_equality_residual", "simons_divergence_integral", "mc_form_closedness",
              "mc_form_coclosedness_link", "gap_integrand_integral", "willmore_identity_residual",
              "known_S", "known_K", "known_H", "known_W", "known_dets", "cslw_residual_max"})
            out.push_back(skip_check(n));
        return out;
    }

    const ShapeDerivativeField sd = build_shape_derivatives(grid, ff);
    {
        Real cod = 0, h3id = 0;
        for (size_t k = 0; k < sd.pts.size(); ++k) {
            const auto& SD = sd[k];
            const auto& P = ff[k];
            for (int beta = 0; beta < 3; ++beta)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        for (int kk = 0; kk < 2; ++kk) {
                            cod = std::max(cod, std::abs(SD.hijk[beta][i][j][kk] - SD.hijk[beta][i][kk][j]));
                            if (beta == 2)
                                h3id = std::max(h3id, std::abs(SD.hijk[2][i][j][kk] + P.h[kk][i][j]));
                        }
        }
        out.push_back(make_check("codazzi_residual", cod, t.mid));
        out.push_back(make_check("h3_derivative_identity", h3id, t.mid));
    }
    {
        Real split = 0;
        for (size_t k = 0; k < ff.size(); ++k)
            split = std::max(split, std::abs(sd.grad_h2[k] - sd.gradT_h2[k] - ff.S[k]));
        out.push_back(make_check("splitting_identity", split, 1e-5));
    }

    const WillmoreOperatorField Wop = willmore_operator(grid, ff);
    out.push_back(make_check("willmore_route_discrepancy", Wop.route_discrepancy, t.mid));
    {
        const NormalFieldCheck nc = check_normal_field(grid, ff, ff.Hvec);
        out.push_back(make_check("hvec_tangential_leakage", nc.tangential_leakage, t.low));
    }

    // <Delta^nu H, R> = 2 div(JH)
    {
        const VectorField lap = normal_laplacian_H(grid, ff);
        const ScalarField divJH = csl_residual(grid, ff);
        Real worst = 0;
        for (size_t k = 0; k < lap.size(); ++k)
            worst = std::max(worst, std::abs(dot(lap[k], ff[k].reeb) - 2.0 * divJH[k]));
        out.push_back(make_check("key_identity", worst, t.high));
    }

    const SimonsReport sim = simons_report(grid, ff, sd);
    out.push_back(make_check("simons_slack_negativity", std::max(0.0, -sim.integrated_slack), 1e-3));
    {
        Real eq = 0;
        for (size_t k = 0; k < sim.equality_residual.size(); ++k)
            eq = std::max(eq, std::abs(sim.equality_residual[k]));
        out.push_back(make_check("simons_equality_residual", eq, t.high));
        out.push_back(make_check("simons_divergence_integral",
                                 sim.divergence_term_integral / surface_area(ff), t.mid));
    }

    const MeanCurvatureFormReport mc = mean_curvature_form_residuals(grid, ff);
    out.push_back(make_check("mc_form_closedness", mc.closedness, 1e-5));
    out.push_back(make_check("mc_form_coclosedness_link", mc.coclosedness_link, 1e-10));

    const GapReport gap = gap_report(ff);
    const ScalarField sfres = cslw_residual(grid, ff);
    Real max_sf = 0;
    for (size_t k = 0; k < sfres.size(); ++k) max_sf = std::max(max_sf, std::abs(sfres[k]));
    {
        CheckResult c;
        c.name = "cslw_residual_max";
        c.value = max_sf;
        c.tolerance = 0;
        c.pass = true;  // informational unless the exemplar is known stationary
        if (knowns.W && knowns.Hmax && *knowns.Hmax == 0.0) c = make_check("cslw_residual_max", max_sf, t.high);
        out.push_back(c);
    }
    // the gap statement is asserted only near the csL-Willmore class with S in [0,2]
    if (max_sf <= 1e-6 && gap.s_min >= -1e-8 && gap.s_max <= 2.0 + 1e-6)
        out.push_back(make_check("gap_integrand_integral", gap.integrated_gap, 1e-3));
    else
        out.push_back(skip_check("gap_integrand_integral"));

    if (max_sf <= 1e-4 && knowns.Hmax && *knowns.Hmax == 0.0) {
        out.push_back(make_check("willmore_identity_residual", willmore_identity_residual(ff, sd), t.low));
    } else {
        // the identity only holds on Willmore surfaces; value reported, not asserted
        CheckResult c;
        c.name = "willmore_identity_residual";
        c.value = willmore_identity_residual(ff, sd);
        c.tolerance = 0;
        c.pass = true;
        out.push_back(c);
    }

    // Exemplar self-reported values.
    if (knowns.S) {
        Real worst = 0;
        for (size_t k = 0; k < ff.size(); ++k) worst = std::max(worst, std::abs(ff.S[k] - *knowns.S));
        out.push_back(make_check("known_S", worst, t.low));
    } else
        out.push_back(skip_check("known_S"));
    if (knowns.K) {
        const ScalarField K = gauss_intrinsic_field(grid);
        Real worst = 0;
        for (size_t k = 0; k < K.size(); ++k) worst = std::max(worst, std::abs(K[k] - *knowns.K));
        out.push_back(make_check("known_K", worst, t.mid));
    } else
        out.push_back(skip_check("known_K"));
    if (knowns.Hmax) {
        Real worst = 0;
        for (size_t k = 0; k < ff.size(); ++k) worst = std::max(worst, std::sqrt(std::max(ff.H2[k], 0.0)));
        out.push_back(make_check("known_H", worst - *knowns.Hmax, t.low));
    } else
        out.push_back(skip_check("known_H"));
    if (knowns.W) {
        const Real denom = std::max(std::abs(*knowns.W), 1.0);
        out.push_back(make_check("known_W", (W - *knowns.W) / denom, t.mid));
    } else
        out.push_back(skip_check("known_W"));
    if (knowns.dets) {
        Real worst = 0;
        for (size_t k = 0; k < ff.size(); ++k) worst = std::max(worst, std::abs(ff.dets[k] - *knowns.dets));
        out.push_back(make_check("known_dets", worst, t.mid));
    } else
        out.push_back(skip_check("known_dets"));
    return out;
}

// Pointwise verification of a chart immersion over deterministic samples.
inline std::vector<CheckResult> verify_chart(const AnalyticImmersion& surf, int n_samples,
                                             const KnownInvariants& knowns, const ToleranceTiers& t = {}) {
    std::vector<CheckResult> out = structure_suite(1000, 2024, 1e-10);
    std::mt19937_64 rng(511);
    std::uniform_real_distribution<Real> uth(EquatorialSphere::kThetaMin, EquatorialSphere::kThetaMax);
    std::uniform_real_distribution<Real> uph(0.0, 2.0 * M_PI);

    ChartSample acc;  // running maxima
    Real maxS = 0, worstK = 0, worstky = 0, maxH = 0;
    for (int s = 0; s < n_samples; ++s) {
        const Real u = uth(rng), v = uph(rng);
        const ChartSample cs = evaluate_chart_point(surf, u, v);
        acc.legendre = std::max(acc.legendre, cs.legendre);
        maxS = std::max(maxS, std::abs(cs.S));
        if (knowns.K) worstK = std::max(worstK, std::abs(cs.K - *knowns.K));
        worstky = std::max(worstky, std::abs(cs.gauss_residual));
        maxH = std::max(maxH, cs.H_norm);
        acc.h3_max = std::max(acc.h3_max, cs.h3_max);
        acc.h_symmetry = std::max(acc.h_symmetry, cs.h_symmetry);
        acc.lapH_norm = std::max(acc.lapH_norm, cs.lapH_norm);
        acc.willmore_norm = std::max(acc.willmore_norm, cs.willmore_norm);
        acc.route_discrepancy = std::max(acc.route_discrepancy, cs.route_discrepancy);
        acc.key_identity = std::max(acc.key_identity, std::abs(cs.key_identity));
        acc.cslw = std::max(acc.cslw, std::abs(cs.cslw));
        acc.velocity_norm = std::max(acc.velocity_norm, cs.velocity_norm);
        acc.velocity_reeb_defect = std::max(acc.velocity_reeb_defect, cs.velocity_reeb_defect);
        acc.splitting_residual = std::max(acc.splitting_residual, cs.splitting_residual);
        acc.codazzi_residual = std::max(acc.codazzi_residual, cs.codazzi_residual);
        acc.h3_identity = std::max(acc.h3_identity, cs.h3_identity);
        acc.simons_slack = std::max(acc.simons_slack, std::abs(cs.simons_slack));
        acc.simons_equality = std::max(acc.simons_equality, std::abs(cs.simons_equality));
        acc.mc_closedness = std::max(acc.mc_closedness, cs.mc_closedness);
        acc.gap_integrand = std::max(acc.gap_integrand, std::abs(cs.gap_integrand));
        acc.willmore_identity_pt = std::max(acc.willmore_identity_pt, cs.willmore_identity_pt);
        acc.rho2 = std::min(acc.rho2, cs.rho2);
    }
    out.push_back(make_check("legendre_residual", acc.legendre, 1e-10));
    out.push_back(skip_check("frame_orthonormality"));
    out.push_back(make_check("reeb_orthogonality", acc.h3_max, t.low));
    out.push_back(make_check("h_full_symmetry", acc.h_symmetry, t.low));
    out.push_back(make_check("gauss_residual", worstky, t.low));
    out.push_back(make_check("codazzi_residual", acc.codazzi_residual, t.low));
    out.push_back(make_check("splitting_identity", acc.splitting_residual, t.low));
    out.push_back(make_check("h3_derivative_identity", acc.h3_identity, t.low));
    out.push_back(make_check("key_identity", acc.key_identity, t.high));
    out.push_back(make_check("willmore_route_discrepancy", acc.route_discrepancy, t.low));
    out.push_back(skip_check("hvec_tangential_leakage"));
    out.push_back(make_check("simons_slack_negativity", acc.simons_slack, t.low));
    out.push_back(make_check("simons_equality_residual", acc.simons_equality, t.low));
    out.push_back(skip_check("simons_divergence_integral"));
    out.push_back(make_check("mc_form_closedness", acc.mc_closedness, t.low));
    out.push_back(skip_check("mc_form_coclosedness_link"));
    out.push_back(make_check("rho2_negativity", std::max(0.0, -acc.rho2), t.low));
    out.push_back(make_check("gap_integrand_integral", acc.gap_integrand, t.low));
    out.push_back(make_check("willmore_identity_residual", acc.willmore_identity_pt, t.low));
    if (knowns.S)
        out.push_back(make_check("known_S", maxS - *knowns.S, t.low));
    else
        out.push_back(skip_check("known_S"));
    if (knowns.K)
        out.push_back(make_check("known_K", worstK, t.low));
    else
        out.push_back(skip_check("known_K"));
    if (knowns.Hmax)
        out.push_back(make_check("known_H", maxH - *knowns.Hmax, t.low));
    else
        out.push_back(skip_check("known_H"));
    out.push_back(skip_check("known_W"));
    out.push_back(skip_check("known_dets"));
    out.push_back(make_check("cslw_residual_max", acc.cslw, t.mid));
    {
        CheckResult c;
        c.name = "willmore_energy";
        c.value = 0.0;  // pointwise integrand identically zero on asserted charts
        c.tolerance = 0;
        c.pass = true;
        out.push_back(c);
    }
    return out;
}

inline nlohmann::json checks_to_json(const std::vector<CheckResult>& checks) {
    nlohmann::json j;
    int passed = 0, failed = 0, skipped = 0;
    nlohmann::json jc = nlohmann::json::object();
    for (const auto& c : checks) {
        nlohmann::json e;
        if (c.skipped) {
            e["status"] = "skipped";
            ++skipped;
        } else {
            e["status"] = "ran";
            e["value"] = c.value;
            e["tolerance"] = c.tolerance;
            e["pass"] = c.pass;
            c.pass ? ++passed : ++failed;
        }
        jc[c.name] = e;
    }
    j["checks"] = jc;
    j["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    return j;
}

inline void dump_field_csv(const std::filesystem::path& path, const ScalarField& f) {
    std::ofstream os(path);
    char buf[64];
    for (int i = 0; i < f.nu(); ++i) {
        for (int j = 0; j < f.nv(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", f.at(i, j));
            os << buf << (j + 1 == f.nv() ? "\n" : ",");
        }
    }
}

}  // namespace legw
