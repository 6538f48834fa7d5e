#include "ohd/verification.hpp"

#include <cmath>
#include <sstream>

#include "ohd/diagnostics.hpp"
#include "ohd/evolution.hpp"
#include "ohd/experiments.hpp"
#include "ohd/nonlocal.hpp"
#include "ohd/spectral.hpp"

namespace ohd {

namespace {

ExperimentConfig standard_config() {
    ExperimentConfig cfg;
    cfg.grid_L = M_PI;
    cfg.grid_N = 256;
    cfg.solver.gamma = 0.5;
    cfg.solver.delta = 0.1;
    cfg.solver.dt = 0.0;
    cfg.solver.t_end = 2.0;
    cfg.solver.cfl_safety = 0.5;
    cfg.solver.dealias = true;
    cfg.solver.blowup_threshold = 100.0;
    cfg.solver.record_every = 2;
    cfg.flux_name = "burgers";
    cfg.profile.name = "sine";
    cfg.profile.amplitude = 1.0;
    cfg.profile.mode = 1;
    return cfg;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

CriterionResult elliptic_identity_criterion() {
    CriterionResult r{1, "elliptic identity (100 random fields x 5 deltas)", false, ""};
    GridPtr grid = make_grid(M_PI, 256);
    const double deltas[] = {0.0, 0.01, 0.1, 0.5, 0.99};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        ProfileSpec ps;
        ps.name = "random_bandlimited";
        ps.amplitude = 1.0;
        ps.seed = 1000 + i;
        const Field u = prepare_initial_data(ps, grid).u0;
        for (double d : deltas) {
            const Field p = solve_p(u, d);
            worst = std::max(worst, check_elliptic_identity(u, p, d));
        }
    }
    r.pass = worst <= 1e-10;
    r.detail = "worst residual " + fmt(worst) + " (tol 1e-10)";
    return r;
}

CriterionResult coupling_identity_criterion() {
    CriterionResult r{2, "coupling identity (same sample set)", false, ""};
    GridPtr grid = make_grid(M_PI, 256);
    const double deltas[] = {0.0, 0.01, 0.1, 0.5, 0.99};
    double worst_res = 0.0, worst_excess = -1e308;
    for (int i = 0; i < 100; ++i) {
        ProfileSpec ps;
        ps.name = "random_bandlimited";
        ps.amplitude = 1.0;
        ps.seed = 1000 + i;
        const Field u = prepare_initial_data(ps, grid).u0;
        const double uu = l2_norm(u) * l2_norm(u);
        for (double d : deltas) {
            const Field p = solve_p(u, d);
            worst_res = std::max(worst_res, coupling_identity_residual(u, p, d));
            worst_excess = std::max(worst_excess, coupling_product(u, p, d) - uu * (1.0 + 1e-10));
        }
    }
    r.pass = worst_res <= 1e-10 && worst_excess <= 0.0;
    r.detail = "worst residual " + fmt(worst_res) + ", worst <u,P> excess over ||u||^2 " +
               fmt(worst_excess);
    return r;
}

CriterionResult closed_form_p_criterion() {
    CriterionResult r{3, "closed-form nonlocal solve for u = sin x", false, ""};
    GridPtr grid = make_grid(M_PI, 256);
    const int n = grid->num_points;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::sin(grid->point(i));
    const Field u(grid, v);

    const Field p1 = solve_p(u, 1.0);
    double e1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = grid->point(i);
        e1 = std::max(e1, std::abs(p1.values[i] - 0.5 * (std::sin(x) - std::cos(x))));
    }
    const Field p0 = solve_p(u, 0.0);
    double e0 = 0.0;
    for (int i = 0; i < n; ++i)
        e0 = std::max(e0, std::abs(p0.values[i] + std::cos(grid->point(i))));

    r.pass = e1 <= 1e-12 && e0 <= 1e-12;
    r.detail = "max errors: delta=1 " + fmt(e1) + ", delta=0 " + fmt(e0) + " (tol 1e-12)";
    return r;
}

CriterionResult mean_conservation_criterion() {
    CriterionResult r{4, "mean conservation over a T=5 run", false, ""};
    ExperimentConfig cfg = standard_config();
    cfg.solver.t_end = 5.0;
    GridPtr grid = make_grid(cfg.grid_L, cfg.grid_N);
    auto [state, report] = run(sample_profile(cfg, grid), cfg.solver, make_flux(cfg));
    const Verdict v = mean_conservation_check(report);
    r.pass = v.pass;
    r.detail = "worst margin " + fmt(v.worst_margin) + " at t = " + fmt(v.worst_time);
    return r;
}

CriterionResult energy_bound_criterion() {
    CriterionResult r{5, "Gronwall energy bounds and ||Px|| bound", false, ""};
    ExperimentConfig cfg = standard_config();
    GridPtr grid = make_grid(cfg.grid_L, cfg.grid_N);
    auto [state, report] = run(sample_profile(cfg, grid), cfg.solver, make_flux(cfg));
    const Verdict e = energy_bound_check(report);
    const Verdict p = p_bounds_check(report);
    r.pass = e.pass && p.pass;
    r.detail = "energy margin " + fmt(e.worst_margin) + ", Px margin " + fmt(p.worst_margin);
    return r;
}

CriterionResult linf_bound_criterion() {
    CriterionResult r{6, "L-infinity comparison bound", false, ""};
    ExperimentConfig cfg = standard_config();
    GridPtr grid = make_grid(cfg.grid_L, cfg.grid_N);
    auto [state, report] = run(sample_profile(cfg, grid), cfg.solver, make_flux(cfg));
    const Verdict v = linf_bound_check(report);
    r.pass = v.pass;
    r.detail = "worst margin " + fmt(v.worst_margin) + " at t = " + fmt(v.worst_time);
    return r;
}

CriterionResult stability_criterion() {
    CriterionResult r{7, "twin-run stability estimate", false, ""};
    ExperimentConfig cfg = standard_config();
    GridPtr grid = make_grid(cfg.grid_L, cfg.grid_N);
    const Field u0 = sample_profile(cfg, grid);

    const StabilityReport perturbed = stability_experiment(cfg, u0, perturbed_profile(cfg, u0));
    const StabilityReport identical = stability_experiment(cfg, u0, u0);

    r.pass = perturbed.pass && identical.pass;
    r.detail = "C_fit " + fmt(perturbed.c_fit) + " <= C_bound " + fmt(perturbed.c_bound) +
               "; identical twins " + (identical.pass ? "exactly zero" : "NOT zero");
    return r;
}

CriterionResult delta_convergence_criterion() {
    CriterionResult r{8, "delta -> 0 convergence", false, ""};
    ExperimentConfig cfg = standard_config();
    cfg.delta_list = {0.2, 0.1, 0.05, 0.025};
    GridPtr grid = make_grid(cfg.grid_L, cfg.grid_N);
    const DeltaSweepResult s = delta_sweep(cfg, sample_profile(cfg, grid));

    bool vanishing_ok = true;
    for (std::size_t i = 0; i < s.sqrt_delta_sup_px_linf.size(); ++i) {
        if (s.sqrt_delta_sup_px_linf[i] > s.sqrt_delta_majorant[i] * (1.0 + 1e-8))
            vanishing_ok = false;
        if (i > 0 && !(s.sqrt_delta_sup_px_linf[i] < s.sqrt_delta_sup_px_linf[i - 1]))
            vanishing_ok = false;
    }
    r.pass = s.strictly_decreasing && s.fitted_order >= 0.8 && vanishing_ok;
    std::ostringstream os;
    os << "E = [";
    for (double e : s.errors) os << " " << fmt(e);
    os << " ], fitted order " << fmt(s.fitted_order);
    r.detail = os.str();
    return r;
}

CriterionResult mms_criterion() {
    CriterionResult r{9, "manufactured-solution verification", false, ""};
    ExperimentConfig cfg = standard_config();
    cfg.mms_name = "decaying_sine";
    cfg.mms_amplitude = 1.0;
    cfg.mms_rate = 1.0;
    cfg.mms_mode = 1;
    cfg.mms_N_list = {64, 128};
    cfg.mms_dt_list = {0.02, 0.01, 0.005};
    cfg.mms_temporal_N = 256;
    const MmsResult m = mms_run(cfg);

    const double e64 = m.spatial_errors[0], e128 = m.spatial_errors[1];
    // the >10x reduction is required only above the round-off floor
    const bool spatial_ok = e64 <= 1e-13 || (e64 > 10.0 * e128);
    bool temporal_ok = !m.temporal_orders.empty();
    for (double p : m.temporal_orders)
        if (std::abs(p - 4.0) > 0.3) temporal_ok = false;

    // time-integral diagnostics must be insensitive to record_every;
    // their trapezoid sampling error scales with the recording interval
    // squared, so the comparison runs at a small fixed step
    ExperimentConfig rc = standard_config();
    rc.solver.dt = 5e-4;
    GridPtr grid = make_grid(rc.grid_L, rc.grid_N);
    const Field u0 = sample_profile(rc, grid);
    auto coarse = run(u0, rc.solver, make_flux(rc));
    rc.solver.record_every = 1;
    auto fine = run(u0, rc.solver, make_flux(rc));
    const double ic = cumulative_trapezoid(coarse.second.times, coarse.second.uxx_l2sq).back();
    const double iff = cumulative_trapezoid(fine.second.times, fine.second.uxx_l2sq).back();
    const double rec_rel = std::abs(ic - iff) / std::max(std::abs(iff), 1e-300);
    const bool record_ok = rec_rel < 1e-6;

    r.pass = spatial_ok && temporal_ok && record_ok;
    std::ostringstream os;
    os << "E(64) " << fmt(e64) << " -> E(128) " << fmt(e128) << "; temporal orders [";
    for (double p : m.temporal_orders) os << " " << fmt(p);
    os << " ]; record_every sensitivity " << fmt(rec_rel);
    r.detail = os.str();
    return r;
}

CriterionResult robustness_criterion(bool others_pass) {
    CriterionResult r{10, "zero data is a fixed point; verify aggregates", false, ""};
    ExperimentConfig cfg = standard_config();
    GridPtr grid = make_grid(cfg.grid_L, cfg.grid_N);
    cfg.solver.blowup_threshold = 1.0;
    const FluxModel flux = make_flux(cfg);

    SimState st;
    st.u = Field::zeros(grid);
    st.p = solve_p(st.u, cfg.solver.delta);
    bool zero_ok = true;
    for (int i = 0; i < 10000 && zero_ok; ++i) {
        st = step(st, cfg.solver, flux, 0.01);
        for (double v : st.u.values)
            if (v != 0.0) zero_ok = false;
    }
    r.pass = zero_ok && others_pass;
    r.detail = std::string(zero_ok ? "exactly zero after 10^4 steps" : "drifted off zero") +
               (others_pass ? "; all other criteria pass" : "; other criteria FAILED");
    return r;
}

} // namespace

std::vector<CriterionResult> verify_all() {
    std::vector<CriterionResult> results;
    results.push_back(elliptic_identity_criterion());
    results.push_back(coupling_identity_criterion());
    results.push_back(closed_form_p_criterion());
    results.push_back(mean_conservation_criterion());
    results.push_back(energy_bound_criterion());
    results.push_back(linf_bound_criterion());
    results.push_back(stability_criterion());
    results.push_back(delta_convergence_criterion());
    results.push_back(mms_criterion());
    bool others = true;
    for (const auto& c : results) others = others && c.pass;
    results.push_back(robustness_criterion(others));
    return results;
}

} // namespace ohd
