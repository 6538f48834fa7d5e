#ifndef OHD_EXPERIMENTS_HPP
#define OHD_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ohd/evolution.hpp"

namespace ohd {

/// Everything a scenario runner needs, loadable from the flat
/// `section.key = value` config format (one pair per line, '#' comments).
struct ExperimentConfig {
    double grid_L = M_PI;
    int grid_N = 256;
    SolverConfig solver;
    std::vector<double> delta_list{0.2, 0.1, 0.05, 0.025};

    std::string flux_name = "burgers";
    std::vector<double> flux_coeffs;
    double flux_range = 8.0;

    ProfileSpec profile;

    double perturb_amplitude = 1e-3;
    int perturb_mode = 2;

    std::vector<int> refine_N_list{64, 128, 256};
    std::vector<double> refine_dt_list{0.02, 0.01, 0.005};

    std::string mms_name = "decaying_sine";
    double mms_amplitude = 1.0;
    double mms_rate = 1.0;
    int mms_mode = 1;
    double mms_kappa = 4.0;
    std::vector<int> mms_N_list{64, 128};
    std::vector<double> mms_dt_list{0.02, 0.01, 0.005};
    int mms_temporal_N = 256;

    std::string out_dir;
    std::uint64_t seed = 1;

    void validate() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& label);

/// Flux registry lookup: "burgers", "cubic", or "custom" with
/// polynomial coefficients.
FluxModel make_flux(const ExperimentConfig& cfg);

/// Separation growth of twin trajectories against the computable
/// stability exponent.
struct StabilityReport {
    std::vector<double> times;
    std::vector<double> omega_l2;
    double omega0_l2 = 0.0;
    double c_fit = 0.0;     ///< max over recorded t>0 of ln(||w(t)||/||w0||)/t
    double c_bound = 0.0;   ///< sup_t [ ||f''(u) ux||_inf + 2 sup|f''| ||vx||_inf ]
    double worst_omega_linearity = 0.0;  ///< max ||P(u-v) - (P_u - P_v)||_inf
    bool pass = false;
};

/// Evolve u0 and v0 with identical stepping and check
/// ||u - v||(t) <= exp(c_bound t) ||u0 - v0|| (1 + 1e-6).
StabilityReport stability_experiment(const ExperimentConfig& cfg, const Field& u0,
                                     const Field& v0);

struct DeltaSweepResult {
    std::vector<double> deltas;                  ///< descending, excluding the 0 reference
    std::vector<double> errors;                  ///< ||u_delta(T) - u_0(T)||_2
    std::vector<double> orders;                  ///< between consecutive deltas
    double fitted_order = 0.0;                   ///< least-squares slope of log E vs log delta
    std::vector<double> sqrt_delta_sup_px_linf;  ///< the vanishing quantity, per delta
    std::vector<double> sqrt_delta_majorant;     ///< its exp(gamma T) ||u0|| majorant
    bool strictly_decreasing = false;
};

DeltaSweepResult delta_sweep(const ExperimentConfig& cfg, const Field& u0);

struct RefinementResult {
    std::vector<int> spatial_N;
    std::vector<double> spatial_errors;      ///< vs the finest grid, at the smallest dt
    std::vector<double> spatial_orders;
    std::vector<double> temporal_dt;
    std::vector<double> temporal_errors;     ///< vs the smallest dt, at the finest grid
    std::vector<double> temporal_orders;
};

RefinementResult refinement_study(const ExperimentConfig& cfg);

/// Manufactured solution with closed-form derivatives; p_exact is
/// present only when the profile admits one (the solver's nonlocal
/// solve is used otherwise).
struct ManufacturedSolution {
    std::function<double(double t, double x)> u;
    std::function<double(double t, double x)> u_t;
    std::function<double(double t, double x)> u_x;
    std::function<double(double t, double x)> u_xx;
    std::function<double(double t, double x)> p;  ///< may be null
};

ManufacturedSolution make_manufactured(const ExperimentConfig& cfg, double delta);

struct MmsResult {
    std::vector<int> spatial_N;
    std::vector<double> spatial_dt;        ///< the auto step each N selected
    std::vector<double> spatial_errors;    ///< max-in-time L2 error vs the exact solution
    std::vector<double> temporal_dt;
    std::vector<double> temporal_errors;
    std::vector<double> temporal_orders;
};

MmsResult mms_run(const ExperimentConfig& cfg);

/// Run to t_end and write diagnostics.csv, snapshot_<t>.csv at the ends,
/// and summary.json under out_dir.  Returns the verdicts.
std::vector<Verdict> run_scenario(const ExperimentConfig& cfg, const std::string& out_dir);

Field sample_profile(const ExperimentConfig& cfg, GridPtr grid);
Field perturbed_profile(const ExperimentConfig& cfg, const Field& u0);

} // namespace ohd

#endif
