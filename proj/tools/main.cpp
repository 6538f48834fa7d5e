#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ohd/errors.hpp"
#include "ohd/experiments.hpp"
#include "ohd/nonlocal.hpp"
#include "ohd/verification.hpp"

namespace {

using ohd::ExperimentConfig;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string resolve_out_dir(const std::string& cli_out, const ExperimentConfig* cfg) {
    if (!cli_out.empty()) return cli_out;
    if (cfg && !cfg->out_dir.empty()) return cfg->out_dir;
    if (const char* env = std::getenv("OHD_OUT_DIR")) return env;
    return "out";
}

int cmd_run(const std::string& config_path, const std::string& out) {
    ExperimentConfig cfg = ohd::load_config(config_path);
    cfg.validate();
    const std::string dir = resolve_out_dir(out, &cfg);
    const auto verdicts = ohd::run_scenario(cfg, dir);
    bool all = true;
    for (const auto& v : verdicts) {
        std::printf("[%s] %-20s worst margin %-12.4g at t = %-8.4g %s\n",
                    v.pass ? "PASS" : "FAIL", v.name.c_str(), v.worst_margin, v.worst_time,
                    v.detail.c_str());
        all = all && v.pass;
    }
    std::printf("outputs written to %s\n", dir.c_str());
    return all ? 0 : 1;
}

int cmd_delta_sweep(const std::string& config_path, const std::string& out) {
    ExperimentConfig cfg = ohd::load_config(config_path);
    cfg.validate();
    const std::string dir = resolve_out_dir(out, &cfg);
    std::filesystem::create_directories(dir);

    auto grid = ohd::make_grid(cfg.grid_L, cfg.grid_N);
    const ohd::Field u0 = ohd::sample_profile(cfg, grid);
    const ohd::DeltaSweepResult s = ohd::delta_sweep(cfg, u0);

    std::string csv = "delta,error,sqrt_delta_sup_px_linf,majorant\n";
    for (std::size_t i = 0; i < s.deltas.size(); ++i) {
        csv += g17(s.deltas[i]) + "," + g17(s.errors[i]) + "," +
               g17(s.sqrt_delta_sup_px_linf[i]) + "," + g17(s.sqrt_delta_majorant[i]) + "\n";
        std::printf("delta %-8.4g E %-12.6g sqrt(d)*sup|Px| %-12.6g\n", s.deltas[i], s.errors[i],
                    s.sqrt_delta_sup_px_linf[i]);
    }
    std::ofstream(std::filesystem::path(dir) / "sweep.csv") << csv;

    std::printf("fitted order %.4g, strictly decreasing: %s\n", s.fitted_order,
                s.strictly_decreasing ? "yes" : "no");
    bool vanish_ok = true;
    for (std::size_t i = 0; i < s.sqrt_delta_sup_px_linf.size(); ++i) {
        if (s.sqrt_delta_sup_px_linf[i] > s.sqrt_delta_majorant[i] * (1.0 + 1e-8)) vanish_ok = false;
        if (i > 0 && !(s.sqrt_delta_sup_px_linf[i] < s.sqrt_delta_sup_px_linf[i - 1]))
            vanish_ok = false;
    }
    return (s.strictly_decreasing && vanish_ok) ? 0 : 1;
}

int cmd_stability(const std::string& config_path, const std::string& out) {
    ExperimentConfig cfg = ohd::load_config(config_path);
    cfg.validate();
    const std::string dir = resolve_out_dir(out, &cfg);
    std::filesystem::create_directories(dir);

    auto grid = ohd::make_grid(cfg.grid_L, cfg.grid_N);
    const ohd::Field u0 = ohd::sample_profile(cfg, grid);
    const ohd::Field v0 = ohd::perturbed_profile(cfg, u0);
    const ohd::StabilityReport r = ohd::stability_experiment(cfg, u0, v0);

    std::string csv = "t,omega_l2\n";
    for (std::size_t i = 0; i < r.times.size(); ++i)
        csv += g17(r.times[i]) + "," + g17(r.omega_l2[i]) + "\n";
    std::ofstream(std::filesystem::path(dir) / "stability.csv") << csv;

    std::printf("||w0|| = %.6g, C_fit = %.6g, C_bound = %.6g, verdict: %s\n", r.omega0_l2, r.c_fit,
                r.c_bound, r.pass ? "PASS" : "FAIL");
    return r.pass ? 0 : 1;
}

int cmd_refine(const std::string& config_path, const std::string& out) {
    ExperimentConfig cfg = ohd::load_config(config_path);
    cfg.validate();
    const std::string dir = resolve_out_dir(out, &cfg);
    std::filesystem::create_directories(dir);

    const ohd::RefinementResult r = ohd::refinement_study(cfg);
    nlohmann::ordered_json j;
    j["spatial_N"] = r.spatial_N;
    j["spatial_errors"] = r.spatial_errors;
    j["spatial_orders"] = r.spatial_orders;
    j["temporal_dt"] = r.temporal_dt;
    j["temporal_errors"] = r.temporal_errors;
    j["temporal_orders"] = r.temporal_orders;
    std::ofstream(std::filesystem::path(dir) / "refine.json") << j.dump(2) << "\n";

    for (std::size_t i = 0; i < r.spatial_errors.size(); ++i)
        std::printf("N %-6d spatial error vs finest %.6g\n", r.spatial_N[i], r.spatial_errors[i]);
    for (std::size_t i = 0; i < r.temporal_errors.size(); ++i)
        std::printf("dt %-8.4g temporal error vs finest %.6g\n", r.temporal_dt[i],
                    r.temporal_errors[i]);
    for (double p : r.temporal_orders) std::printf("temporal observed order %.4g\n", p);
    return 0;
}

int cmd_mms(const std::string& config_path, const std::string& out) {
    ExperimentConfig cfg = ohd::load_config(config_path);
    cfg.validate();
    const std::string dir = resolve_out_dir(out, &cfg);
    std::filesystem::create_directories(dir);

    const ohd::MmsResult r = ohd::mms_run(cfg);
    nlohmann::ordered_json j;
    j["spatial_N"] = r.spatial_N;
    j["spatial_dt"] = r.spatial_dt;
    j["spatial_errors"] = r.spatial_errors;
    j["temporal_dt"] = r.temporal_dt;
    j["temporal_errors"] = r.temporal_errors;
    j["temporal_orders"] = r.temporal_orders;
    std::ofstream(std::filesystem::path(dir) / "mms.json") << j.dump(2) << "\n";

    for (std::size_t i = 0; i < r.spatial_errors.size(); ++i)
        std::printf("N %-6d dt %-10.4g max L2 error %.6g\n", r.spatial_N[i], r.spatial_dt[i],
                    r.spatial_errors[i]);
    for (std::size_t i = 0; i < r.temporal_errors.size(); ++i)
        std::printf("dt %-8.4g max L2 error %.6g\n", r.temporal_dt[i], r.temporal_errors[i]);
    for (double p : r.temporal_orders) std::printf("temporal observed order %.4g\n", p);
    return 0;
}

int cmd_verify() {
    const auto results = ohd::verify_all();
    bool all = true;
    for (const auto& c : results) {
        std::printf("[%s] %2d. %-45s %s\n", c.pass ? "PASS" : "FAIL", c.index, c.name.c_str(),
                    c.detail.c_str());
        all = all && c.pass;
    }
    std::printf(all ? "all criteria passed\n" : "some criteria FAILED\n");
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ohd: pseudospectral solver for the dissipative Ostrovsky-Hunter equation"};
    app.require_subcommand(1);

    std::string config_path, out_dir;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_dir, "output directory (default $OHD_OUT_DIR or ./out)");
    };

    add_common(app.add_subcommand("run", "single run with diagnostics"), true);
    add_common(app.add_subcommand("delta-sweep", "convergence of the regularized runs"), true);
    add_common(app.add_subcommand("stability", "twin-run separation bound"), true);
    add_common(app.add_subcommand("refine", "self-convergence study"), true);
    add_common(app.add_subcommand("mms", "manufactured-solution verification"), true);
    app.add_subcommand("verify", "run the built-in invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) return cmd_run(config_path, out_dir);
        if (app.got_subcommand("delta-sweep")) return cmd_delta_sweep(config_path, out_dir);
        if (app.got_subcommand("stability")) return cmd_stability(config_path, out_dir);
        if (app.got_subcommand("refine")) return cmd_refine(config_path, out_dir);
        if (app.got_subcommand("mms")) return cmd_mms(config_path, out_dir);
        if (app.got_subcommand("verify")) return cmd_verify();
    } catch (const ohd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ohd::BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
