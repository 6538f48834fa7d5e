#ifndef OHD_DIAGNOSTICS_HPP
#define OHD_DIAGNOSTICS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ohd/state.hpp"

namespace ohd {

/// Time series of the monitored norms and residuals for one run, plus
/// the scalar suprema over the whole time window.  The first twelve
/// series, in this order, form the CSV contract.
struct DiagnosticsReport {
    // run metadata
    double gamma = 0.0;
    double delta = 0.0;
    double u0_l2 = 0.0;
    double u0_linf = 0.0;

    // CSV series, column order as listed
    std::vector<double> times;
    std::vector<double> u_l2sq;
    std::vector<double> ux_l2sq;
    std::vector<double> uxx_l2sq;
    std::vector<double> u_linf;
    std::vector<double> p_l2;
    std::vector<double> p_linf;
    std::vector<double> px_l2;
    std::vector<double> mean_u;
    std::vector<double> mean_p;
    std::vector<double> elliptic_residual;
    std::vector<double> coupling_residual;

    // additional series used by checks but not part of the CSV contract
    std::vector<double> px_linf;
    std::vector<double> uxxx_l2sq;
    std::vector<double> tail_fraction;

    // window suprema
    double sup_p_linf = 0.0;
    double sup_ux_linf = 0.0;

    std::size_t size() const { return times.size(); }
    bool all_series_finite() const;
};

/// Pass/fail outcome of one a priori bound with its worst margin.
struct Verdict {
    std::string name;
    bool pass = false;
    double worst_margin = 0.0;  ///< min over time of (allowed - observed)
    double worst_time = 0.0;
    std::string detail;
};

/// Observer that appends to a report during a run.
class DiagnosticsCollector {
public:
    DiagnosticsCollector(const SolverConfig& config, const Field& u0);
    void observe(const SimState& state);
    const DiagnosticsReport& report() const { return data; }
    DiagnosticsReport take() { return std::move(data); }

private:
    double gamma, delta;
    bool dealias;
    DiagnosticsReport data;
};

// Checks; each is a pure function of the report.
Verdict mean_conservation_check(const DiagnosticsReport& report);
Verdict energy_bound_check(const DiagnosticsReport& report);
Verdict p_bounds_check(const DiagnosticsReport& report);
Verdict linf_bound_check(const DiagnosticsReport& report);
Verdict identity_residual_series(const DiagnosticsReport& report);

/// Higher-derivative bookkeeping: only finiteness and resolution
/// adequacy (tail fraction) are asserted; the rest is reported for
/// trend inspection across delta.
struct RegularitySummary {
    double sup_ux_l2sq = 0.0;
    double int_uxx_l2sq = 0.0;
    double sup_uxx_l2sq = 0.0;
    double int_uxxx_l2sq = 0.0;
    double max_tail_fraction = 0.0;
    Verdict verdict;
};
RegularitySummary regularity_monitor(const DiagnosticsReport& report);

std::vector<Verdict> all_checks(const DiagnosticsReport& report);

/// Cumulative trapezoid of v(s) ds over the recorded times.
std::vector<double> cumulative_trapezoid(const std::vector<double>& times,
                                         const std::vector<double>& values);

/// CSV with one row per recorded time, 17 significant digits.
void write_csv(const DiagnosticsReport& report, std::ostream& out);
std::string to_csv(const DiagnosticsReport& report);

} // namespace ohd

#endif
