#include "ohd/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "ohd/nonlocal.hpp"
#include "ohd/spectral.hpp"

namespace ohd {

bool DiagnosticsReport::all_series_finite() const {
    auto ok = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    };
    return ok(times) && ok(u_l2sq) && ok(ux_l2sq) && ok(uxx_l2sq) && ok(u_linf) && ok(p_l2) &&
           ok(p_linf) && ok(px_l2) && ok(mean_u) && ok(mean_p) && ok(elliptic_residual) &&
           ok(coupling_residual) && ok(px_linf) && ok(uxxx_l2sq) && ok(tail_fraction);
}

DiagnosticsCollector::DiagnosticsCollector(const SolverConfig& config, const Field& u0)
    : gamma(config.gamma), delta(config.delta), dealias(config.dealias) {
    data.gamma = config.gamma;
    data.delta = config.delta;
    data.u0_l2 = l2_norm(u0);
    data.u0_linf = linf_norm(u0);
}

void DiagnosticsCollector::observe(const SimState& state) {
    const Field& u = state.u;
    const Field& p = state.p;
    const Field ux = derivative(u, 1);
    const Field uxx = derivative(u, 2);
    const Field uxxx = derivative(u, 3);
    const Field px = derivative(p, 1);

    const double ul2 = l2_norm(u);
    data.times.push_back(state.t);
    data.u_l2sq.push_back(ul2 * ul2);
    const double uxl2 = l2_norm(ux);
    data.ux_l2sq.push_back(uxl2 * uxl2);
    const double uxxl2 = l2_norm(uxx);
    data.uxx_l2sq.push_back(uxxl2 * uxxl2);
    data.u_linf.push_back(linf_norm(u));
    data.p_l2.push_back(l2_norm(p));
    data.p_linf.push_back(linf_norm(p));
    data.px_l2.push_back(l2_norm(px));
    data.mean_u.push_back(mean(u));
    data.mean_p.push_back(mean(p));
    const EllipticSolveReport er = elliptic_report(u, p, delta);
    data.elliptic_residual.push_back(er.identity_residual);
    data.coupling_residual.push_back(er.coupling_residual);

    data.px_linf.push_back(linf_norm(px));
    const double uxxxl2 = l2_norm(uxxx);
    data.uxxx_l2sq.push_back(uxxxl2 * uxxxl2);
    const int top = dealias ? u.grid->dealias_cutoff() : u.grid->nyquist_index();
    data.tail_fraction.push_back(spectral_tail_fraction(u, top));

    data.sup_p_linf = std::max(data.sup_p_linf, data.p_linf.back());
    data.sup_ux_linf = std::max(data.sup_ux_linf, linf_norm(ux));
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& times,
                                         const std::vector<double>& values) {
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
    return out;
}

Verdict mean_conservation_check(const DiagnosticsReport& r) {
    Verdict v;
    v.name = "mean_conservation";
    const double tol = 1e-12 * (r.u0_linf + 1.0);
    v.pass = true;
    v.worst_margin = tol;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double margin = tol - std::abs(r.mean_u[i]);
        if (margin < v.worst_margin) {
            v.worst_margin = margin;
            v.worst_time = r.times[i];
        }
        if (margin < 0.0) v.pass = false;
    }
    std::ostringstream os;
    os << "worst |mean(u)| within " << tol;
    v.detail = os.str();
    return v;
}

Verdict energy_bound_check(const DiagnosticsReport& r) {
    Verdict v;
    v.name = "energy_bound";
    v.pass = true;
    v.worst_margin = std::numeric_limits<double>::infinity();
    const double e0 = r.u0_l2 * r.u0_l2;

    // exp-weighted dissipation integral, accumulated by trapezoid
    std::vector<double> weighted(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        weighted[i] = std::exp(-2.0 * r.gamma * r.times[i]) * r.ux_l2sq[i];
    const std::vector<double> diss = cumulative_trapezoid(r.times, weighted);

    for (std::size_t i = 0; i < r.size(); ++i) {
        const double grow = std::exp(2.0 * r.gamma * r.times[i]);
        const double plain_margin = grow * e0 * (1.0 + 1e-6) - r.u_l2sq[i];
        const double full_margin =
            grow * e0 * (1.0 + 1e-5) - (r.u_l2sq[i] + 2.0 * grow * diss[i]);
        const double margin = std::min(plain_margin, full_margin);
        if (margin < v.worst_margin) {
            v.worst_margin = margin;
            v.worst_time = r.times[i];
        }
        if (margin < 0.0) v.pass = false;
    }
    v.detail = "plain and dissipation-augmented Gronwall forms";
    return v;
}

Verdict p_bounds_check(const DiagnosticsReport& r) {
    Verdict v;
    v.name = "p_bounds";
    v.pass = true;
    v.worst_margin = std::numeric_limits<double>::infinity();
    double sup_p_l2 = 0.0;
    const double sd = std::sqrt(r.delta);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double bound = std::exp(r.gamma * r.times[i]) * r.u0_l2 * (1.0 + 1e-8);
        const double margin = std::min(bound - r.px_l2[i], bound - sd * r.px_linf[i]);
        if (margin < v.worst_margin) {
            v.worst_margin = margin;
            v.worst_time = r.times[i];
        }
        if (margin < 0.0) v.pass = false;
        sup_p_l2 = std::max(sup_p_l2, r.p_l2[i]);
    }
    std::ostringstream os;
    os << "measured C(T): sup||P||_inf = " << r.sup_p_linf << ", sup||P||_2 = " << sup_p_l2;
    v.detail = os.str();
    return v;
}

Verdict linf_bound_check(const DiagnosticsReport& r) {
    Verdict v;
    v.name = "linf_bound";
    v.pass = true;
    v.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double bound = r.u0_linf + r.gamma * r.sup_p_linf * r.times[i] + 1e-6;
        const double margin = bound - r.u_linf[i];
        if (margin < v.worst_margin) {
            v.worst_margin = margin;
            v.worst_time = r.times[i];
        }
        if (margin < 0.0) v.pass = false;
    }
    v.detail = "comparison bound with the run's measured sup||P||_inf";
    return v;
}

Verdict identity_residual_series(const DiagnosticsReport& r) {
    Verdict v;
    v.name = "elliptic_identities";
    v.pass = true;
    const double tol = 1e-10;
    v.worst_margin = tol;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double worst = std::max(r.elliptic_residual[i], r.coupling_residual[i]);
        const double margin = tol - worst;
        if (margin < v.worst_margin) {
            v.worst_margin = margin;
            v.worst_time = r.times[i];
        }
        if (margin < 0.0) v.pass = false;
    }
    v.detail = "max elliptic and coupling residual over the trajectory";
    return v;
}

RegularitySummary regularity_monitor(const DiagnosticsReport& r) {
    RegularitySummary s;
    for (std::size_t i = 0; i < r.size(); ++i) {
        s.sup_ux_l2sq = std::max(s.sup_ux_l2sq, r.ux_l2sq[i]);
        s.sup_uxx_l2sq = std::max(s.sup_uxx_l2sq, r.uxx_l2sq[i]);
        s.max_tail_fraction = std::max(s.max_tail_fraction, r.tail_fraction[i]);
    }
    if (!r.times.empty()) {
        s.int_uxx_l2sq = cumulative_trapezoid(r.times, r.uxx_l2sq).back();
        s.int_uxxx_l2sq = cumulative_trapezoid(r.times, r.uxxx_l2sq).back();
    }
    Verdict& v = s.verdict;
    v.name = "regularity";
    const double tol = 1e-6;
    v.pass = r.all_series_finite() && std::isfinite(s.int_uxx_l2sq) &&
             std::isfinite(s.int_uxxx_l2sq) && s.max_tail_fraction <= tol;
    v.worst_margin = tol - s.max_tail_fraction;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r.tail_fraction[i] >= r.tail_fraction[worst]) worst = i;
    v.worst_time = r.times.empty() ? 0.0 : r.times[worst];
    std::ostringstream os;
    os << "spectral tail fraction max " << s.max_tail_fraction;
    v.detail = os.str();
    return s;
}

std::vector<Verdict> all_checks(const DiagnosticsReport& r) {
    return {mean_conservation_check(r), energy_bound_check(r), p_bounds_check(r),
            linf_bound_check(r), identity_residual_series(r), regularity_monitor(r).verdict};
}

namespace {
void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}
} // namespace

std::string to_csv(const DiagnosticsReport& r) {
    std::string out =
        "t,u_l2sq,ux_l2sq,uxx_l2sq,u_linf,p_l2,p_linf,px_l2,mean_u,mean_p,"
        "elliptic_residual,coupling_residual\n";
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double row[12] = {r.times[i],  r.u_l2sq[i], r.ux_l2sq[i],
                                r.uxx_l2sq[i], r.u_linf[i], r.p_l2[i],
                                r.p_linf[i],  r.px_l2[i], r.mean_u[i],
                                r.mean_p[i],  r.elliptic_residual[i], r.coupling_residual[i]};
        for (int c = 0; c < 12; ++c) {
            if (c) out += ',';
            append_g17(out, row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const DiagnosticsReport& r, std::ostream& out) { out << to_csv(r); }

} // namespace ohd
