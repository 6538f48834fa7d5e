#include "ohd/evolution.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ohd/errors.hpp"
#include "ohd/nonlocal.hpp"
#include "ohd/random.hpp"
#include "ohd/spectral.hpp"

namespace ohd {

void SolverConfig::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("SolverConfig: gamma must be positive");
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::invalid_argument("SolverConfig: delta must be in [0, 1)");
    if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw std::invalid_argument("SolverConfig: cfl_safety must be in (0, 1]");
    if (!(blowup_threshold > 0.0))
        throw std::invalid_argument("SolverConfig: blowup_threshold must be positive");
    if (record_every < 1) throw std::invalid_argument("SolverConfig: record_every must be >= 1");
    if (!std::isfinite(dt)) throw std::invalid_argument("SolverConfig: dt must be finite");
}

std::complex<double> linear_symbol(double k, double gamma, double delta) {
    if (k == 0.0) return 0.0;
    return std::complex<double>(-k * k, 0.0) +
           gamma / std::complex<double>(delta * k * k, k);
}

namespace etd {

namespace {
constexpr int kSeriesTerms = 24;

double factorial(int n) {
    static const auto table = [] {
        std::array<double, kSeriesTerms + 4> t{};
        t[0] = 1.0;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table[n];
}

using C = std::complex<double>;

C series(C z, int m) {
    C term = 1.0, sum = 0.0;
    for (int n = 0; n < kSeriesTerms; ++n) {
        sum += term / factorial(n + m);
        term *= z;
    }
    return sum;
}

C weight_series(C z, double a1, double a2, double a3) {
    C term = 1.0, sum = 0.0;
    for (int n = 0; n < kSeriesTerms; ++n) {
        sum += term * (a1 / factorial(n + 1) + a2 / factorial(n + 2) + a3 / factorial(n + 3));
        term *= z;
    }
    return sum;
}
} // namespace

C phi1(C z) {
    if (std::abs(z) <= 1.0) return series(z, 1);
    return (std::exp(z) - 1.0) / z;
}

C phi2(C z) {
    if (std::abs(z) <= 1.0) return series(z, 2);
    return (std::exp(z) - 1.0 - z) / (z * z);
}

C phi3(C z) {
    if (std::abs(z) <= 1.0) return series(z, 3);
    return (std::exp(z) - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

C weight1(C z) {
    if (std::abs(z) <= 1.0) return weight_series(z, 1.0, -3.0, 4.0);
    const C z3 = z * z * z;
    return (-4.0 - z + std::exp(z) * (4.0 - 3.0 * z + z * z)) / z3;
}

C weight2(C z) {
    if (std::abs(z) <= 1.0) return weight_series(z, 0.0, 1.0, -2.0);
    const C z3 = z * z * z;
    return (2.0 + z + std::exp(z) * (-2.0 + z)) / z3;
}

C weight3(C z) {
    if (std::abs(z) <= 1.0) return weight_series(z, 0.0, -1.0, 4.0);
    const C z3 = z * z * z;
    return (-4.0 - 3.0 * z - z * z + std::exp(z) * (4.0 - z)) / z3;
}

} // namespace etd

double cfl_dt(const Field& u, const GridSpec& grid, const FluxModel& flux, double cfl_safety) {
    constexpr double eps_floor = 1e-12;
    double speed = 0.0;
    for (double v : u.values) speed = std::max(speed, std::abs(flux.f_prime(v)));
    const double advective = cfl_safety * grid.spacing / std::max(eps_floor, speed);
    // Transit-time cap from the subquadratic speed bound; keeps the step
    // finite for quiescent data.
    const double bound_speed = std::max(eps_floor, flux.c0 * std::max(linf_norm(u), 1.0));
    const double cap = 0.05 * 2.0 * grid.half_length / bound_speed;
    return std::min(advective, cap);
}

namespace {

using C = std::complex<double>;

/// Four-stage exponential integrator with the linear symbol advanced
/// exactly and the flux term evaluated pseudospectrally.
class EtdStepper {
public:
    EtdStepper(GridPtr grid_, const SolverConfig& cfg, const FluxModel& flux_,
               SourceFn source_)
        : grid(std::move(grid_)), flux(flux_), source(std::move(source_)),
          use_dealias(cfg.dealias), n(grid->num_points), nh(grid->num_points / 2 + 1),
          ws(workspace_for(grid->num_points)) {
        symbol.resize(nh);
        symbol[0] = 0.0;
        for (int j = 1; j < n / 2; ++j)
            symbol[j] = linear_symbol(grid->k_table[j], cfg.gamma, cfg.delta);
        // Nyquist: the odd-derivative symbol is zeroed by convention, so
        // the nonlocal coupling there reduces to the real delta k^2 part.
        const double knyq = grid->k_table[n / 2];
        symbol[n / 2] = cfg.delta > 0.0
                            ? C(-knyq * knyq + cfg.gamma / (cfg.delta * knyq * knyq), 0.0)
                            : C(-knyq * knyq, 0.0);
        E.resize(nh); E2.resize(nh); q.resize(nh);
        w1.resize(nh); w2.resize(nh); w3.resize(nh);
        u_phys.resize(n); work_phys.resize(n);
        n1.resize(nh); n2.resize(nh); n3.resize(nh); n4.resize(nh);
        sa.resize(nh); sb.resize(nh); sc.resize(nh);
    }

    void set_dt(double dt) {
        if (dt == table_dt) return;
        for (int j = 0; j < nh; ++j) {
            const C z = symbol[j] * dt;
            E[j] = std::exp(z);
            E2[j] = std::exp(0.5 * z);
            q[j] = 0.5 * dt * etd::phi1(0.5 * z);
            w1[j] = dt * etd::weight1(z);
            w2[j] = dt * etd::weight2(z);
            w3[j] = dt * etd::weight3(z);
        }
        table_dt = dt;
    }

    void mask(Spectrum& s) const {
        if (use_dealias) dealias(s, *grid);
    }

    /// One step of size table_dt starting at time t.
    void advance(double t, Spectrum& uhat) {
        const double h = table_dt;
        nonlinear(t, uhat, n1);
        for (int j = 0; j < nh; ++j) sa[j] = E2[j] * uhat[j] + q[j] * n1[j];
        nonlinear(t + 0.5 * h, sa, n2);
        for (int j = 0; j < nh; ++j) sb[j] = E2[j] * uhat[j] + q[j] * n2[j];
        nonlinear(t + 0.5 * h, sb, n3);
        for (int j = 0; j < nh; ++j) sc[j] = E2[j] * sa[j] + q[j] * (2.0 * n3[j] - n1[j]);
        nonlinear(t + h, sc, n4);
        for (int j = 0; j < nh; ++j)
            uhat[j] = E[j] * uhat[j] + w1[j] * n1[j] + 2.0 * w2[j] * (n2[j] + n3[j]) + w3[j] * n4[j];
    }

    Field physical(const Spectrum& s) {
        std::vector<double> v(n);
        ws.inverse(s, v);
        return Field(grid, std::move(v));
    }

    Spectrum spectral(const Field& f) {
        Spectrum s(nh);
        ws.forward(f.values, s);
        return s;
    }

    GridPtr grid;

private:
    /// N(u) = -d/dx f(u) plus any forcing; the k = 0 entry is exactly
    /// zero, which is what conserves the mean bit-for-bit.
    void nonlinear(double t, const Spectrum& uhat, Spectrum& out) {
        ws.inverse(uhat, u_phys);
        for (int i = 0; i < n; ++i) work_phys[i] = flux.f(u_phys[i]);
        ws.forward(work_phys, out);
        out[0] = 0.0;
        for (int j = 1; j < n / 2; ++j) {
            const double k = grid->k_table[j];
            out[j] = C(k * out[j].imag(), -k * out[j].real());
        }
        out[n / 2] = 0.0;
        if (use_dealias) dealias(out, *grid);
        if (source) {
            Field s = source(t, grid);
            Spectrum shat(nh);
            ws.forward(s.values, shat);
            shat[0] = 0.0;
            if (use_dealias) dealias(shat, *grid);
            for (int j = 1; j < nh; ++j) out[j] += shat[j];
        }
    }

    const FluxModel& flux;
    SourceFn source;
    bool use_dealias;
    int n, nh;
    SpectralWorkspace& ws;
    std::vector<C> symbol, E, E2, q, w1, w2, w3;
    std::vector<double> u_phys, work_phys;
    Spectrum n1, n2, n3, n4, sa, sb, sc;
    double table_dt = -1.0;
};

void check_blowup(const Field& u, double t, long step_index, double threshold) {
    double m = 0.0;
    bool finite = true;
    for (double v : u.values) {
        if (!std::isfinite(v)) finite = false;
        m = std::max(m, std::abs(v));
    }
    if (!finite || m > threshold)
        throw BlowUpError(t, step_index, finite ? m : std::numeric_limits<double>::infinity());
}

void check_zero_mean(const Field& u) {
    const double m = mean(u);
    const double tol = 1e-10 * (linf_norm(u) + 1.0);
    if (std::abs(m) > tol) throw NonZeroMeanError(m, tol);
}

Field subtract_mean_exactly(Field f) {
    double m = mean(f);
    for (double& v : f.values) v -= m;
    m = mean(f);   // second pass removes the rounding residual
    for (double& v : f.values) v -= m;
    return f;
}

} // namespace

InitialData prepare_initial_data(const ProfileSpec& profile, GridPtr grid) {
    const int n = grid->num_points;
    std::vector<double> v(n);
    const double k1 = M_PI / grid->half_length;

    if (profile.name == "sine") {
        for (int i = 0; i < n; ++i)
            v[i] = profile.amplitude * std::sin(profile.mode * k1 * (grid->point(i) - profile.center));
    } else if (profile.name == "gaussian") {
        if (!(profile.width > 0.0))
            throw std::invalid_argument("prepare_initial_data: gaussian width must be positive");
        for (int i = 0; i < n; ++i) {
            const double s = (grid->point(i) - profile.center) / profile.width;
            v[i] = profile.amplitude * std::exp(-s * s);
        }
    } else if (profile.name == "gaussian_derivative") {
        if (!(profile.width > 0.0))
            throw std::invalid_argument("prepare_initial_data: gaussian width must be positive");
        for (int i = 0; i < n; ++i) {
            const double d = grid->point(i) - profile.center;
            const double s = d / profile.width;
            v[i] = -2.0 * profile.amplitude * d / (profile.width * profile.width) * std::exp(-s * s);
        }
    } else if (profile.name == "compact_bump") {
        if (!(profile.radius > 0.0))
            throw std::invalid_argument("prepare_initial_data: bump radius must be positive");
        for (int i = 0; i < n; ++i) {
            const double xi = (grid->point(i) - profile.center) / profile.radius;
            v[i] = std::abs(xi) < 1.0 ? profile.amplitude * std::exp(-1.0 / (1.0 - xi * xi)) : 0.0;
        }
    } else if (profile.name == "random_bandlimited") {
        const int nyq = n / 2;
        int top = profile.max_mode > 0 ? std::min(profile.max_mode, nyq - 1) : std::max(1, n / 6);
        SplitMix64 rng(profile.seed);
        Spectrum s(nyq + 1, 0.0);
        for (int j = 1; j <= top; ++j) {
            const double rho = rng.uniform(0.5, 1.0);
            const double theta = 2.0 * M_PI * rng.uniform();
            s[j] = std::polar(rho, theta);
        }
        Field raw = to_physical(s, grid);
        const double peak = linf_norm(raw);
        for (int i = 0; i < n; ++i) v[i] = profile.amplitude * raw.values[i] / peak;
    } else {
        throw std::invalid_argument("prepare_initial_data: unknown profile '" + profile.name + "'");
    }

    Field u0(grid, std::move(v));
    if (!all_finite(u0))
        throw std::invalid_argument("prepare_initial_data: profile produced non-finite samples");
    u0 = subtract_mean_exactly(std::move(u0));

    InitialData out;
    out.p0 = solve_p(u0, 0.0);
    out.u0_l2 = l2_norm(u0);
    out.u0_linf = linf_norm(u0);
    out.p0_l2 = l2_norm(out.p0);
    out.u0 = std::move(u0);
    return out;
}

SimState step(const SimState& state, const SolverConfig& config, const FluxModel& flux,
              double dt, const SourceFn& source) {
    config.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    check_blowup(state.u, state.t, state.step_index, config.blowup_threshold);

    EtdStepper stepper(state.u.grid, config, flux, source);
    Spectrum uhat = stepper.spectral(state.u);
    stepper.mask(uhat);
    stepper.set_dt(dt);
    stepper.advance(state.t, uhat);

    SimState next;
    next.t = state.t + dt;
    next.step_index = state.step_index + 1;
    next.u = stepper.physical(uhat);
    check_blowup(next.u, next.t, next.step_index, config.blowup_threshold);
    next.p = solve_p(next.u, config.delta);
    return next;
}

std::pair<SimState, DiagnosticsReport> run(const Field& u0, const SolverConfig& config,
                                           const FluxModel& flux,
                                           const std::vector<Observer>& observers,
                                           const SourceFn& source) {
    config.validate();
    if (!all_finite(u0)) throw BlowUpError(0.0, 0, std::numeric_limits<double>::infinity());
    check_zero_mean(u0);
    check_blowup(u0, 0.0, 0, config.blowup_threshold);

    DiagnosticsCollector collector(config, u0);
    EtdStepper stepper(u0.grid, config, flux, source);
    Spectrum uhat = stepper.spectral(u0);
    stepper.mask(uhat);

    double t = 0.0;
    long step_index = 0;
    SimState last;

    auto record = [&]() {
        SimState st;
        st.t = t;
        st.step_index = step_index;
        st.u = stepper.physical(uhat);
        check_blowup(st.u, t, step_index, config.blowup_threshold);
        st.p = solve_p(st.u, config.delta);
        collector.observe(st);
        for (const auto& obs : observers) obs(st);
        last = std::move(st);
    };

    record();

    const double t_tiny = 1e-14 * config.t_end;
    while (config.t_end - t > t_tiny) {
        Field u_now = stepper.physical(uhat);
        check_blowup(u_now, t, step_index, config.blowup_threshold);
        double dt = config.dt > 0.0 ? config.dt
                                    : cfl_dt(u_now, *u0.grid, flux, config.cfl_safety);
        dt = std::min(dt, config.t_end - t);
        stepper.set_dt(dt);
        stepper.advance(t, uhat);
        t += dt;
        ++step_index;
        const bool finished = config.t_end - t <= t_tiny;
        if (step_index % config.record_every == 0 || finished) record();
    }
    if (last.step_index != step_index) record();

    return {std::move(last), collector.take()};
}

} // namespace ohd
