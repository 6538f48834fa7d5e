#ifndef OHD_EVOLUTION_HPP
#define OHD_EVOLUTION_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ohd/diagnostics.hpp"
#include "ohd/flux.hpp"
#include "ohd/state.hpp"

namespace ohd {

/// Named initial profile.  All profiles are returned with their sample
/// mean subtracted exactly, so the zero-mean hypothesis holds by
/// construction.
struct ProfileSpec {
    std::string name = "sine";   ///< sine | gaussian | gaussian_derivative | compact_bump | random_bandlimited
    double amplitude = 1.0;
    int mode = 1;                ///< sine: multiple of the fundamental pi/L
    double width = 1.0;          ///< gaussian family
    double center = 0.0;
    double radius = 1.0;         ///< compact bump support half-width
    int max_mode = 0;            ///< random profile band top; 0 means N/6
    std::uint64_t seed = 1;
};

struct InitialData {
    Field u0;
    Field p0;       ///< zero-mean antiderivative of u0
    double u0_l2 = 0.0;
    double u0_linf = 0.0;
    double p0_l2 = 0.0;
};

InitialData prepare_initial_data(const ProfileSpec& profile, GridPtr grid);

/// Growth rate of one Fourier mode under the linearized dynamics with
/// the nonlocal term folded in: L(k) = -k^2 + gamma / (delta k^2 + i k)
/// for k != 0, and L(0) = 0 (the zero mode is inert).
std::complex<double> linear_symbol(double k, double gamma, double delta);

namespace etd {
/// phi_m(z) = (e^z - sum_{j<m} z^j/j!) / z^m, evaluated by Taylor series
/// for |z| <= 1 to dodge the small-argument cancellation.
std::complex<double> phi1(std::complex<double> z);
std::complex<double> phi2(std::complex<double> z);
std::complex<double> phi3(std::complex<double> z);
/// Stage weights b1 = phi1 - 3 phi2 + 4 phi3, b2 = phi2 - 2 phi3,
/// b3 = 4 phi3 - phi2 of the four-stage exponential Runge-Kutta scheme.
std::complex<double> weight1(std::complex<double> z);
std::complex<double> weight2(std::complex<double> z);
std::complex<double> weight3(std::complex<double> z);
} // namespace etd

/// Advective CFL step: cfl_safety * dx / max(1e-12, max_i |f'(u_i)|),
/// additionally capped by a twentieth of the domain transit time at the
/// subquadratic speed bound c0 * max(||u||_inf, 1).
double cfl_dt(const Field& u, const GridSpec& grid, const FluxModel& flux, double cfl_safety);

/// Optional forcing sampled in physical space, used by manufactured-
/// solution runs.
using SourceFn = std::function<Field(double t, GridPtr grid)>;

/// One exponential-integrator step: the linear symbol is advanced by its
/// exact exponential, the flux term pseudospectrally with dealiasing,
/// and the k = 0 mode is left untouched so the mean is conserved
/// exactly.  Refreshes p.  Throws BlowUpError past the L-infinity cap.
SimState step(const SimState& state, const SolverConfig& config, const FluxModel& flux,
              double dt, const SourceFn& source = nullptr);

using Observer = std::function<void(const SimState&)>;

/// Integrate to t_end, recording diagnostics (and invoking any extra
/// observers) every record_every steps and at the final time.
std::pair<SimState, DiagnosticsReport> run(const Field& u0, const SolverConfig& config,
                                           const FluxModel& flux,
                                           const std::vector<Observer>& observers = {},
                                           const SourceFn& source = nullptr);

} // namespace ohd

#endif
