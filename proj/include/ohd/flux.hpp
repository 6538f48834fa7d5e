#ifndef OHD_FLUX_HPP
#define OHD_FLUX_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ohd {

/// Advective flux f with its first two derivatives and the subquadratic
/// constant c0 satisfying |f'(u)| <= c0 |u| on the validity range.
struct FluxModel {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    std::function<double(double)> f_second;
    double c0 = 0.0;
    std::pair<double, double> validity_range{-8.0, 8.0};
};

/// f(u) = u^2/2, the tight case c0 = 1.
FluxModel burgers_flux();

/// f(u) = u^3/3 with c0 = range_half_width on [-r, r].
FluxModel cubic_flux(double range_half_width = 2.0);

/// Polynomial flux from coefficients c[i] of u^i.  A nonzero linear
/// coefficient has no subquadratic constant and is rejected.
FluxModel polynomial_flux(const std::vector<double>& coeffs,
                          std::pair<double, double> range = {-8.0, 8.0});

/// Sup of |f'(u)|/|u| over a dense sample of the range, which becomes c0.
/// Throws DivergesAtZeroError when the ratio grows without bound near 0.
double validate_subquadratic(const FluxModel& flux, std::pair<double, double> range,
                             int samples);

/// Fraction of sample points where |f''| is negligible.  Advisory: a
/// sampled check cannot certify that {f''=0} has measure zero.
double genuine_nonlinearity_probe(const FluxModel& flux, std::pair<double, double> range,
                                  int samples);

} // namespace ohd

#endif
