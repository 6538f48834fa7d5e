#include "ohd/flux.hpp"

#include <cmath>
#include <stdexcept>

#include "ohd/errors.hpp"

namespace ohd {

FluxModel burgers_flux() {
    FluxModel m;
    m.name = "burgers";
    m.f = [](double u) { return 0.5 * u * u; };
    m.f_prime = [](double u) { return u; };
    m.f_second = [](double) { return 1.0; };
    m.c0 = 1.0;
    return m;
}

FluxModel cubic_flux(double range_half_width) {
    if (!(range_half_width > 0.0))
        throw std::invalid_argument("cubic_flux: range_half_width must be positive");
    FluxModel m;
    m.name = "cubic";
    m.f = [](double u) { return u * u * u / 3.0; };
    m.f_prime = [](double u) { return u * u; };
    m.f_second = [](double u) { return 2.0 * u; };
    m.c0 = range_half_width;
    m.validity_range = {-range_half_width, range_half_width};
    return m;
}

FluxModel polynomial_flux(const std::vector<double>& coeffs, std::pair<double, double> range) {
    FluxModel m;
    m.name = "custom";
    m.validity_range = range;
    m.f = [coeffs](double u) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
        return acc;
    };
    m.f_prime = [coeffs](double u) {
        double acc = 0.0;
        for (int i = static_cast<int>(coeffs.size()) - 1; i >= 1; --i) acc = acc * u + i * coeffs[i];
        return acc;
    };
    m.f_second = [coeffs](double u) {
        double acc = 0.0;
        for (int i = static_cast<int>(coeffs.size()) - 1; i >= 2; --i)
            acc = acc * u + static_cast<double>(i) * (i - 1) * coeffs[i];
        return acc;
    };
    m.c0 = validate_subquadratic(m, range, 1001);
    return m;
}

double validate_subquadratic(const FluxModel& flux, std::pair<double, double> range, int samples) {
    if (samples < 100)
        throw std::invalid_argument("validate_subquadratic: need at least 100 samples");
    if (!(range.first < 0.0 && range.second > 0.0))
        throw std::invalid_argument("validate_subquadratic: range must contain 0");

    auto ratio = [&](double u) { return std::abs(flux.f_prime(u)) / std::abs(u); };

    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double u = range.first + (range.second - range.first) * i / (samples - 1);
        if (u == 0.0) continue;
        sup = std::max(sup, ratio(u));
    }

    // Logarithmic scan toward 0 on both sides; the ratio must stay
    // bounded there or no c0 exists.
    const double scale = std::min(-range.first, range.second);
    double near = 0.0, nearer = 0.0;
    for (double sign : {-1.0, 1.0}) {
        for (int k = 1; k <= 40; ++k) {
            const double u = sign * scale * std::pow(2.0, -k);
            const double r = ratio(u);
            if (k == 30) near = std::max(near, r);
            if (k == 40) nearer = std::max(nearer, r);
            sup = std::max(sup, r);
        }
    }
    if (nearer > 2.0 * near && nearer > 100.0 * std::max(near / 1e6, 1e-300))
        throw DivergesAtZeroError("|f'(u)|/|u| grows without bound as u -> 0 (f'(0) != 0)");
    return sup;
}

double genuine_nonlinearity_probe(const FluxModel& flux, std::pair<double, double> range,
                                  int samples) {
    if (samples < 100)
        throw std::invalid_argument("genuine_nonlinearity_probe: need at least 100 samples");
    if (!(range.first < 0.0 && range.second > 0.0))
        throw std::invalid_argument("genuine_nonlinearity_probe: range must contain 0");

    double max_abs = 0.0;
    std::vector<double> vals(samples);
    for (int i = 0; i < samples; ++i) {
        const double u = range.first + (range.second - range.first) * i / (samples - 1);
        vals[i] = std::abs(flux.f_second(u));
        max_abs = std::max(max_abs, vals[i]);
    }
    const double thresh = std::max(1e-8 * max_abs, 1e-14);
    int flagged = 0;
    for (double v : vals)
        if (v < thresh) ++flagged;
    return static_cast<double>(flagged) / samples;
}

} // namespace ohd
