#ifndef OHD_ERRORS_HPP
#define OHD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ohd {

/// Two fields were asked to interact but live on different grids.
class GridMismatchError : public std::runtime_error {
public:
    explicit GridMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// The nonlocal solve was fed data with a non-negligible mean; the
/// periodic problem is inconsistent for such input.
class NonZeroMeanError : public std::runtime_error {
public:
    NonZeroMeanError(double mean, double tol)
        : std::runtime_error("nonlocal solve requires zero-mean input: |mean| = " +
                             std::to_string(mean) + " exceeds " + std::to_string(tol)),
          mean_value(mean), tolerance(tol) {}
    double mean_value;
    double tolerance;
};

/// |f'(u)|/|u| grows without bound as u -> 0, so no subquadratic
/// constant exists for this flux.
class DivergesAtZeroError : public std::runtime_error {
public:
    explicit DivergesAtZeroError(const std::string& what) : std::runtime_error(what) {}
};

/// A sample left the configured L-infinity cap or stopped being finite.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double when, long step, double amplitude)
        : std::runtime_error("solution blew up at t = " + std::to_string(when) +
                             " (step " + std::to_string(step) +
                             ", max |u| = " + std::to_string(amplitude) + ")"),
          time(when), step_index(step), max_abs(amplitude) {}
    double time;
    long step_index;
    double max_abs;
};

/// Experiment configuration could not be read or failed validation.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ohd

#endif
