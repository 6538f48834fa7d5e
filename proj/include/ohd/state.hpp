#ifndef OHD_STATE_HPP
#define OHD_STATE_HPP

#include "ohd/grid.hpp"

namespace ohd {

/// Time-integration settings.  dt <= 0 selects the automatic
/// advective-CFL step.
struct SolverConfig {
    double gamma = 0.5;            ///< rotation coefficient, > 0
    double delta = 0.0;            ///< elliptic regularization, in [0, 1)
    double dt = 0.0;               ///< fixed step when > 0, else auto
    double t_end = 1.0;
    double cfl_safety = 0.5;       ///< in (0, 1]
    bool dealias = true;
    double blowup_threshold = 1e3; ///< L-infinity cap
    int record_every = 1;

    void validate() const;
};

/// One instant of a run; p is kept consistent with u through the
/// nonlocal solve at the run's delta.
struct SimState {
    double t = 0.0;
    Field u;
    Field p;
    long step_index = 0;
};

} // namespace ohd

#endif
