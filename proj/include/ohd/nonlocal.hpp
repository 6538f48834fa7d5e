#ifndef OHD_NONLOCAL_HPP
#define OHD_NONLOCAL_HPP

#include "ohd/grid.hpp"

namespace ohd {

/// Defects of the exact identities tying P to u, plus the mean of P.
struct EllipticSolveReport {
    double identity_residual;   ///< relative defect of delta^2||Pxx||^2 + ||Px||^2 = ||u||^2
    double coupling_residual;   ///< relative defect of <u,P> = delta ||Px||^2
    double p_mean;
};

/// Outcome of a single inequality check.
struct BoundVerdict {
    bool holds;
    double lhs;
    double rhs;
    double margin;   ///< rhs - lhs
};

/// Solve the nonlocal constraint for P: for delta > 0 the regularized
/// problem -delta Pxx + Px = u, for delta = 0 the zero-mean
/// antiderivative Px = u.  Mode-wise division by delta k^2 + i k; the
/// k = 0 coefficient is pinned to 0, which is the periodic stand-in for
/// the decay conditions at infinity (and gives the integral of P = 0).
///
/// Conventions at the Nyquist mode, where the odd-derivative symbol i k
/// has no real representation: for delta > 0 the equation reduces to
/// delta k^2 * P = u there and is solved exactly; for delta = 0 the mode
/// is projected out.  Band-limited inputs (anything a dealiased run
/// produces) never reach this case.
///
/// Throws NonZeroMeanError when |mean(u)| > 1e-10 (||u||_inf + 1): the
/// periodic problem is inconsistent for such data.
Field solve_p(const Field& u, double delta);

/// Relative residual of delta^2 ||Pxx||^2 + ||Px||^2 = ||u||^2,
/// evaluated with the library's spectral derivatives.
double check_elliptic_identity(const Field& u, const Field& p, double delta);

/// <u, P>; contract: equals delta ||Px||^2 and stays below ||u||^2 for
/// delta in [0, 1).
double coupling_product(const Field& u, const Field& p, double delta);

/// Relative defect of <u,P> = delta ||Px||^2.
double coupling_identity_residual(const Field& u, const Field& p, double delta);

/// Both residuals plus mean(P) in one pass.
EllipticSolveReport elliptic_report(const Field& u, const Field& p, double delta);

/// sqrt(delta) ||Px||_inf <= ||u||_2, with a 1e-8 relative allowance.
BoundVerdict sup_gradient_bound_check(const Field& u, const Field& p, double delta);

/// Banded finite-difference backend for the same constraint: cyclic
/// tridiagonal solve for delta > 0 (second-order accurate, intended for
/// delta not much smaller than dx), trapezoid antiderivative for
/// delta = 0.  Cross-check oracle only; the spectral path above is the
/// production solver.
Field solve_p_banded(const Field& u, double delta);

} // namespace ohd

#endif
