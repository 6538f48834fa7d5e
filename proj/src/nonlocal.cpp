#include "ohd/nonlocal.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ohd/errors.hpp"
#include "ohd/spectral.hpp"

namespace ohd {

Field solve_p(const Field& u, double delta) {
    if (!(delta >= 0.0))
        throw std::invalid_argument("solve_p: delta must be nonnegative");
    const double m = mean(u);
    const double tol = 1e-10 * (linf_norm(u) + 1.0);
    if (std::abs(m) > tol)
        throw NonZeroMeanError(m, tol);

    const GridSpec& g = *u.grid;
    Spectrum s = to_spectral(u);
    s[0] = 0.0;
    const int nyq = g.nyquist_index();
    for (int j = 1; j < nyq; ++j) {
        const double k = g.k_table[j];
        s[j] /= std::complex<double>(delta * k * k, k);
    }
    if (delta > 0.0) {
        const double knyq = g.k_table[nyq];
        s[nyq] /= delta * knyq * knyq;
    } else {
        s[nyq] = 0.0;
    }
    return to_physical(s, u.grid);
}

double check_elliptic_identity(const Field& u, const Field& p, double delta) {
    const double pxx = l2_norm(derivative(p, 2));
    const double px = l2_norm(derivative(p, 1));
    const double uu = l2_norm(u);
    const double lhs = delta * delta * pxx * pxx + px * px;
    return std::abs(lhs - uu * uu) / std::max(uu * uu, 1e-300);
}

double coupling_product(const Field& u, const Field& p, double /*delta*/) {
    return inner_product(u, p);
}

double coupling_identity_residual(const Field& u, const Field& p, double delta) {
    const double up = inner_product(u, p);
    const double px = l2_norm(derivative(p, 1));
    const double uu = l2_norm(u);
    return std::abs(up - delta * px * px) / std::max(uu * uu, 1e-300);
}

EllipticSolveReport elliptic_report(const Field& u, const Field& p, double delta) {
    return EllipticSolveReport{check_elliptic_identity(u, p, delta),
                               coupling_identity_residual(u, p, delta), mean(p)};
}

BoundVerdict sup_gradient_bound_check(const Field& u, const Field& p, double delta) {
    const double lhs = std::sqrt(delta) * linf_norm(derivative(p, 1));
    const double rhs = l2_norm(u) * (1.0 + 1e-8);
    return BoundVerdict{lhs <= rhs, lhs, rhs, rhs - lhs};
}

namespace {

Field subtract_mean(Field f) {
    double m = mean(f);
    for (double& v : f.values) v -= m;
    m = mean(f);
    for (double& v : f.values) v -= m;
    return f;
}

Field banded_regularized(const Field& u, double delta) {
    const GridSpec& g = *u.grid;
    const int n = g.num_points;
    const double dx = g.spacing;
    const double lo = -delta / (dx * dx) - 0.5 / dx;   // coefficient of P_{i-1}
    const double di = 2.0 * delta / (dx * dx);         // coefficient of P_i
    const double hi = -delta / (dx * dx) + 0.5 / dx;   // coefficient of P_{i+1}

    // Pin P_{n-1} = 0; rows 0..n-2 then form a plain tridiagonal system
    // (the wrap couplings multiply the pinned unknown).  The dropped row
    // is implied by the zero-mean compatibility of the RHS.
    const int m = n - 1;
    std::vector<double> diag(m, di), rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = u.values[i];

    std::vector<double> sup(m, hi), sub(m, lo);
    // Thomas elimination.
    for (int i = 1; i < m; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> p(n, 0.0);
    p[m - 1] = rhs[m - 1] / diag[m - 1];
    for (int i = m - 2; i >= 0; --i) p[i] = (rhs[i] - sup[i] * p[i + 1]) / diag[i];
    return subtract_mean(Field(u.grid, std::move(p)));
}

Field banded_antiderivative(const Field& u) {
    const GridSpec& g = *u.grid;
    const int n = g.num_points;
    std::vector<double> p(n, 0.0);
    for (int i = 1; i < n; ++i)
        p[i] = p[i - 1] + 0.5 * g.spacing * (u.values[i - 1] + u.values[i]);
    return subtract_mean(Field(u.grid, std::move(p)));
}

} // namespace

Field solve_p_banded(const Field& u, double delta) {
    if (!(delta >= 0.0))
        throw std::invalid_argument("solve_p_banded: delta must be nonnegative");
    const double m = mean(u);
    const double tol = 1e-10 * (linf_norm(u) + 1.0);
    if (std::abs(m) > tol)
        throw NonZeroMeanError(m, tol);
    return delta > 0.0 ? banded_regularized(u, delta) : banded_antiderivative(u);
}

} // namespace ohd
