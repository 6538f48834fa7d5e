#ifndef OHD_GRID_HPP
#define OHD_GRID_HPP

#include <memory>
#include <vector>

namespace ohd {

/// Uniform periodic grid on [-L, L).  The N sample points are
/// x_i = -L + i * dx with dx = 2L/N, and the resolvable wavenumbers are
/// k_j = pi * j / L for j in the symmetric index set {-N/2+1, ..., N/2}.
struct GridSpec {
    double half_length;   ///< L; the domain is [-L, L)
    int num_points;       ///< N, even and >= 8
    double spacing;       ///< dx = 2L/N

    double point(int i) const { return -half_length + i * spacing; }

    /// k_j = pi j / L for a signed index j (antisymmetric, k_0 = 0).
    double wavenumber(int j) const;

    int nyquist_index() const { return num_points / 2; }

    /// Largest half-spectrum index kept by the two-thirds rule.
    int dealias_cutoff() const { return num_points / 3; }

    /// Wavenumber table for the half spectrum, size N/2 + 1.
    const std::vector<double>& wavenumbers() const { return k_table; }

    std::vector<double> k_table;
};

using GridPtr = std::shared_ptr<const GridSpec>;

/// Build a grid; rejects odd or tiny N and non-positive L.
GridPtr make_grid(double half_length, int num_points);

/// One real scalar function sampled on a grid.
struct Field {
    GridPtr grid;
    std::vector<double> values;

    Field() = default;
    Field(GridPtr g, std::vector<double> v);
    static Field zeros(GridPtr g);

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }
};

bool same_grid(const GridSpec& a, const GridSpec& b);
void require_same_grid(const Field& a, const Field& b);

/// True when every sample is finite; the negation is the blow-up signal.
bool all_finite(const Field& f);

double mean(const Field& f);
double l2_norm(const Field& f);
double linf_norm(const Field& f);
double inner_product(const Field& a, const Field& b);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& f);

} // namespace ohd

#endif
