#include "ohd/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "ohd/errors.hpp"

namespace ohd {

double GridSpec::wavenumber(int j) const {
    return M_PI * j / half_length;
}

GridPtr make_grid(double half_length, int num_points) {
    if (!(half_length > 0.0))
        throw std::invalid_argument("make_grid: half_length must be positive");
    if (num_points < 8)
        throw std::invalid_argument("make_grid: need at least 8 points");
    if (num_points % 2 != 0)
        throw std::invalid_argument("make_grid: num_points must be even");

    auto g = std::make_shared<GridSpec>();
    g->half_length = half_length;
    g->num_points = num_points;
    g->spacing = 2.0 * half_length / num_points;
    g->k_table.resize(num_points / 2 + 1);
    for (int j = 0; j <= num_points / 2; ++j)
        g->k_table[j] = M_PI * j / half_length;
    return g;
}

Field::Field(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid)
        throw std::invalid_argument("Field: null grid");
    if (static_cast<int>(values.size()) != grid->num_points)
        throw std::invalid_argument("Field: sample count does not match grid");
}

Field Field::zeros(GridPtr g) {
    std::vector<double> v(g->num_points, 0.0);
    return Field(std::move(g), std::move(v));
}

bool same_grid(const GridSpec& a, const GridSpec& b) {
    return a.num_points == b.num_points && a.half_length == b.half_length;
}

void require_same_grid(const Field& a, const Field& b) {
    if (!a.grid || !b.grid || !same_grid(*a.grid, *b.grid))
        throw GridMismatchError("fields live on different grids");
}

bool all_finite(const Field& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

double mean(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / f.grid->num_points;
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(f.grid->spacing * s);
}

double linf_norm(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double inner_product(const Field& a, const Field& b) {
    require_same_grid(a, b);
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a.values[i] * b.values[i];
    return a.grid->spacing * s;
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (int i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (int i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

Field operator*(double s, const Field& f) {
    Field out = f;
    for (double& v : out.values) v *= s;
    return out;
}

} // namespace ohd
