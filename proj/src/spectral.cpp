#include "ohd/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ohd {

namespace {
// The FFTW planner is not thread-safe; plan creation/destruction is
// serialized here.  Executing distinct plans concurrently is fine.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct SpectralWorkspace::Impl {
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

SpectralWorkspace::SpectralWorkspace(int num_points) : n(num_points), impl(new Impl) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl->real_buf = fftw_alloc_real(n);
    impl->cplx_buf = fftw_alloc_complex(n / 2 + 1);
    impl->r2c = fftw_plan_dft_r2c_1d(n, impl->real_buf, impl->cplx_buf, FFTW_ESTIMATE);
    impl->c2r = fftw_plan_dft_c2r_1d(n, impl->cplx_buf, impl->real_buf, FFTW_ESTIMATE);
    if (!impl->r2c || !impl->c2r)
        throw std::runtime_error("SpectralWorkspace: FFTW planning failed");
}

SpectralWorkspace::~SpectralWorkspace() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(impl->r2c);
    fftw_destroy_plan(impl->c2r);
    fftw_free(impl->cplx_buf);
    fftw_free(impl->real_buf);
    delete impl;
}

void SpectralWorkspace::forward(std::span<const double> in, std::span<std::complex<double>> out) {
    if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != n / 2 + 1)
        throw std::invalid_argument("SpectralWorkspace::forward: size mismatch");
    std::memcpy(impl->real_buf, in.data(), n * sizeof(double));
    fftw_execute(impl->r2c);
    std::memcpy(out.data(), impl->cplx_buf, (n / 2 + 1) * sizeof(fftw_complex));
}

void SpectralWorkspace::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    if (static_cast<int>(in.size()) != n / 2 + 1 || static_cast<int>(out.size()) != n)
        throw std::invalid_argument("SpectralWorkspace::inverse: size mismatch");
    std::memcpy(impl->cplx_buf, in.data(), (n / 2 + 1) * sizeof(fftw_complex));
    fftw_execute(impl->c2r);
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = impl->real_buf[i] * inv_n;
}

SpectralWorkspace& workspace_for(int num_points) {
    thread_local std::unordered_map<int, std::unique_ptr<SpectralWorkspace>> cache;
    auto& slot = cache[num_points];
    if (!slot) slot = std::make_unique<SpectralWorkspace>(num_points);
    return *slot;
}

Spectrum to_spectral(const Field& f) {
    auto& ws = workspace_for(f.grid->num_points);
    Spectrum out(ws.spectrum_size());
    ws.forward(f.values, out);
    return out;
}

Field to_physical(const Spectrum& coeffs, GridPtr grid) {
    auto& ws = workspace_for(grid->num_points);
    std::vector<double> v(grid->num_points);
    ws.inverse(coeffs, v);
    return Field(std::move(grid), std::move(v));
}

Field derivative(const Field& f, int order) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("derivative: order must be in {1,2,3,4}");
    const GridSpec& g = *f.grid;
    Spectrum s = to_spectral(f);
    const int nyq = g.nyquist_index();
    for (int j = 0; j <= nyq; ++j) {
        const double k = g.k_table[j];
        std::complex<double> sym;
        switch (order) {
            case 1: sym = {0.0, k}; break;
            case 2: sym = {-k * k, 0.0}; break;
            case 3: sym = {0.0, -k * k * k}; break;
            default: sym = {k * k * k * k, 0.0}; break;
        }
        s[j] *= sym;
    }
    if (order % 2 == 1) s[nyq] = 0.0;
    return to_physical(s, f.grid);
}

void dealias(Spectrum& coeffs, const GridSpec& grid) {
    const int n = grid.num_points;
    for (int j = 0; j <= n / 2; ++j)
        if (3 * j > n) coeffs[j] = 0.0;
}

Spectrum dealiased(Spectrum coeffs, const GridSpec& grid) {
    dealias(coeffs, grid);
    return coeffs;
}

double spectral_l2_squared(const Spectrum& coeffs, const GridSpec& grid) {
    const int n = grid.num_points;
    double sum = std::norm(coeffs[0]) + std::norm(coeffs[n / 2]);
    for (int j = 1; j < n / 2; ++j) sum += 2.0 * std::norm(coeffs[j]);
    return grid.spacing / n * sum;
}

double spectral_tail_fraction(const Field& f, int max_index) {
    const GridSpec& g = *f.grid;
    if (max_index <= 0 || max_index > g.nyquist_index())
        throw std::invalid_argument("spectral_tail_fraction: bad max_index");
    Spectrum s = to_spectral(f);
    const int cut = 2 * max_index / 3;
    double total = 0.0, tail = 0.0;
    for (int j = 0; j <= g.nyquist_index(); ++j) {
        const double w = (j == 0 || j == g.nyquist_index()) ? 1.0 : 2.0;
        const double e = w * std::norm(s[j]);
        total += e;
        if (j > cut) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

} // namespace ohd
