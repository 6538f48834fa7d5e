#ifndef OHD_SPECTRAL_HPP
#define OHD_SPECTRAL_HPP

#include <complex>
#include <span>
#include <vector>

#include "ohd/grid.hpp"

namespace ohd {

/// Half spectrum of a real field, size N/2 + 1.  The forward transform is
/// unnormalized; the inverse carries the 1/N factor.
using Spectrum = std::vector<std::complex<double>>;

/// FFTW plans and aligned scratch buffers for one transform size.
/// Not copyable; one instance per thread of use.
class SpectralWorkspace {
public:
    explicit SpectralWorkspace(int num_points);
    ~SpectralWorkspace();
    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    int size() const { return n; }
    int spectrum_size() const { return n / 2 + 1; }

    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    void inverse(std::span<const std::complex<double>> in, std::span<double> out);

private:
    int n;
    struct Impl;
    Impl* impl;
};

/// Per-thread cached workspace for the given size.
SpectralWorkspace& workspace_for(int num_points);

Spectrum to_spectral(const Field& f);
Field to_physical(const Spectrum& coeffs, GridPtr grid);

/// Spectral derivative of the given order (1..4).  Odd orders zero the
/// Nyquist mode so the result stays real with an antisymmetric symbol.
Field derivative(const Field& f, int order);

/// Two-thirds rule: zero every coefficient with |k_j| above (2/3) k_max.
void dealias(Spectrum& coeffs, const GridSpec& grid);
Spectrum dealiased(Spectrum coeffs, const GridSpec& grid);

/// Wavenumber-space value of ||f||_2^2 under the transform normalization
/// above; equals the physical-space value by Parseval.
double spectral_l2_squared(const Spectrum& coeffs, const GridSpec& grid);

/// Fraction of spectral energy at half-spectrum indices above
/// (2/3) * max_index.  Pass the retained band's top index (dealias
/// cutoff when the run filters, Nyquist otherwise) so the measure keeps
/// meaning for filtered solutions.
double spectral_tail_fraction(const Field& f, int max_index);

} // namespace ohd

#endif
