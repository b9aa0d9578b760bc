#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "sigevo/config.hpp"

namespace sigevo {

using cplx = std::complex<double>;

/// Periodic box [-L/2, L/2)^n sampled on N points per dimension.
struct GridSpec {
    int dim_n = 2;
    int points_per_dim = 64;
    double box_length = 64.0;

    std::size_t total_points() const;
    double spacing() const { return box_length / points_per_dim; }
    double mode_spacing() const;                  // 2 pi / L
    double nyquist_radius() const;                // pi N / L
    // signed integer frequency of storage index i (0..N-1 -> -N/2..N/2-1)
    int signed_index(int i) const { return i < points_per_dim / 2 ? i : i - points_per_dim; }
};

/// Validates (n in {1,2,3}, N a power of two, L > 0) and warns to stderr when the
/// Nyquist radius does not reach past the high-zone edge 2/eps_star.
GridSpec make_grid(int dim_n, int points_per_dim, double box_length,
                   double high_zone_edge = 0.0);

/// Fourier coefficients uhat(xi_k) in FFT layout under the convention
/// uhat(xi) = int u(x) e^{-i x.xi} dx. Real physical fields on the centered box
/// keep the conjugate symmetry uhat(-xi) = conj(uhat(xi)).
struct SpectralField {
    GridSpec grid;
    double time = 0.0;
    std::vector<cplx> data;

    explicit SpectralField(const GridSpec& g) : grid(g), data(g.total_points()) {}
};

struct StatePair {
    SpectralField u;
    SpectralField ut;
    StatePair(const GridSpec& g) : u(g), ut(g) {}
    double time() const { return u.time; }
    void set_time(double t) { u.time = t; ut.time = t; }
};

/// FFTW plans plus the phase/scale bookkeeping between physical samples on
/// [-L/2, L/2)^n and continuum-convention Fourier coefficients. Also owns the
/// per-mode radius table and the 2/3-rule dealias mask.
class FftWorkspace {
  public:
    explicit FftWorkspace(const GridSpec& g);
    ~FftWorkspace();
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& mode_radius() const { return radius_; }
    const std::vector<double>& dealias_mask() const { return dealias_; }

    void to_physical(const SpectralField& spec, std::vector<cplx>& phys) const;
    void to_spectral(const std::vector<cplx>& phys, SpectralField& spec) const;

  private:
    GridSpec grid_;
    std::vector<double> radius_;
    std::vector<double> dealias_;
    std::vector<signed char> phase_;  // (-1)^{sum of indices}
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

/// Parseval Sobolev norm || |D|^s field ||_{L2} = (L^{-n} sum |xi_k|^{2s} |U_k|^2)^{1/2}.
double sobolev_norm(const SpectralField& field, double s, const FftWorkspace& fft);

/// Largest |imag| of the physical field; drift away from a real field.
double realness_defect(const SpectralField& field, const FftWorkspace& fft);

/// Fills a field with samples of a radial Fourier amplitude r -> value.
template <class F>
SpectralField field_from_radial(const FftWorkspace& fft, const F& radial_hat) {
    SpectralField out(fft.grid());
    const auto& radius = fft.mode_radius();
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = radial_hat(radius[i]);
    return out;
}

}  // namespace sigevo
