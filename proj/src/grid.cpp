#include "sigevo/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace sigevo {

std::size_t GridSpec::total_points() const {
    std::size_t n = 1;
    for (int d = 0; d < dim_n; ++d) n *= static_cast<std::size_t>(points_per_dim);
    return n;
}

double GridSpec::mode_spacing() const { return 2.0 * M_PI / box_length; }
double GridSpec::nyquist_radius() const { return M_PI * points_per_dim / box_length; }

GridSpec make_grid(int dim_n, int points_per_dim, double box_length, double high_zone_edge) {
    if (dim_n < 1 || dim_n > 3) throw std::invalid_argument("grid: dim_n must be 1, 2 or 3");
    if (points_per_dim < 2 || (points_per_dim & (points_per_dim - 1)) != 0)
        throw std::invalid_argument("grid: points_per_dim must be a power of two");
    if (!(box_length > 0.0)) throw std::invalid_argument("grid: box_length must be positive");
    GridSpec g{dim_n, points_per_dim, box_length};
    if (high_zone_edge > 0.0 && g.nyquist_radius() <= high_zone_edge)
        std::cerr << "warning: Nyquist radius " << g.nyquist_radius()
                  << " does not reach the high zone edge " << high_zone_edge
                  << "; high-frequency content is not representable on this grid\n";
    return g;
}

struct FftWorkspace::Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<cplx> buffer;
};

FftWorkspace::FftWorkspace(const GridSpec& g) : grid_(g), plans_(std::make_unique<Plans>()) {
    const std::size_t total = g.total_points();
    radius_.resize(total);
    dealias_.resize(total);
    phase_.resize(total);
    plans_->buffer.resize(total);

    const double dxi = g.mode_spacing();
    const double dealias_radius = 2.0 / 3.0 * g.nyquist_radius();
    const int N = g.points_per_dim;
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        double r2 = 0.0;
        int ksum = 0;
        for (int d = 0; d < g.dim_n; ++d) {
            const int idx = static_cast<int>(rest % N);
            rest /= N;
            const double xi = g.signed_index(idx) * dxi;
            r2 += xi * xi;
            ksum += idx;
        }
        radius_[i] = std::sqrt(r2);
        dealias_[i] = radius_[i] <= dealias_radius ? 1.0 : 0.0;
        phase_[i] = (ksum % 2 == 0) ? 1 : -1;
    }

    int dims[3] = {N, N, N};
    auto* buf = reinterpret_cast<fftw_complex*>(plans_->buffer.data());
    plans_->fwd = fftw_plan_dft(g.dim_n, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    plans_->bwd = fftw_plan_dft(g.dim_n, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plans_->fwd || !plans_->bwd) throw std::runtime_error("fftw plan creation failed");
}

FftWorkspace::~FftWorkspace() {
    if (plans_) {
        if (plans_->fwd) fftw_destroy_plan(plans_->fwd);
        if (plans_->bwd) fftw_destroy_plan(plans_->bwd);
    }
}

void FftWorkspace::to_physical(const SpectralField& spec, std::vector<cplx>& phys) const {
    const std::size_t total = grid_.total_points();
    if (spec.data.size() != total) throw std::invalid_argument("to_physical: grid mismatch");
    auto& buf = plans_->buffer;
    const double hn = std::pow(grid_.spacing(), grid_.dim_n);
    const double inv = 1.0 / (hn * static_cast<double>(total));
    for (std::size_t i = 0; i < total; ++i)
        buf[i] = spec.data[i] * (static_cast<double>(phase_[i]) * inv);
    fftw_execute(plans_->bwd);
    phys.assign(buf.begin(), buf.end());
}

void FftWorkspace::to_spectral(const std::vector<cplx>& phys, SpectralField& spec) const {
    const std::size_t total = grid_.total_points();
    if (phys.size() != total) throw std::invalid_argument("to_spectral: grid mismatch");
    auto& buf = plans_->buffer;
    std::copy(phys.begin(), phys.end(), buf.begin());
    fftw_execute(plans_->fwd);
    const double hn = std::pow(grid_.spacing(), grid_.dim_n);
    spec.data.resize(total);
    for (std::size_t i = 0; i < total; ++i)
        spec.data[i] = buf[i] * (static_cast<double>(phase_[i]) * hn);
}

double sobolev_norm(const SpectralField& field, double s, const FftWorkspace& fft) {
    const auto& radius = fft.mode_radius();
    double acc = 0.0;
    if (s == 0.0) {
        for (std::size_t i = 0; i < field.data.size(); ++i) acc += std::norm(field.data[i]);
    } else {
        for (std::size_t i = 0; i < field.data.size(); ++i)
            acc += std::pow(radius[i], 2.0 * s) * std::norm(field.data[i]);
    }
    const double Ln = std::pow(field.grid.box_length, field.grid.dim_n);
    return std::sqrt(acc / Ln);
}

double realness_defect(const SpectralField& field, const FftWorkspace& fft) {
    std::vector<cplx> phys;
    fft.to_physical(field, phys);
    double worst = 0.0;
    for (const cplx& z : phys) worst = std::max(worst, std::abs(z.imag()));
    return worst;
}

}  // namespace sigevo
