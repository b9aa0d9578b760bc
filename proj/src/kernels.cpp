#include "sigevo/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "sigevo/symbol.hpp"

namespace sigevo::kernels {

namespace {
Exec g_default = Exec::Parallel;

using std::ptrdiff_t;
}  // namespace

Exec default_exec() { return g_default; }
void set_default_exec(Exec e) { g_default = e; }

void assemble_kernel_tables(const ValidatedConfig& cfg, std::span<const double> radii, double t,
                            std::span<double> k0, std::span<double> k1, std::span<double> dk0,
                            std::span<double> dk1, Exec exec) {
    const ptrdiff_t n = static_cast<ptrdiff_t>(radii.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (ptrdiff_t i = 0; i < n; ++i) {
            const KernelValues kv = kernel_values(cfg, t, radii[i]);
            k0[i] = kv.k0; k1[i] = kv.k1; dk0[i] = kv.dk0; dk1[i] = kv.dk1;
        }
    } else {
        for (ptrdiff_t i = 0; i < n; ++i) {
            const KernelValues kv = kernel_values(cfg, t, radii[i]);
            k0[i] = kv.k0; k1[i] = kv.k1; dk0[i] = kv.dk0; dk1[i] = kv.dk1;
        }
    }
}

void apply_propagator(std::span<const double> k0, std::span<const double> k1,
                      std::span<const double> dk0, std::span<const double> dk1,
                      std::span<const cplx> u, std::span<const cplx> v, std::span<const cplx> f,
                      double weight, std::span<cplx> out_u, std::span<cplx> out_v, Exec exec) {
    const ptrdiff_t n = static_cast<ptrdiff_t>(u.size());
    const bool forced = !f.empty();
    if (forced && f.size() != u.size())
        throw std::invalid_argument("apply_propagator: forcing size mismatch");
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (ptrdiff_t i = 0; i < n; ++i) {
            const cplx vv = forced ? v[i] + weight * f[i] : v[i];
            out_u[i] = k0[i] * u[i] + k1[i] * vv;
            out_v[i] = dk0[i] * u[i] + dk1[i] * vv;
        }
    } else {
        for (ptrdiff_t i = 0; i < n; ++i) {
            const cplx vv = forced ? v[i] + weight * f[i] : v[i];
            out_u[i] = k0[i] * u[i] + k1[i] * vv;
            out_v[i] = dk0[i] * u[i] + dk1[i] * vv;
        }
    }
}

void map_abs_pow(std::span<const cplx> in, std::span<cplx> out, double p, Exec exec) {
    const ptrdiff_t n = static_cast<ptrdiff_t>(in.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (ptrdiff_t i = 0; i < n; ++i) out[i] = std::pow(std::abs(in[i].real()), p);
    } else {
        for (ptrdiff_t i = 0; i < n; ++i) out[i] = std::pow(std::abs(in[i].real()), p);
    }
}

void add_scaled(std::span<cplx> acc, std::span<const cplx> x, double w, Exec exec) {
    const ptrdiff_t n = static_cast<ptrdiff_t>(acc.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (ptrdiff_t i = 0; i < n; ++i) acc[i] += w * x[i];
    } else {
        for (ptrdiff_t i = 0; i < n; ++i) acc[i] += w * x[i];
    }
}

void apply_real_mask(std::span<cplx> x, std::span<const double> mask, Exec exec) {
    const ptrdiff_t n = static_cast<ptrdiff_t>(x.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (ptrdiff_t i = 0; i < n; ++i) x[i] *= mask[i];
    } else {
        for (ptrdiff_t i = 0; i < n; ++i) x[i] *= mask[i];
    }
}

double weighted_norm_sq(std::span<const double> w, std::span<const cplx> x, Exec exec) {
    const ptrdiff_t n = static_cast<ptrdiff_t>(x.size());
    double acc = 0.0;
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) reduction(+ : acc)
        for (ptrdiff_t i = 0; i < n; ++i) acc += w[i] * std::norm(x[i]);
    } else {
        for (ptrdiff_t i = 0; i < n; ++i) acc += w[i] * std::norm(x[i]);
    }
    return acc;
}

}  // namespace sigevo::kernels
