#pragma once

#include <complex>
#include <span>

#include "sigevo/config.hpp"

namespace sigevo::kernels {

using cplx = std::complex<double>;

enum class Exec { Serial, Parallel };

Exec default_exec();
void set_default_exec(Exec e);

/// Fills the per-mode fundamental-matrix tables [[k0, k1], [dk0, dk1]](t, r_i).
void assemble_kernel_tables(const ValidatedConfig& cfg, std::span<const double> radii, double t,
                            std::span<double> k0, std::span<double> k1, std::span<double> dk0,
                            std::span<double> dk1, Exec exec);

/// out = E . [u; v] + weight * E . [0; f]  applied mode-wise, i.e.
///   out_u[i] = k0[i] u[i] + k1[i] (v[i] + weight f[i])
///   out_v[i] = dk0[i] u[i] + dk1[i] (v[i] + weight f[i])
/// f may be empty (pure propagation). Aliasing out with u/v is not allowed.
void apply_propagator(std::span<const double> k0, std::span<const double> k1,
                      std::span<const double> dk0, std::span<const double> dk1,
                      std::span<const cplx> u, std::span<const cplx> v, std::span<const cplx> f,
                      double weight, std::span<cplx> out_u, std::span<cplx> out_v, Exec exec);

/// out[i] = |Re in[i]|^p (physical-space power nonlinearity; fields are real).
void map_abs_pow(std::span<const cplx> in, std::span<cplx> out, double p, Exec exec);

/// acc[i] += w * x[i]
void add_scaled(std::span<cplx> acc, std::span<const cplx> x, double w, Exec exec);

/// x[i] *= mask[i]
void apply_real_mask(std::span<cplx> x, std::span<const double> mask, Exec exec);

/// sum_i w[i] |x[i]|^2
double weighted_norm_sq(std::span<const double> w, std::span<const cplx> x, Exec exec);

}  // namespace sigevo::kernels
