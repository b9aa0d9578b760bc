#include "sigevo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigevo {

double RadialProfile::hat(double r, int dim_n) const {
    double acc = 0.0;
    for (const auto& g : parts)
        acc += g.amplitude * std::pow(2.0 * M_PI, 0.5 * dim_n) * std::pow(g.width, dim_n) *
               std::exp(-0.5 * g.width * g.width * r * r);
    return acc;
}

void RadialProfile::scale(double factor) {
    for (auto& g : parts) g.amplitude *= factor;
}

RadialData gaussian_data(double amplitude, double width, int dim_n) {
    if (width <= 0.0) throw std::invalid_argument("gaussian_data: width must be positive");
    RadialData d;
    d.dim_n = dim_n;
    if (amplitude != 0.0) d.u1.parts.push_back({amplitude, width});
    return d;
}

double linear_norm_radial(const ValidatedConfig& cfg, const RadialData& data, double t, double s,
                          int j, const ZoneBoundaries& zb, const QuadratureOptions& opts) {
    const int n = cfg.dim_n();
    auto mult = [&](double r) {
        const KernelValues kv = kernel_values(cfg, t, r);
        const double kd0 = (j == 0) ? kv.k0 : kv.dk0;
        const double kd1 = (j == 0) ? kv.k1 : kv.dk1;
        return kd0 * data.u0.hat(r, n) + kd1 * data.u1.hat(r, n);
    };
    return radial_norm_l2(cfg, mult, s, std::nullopt, zb, opts);
}

double profile_gap_norm_radial(const ValidatedConfig& cfg, const RadialData& data, double t,
                               double s, int j, double correction, const ZoneBoundaries& zb,
                               const QuadratureOptions& opts) {
    if (!(cfg.dim_n() > 4.0 * cfg.sigma1()))
        throw std::domain_error("profile_gap_norm_radial: requires n > 4 sigma1");
    const int n = cfg.dim_n();
    const double p0 = data.P0();
    const double p1 = data.P1() + correction;
    auto mult = [&](double r) {
        const KernelValues kv = kernel_values(cfg, t, r);
        const double kd0 = (j == 0) ? kv.k0 : kv.dk0;
        const double kd1 = (j == 0) ? kv.k1 : kv.dk1;
        const double g0 = (j == 0) ? ghat0(cfg, t, r) : dt_ghat0(cfg, t, r);
        const double g1 = (j == 0) ? ghat1(cfg, t, r) : dt_ghat1(cfg, t, r);
        return kd0 * data.u0.hat(r, n) + kd1 * data.u1.hat(r, n) - p0 * g0 - p1 * g1;
    };
    return radial_norm_l2(cfg, mult, s, std::nullopt, zb, opts);
}

PropagatorTable assemble_propagator(const ValidatedConfig& cfg, const FftWorkspace& fft,
                                    double dt, kernels::Exec exec) {
    if (dt < 0.0) throw std::invalid_argument("assemble_propagator: dt must be >= 0");
    const std::size_t total = fft.grid().total_points();
    PropagatorTable t{fft.grid(), dt, std::vector<double>(total), std::vector<double>(total),
                      std::vector<double>(total), std::vector<double>(total)};
    kernels::assemble_kernel_tables(cfg, fft.mode_radius(), dt, t.k0, t.k1, t.dk0, t.dk1, exec);
    return t;
}

void propagate(const PropagatorTable& prop, const StatePair& in, StatePair& out,
               kernels::Exec exec) {
    kernels::apply_propagator(prop.k0, prop.k1, prop.dk0, prop.dk1, in.u.data, in.ut.data, {},
                              0.0, out.u.data, out.ut.data, exec);
    out.set_time(in.time() + prop.dt);
}

namespace {

NonlinearityResult nonlinearity_impl(const SpectralField& field, double p,
                                     const FftWorkspace& fft, kernels::Exec exec) {
    std::vector<cplx> phys;
    fft.to_physical(field, phys);
    std::vector<cplx> powed(phys.size());
    kernels::map_abs_pow(phys, powed, p, exec);

    double mass = 0.0;
    for (const cplx& z : powed) mass += z.real();
    mass *= std::pow(fft.grid().spacing(), fft.grid().dim_n);

    NonlinearityResult out{SpectralField(fft.grid()), mass};
    fft.to_spectral(powed, out.field);
    out.field.time = field.time;
    kernels::apply_real_mask(out.field.data, fft.dealias_mask(), exec);
    return out;
}

}  // namespace

NonlinearityResult nonlinearity(const ValidatedConfig& cfg, const StatePair& state, int j,
                                const FftWorkspace& fft, kernels::Exec exec) {
    if (!cfg.nonlinearity_p()) throw std::invalid_argument("nonlinearity: p not configured");
    return nonlinearity_impl(j == 0 ? state.u : state.ut, *cfg.nonlinearity_p(), fft, exec);
}

StepOutcome semilinear_step(const ValidatedConfig& cfg, StatePair& state,
                            const PropagatorTable& prop, const FftWorkspace& fft,
                            double nonlinearity_scale, kernels::Exec exec) {
    const int j = cfg.deriv_j();
    const double dt = prop.dt;
    StepOutcome outcome;

    if (nonlinearity_scale == 0.0) {
        StatePair next(fft.grid());
        propagate(prop, state, next, exec);
        state = std::move(next);
        return outcome;
    }

    NonlinearityResult n0 = nonlinearity(cfg, state, j, fft, exec);
    outcome.mass_integrand = n0.mass_integrand;
    if (!std::isfinite(outcome.mass_integrand)) {
        outcome.blew_up = true;
        return outcome;
    }
    if (nonlinearity_scale != 1.0)
        for (auto& z : n0.field.data) z *= nonlinearity_scale;

    // predictor at t + dt
    StatePair pred(fft.grid());
    kernels::apply_propagator(prop.k0, prop.k1, prop.dk0, prop.dk1, state.u.data, state.ut.data,
                              n0.field.data, dt, pred.u.data, pred.ut.data, exec);
    pred.set_time(state.time() + dt);

    NonlinearityResult n1 = nonlinearity(cfg, pred, j, fft, exec);
    if (!std::isfinite(n1.mass_integrand)) {
        outcome.blew_up = true;
        return outcome;
    }
    if (nonlinearity_scale != 1.0)
        for (auto& z : n1.field.data) z *= nonlinearity_scale;

    // corrector: E(dt) (state + (dt/2)[0; N0]) + (dt/2)[0; N1]
    StatePair next(fft.grid());
    kernels::apply_propagator(prop.k0, prop.k1, prop.dk0, prop.dk1, state.u.data, state.ut.data,
                              n0.field.data, 0.5 * dt, next.u.data, next.ut.data, exec);
    kernels::add_scaled(next.ut.data, n1.field.data, 0.5 * dt, exec);
    next.set_time(state.time() + dt);
    state = std::move(next);
    return outcome;
}

double sobolev_norm(const StatePair& state, double s, int j, const FftWorkspace& fft) {
    return sobolev_norm(j == 0 ? state.u : state.ut, s, fft);
}

double pair_energy(const ValidatedConfig& cfg, const StatePair& state, const FftWorkspace& fft) {
    const double ut = sobolev_norm(state.ut, 0.0, fft);
    const double du = sobolev_norm(state.u, cfg.sigma(), fft);
    return ut * ut + du * du;
}

NonlinearMass nonlinear_mass(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("nonlinear_mass: need >= 2 samples");
    NonlinearMass m;
    m.truncation_time = samples.back().first;
    for (size_t i = 1; i < samples.size(); ++i) {
        const auto& [t0, v0] = samples[i - 1];
        const auto& [t1, v1] = samples[i];
        m.value += 0.5 * (v0 + v1) * (t1 - t0);
    }

    const double peak = std::max_element(samples.begin(), samples.end(), [](auto& a, auto& b) {
                            return a.second < b.second;
                        })->second;
    if (peak <= 0.0) {
        m.tail_estimate = 0.0;
        m.fitted_beta = std::numeric_limits<double>::infinity();
        return m;  // identically zero integrand
    }

    // beta from the last decade of samples; the integrand decays like t^-beta there.
    std::vector<std::pair<double, double>> tail;
    const double t_lo = m.truncation_time / 10.0;
    for (const auto& s : samples)
        if (s.first >= t_lo && s.second > 0.0) tail.push_back(s);
    if (tail.size() < 4) {
        m.convergent = false;
        m.tail_estimate = std::numeric_limits<double>::infinity();
        return m;
    }
    // plain least squares in log-log (the two-decade span rule does not apply here)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [t, v] : tail) {
        const double x = std::log(t), y = std::log(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double nn = static_cast<double>(tail.size());
    m.fitted_beta = -(nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    if (m.fitted_beta <= 1.0) {
        m.convergent = false;
        m.tail_estimate = std::numeric_limits<double>::infinity();
        return m;
    }
    m.tail_estimate = m.truncation_time * samples.back().second / (m.fitted_beta - 1.0);
    return m;
}

SemilinearTrajectory run_semilinear_trajectory(const ValidatedConfig& cfg, const RadialData& data,
                                               const FftWorkspace& fft,
                                               const SemilinearRunOptions& opts,
                                               kernels::Exec exec) {
    if (!(opts.dt > 0.0) || !(opts.horizon > 0.0))
        throw std::invalid_argument("run_semilinear_trajectory: dt and horizon must be positive");
    const GridSpec& grid = fft.grid();
    const int n = grid.dim_n;
    if (data.dim_n != n) throw std::invalid_argument("run_semilinear_trajectory: dim mismatch");

    StatePair state(grid);
    state.u = field_from_radial(fft, [&](double r) { return data.u0.hat(r, n); });
    state.ut = field_from_radial(fft, [&](double r) { return data.u1.hat(r, n); });
    kernels::apply_real_mask(state.u.data, fft.dealias_mask(), exec);
    kernels::apply_real_mask(state.ut.data, fft.dealias_mask(), exec);
    state.set_time(0.0);

    SemilinearTrajectory traj;
    auto weighted_norm = [&](double tau) {
        return std::pow(1.0 + tau, -opts.weight_u) * sobolev_norm(state, 0.0, 0, fft) +
               std::pow(1.0 + tau, -opts.weight_du) * sobolev_norm(state, opts.sobolev_order, 0, fft) +
               std::pow(1.0 + tau, -opts.weight_ut) * sobolev_norm(state, 0.0, 1, fft);
    };

    traj.initial_weighted_norm = weighted_norm(0.0);
    if (opts.epsilon > 0.0 && traj.initial_weighted_norm > 0.0) {
        traj.data_scale = opts.epsilon / traj.initial_weighted_norm;
        for (auto& z : state.u.data) z *= traj.data_scale;
        for (auto& z : state.ut.data) z *= traj.data_scale;
        traj.initial_weighted_norm = opts.epsilon;
    }
    traj.sup_weighted_norm = traj.initial_weighted_norm;

    const long n_steps = std::lround(std::ceil(opts.horizon / opts.dt - 1e-12));
    const double dt = opts.horizon / static_cast<double>(n_steps);
    const PropagatorTable prop = assemble_propagator(cfg, fft, dt, exec);

    std::vector<double> targets = opts.sample_times;
    std::sort(targets.begin(), targets.end());
    size_t next_target = 0;

    auto record_sample = [&](double mass_integrand) {
        SemilinearSample s;
        s.t = state.time();
        s.l2_u = sobolev_norm(state, 0.0, 0, fft);
        s.hs_u = sobolev_norm(state, opts.sobolev_order, 0, fft);
        s.l2_ut = sobolev_norm(state, 0.0, 1, fft);
        s.mass_integrand = mass_integrand;
        traj.samples.push_back(s);
        if (opts.keep_snapshots) traj.snapshots.push_back(state.u);
    };

    for (long step = 0; step < n_steps; ++step) {
        const StepOutcome out = semilinear_step(cfg, state, prop, fft, opts.nonlinearity_scale, exec);
        if (out.blew_up || !std::isfinite(sobolev_norm(state, 0.0, 0, fft))) {
            traj.blew_up = true;
            traj.blowup_time = state.time();
            break;
        }
        traj.integrand.emplace_back(state.time() - dt, out.mass_integrand);
        const double tau = state.time();
        traj.sup_weighted_norm = std::max(traj.sup_weighted_norm, weighted_norm(tau));
        while (next_target < targets.size() && tau >= targets[next_target] - 1e-9 * opts.horizon) {
            record_sample(out.mass_integrand);
            ++next_target;
        }
    }
    if (!traj.blew_up && opts.nonlinearity_scale != 0.0) {
        // close the integrand at the horizon
        const NonlinearityResult nf = nonlinearity(cfg, state, cfg.deriv_j(), fft, exec);
        traj.integrand.emplace_back(state.time(), nf.mass_integrand);
        traj.mass = nonlinear_mass(traj.integrand);
    }
    return traj;
}

}  // namespace sigevo
