#include "sigevo/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "sigevo/rates.hpp"

namespace sigevo::cli {

using nlohmann::json;

namespace {

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"problem", {"sigma", "sigma1", "sigma2", "mu1", "mu2", "dim", "p", "j"}},
    {"query", {"m", "s", "j", "kind", "kernel"}},
    {"data", {"u0_amplitude", "u0_width", "u1_amplitude", "u1_width"}},
    {"times", {"t_min", "t_max", "count"}},
    {"grid", {"n", "box", "dt", "horizon", "epsilon"}},
    {"verify", {"tolerance"}},
};

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
    std::ostringstream msg;
    msg << path << ":" << line << ": " << what;
    throw std::invalid_argument(msg.str());
}

double to_double(const std::string& path, int line, const std::string& v) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) parse_fail(path, line, "trailing characters in number '" + v + "'");
        return x;
    } catch (const std::invalid_argument&) {
        parse_fail(path, line, "not a number: '" + v + "'");
    } catch (const std::out_of_range&) {
        parse_fail(path, line, "number out of range: '" + v + "'");
    }
}

int to_int(const std::string& path, int line, const std::string& v) {
    const double x = to_double(path, line, v);
    const int i = static_cast<int>(std::lround(x));
    if (std::abs(x - i) > 1e-12) parse_fail(path, line, "expected an integer, got '" + v + "'");
    return i;
}

}  // namespace

ExperimentSpec parse_config(const std::string& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);

    ExperimentSpec spec;
    spec.command = command;
    bool p_seen = false;

    std::string section = "problem";  // top-level keys default to [problem]
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find_first_of("#;"); hash != std::string::npos)
            line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(path, lineno, "malformed section header");
            section = line.substr(1, line.size() - 2);
            if (!kKnownKeys.count(section)) parse_fail(path, lineno, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(path, lineno, "expected key = value");
        auto trim = [](std::string s) {
            const auto x = s.find_first_not_of(" \t");
            const auto y = s.find_last_not_of(" \t");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!kKnownKeys.at(section).count(key))
            parse_fail(path, lineno, "unknown key '" + key + "' in section [" + section + "]");

        if (section == "problem") {
            if (key == "sigma") spec.problem.sigma = to_double(path, lineno, val);
            else if (key == "sigma1") spec.problem.sigma1 = to_double(path, lineno, val);
            else if (key == "sigma2") spec.problem.sigma2 = to_double(path, lineno, val);
            else if (key == "mu1") spec.problem.mu1 = to_double(path, lineno, val);
            else if (key == "mu2") spec.problem.mu2 = to_double(path, lineno, val);
            else if (key == "dim") spec.problem.dim_n = to_int(path, lineno, val);
            else if (key == "p") { spec.problem.nonlinearity_p = to_double(path, lineno, val); p_seen = true; }
            else if (key == "j") spec.problem.deriv_j = to_int(path, lineno, val);
        } else if (section == "query") {
            if (key == "m") spec.query.m = to_double(path, lineno, val);
            else if (key == "s") spec.query.s = to_double(path, lineno, val);
            else if (key == "j") spec.query.j = to_int(path, lineno, val);
            else if (key == "kernel") spec.kernel = val;
            else if (key == "kind") {
                if (val == "lm-l2") spec.query.kind = EstimateKind::LmL2;
                else if (val == "l2-l2") spec.query.kind = EstimateKind::L2L2;
                else parse_fail(path, lineno, "kind must be lm-l2 or l2-l2");
            }
        } else if (section == "data") {
            if (key == "u0_amplitude") spec.u0_amplitude = to_double(path, lineno, val);
            else if (key == "u0_width") spec.u0_width = to_double(path, lineno, val);
            else if (key == "u1_amplitude") spec.u1_amplitude = to_double(path, lineno, val);
            else if (key == "u1_width") spec.u1_width = to_double(path, lineno, val);
        } else if (section == "times") {
            if (key == "t_min") spec.times.t_min = to_double(path, lineno, val);
            else if (key == "t_max") spec.times.t_max = to_double(path, lineno, val);
            else if (key == "count") spec.times.count = to_int(path, lineno, val);
        } else if (section == "grid") {
            if (key == "n") spec.grid_n = to_int(path, lineno, val);
            else if (key == "box") spec.box = to_double(path, lineno, val);
            else if (key == "dt") spec.dt = to_double(path, lineno, val);
            else if (key == "horizon") spec.horizon = to_double(path, lineno, val);
            else if (key == "epsilon") spec.epsilon = to_double(path, lineno, val);
        } else if (section == "verify") {
            if (key == "tolerance") spec.tolerance = to_double(path, lineno, val);
        }
    }

    if (command == "simulate-semilinear" && !p_seen)
        throw std::invalid_argument(path + ": nonlinearity_p required (set p in [problem])");
    if (spec.kernel != "k0" && spec.kernel != "k1")
        throw std::invalid_argument(path + ": kernel must be k0 or k1");
    return spec;
}

namespace {

RadialData data_from_spec(const ExperimentSpec& spec) {
    RadialData d;
    d.dim_n = spec.problem.dim_n;
    if (spec.u0_amplitude != 0.0) d.u0.parts.push_back({spec.u0_amplitude, spec.u0_width});
    if (spec.u1_amplitude != 0.0) d.u1.parts.push_back({spec.u1_amplitude, spec.u1_width});
    return d;
}

json config_json(const ExperimentSpec& spec) {
    json j;
    j["problem"] = {{"sigma", spec.problem.sigma}, {"sigma1", spec.problem.sigma1},
                    {"sigma2", spec.problem.sigma2}, {"mu1", spec.problem.mu1},
                    {"mu2", spec.problem.mu2}, {"dim", spec.problem.dim_n},
                    {"j", spec.problem.deriv_j}};
    if (spec.problem.nonlinearity_p) j["problem"]["p"] = *spec.problem.nonlinearity_p;
    j["query"] = {{"m", spec.query.m}, {"s", spec.query.s}, {"j", spec.query.j},
                  {"kind", spec.query.kind == EstimateKind::LmL2 ? "lm-l2" : "l2-l2"},
                  {"kernel", spec.kernel}};
    j["data"] = {{"u0_amplitude", spec.u0_amplitude}, {"u0_width", spec.u0_width},
                 {"u1_amplitude", spec.u1_amplitude}, {"u1_width", spec.u1_width}};
    j["times"] = {{"t_min", spec.times.t_min}, {"t_max", spec.times.t_max},
                  {"count", spec.times.count}};
    j["grid"] = {{"n", spec.grid_n}, {"box", spec.box}, {"dt", spec.dt},
                 {"horizon", spec.horizon}, {"epsilon", spec.epsilon}};
    j["tolerance"] = spec.tolerance;
    return j;
}

json rate_json(const RatePrediction& r) {
    json j{{"exponent", r.exponent}, {"log_factor", r.log_factor},
           {"exponential", r.exponential}, {"regime", r.regime_note}};
    for (const auto& c : r.validity) j["validity"].push_back({{"check", c.inequality}, {"holds", c.holds}});
    return j;
}

json decay_json(const DecayReport& rep) {
    return json{{"description", rep.description},
                {"predicted", rate_json(rep.predicted)},
                {"fitted_slope", rep.fitted_slope},
                {"max_residual", rep.max_residual},
                {"tolerance", rep.tolerance},
                {"verdict", to_string(rep.verdict)}};
}

json profile_json(const ProfileReport& rep) {
    return json{{"description", rep.description},
                {"rate", rate_json(rep.rate)},
                {"ratios", rep.ratios},
                {"band_min", rep.band_min},
                {"band_max", rep.band_max},
                {"ratio_halved", rep.ratio_halved},
                {"tail_decreasing", rep.tail_decreasing},
                {"band_positive", rep.band_positive},
                {"verdict", to_string(rep.verdict)}};
}

void write_report(const ExperimentSpec& spec, json results, const std::string& verdict) {
    json report;
    report["version"] = kVersion;
    report["command"] = spec.command;
    report["config"] = config_json(spec);
    report["results"] = std::move(results);
    report["verdict"] = verdict;
    // Wall-clock provenance lives only here; comparisons must exclude "metadata".
    report["metadata"] = {{"timestamp", std::chrono::duration_cast<std::chrono::seconds>(
                                            std::chrono::system_clock::now().time_since_epoch())
                                            .count()}};
    std::ofstream out(std::filesystem::path(spec.out_dir) / "report.json");
    out << report.dump(2) << "\n";
}

void write_samples_csv(const ExperimentSpec& spec,
                       const std::vector<std::pair<double, double>>& samples,
                       double predicted_exponent) {
    std::ofstream out(std::filesystem::path(spec.out_dir) / "samples.csv");
    out << "t,value,predicted_curve\n";
    if (samples.empty()) return;
    const double anchor =
        samples.front().second / std::pow(samples.front().first, predicted_exponent);
    out.precision(17);
    for (const auto& [t, v] : samples)
        out << t << "," << v << "," << anchor * std::pow(t, predicted_exponent) << "\n";
}

int cmd_rates(const ExperimentSpec& spec) {
    const ValidatedConfig cfg = validate(spec.problem);
    json res;
    res["linear_decay"] = rate_json(linear_decay_exponent(cfg, spec.query));
    if (cfg.dim_n() > 4.0 * cfg.sigma1())
        res["profile_rate"] = rate_json(profile_rate(cfg, spec.query.s, spec.query.j));
    if (spec.query.m < 2.0) {
        const auto pieces = kernel_piece_rates(cfg, spec.query.m, spec.query.s, spec.query.j);
        const char* names[4] = {"K0_slow", "K0_fast", "K1_slow", "K1_fast"};
        for (int i = 0; i < 4; ++i) res["kernel_pieces"][names[i]] = rate_json(pieces[i]);
        for (auto piece : {ProfilePiece::K0Piece, ProfilePiece::K1Piece})
            res["profile_gap"][piece == ProfilePiece::K0Piece ? "K0" : "K1"] = rate_json(
                profile_gap_rate(cfg, spec.query.m, spec.query.s, spec.query.j, piece));
    }
    if (cfg.dim_n() > 4.0 * cfg.sigma1())
        res["gamma_s"] = rate_json(gamma_s(cfg, spec.query.s, spec.query.j));
    if (cfg.nonlinearity_p()) {
        const HypothesisReport hyp = check_global_existence_hypotheses(cfg, spec.query.m);
        json h{{"admissible", hyp.admissible}};
        for (const auto& c : hyp.checks) h["checks"].push_back({{"check", c.inequality}, {"holds", c.holds}});
        res["global_existence"] = h;
        if (hyp.admissible)
            for (const auto& row : semilinear_decay_exponents(cfg, spec.query.m))
                res["semilinear_decay"][row.norm] = rate_json(row.rate);
    }
    write_report(spec, res, "pass");
    return 0;
}

int cmd_kernel_norms(const ExperimentSpec& spec) {
    const ValidatedConfig cfg = validate(spec.problem);
    const ZoneBoundaries zb = find_eps_star(cfg);
    const KernelIndex which = spec.kernel == "k0" ? KernelIndex::K0 : KernelIndex::K1;
    const double m0 = m_zero(spec.query.m);
    const double a = cfg.diffusion_order();
    // P_i^{m0}(j, s) ~ (1+t)^expo with the paper's low-zone envelope
    const double expo =
        which == KernelIndex::K1
            ? -cfg.dim_n() / (2.0 * a) - m0 * ((spec.query.s - 2.0 * cfg.sigma1()) / (2.0 * a) + spec.query.j)
            : -cfg.dim_n() / (2.0 * a) - m0 * (spec.query.s / (2.0 * a) + spec.query.j);

    std::vector<std::pair<double, double>> samples;
    json ratios = json::array();
    bool pass = true;
    for (double t : spec.times.times()) {
        const double v = p_norm_integral(cfg, which, spec.query.j, spec.query.s, spec.query.m, t, zb);
        const double v2 = p_norm_integral(cfg, which, spec.query.j, spec.query.s, spec.query.m, 2.0 * t, zb);
        samples.emplace_back(t, v);
        const double measured = v2 / v;
        const double predicted = std::pow(2.0, expo);
        const double rel = measured / predicted - 1.0;
        // sharpness check: faster measured decay is reported, not failed
        const bool ok = std::abs(rel) <= spec.tolerance || measured < predicted;
        ratios.push_back({{"t", t}, {"measured", measured}, {"predicted", predicted},
                          {"relative_deviation", rel}, {"ok", ok}});
        if (t >= spec.times.t_max / 10.0 && !ok) pass = false;
    }
    write_samples_csv(spec, samples, expo);
    write_report(spec, json{{"doubling_ratios", ratios}, {"exponent", expo}},
                 pass ? "pass" : "fail");
    return pass ? 0 : 1;
}

int cmd_simulate_linear(const ExperimentSpec& spec) {
    const ValidatedConfig cfg = validate(spec.problem);
    const ZoneBoundaries zb = find_eps_star(cfg);
    const RadialData data = data_from_spec(spec);
    std::vector<std::pair<double, double>> samples;
    for (double t : spec.times.times())
        samples.emplace_back(t, linear_norm_radial(cfg, data, t, spec.query.s, spec.query.j, zb));
    const RateFit fit = fit_rate(samples);
    const RatePrediction pred = linear_decay_exponent(cfg, spec.query);
    write_samples_csv(spec, samples, pred.exponent);
    write_report(spec,
                 json{{"fitted_slope", fit.slope}, {"predicted", rate_json(pred)},
                      {"max_residual", fit.max_residual}},
                 "pass");
    return 0;
}

int cmd_verify_decay(const ExperimentSpec& spec) {
    const ValidatedConfig cfg = validate(spec.problem);
    const ZoneBoundaries zb = find_eps_star(cfg);
    const DecayReport rep =
        run_linear_decay(cfg, spec.query, data_from_spec(spec), spec.times, zb, spec.tolerance);
    write_samples_csv(spec, rep.samples, rep.predicted.exponent);
    write_report(spec, decay_json(rep), to_string(rep.verdict));
    return rep.verdict == Verdict::Fail ? 1 : 0;
}

int cmd_verify_log_case(const ExperimentSpec& spec) {
    const ValidatedConfig cfg = validate(spec.problem);
    const ZoneBoundaries zb = find_eps_star(cfg);
    const DecayReport rep =
        run_log_case(cfg, data_from_spec(spec), spec.query.m, spec.times, zb, spec.tolerance);
    write_samples_csv(spec, rep.samples, 0.0);
    write_report(spec, decay_json(rep), to_string(rep.verdict));
    return rep.verdict == Verdict::Fail ? 1 : 0;
}

int cmd_verify_profile(const ExperimentSpec& spec) {
    const ValidatedConfig cfg = validate(spec.problem);
    const ZoneBoundaries zb = find_eps_star(cfg);
    const ProfileReport rep =
        run_profile(cfg, data_from_spec(spec), spec.query.s, spec.query.j, spec.times, zb);
    std::vector<std::pair<double, double>> samples;
    for (size_t i = 0; i < rep.times.size(); ++i)
        samples.emplace_back(rep.times[i], std::max(rep.gap_norms[i], 1e-300));
    write_samples_csv(spec, samples, rep.rate.exponent);
    write_report(spec, profile_json(rep), to_string(rep.verdict));
    return rep.verdict == Verdict::Fail ? 1 : 0;
}

int cmd_simulate_semilinear(const ExperimentSpec& spec) {
    const ValidatedConfig cfg = validate(spec.problem);
    SemilinearVerifyOptions opts;
    opts.grid = GridSpec{spec.problem.dim_n, spec.grid_n, spec.box};
    opts.dt = spec.dt;
    opts.horizon = spec.horizon;
    opts.epsilon = spec.epsilon;
    opts.data_width = spec.u1_width;
    opts.fit_t_min = spec.times.t_min;
    opts.tolerance = spec.tolerance;
    const SemilinearVerification ver = run_semilinear(cfg, opts);

    if (ver.trajectory.blew_up) {
        write_report(spec,
                     json{{"blew_up", true}, {"blowup_time", ver.trajectory.blowup_time}},
                     "fail");
        std::cerr << "blow-up detected at t = " << ver.trajectory.blowup_time << "\n";
        return 3;
    }

    json res;
    for (const auto& d : ver.decay) res["decay"].push_back(decay_json(d));
    res["profile_corrected"] = profile_json(ver.profile_corrected);
    res["profile_uncorrected"] = profile_json(ver.profile_uncorrected);
    res["corrected_gap_smaller"] = ver.corrected_gap_smaller;
    res["mass"] = {{"value", ver.trajectory.mass.value},
                   {"tail_estimate", ver.trajectory.mass.tail_estimate},
                   {"fitted_beta", ver.trajectory.mass.fitted_beta},
                   {"convergent", ver.trajectory.mass.convergent},
                   {"tail_small", ver.mass_tail_small}};
    res["sup_weighted_norm"] = ver.trajectory.sup_weighted_norm;
    res["data_scale"] = ver.trajectory.data_scale;

    std::ofstream csv(std::filesystem::path(spec.out_dir) / "samples.csv");
    csv << "t,l2_u,hs_u,l2_ut,mass_integrand\n";
    csv.precision(17);
    for (const auto& s : ver.trajectory.samples)
        csv << s.t << "," << s.l2_u << "," << s.hs_u << "," << s.l2_ut << ","
            << s.mass_integrand << "\n";

    if (spec.write_trajectory && !ver.trajectory.snapshots.empty())
        write_trajectory_bin(
            (std::filesystem::path(spec.out_dir) / "trajectory.bin").string(),
            ver.trajectory.snapshots.back());

    write_report(spec, res, to_string(ver.verdict));
    return ver.verdict == Verdict::Pass ? 0 : 1;
}

}  // namespace

void write_trajectory_bin(const std::string& path, const SpectralField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write("SGEV", 4);
    const std::uint32_t dims = field.grid.dim_n;
    const double L = field.grid.box_length;
    const std::uint32_t N = field.grid.points_per_dim;
    const double time = field.time;
    out.write(reinterpret_cast<const char*>(&dims), 4);
    out.write(reinterpret_cast<const char*>(&L), 8);
    out.write(reinterpret_cast<const char*>(&N), 4);
    out.write(reinterpret_cast<const char*>(&time), 8);
    for (const cplx& z : field.data) {
        const double re = z.real(), im = z.imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
    }
}

SpectralField read_trajectory_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::string(magic, 4) != "SGEV") throw std::runtime_error(path + ": bad magic");
    std::uint32_t dims = 0, N = 0;
    double L = 0.0, time = 0.0;
    in.read(reinterpret_cast<char*>(&dims), 4);
    in.read(reinterpret_cast<char*>(&L), 8);
    in.read(reinterpret_cast<char*>(&N), 4);
    in.read(reinterpret_cast<char*>(&time), 8);
    SpectralField field(make_grid(static_cast<int>(dims), static_cast<int>(N), L));
    field.time = time;
    for (cplx& z : field.data) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), 8);
        in.read(reinterpret_cast<char*>(&im), 8);
        z = {re, im};
    }
    if (!in) throw std::runtime_error(path + ": truncated file");
    return field;
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"simulation and verification toolkit for double-damped sigma-evolution equations"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    double tolerance = -1.0, t_min = -1.0, t_max = -1.0;
    int grid_n = -1;
    double box = -1.0, dt = -1.0;
    bool write_traj = false;

    const std::vector<std::string> commands = {"rates", "kernel-norms", "simulate-linear",
                                               "simulate-semilinear", "verify-decay",
                                               "verify-profile", "verify-log-case"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path)->required();
        sub->add_option("--out", out_dir);
        sub->add_option("--tolerance", tolerance);
        sub->add_option("--t-min", t_min);
        sub->add_option("--t-max", t_max);
        sub->add_option("--grid", grid_n);
        sub->add_option("--box", box);
        sub->add_option("--dt", dt);
        sub->add_flag("--trajectory", write_traj);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        ExperimentSpec spec = parse_config(config_path, command);
        spec.out_dir = out_dir;
        if (tolerance >= 0.0) spec.tolerance = tolerance;
        if (t_min > 0.0) spec.times.t_min = t_min;
        if (t_max > 0.0) spec.times.t_max = t_max;
        if (grid_n > 0) spec.grid_n = grid_n;
        if (box > 0.0) spec.box = box;
        if (dt > 0.0) spec.dt = dt;
        spec.write_trajectory = write_traj;
        std::filesystem::create_directories(spec.out_dir);

        if (command == "rates") return cmd_rates(spec);
        if (command == "kernel-norms") return cmd_kernel_norms(spec);
        if (command == "simulate-linear") return cmd_simulate_linear(spec);
        if (command == "simulate-semilinear") return cmd_simulate_semilinear(spec);
        if (command == "verify-decay") return cmd_verify_decay(spec);
        if (command == "verify-profile") return cmd_verify_profile(spec);
        if (command == "verify-log-case") return cmd_verify_log_case(spec);
        std::cerr << "unknown command " << command << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace sigevo::cli
