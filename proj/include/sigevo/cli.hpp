#pragma once

#include <string>
#include <vector>

#include "sigevo/grid.hpp"
#include "sigevo/verify.hpp"

namespace sigevo::cli {

/// Everything a command needs, resolved from the config file plus flag overrides.
struct ExperimentSpec {
    std::string command;
    ProblemConfig problem;
    RateQuery query;
    std::string kernel = "k1";  // kernel-norms target: k0 | k1
    double u0_amplitude = 0.0, u0_width = 1.0;
    double u1_amplitude = 1.0, u1_width = 1.0;
    TimeGrid times{1e2, 1e5, 10};
    int grid_n = 256;
    double box = 1664.0;
    double dt = 0.25;
    double horizon = 1e3;
    double epsilon = 1e-2;
    double tolerance = 0.05;
    std::string out_dir = ".";
    bool write_trajectory = false;
};

/// Strict INI parser: sections [problem] [query] [data] [times] [grid] [verify],
/// unknown keys/sections rejected with line diagnostics (std::invalid_argument).
ExperimentSpec parse_config(const std::string& path, const std::string& command);

/// Runs one command end to end, writing report.json / samples.csv (and optionally
/// trajectory.bin) into spec.out_dir.
/// Exit codes: 0 all-pass, 1 verdict fail, 2 usage error, 3 numerical failure.
int run(const std::vector<std::string>& args);

void write_trajectory_bin(const std::string& path, const SpectralField& field);
SpectralField read_trajectory_bin(const std::string& path);

}  // namespace sigevo::cli
