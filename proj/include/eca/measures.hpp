#pragma once
// Density, energy, normalized energy, and averaged time series over samples of
// configurations and update modes.

#include <cstdint>
#include <vector>

#include "eca/dynamics.hpp"

namespace eca {

struct InsufficientSeries : EcaError { using EcaError::EcaError; };

double density(const Config& cfg);            // (1/n) sum x_i
long energy_int(const Config& cfg);           // e(x), always an integer
double energy(const Config& cfg);
double normalized_energy(const Config& cfg);  // e(x)/n

std::vector<Config> sample_configs(int n, uint64_t s, uint64_t seed);

struct MeasureSeries {
    int rule_code = 0;
    Family family = Family::PAR;
    int n = 0;
    uint64_t s = 0;  // configurations per mode (2^n when exhaustive)
    int m = 0;       // modes
    int steps = 0;
    bool exhaustive = false;
    // index 0..steps
    std::vector<double> mean_density, mean_norm_energy;
    std::vector<double> var_density, var_norm_energy;  // across modes, unbiased
    std::vector<std::vector<double>> per_mode_density, per_mode_norm_energy;
};

struct ConfigSource {
    bool exhaustive = false;
    uint64_t sample_size = 32;  // ignored when exhaustive
};

MeasureSeries run_series(Rule rule, Family family, const SampleConstraints& constraints,
                         int n, const ConfigSource& source, int m, int steps,
                         uint64_t seed);

// unbiased sample variance across per-mode series, per step
std::vector<double> variance_across_modes(const std::vector<std::vector<double>>& series);

}  // namespace eca
