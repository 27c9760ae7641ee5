#include "eca/measures.hpp"

#include <bit>
#include <random>

namespace eca {

double density(const Config& cfg) {
    return static_cast<double>(cfg.popcount()) / cfg.n;
}

long energy_int(const Config& cfg) {
    if (cfg.n < 2) throw RingTooSmall("energy needs a ring of size >= 2");
    // e(x) = sum_i (1-2x_i)/2 * ((2x_{i-1}-1) + (2x_{i+1}-1)) = 2*D - n,
    // where D counts adjacent disagreeing pairs
    Config r = rotl1(cfg);
    int d = 0;
    for (int k = 0; k < 4; ++k) d += std::popcount(cfg.w[static_cast<size_t>(k)] ^
                                                   r.w[static_cast<size_t>(k)]);
    return 2L * d - cfg.n;
}

double energy(const Config& cfg) { return static_cast<double>(energy_int(cfg)); }

double normalized_energy(const Config& cfg) {
    return static_cast<double>(energy_int(cfg)) / cfg.n;
}

std::vector<Config> sample_configs(int n, uint64_t s, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Config> out;
    out.reserve(s);
    for (uint64_t i = 0; i < s; ++i) {
        Config x(n);
        for (int k = 0; k < 4; ++k) x.w[static_cast<size_t>(k)] = rng();
        for (int k = (n + 63) / 64; k < 4; ++k) x.w[static_cast<size_t>(k)] = 0;
        int top = n & 63;
        if (top) x.w[static_cast<unsigned>(n) >> 6] &= (uint64_t(1) << top) - 1;
        out.push_back(x);
    }
    return out;
}

std::vector<double> variance_across_modes(const std::vector<std::vector<double>>& series) {
    if (series.size() < 2) throw InsufficientSeries("need >= 2 per-mode series");
    const size_t len = series[0].size();
    for (const auto& s : series)
        if (s.size() != len) throw InsufficientSeries("per-mode series lengths differ");
    std::vector<double> out(len, 0.0);
    const double m = static_cast<double>(series.size());
    for (size_t t = 0; t < len; ++t) {
        double mean = 0;
        for (const auto& s : series) mean += s[t];
        mean /= m;
        double acc = 0;
        for (const auto& s : series) acc += (s[t] - mean) * (s[t] - mean);
        out[t] = acc / (m - 1);
    }
    return out;
}

namespace {

// exhaustive ensemble: exact integer accumulation over all 2^n states
void run_mode_exhaustive(Rule rule, const UpdateMode& mode, int n, int steps,
                         std::vector<double>& dens, std::vector<double>& ener) {
    const uint64_t N = uint64_t(1) << n;
    std::vector<uint32_t> succ(N);
    for (uint64_t s = 0; s < N; ++s)
        succ[s] = static_cast<uint32_t>(step_u64(s, n, rule, mode));
    auto e_of = [&](uint64_t x) {
        uint64_t m = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
        uint64_t r = ((x << 1) | (x >> (n - 1))) & m;
        return 2L * std::popcount(x ^ r) - n;
    };
    std::vector<uint32_t> cur(N);
    for (uint64_t s = 0; s < N; ++s) cur[s] = static_cast<uint32_t>(s);
    dens.assign(static_cast<size_t>(steps) + 1, 0.0);
    ener.assign(static_cast<size_t>(steps) + 1, 0.0);
    for (int t = 0; t <= steps; ++t) {
        long long pop = 0, e = 0;
        for (uint64_t s = 0; s < N; ++s) {
            pop += std::popcount(static_cast<uint64_t>(cur[s]));
            e += e_of(cur[s]);
        }
        dens[static_cast<size_t>(t)] =
            static_cast<double>(pop) / (static_cast<double>(N) * n);
        ener[static_cast<size_t>(t)] =
            static_cast<double>(e) / (static_cast<double>(N) * n);
        if (t < steps)
            for (uint64_t s = 0; s < N; ++s) cur[s] = succ[cur[s]];
    }
}

void run_mode_sampled(Rule rule, const UpdateMode& mode, int n, int steps,
                      const std::vector<Config>& configs,
                      std::vector<double>& dens, std::vector<double>& ener) {
    dens.assign(static_cast<size_t>(steps) + 1, 0.0);
    ener.assign(static_cast<size_t>(steps) + 1, 0.0);
    const double S = static_cast<double>(configs.size());
    if (n <= 64) {
        for (const Config& c0 : configs) {
            uint64_t x = c0.w[0];
            for (int t = 0; t <= steps; ++t) {
                uint64_t m = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
                uint64_t r = ((x << 1) | (x >> (n - 1))) & m;
                dens[static_cast<size_t>(t)] += std::popcount(x);
                ener[static_cast<size_t>(t)] += 2.0 * std::popcount(x ^ r) - n;
                if (t < steps) x = step_u64(x, n, rule, mode);
            }
        }
    } else {
        for (const Config& c0 : configs) {
            Config x = c0;
            for (int t = 0; t <= steps; ++t) {
                dens[static_cast<size_t>(t)] += x.popcount();
                ener[static_cast<size_t>(t)] += static_cast<double>(energy_int(x));
                if (t < steps) x = step(x, rule, mode);
            }
        }
    }
    for (int t = 0; t <= steps; ++t) {
        dens[static_cast<size_t>(t)] /= S * n;
        ener[static_cast<size_t>(t)] /= S * n;
    }
}

}  // namespace

MeasureSeries run_series(Rule rule, Family family, const SampleConstraints& constraints,
                         int n, const ConfigSource& source, int m, int steps,
                         uint64_t seed) {
    if (m < 1 || steps < 1) throw EcaError("run_series: m and steps must be >= 1");
    if (source.exhaustive &&
        (n > 24 || n > global_budget().exhaustive_cap_bits))
        throw BudgetExceeded("exhaustive measure ensemble beyond the packed cap");
    MeasureSeries out;
    out.rule_code = rule.code;
    out.family = family;
    out.n = n;
    out.m = m;
    out.steps = steps;
    out.exhaustive = source.exhaustive;
    out.s = source.exhaustive ? (uint64_t(1) << n) : source.sample_size;

    std::vector<Config> configs;
    if (!source.exhaustive)
        configs = sample_configs(n, source.sample_size, derive_seed(seed, 0xC0FF));

    for (int i = 0; i < m; ++i) {
        UpdateMode mode = sample_mode(family, n, derive_seed(seed, static_cast<uint64_t>(i)),
                                      constraints);
        std::vector<double> dens, ener;
        if (source.exhaustive)
            run_mode_exhaustive(rule, mode, n, steps, dens, ener);
        else
            run_mode_sampled(rule, mode, n, steps, configs, dens, ener);
        out.per_mode_density.push_back(std::move(dens));
        out.per_mode_norm_energy.push_back(std::move(ener));
    }

    const size_t len = static_cast<size_t>(steps) + 1;
    out.mean_density.assign(len, 0.0);
    out.mean_norm_energy.assign(len, 0.0);
    for (size_t t = 0; t < len; ++t) {
        for (int i = 0; i < m; ++i) {
            out.mean_density[t] += out.per_mode_density[static_cast<size_t>(i)][t];
            out.mean_norm_energy[t] += out.per_mode_norm_energy[static_cast<size_t>(i)][t];
        }
        out.mean_density[t] /= m;
        out.mean_norm_energy[t] /= m;
    }
    if (m >= 2) {
        out.var_density = variance_across_modes(out.per_mode_density);
        out.var_norm_energy = variance_across_modes(out.per_mode_norm_energy);
    } else {
        out.var_density.assign(len, 0.0);
        out.var_norm_energy.assign(len, 0.0);
    }
    return out;
}

}  // namespace eca
