#pragma once
// Global step map F = f_{B_{p-1}} o ... o f_{B_0}, trajectories, cycle
// detection, and exhaustive attractor enumeration.

#include <cstdint>
#include <map>
#include <vector>

#include "eca/core.hpp"
#include "eca/schedule.hpp"

namespace eca {

struct BudgetExceeded : EcaError { using EcaError::EcaError; };

struct Budget {
    int exhaustive_cap_bits = 24;       // sweep_all handles up to 2^cap states
    uint64_t max_trajectory_steps = 10000000;
};

Budget& global_budget();  // mutable process-wide budget (ECA_BUDGET / CLI)

// ------------------------------------------------------------ stepping

Config substep(const Config& cfg, Rule rule, const std::vector<int>& block);
Config step(const Config& cfg, Rule rule, const UpdateMode& mode);

struct Trajectory {
    std::vector<Config> steps;     // x^0 .. x^T
    std::vector<Config> substeps;  // optional: p per step, empty if not recorded
};

Trajectory trajectory(const Config& cfg, Rule rule, const UpdateMode& mode,
                      int max_steps, bool record_substeps = false);

// ------------------------------------------------------------ attractors

struct AttractorOutcome {
    uint64_t transient = 0;   // l
    uint64_t cycle_length = 1;  // c, minimal
    Config cycle_min_rep;     // numerically minimal configuration on the cycle
};

AttractorOutcome detect_cycle(const Config& cfg, Rule rule, const UpdateMode& mode);

struct SweepReport {
    int rule_code = 0;
    int n = 0;
    uint64_t analyzed = 0;
    uint64_t max_cycle = 0;
    uint64_t max_transient = 0;
    // cycle length -> (number of distinct cycles, total basin size);
    // basin sizes are 0 (unavailable) for sampled sweeps
    std::map<uint64_t, std::pair<uint64_t, uint64_t>> census;
    bool exhaustive = false;
};

// exhaustive over all 2^n configurations; packed states, memoized successors
SweepReport sweep_all(Rule rule, const UpdateMode& mode, int n);
SweepReport sweep_sample(Rule rule, const UpdateMode& mode, int n,
                         uint64_t sample_size, uint64_t seed);

// ------------------------------------------------------------ fast paths

// one full step on a packed state, n <= 64
uint64_t step_u64(uint64_t x, int n, Rule rule, const UpdateMode& mode);

// naive synchronous evaluator (per-cell loop), the parallel-step oracle
Config naive_parallel_step(const Config& cfg, Rule rule);

}  // namespace eca
