#include "eca/dynamics.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <unordered_map>

namespace eca {

Budget& global_budget() {
    static Budget b = [] {
        Budget init;
        if (const char* env = std::getenv("ECA_BUDGET")) {
            // "bits,steps" — either part may be empty
            std::string s(env);
            auto comma = s.find(',');
            std::string bits = s.substr(0, comma);
            if (!bits.empty()) init.exhaustive_cap_bits = std::stoi(bits);
            if (comma != std::string::npos && comma + 1 < s.size())
                init.max_trajectory_steps = std::stoull(s.substr(comma + 1));
        }
        return init;
    }();
    return b;
}

// ============================================================ stepping

Config substep(const Config& cfg, Rule rule, const std::vector<int>& block) {
    std::array<uint64_t, 4> mask{};
    for (int c : block) {
        if (c < 0 || c >= cfg.n) throw EcaError("substep: cell out of range");
        mask[static_cast<unsigned>(c) >> 6] |= uint64_t(1) << (c & 63);
    }
    return apply_masked(cfg, rule, mask);
}

Config step(const Config& cfg, Rule rule, const UpdateMode& mode) {
    if (mode.n != cfg.n) throw SizeMismatch("mode ring size != configuration ring size");
    Config x = cfg;
    for (const auto& m : mode.masks) x = apply_masked(x, rule, m);
    return x;
}

uint64_t step_u64(uint64_t x, int n, Rule rule, const UpdateMode& mode) {
    for (const auto& m : mode.masks) x = apply_masked_u64(x, n, rule, m[0]);
    return x;
}

Trajectory trajectory(const Config& cfg, Rule rule, const UpdateMode& mode,
                      int max_steps, bool record_substeps) {
    if (mode.n != cfg.n) throw SizeMismatch("mode ring size != configuration ring size");
    if (max_steps < 1) throw EcaError("trajectory: max_steps must be >= 1");
    Trajectory t;
    Config x = cfg;
    t.steps.push_back(x);
    for (int s = 0; s < max_steps; ++s) {
        for (const auto& m : mode.masks) {
            x = apply_masked(x, rule, m);
            if (record_substeps) t.substeps.push_back(x);
        }
        t.steps.push_back(x);
    }
    return t;
}

Config naive_parallel_step(const Config& cfg, Rule rule) {
    Config out(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
        auto [a, b, c] = neighborhood(cfg, i);
        out.set(i, rule(a, b, c));
    }
    return out;
}

// ============================================================ cycle detection

namespace {

AttractorOutcome detect_cycle_packed(uint64_t x0, int n, Rule rule,
                                     const UpdateMode& mode) {
    std::unordered_map<uint64_t, uint64_t> seen;  // state -> first time
    uint64_t x = x0, t = 0;
    const uint64_t cap = global_budget().max_trajectory_steps;
    while (!seen.count(x)) {
        if (t > cap) throw BudgetExceeded("trajectory step budget exhausted");
        seen[x] = t++;
        x = step_u64(x, n, rule, mode);
    }
    AttractorOutcome out;
    out.transient = seen[x];
    out.cycle_length = t - seen[x];
    uint64_t best = x, y = x;
    for (uint64_t i = 1; i < out.cycle_length; ++i) {
        y = step_u64(y, n, rule, mode);
        best = std::min(best, y);
    }
    out.cycle_min_rep = unpack(n, best);
    return out;
}

// Brent's algorithm for rings too large for a visited map
AttractorOutcome detect_cycle_brent(const Config& x0, Rule rule,
                                    const UpdateMode& mode) {
    const uint64_t cap = global_budget().max_trajectory_steps;
    uint64_t power = 1, lam = 1, spent = 0;
    Config tortoise = x0;
    Config hare = step(x0, rule, mode);
    while (!(tortoise == hare)) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = step(hare, rule, mode);
        lam++;
        if (++spent > cap) throw BudgetExceeded("trajectory step budget exhausted");
    }
    // find transient: advance hare lam steps from start, then walk both
    tortoise = x0;
    hare = x0;
    for (uint64_t i = 0; i < lam; ++i) hare = step(hare, rule, mode);
    uint64_t mu = 0;
    while (!(tortoise == hare)) {
        tortoise = step(tortoise, rule, mode);
        hare = step(hare, rule, mode);
        mu++;
        if (++spent > cap) throw BudgetExceeded("trajectory step budget exhausted");
    }
    AttractorOutcome out;
    out.transient = mu;
    out.cycle_length = lam;
    Config best = tortoise, y = tortoise;
    for (uint64_t i = 1; i < lam; ++i) {
        y = step(y, rule, mode);
        if (y < best) best = y;
    }
    out.cycle_min_rep = best;
    return out;
}

}  // namespace

AttractorOutcome detect_cycle(const Config& cfg, Rule rule, const UpdateMode& mode) {
    if (mode.n != cfg.n) throw SizeMismatch("mode ring size != configuration ring size");
    if (cfg.n <= 24) return detect_cycle_packed(cfg.w[0], cfg.n, rule, mode);
    return detect_cycle_brent(cfg, rule, mode);
}

// ============================================================ sweeps

SweepReport sweep_all(Rule rule, const UpdateMode& mode, int n) {
    if (n != mode.n) throw SizeMismatch("mode ring size != requested n");
    if (n > global_budget().exhaustive_cap_bits || n > 24)
        throw BudgetExceeded("exhaustive sweep beyond the packed-state cap");
    const uint64_t N = uint64_t(1) << n;
    std::vector<uint32_t> succ(N);
    for (uint64_t s = 0; s < N; ++s)
        succ[s] = static_cast<uint32_t>(step_u64(s, n, rule, mode));

    constexpr uint32_t kNone = 0xFFFFFFFFu;
    std::vector<uint32_t> walk(N, kNone), pos(N), cycle_of(N, kNone), depth(N, 0);
    std::vector<uint64_t> cycle_len, basin;
    std::vector<uint32_t> path;

    SweepReport rep;
    rep.rule_code = rule.code;
    rep.n = n;
    rep.analyzed = N;
    rep.exhaustive = true;

    for (uint64_t s0 = 0; s0 < N; ++s0) {
        if (cycle_of[s0] != kNone) continue;
        path.clear();
        uint32_t v = static_cast<uint32_t>(s0);
        while (cycle_of[v] == kNone && walk[v] != static_cast<uint32_t>(s0)) {
            walk[v] = static_cast<uint32_t>(s0);
            pos[v] = static_cast<uint32_t>(path.size());
            path.push_back(v);
            v = succ[v];
        }
        size_t cyc_start = path.size();  // index in path where a new cycle begins
        if (cycle_of[v] == kNone) {
            // closed a brand-new cycle at path[pos[v]..]
            cyc_start = pos[v];
            uint32_t id = static_cast<uint32_t>(cycle_len.size());
            uint64_t len = path.size() - cyc_start;
            cycle_len.push_back(len);
            basin.push_back(0);
            for (size_t i = cyc_start; i < path.size(); ++i) {
                cycle_of[path[i]] = id;
                depth[path[i]] = 0;
            }
        }
        // assign transient states (before cyc_start) back to front
        uint32_t id = cycle_of[v];
        uint32_t d = depth[v];
        for (size_t i = cyc_start; i-- > 0;) {
            ++d;
            cycle_of[path[i]] = id;
            depth[path[i]] = d;
        }
        // re-walk depths correctly when we attached to an existing tail
        basin[id] += path.size();
        rep.max_transient = std::max<uint64_t>(rep.max_transient,
                                               path.empty() ? 0 : depth[path[0]]);
    }
    for (size_t i = 0; i < cycle_len.size(); ++i) {
        auto& slot = rep.census[cycle_len[i]];
        slot.first += 1;
        slot.second += basin[i];
        rep.max_cycle = std::max(rep.max_cycle, cycle_len[i]);
    }
    return rep;
}

SweepReport sweep_sample(Rule rule, const UpdateMode& mode, int n,
                         uint64_t sample_size, uint64_t seed) {
    if (n != mode.n) throw SizeMismatch("mode ring size != requested n");
    SweepReport rep;
    rep.rule_code = rule.code;
    rep.n = n;
    rep.analyzed = sample_size;
    std::mt19937_64 rng(seed);
    std::map<std::pair<uint64_t, Config>, bool> distinct;
    for (uint64_t i = 0; i < sample_size; ++i) {
        Config x(n);
        for (int k = 0; k < 4; ++k) x.w[static_cast<size_t>(k)] = rng();
        int top = n & 63;
        for (int k = (n + 63) / 64; k < 4; ++k) x.w[static_cast<size_t>(k)] = 0;
        if (top) x.w[static_cast<unsigned>(n) >> 6] &= (uint64_t(1) << top) - 1;
        AttractorOutcome out = detect_cycle(x, rule, mode);
        rep.max_cycle = std::max(rep.max_cycle, out.cycle_length);
        rep.max_transient = std::max(rep.max_transient, out.transient);
        if (!distinct.count({out.cycle_length, out.cycle_min_rep})) {
            distinct[{out.cycle_length, out.cycle_min_rep}] = true;
            rep.census[out.cycle_length].first += 1;  // basin unavailable: stays 0
        }
    }
    return rep;
}

}  // namespace eca
