#include "eca/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eca {

// ============================================================ walls

std::vector<std::string> find_absolute_walls(Rule rule, int k) {
    if (k < 1 || k > 8) throw EcaError("wall length out of range [1,8]");
    std::vector<std::string> out;
    for (unsigned word = 0; word < (1u << k); ++word) {
        auto bit = [&](int j) { return static_cast<int>((word >> j) & 1); };
        bool wall = true;
        for (int j = 0; j < k && wall; ++j) {
            bool left_free = (j == 0), right_free = (j == k - 1);
            for (int a = 0; a < 2 && wall; ++a) {
                for (int b = 0; b < 2 && wall; ++b) {
                    if (!left_free && a != bit(j - 1)) continue;
                    if (!right_free && b != bit(j + 1)) continue;
                    int l = left_free ? a : bit(j - 1);
                    int r = right_free ? b : bit(j + 1);
                    if (rule(l, bit(j), r) != bit(j)) wall = false;
                }
            }
        }
        if (wall) {
            std::string s;
            for (int j = 0; j < k; ++j) s += static_cast<char>('0' + bit(j));
            out.push_back(s);
        }
    }
    return out;
}

namespace {
// rotate a mode's blocks by `shift` cells (cell c -> c+shift mod n)
UpdateMode rotate_mode(const UpdateMode& mode, int shift) {
    std::vector<std::vector<int>> blocks;
    for (const auto& b : mode.blocks) {
        std::vector<int> nb;
        for (int c : b) nb.push_back((c + shift) % mode.n);
        blocks.push_back(std::move(nb));
    }
    return make_explicit(mode.n, blocks);
}
}  // namespace

bool verify_relative_wall(Rule rule, const UpdateMode& mode,
                          const std::string& word, int n, int t_max) {
    const int k = static_cast<int>(word.size());
    if (k + 1 > n) throw EcaError("word does not fit in the ring");
    if (mode.n != n) throw SizeMismatch("mode ring size != n");
    if (n - k > 22) throw BudgetExceeded("too many contexts to enumerate");
    Config w = parse_config(word);
    for (int p = 0; p < n; ++p) {
        UpdateMode rot = rotate_mode(mode, p);
        for (uint64_t ctx = 0; ctx < (uint64_t(1) << (n - k)); ++ctx) {
            Config x(n);
            for (int j = 0; j < k; ++j) x.set((p + j) % n, w.get(j));
            for (int j = 0; j < n - k; ++j)
                x.set((p + k + j) % n, static_cast<int>((ctx >> j) & 1));
            for (int t = 0; t < t_max; ++t) {
                x = step(x, rule, rot);
                for (int j = 0; j < k; ++j)
                    if (x.get((p + j) % n) != w.get(j)) return false;
            }
        }
    }
    return true;
}

// ============================================================ regime classification

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Constant: return "constant";
        case Regime::Linear: return "linear";
        case Regime::Superpolynomial: return "superpolynomial";
        default: return "unknown";
    }
}

Regime classify_regime(const std::vector<std::pair<int, uint64_t>>& points,
                       const RegimeThresholds& th) {
    if (points.size() < 4) throw InsufficientData("need at least 4 scaling points");
    auto pts = points;
    std::sort(pts.begin(), pts.end());

    uint64_t bound = std::max<uint64_t>(th.constant_bound, pts.front().second);
    if (std::all_of(pts.begin(), pts.end(),
                    [&](const auto& p) { return p.second <= bound; }))
        return Regime::Constant;

    auto ratio = [](const std::pair<int, uint64_t>& p) {
        double n = p.first;
        return std::log2(static_cast<double>(p.second)) / std::sqrt(n * std::log2(n));
    };
    double r_first = ratio(pts.front()), r_last = ratio(pts.back());
    if (r_last >= th.super_coefficient && r_last >= r_first)
        return Regime::Superpolynomial;

    if (std::all_of(pts.begin(), pts.end(), [&](const auto& p) {
            double q = static_cast<double>(p.second) / p.first;
            return q >= th.linear_lo && q <= th.linear_hi;
        }))
        return Regime::Linear;

    return Regime::Unknown;
}

ScalingRecord max_cycle_scaling(Rule rule, Family family,
                                const SampleConstraints& constraints,
                                const std::vector<int>& n_values, int modes_per_n,
                                uint64_t seed) {
    ScalingRecord rec;
    rec.rule_code = rule.code;
    rec.family = family;
    uint64_t counter = 0;
    for (int n : n_values) {
        std::vector<UpdateMode> modes;
        switch (family) {
            case Family::PAR:
                modes.push_back(make_parallel(n));
                break;
            case Family::BIP:
                if (n % 2 != 0) continue;  // no bipartite mode exists on odd rings
                modes.push_back(make_bipartite(n, true));
                modes.push_back(make_bipartite(n, false));
                break;
            default:
                for (int i = 0; i < modes_per_n; ++i)
                    modes.push_back(sample_mode(family, n, derive_seed(seed, counter++),
                                                constraints));
        }
        uint64_t best = 0;
        for (const auto& m : modes)
            best = std::max(best, sweep_all(rule, m, n).max_cycle);
        rec.points.emplace_back(n, best);
    }
    std::sort(rec.points.begin(), rec.points.end());
    rec.regime = classify_regime(rec.points);
    return rec;
}

// ============================================================ primorial

namespace {
std::vector<long> primes_upto(long n) {
    std::vector<long> ps;
    std::vector<char> comp(static_cast<size_t>(std::max(2L, n + 1)), 0);
    for (long p = 2; p <= n; ++p) {
        if (comp[static_cast<size_t>(p)]) continue;
        ps.push_back(p);
        for (long q = p * p; q <= n; q += p) comp[static_cast<size_t>(q)] = 1;
    }
    return ps;
}
}  // namespace

mpz_class primorial(long n) {
    if (n < 0) throw EcaError("primorial: n must be >= 0");
    if (n < 2) return 1;
    auto ps = primes_upto(n);
    const size_t P = ps.size();
    const size_t W = static_cast<size_t>(n) + 1;
    // 0/1 knapsack on log2-weight, exact product reconstructed afterwards
    std::vector<double> dp(W, 0.0);
    std::vector<char> take(P * W, 0);
    for (size_t i = 0; i < P; ++i) {
        long p = ps[i];
        double v = std::log2(static_cast<double>(p));
        for (size_t s = W; s-- > static_cast<size_t>(p);) {
            if (dp[s - static_cast<size_t>(p)] + v > dp[s]) {
                dp[s] = dp[s - static_cast<size_t>(p)] + v;
                take[i * W + s] = 1;
            }
        }
    }
    mpz_class h = 1;
    size_t s = W - 1;
    for (size_t i = P; i-- > 0;) {
        if (take[i * W + s]) {
            h *= ps[i];
            s -= static_cast<size_t>(ps[i]);
        }
    }
    return h;
}

mpz_class primorial_bruteforce(long n) {
    if (n < 0) throw EcaError("primorial: n must be >= 0");
    if (n > 60) throw EcaError("brute-force oracle limited to n <= 60");
    auto ps = primes_upto(n);
    mpz_class best = 1;
    for (uint64_t mask = 0; mask < (uint64_t(1) << ps.size()); ++mask) {
        long sum = 0;
        mpz_class prod = 1;
        for (size_t i = 0; i < ps.size(); ++i)
            if ((mask >> i) & 1) { sum += ps[i]; prod *= ps[i]; }
        if (sum <= n && prod > best) best = prod;
    }
    return best;
}

double log2_mpz(const mpz_class& v) {
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp2);
}

// ============================================================ crafted configs

namespace {

struct CraftPieces {
    std::string config;
    UpdateMode mode;
};

CraftPieces craft_impl(int code, const std::vector<int>& segments) {
    std::string cfg;
    switch (code) {
        case 156: {  // wall 01, segment 0^k, bipartite; cycle k+1 per segment
            for (int k : segments) cfg += "01" + std::string(static_cast<size_t>(k), '0');
            if (cfg.size() % 2) throw DoesNotFit("rule 156 craft needs an even ring");
            return {cfg, make_bipartite(static_cast<int>(cfg.size()), true)};
        }
        case 108: {  // absolute walls 001/100, sequential identity order
            for (int k : segments) {
                std::string mid = (k % 2 == 0)
                                      ? std::string(static_cast<size_t>(k), '1')
                                      : std::string(static_cast<size_t>(k - 1), '1') + "0";
                cfg += "001" + mid + "100";
            }
            std::vector<int> id(cfg.size());
            std::iota(id.begin(), id.end(), 0);
            return {cfg, make_sequential(id)};
        }
        case 73: {  // absolute wall 0110, segment 0^k 01 (k even), bipartite
            for (int k : segments) {
                if (k % 2) throw DoesNotFit("rule 73 craft needs even segment lengths");
                cfg += "0110" + std::string(static_cast<size_t>(k), '0') + "01";
            }
            return {cfg, make_bipartite(static_cast<int>(cfg.size()), true)};
        }
        case 1:
        case 9:
        case 110: {  // relative walls 010/000, single segment 0^k 1, bipartite
            if (segments.size() != 1)
                throw DoesNotFit("rules 1/9/110 craft supports a single segment");
            int k = segments[0];
            if (k % 2 == 0) throw DoesNotFit("segment length must be odd");
            cfg = "010" + std::string(static_cast<size_t>(k), '0') + "1000";
            return {cfg, make_bipartite(static_cast<int>(cfg.size()), true)};
        }
        case 178: {  // relative wall 01: wall cells in singleton subsequences,
                     // interior cells paired; cycle k per odd-length segment
            std::vector<std::vector<int>> seqs;
            int pos = 0;
            for (int k : segments) {
                cfg += "01" + std::string(static_cast<size_t>(k), '0');
                seqs.push_back({pos});
                seqs.push_back({pos + 1});
                int first = pos + 2, last = pos + 1 + k;
                for (int c = first; c + 1 <= last; c += 2) {
                    if (c + 1 <= last) seqs.push_back({c, c + 1});
                }
                if (k % 2) seqs.push_back({last});
                pos += k + 2;
            }
            return {cfg, expand_block_parallel(seqs)};
        }
        case 184: {  // relative wall 0011: border cells update twice before
                     // their outer neighbors (block-parallel)
            std::vector<std::vector<int>> seqs;
            int pos = 0;
            const int n = std::accumulate(segments.begin(), segments.end(), 0) +
                          4 * static_cast<int>(segments.size());
            for (int k : segments) {
                if (k < 2) throw DoesNotFit("rule 184 craft needs segments of >= 2 cells");
                cfg += "0011" + std::string(static_cast<size_t>(k), '0');
                seqs.push_back({pos});       // left border, every substep
                seqs.push_back({pos + 3});   // right border, every substep
                // inner wall cells read the original word at substep 0; the
                // outer neighbors read the once-updated border at substep 1
                seqs.push_back({pos + 1, (pos + 4) % n});
                seqs.push_back({pos + 2, (pos + n - 1) % n});
                int first = pos + 5, last = pos + k + 2;  // interior not yet placed
                for (int c = first; c + 1 <= last; c += 2) seqs.push_back({c, c + 1});
                if (first <= last && (last - first) % 2 == 0) seqs.push_back({last});
                pos += k + 4;
            }
            return {cfg, expand_block_parallel(seqs)};
        }
        default:
            throw UnsupportedRule("craft_lcm_config supports rules {156,178,184,1,9,73,108,110}");
    }
}

}  // namespace

CraftedConfig craft_lcm_config(Rule rule, int n, const std::vector<int>& segments) {
    if (segments.empty()) throw DoesNotFit("need at least one segment");
    for (int k : segments)
        if (k < 1) throw DoesNotFit("segment lengths must be positive");
    CraftPieces pieces = craft_impl(rule.code, segments);
    if (static_cast<int>(pieces.config.size()) != n)
        throw DoesNotFit("segments + walls need ring size " +
                         std::to_string(pieces.config.size()) + ", got " +
                         std::to_string(n));
    CraftedConfig out{parse_config(pieces.config), pieces.mode, 0};
    out.expected_cycle = detect_cycle(out.config, rule, out.mode).cycle_length;
    return out;
}

}  // namespace eca
