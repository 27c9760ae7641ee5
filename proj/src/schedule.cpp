#include "eca/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace eca {

// ============================================================ helpers

std::string family_name(Family f) {
    switch (f) {
        case Family::PAR: return "par";
        case Family::BIP: return "bip";
        case Family::SEQ: return "seq";
        case Family::BS: return "bs";
        case Family::BP: return "bp";
        case Family::LC: return "lc";
        default: return "explicit";
    }
}

Family parse_family(const std::string& name) {
    if (name == "par") return Family::PAR;
    if (name == "bip") return Family::BIP;
    if (name == "seq") return Family::SEQ;
    if (name == "bs") return Family::BS;
    if (name == "bp") return Family::BP;
    if (name == "lc") return Family::LC;
    throw EcaError("unknown family: " + name);
}

namespace {

uint64_t lcm_u64(uint64_t a, uint64_t b) { return a / std::gcd(a, b) * b; }

std::array<uint64_t, 4> block_mask(const std::vector<int>& cells) {
    std::array<uint64_t, 4> m{};
    for (int c : cells) m[static_cast<unsigned>(c) >> 6] |= uint64_t(1) << (c & 63);
    return m;
}

void finalize(UpdateMode& mode) {
    mode.period = static_cast<int>(mode.blocks.size());
    mode.masks.clear();
    for (auto& b : mode.blocks) {
        std::sort(b.begin(), b.end());
        mode.masks.push_back(block_mask(b));
    }
    // every cell must be updated at least once per period
    std::vector<char> seen(static_cast<size_t>(mode.n), 0);
    for (const auto& b : mode.blocks)
        for (int c : b) {
            if (c < 0 || c >= mode.n) throw NotAPartition("cell index out of range");
            seen[static_cast<size_t>(c)] = 1;
        }
    for (int i = 0; i < mode.n; ++i)
        if (!seen[static_cast<size_t>(i)])
            throw NotAPartition("cell " + std::to_string(i) + " never updated");
}

// checks the sets form a partition of {0..n-1}; returns n
int check_partition(const std::vector<std::vector<int>>& parts, const char* what) {
    size_t total = 0;
    int maxcell = -1;
    for (const auto& p : parts) {
        if (p.empty()) throw NotAPartition(std::string(what) + ": empty part");
        total += p.size();
        for (int c : p) maxcell = std::max(maxcell, c);
    }
    int n = maxcell + 1;
    if (total != static_cast<size_t>(n))
        throw NotAPartition(std::string(what) + ": parts do not partition the ring");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (const auto& p : parts)
        for (int c : p) {
            if (c < 0 || seen[static_cast<size_t>(c)])
                throw NotAPartition(std::string(what) + ": duplicate or negative cell");
            seen[static_cast<size_t>(c)] = 1;
        }
    return n;
}

}  // namespace

// ============================================================ constructors

UpdateMode make_parallel(int n) {
    if (n < 1 || n > Config::kMaxN) throw EcaError("ring size out of range");
    UpdateMode m;
    m.family = Family::PAR;
    m.n = n;
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    m.blocks = {all};
    finalize(m);
    return m;
}

UpdateMode make_explicit(int n, const std::vector<std::vector<int>>& blocks) {
    if (n < 1 || n > Config::kMaxN) throw EcaError("ring size out of range");
    UpdateMode m;
    m.family = Family::EXPLICIT;
    m.n = n;
    m.blocks = blocks;
    finalize(m);
    return m;
}

UpdateMode make_bipartite(int n, bool even_first) {
    if (n < 2 || n > Config::kMaxN) throw EcaError("ring size out of range");
    if (n % 2 != 0) throw OddRingSize("bipartite modes need an even ring size");
    UpdateMode m;
    m.family = Family::BIP;
    m.n = n;
    m.bip_even_first = even_first;
    std::vector<int> ev, od;
    for (int i = 0; i < n; i += 2) ev.push_back(i);
    for (int i = 1; i < n; i += 2) od.push_back(i);
    m.blocks = even_first ? std::vector{ev, od} : std::vector{od, ev};
    finalize(m);
    return m;
}

UpdateMode make_sequential(const std::vector<int>& permutation) {
    std::vector<std::vector<int>> singles;
    for (int c : permutation) singles.push_back({c});
    int n = check_partition(singles, "sequential");
    UpdateMode m;
    m.family = Family::SEQ;
    m.n = n;
    m.blocks = singles;
    finalize(m);
    return m;
}

UpdateMode make_block_sequential(const std::vector<std::vector<int>>& ordered_blocks) {
    int n = check_partition(ordered_blocks, "block-sequential");
    UpdateMode m;
    m.family = Family::BS;
    m.n = n;
    m.blocks = ordered_blocks;
    finalize(m);
    return m;
}

UpdateMode expand_block_parallel(const std::vector<std::vector<int>>& subsequences) {
    int n = check_partition(subsequences, "block-parallel");
    uint64_t p = 1;
    for (const auto& s : subsequences) {
        p = lcm_u64(p, s.size());
        if (p > kPeriodCap) throw PeriodOverflow("block-parallel period exceeds cap");
    }
    UpdateMode m;
    m.family = Family::BP;
    m.n = n;
    m.bp_subsequences = subsequences;
    for (uint64_t l = 0; l < p; ++l) {
        std::vector<int> block;
        for (const auto& s : subsequences) block.push_back(s[l % s.size()]);
        m.blocks.push_back(std::move(block));
    }
    finalize(m);
    return m;
}

UpdateMode expand_local_clocks(const std::vector<int>& P, const std::vector<int>& D,
                               uint64_t period_cap) {
    if (P.size() != D.size() || P.empty())
        throw EcaError("local clocks: P and D must be nonempty and equal length");
    int n = static_cast<int>(P.size());
    uint64_t p = 1;
    for (int i = 0; i < n; ++i) {
        if (P[static_cast<size_t>(i)] < 1) throw EcaError("local clocks: p_i must be >= 1");
        if (D[static_cast<size_t>(i)] < 0 || D[static_cast<size_t>(i)] >= P[static_cast<size_t>(i)])
            throw ShiftOutOfRange("local clocks: delta_i must satisfy 0 <= delta_i < p_i");
        p = lcm_u64(p, static_cast<uint64_t>(P[static_cast<size_t>(i)]));
        if (p > period_cap) throw PeriodOverflow("local clocks period exceeds cap");
    }
    UpdateMode m;
    m.family = Family::LC;
    m.n = n;
    m.lc_P = P;
    m.lc_D = D;
    for (uint64_t t = 0; t < p; ++t) {
        std::vector<int> block;
        for (int i = 0; i < n; ++i)
            if (t % static_cast<uint64_t>(P[static_cast<size_t>(i)]) ==
                static_cast<uint64_t>(D[static_cast<size_t>(i)]))
                block.push_back(i);
        m.blocks.push_back(std::move(block));
    }
    finalize(m);
    return m;
}

bool membership(const UpdateMode& mode, int cell, uint64_t t) {
    if (cell < 0 || cell >= mode.n) return false;
    const auto& b = mode.blocks[t % static_cast<uint64_t>(mode.period)];
    return std::binary_search(b.begin(), b.end(), cell);
}

// ============================================================ sampling

uint64_t derive_seed(uint64_t master, uint64_t counter) {
    // splitmix64 over master + golden-ratio stride
    uint64_t z = master + counter * 0x9E3779B97F4A7C15ull;
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

UpdateMode sample_mode(Family family, int n, uint64_t seed, const SampleConstraints& c) {
    std::mt19937_64 rng(seed);
    switch (family) {
        case Family::PAR:
            return make_parallel(n);
        case Family::BIP: {
            if (n % 2 != 0) throw OddRingSize("bipartite modes need an even ring size");
            return make_bipartite(n, rng() & 1);
        }
        case Family::SEQ: {
            std::vector<int> perm(static_cast<size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            return make_sequential(perm);
        }
        case Family::BS: {
            int k;
            if (c.bs_blocks) {
                k = *c.bs_blocks;
                if (k < 1 || k > n) throw InfeasibleConstraint("block count out of range");
            } else {
                k = std::uniform_int_distribution<int>(2, n)(rng);
            }
            // uniform surjection onto k blocks, resample on empty block
            std::vector<std::vector<int>> blocks;
            for (;;) {
                blocks.assign(static_cast<size_t>(k), {});
                std::uniform_int_distribution<int> pick(0, k - 1);
                for (int i = 0; i < n; ++i) blocks[static_cast<size_t>(pick(rng))].push_back(i);
                if (std::none_of(blocks.begin(), blocks.end(),
                                 [](const auto& b) { return b.empty(); }))
                    break;
            }
            return make_block_sequential(blocks);
        }
        case Family::BP: {
            if (c.bp_sizes.empty() ||
                *std::min_element(c.bp_sizes.begin(), c.bp_sizes.end()) < 1)
                throw InfeasibleConstraint("bad BP size menu");
            int smallest = *std::min_element(c.bp_sizes.begin(), c.bp_sizes.end());
            if (smallest > n) throw InfeasibleConstraint("BP size menu larger than ring");
            for (int attempt = 0; attempt < 1000; ++attempt) {
                std::vector<int> cells(static_cast<size_t>(n));
                std::iota(cells.begin(), cells.end(), 0);
                std::shuffle(cells.begin(), cells.end(), rng);
                std::vector<std::vector<int>> seqs;
                size_t at = 0;
                bool ok = true;
                while (at < cells.size()) {
                    int rem = static_cast<int>(cells.size() - at);
                    std::vector<int> feasible;
                    for (int s : c.bp_sizes)
                        if (s <= rem && (rem - s == 0 || rem - s >= smallest))
                            feasible.push_back(s);
                    if (feasible.empty()) { ok = false; break; }
                    int s = feasible[std::uniform_int_distribution<size_t>(
                        0, feasible.size() - 1)(rng)];
                    seqs.emplace_back(cells.begin() + static_cast<long>(at),
                                      cells.begin() + static_cast<long>(at + static_cast<size_t>(s)));
                    at += static_cast<size_t>(s);
                }
                if (!ok) continue;
                uint64_t p = 1;
                for (const auto& s : seqs) p = lcm_u64(p, s.size());
                if (p > c.bp_lcm_cap) continue;
                return expand_block_parallel(seqs);
            }
            throw InfeasibleConstraint("could not sample a BP mode under the lcm cap");
        }
        case Family::LC: {
            if (c.lc_max_period < 1) throw InfeasibleConstraint("lc max period must be >= 1");
            std::uniform_int_distribution<int> pp(1, c.lc_max_period);
            std::vector<int> P(static_cast<size_t>(n)), D(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) P[static_cast<size_t>(i)] = pp(rng);
            if (std::find(P.begin(), P.end(), c.lc_max_period) == P.end())
                P[static_cast<size_t>(std::uniform_int_distribution<int>(0, n - 1)(rng))] =
                    c.lc_max_period;
            for (int i = 0; i < n; ++i)
                D[static_cast<size_t>(i)] = std::uniform_int_distribution<int>(
                    0, P[static_cast<size_t>(i)] - 1)(rng);
            return expand_local_clocks(P, D);
        }
        default:
            throw EcaError("cannot sample an explicit mode");
    }
}

// ============================================================ text format

namespace {

struct Cursor {
    const std::string& s;
    size_t at = 0;
    bool done() const { return at >= s.size(); }
    char peek() const { return done() ? '\0' : s[at]; }
    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", at);
        ++at;
    }
    bool eat(char c) {
        if (peek() == c) { ++at; return true; }
        return false;
    }
    int number() {
        if (!isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected a number", at);
        long v = 0;
        while (isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s[at] - '0');
            if (v > 1000000) throw ParseError("number too large", at);
            ++at;
        }
        return static_cast<int>(v);
    }
    // (a,b,c)
    std::vector<int> int_list(char open, char close) {
        expect(open);
        std::vector<int> out;
        if (peek() != close) {
            out.push_back(number());
            while (eat(',')) out.push_back(number());
        }
        expect(close);
        return out;
    }
};

}  // namespace

UpdateMode load_mode(const std::string& text) {
    Cursor c{text};
    size_t colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("missing ':' after family tag", 0);
    std::string fam = text.substr(0, colon);
    c.at = colon + 1;
    try {
        if (fam == "par") {
            c.expect('n'); c.expect('=');
            int n = c.number();
            if (!c.done()) throw ParseError("trailing input", c.at);
            return make_parallel(n);
        }
        if (fam == "bip") {
            c.expect('n'); c.expect('=');
            int n = c.number();
            c.expect(',');
            const std::string key = "first=";
            if (text.compare(c.at, key.size(), key) != 0)
                throw ParseError("expected 'first='", c.at);
            c.at += key.size();
            bool even;
            if (text.compare(c.at, 4, "even") == 0) { even = true; c.at += 4; }
            else if (text.compare(c.at, 3, "odd") == 0) { even = false; c.at += 3; }
            else throw ParseError("expected 'even' or 'odd'", c.at);
            if (!c.done()) throw ParseError("trailing input", c.at);
            return make_bipartite(n, even);
        }
        if (fam == "seq") {
            auto perm = c.int_list('(', ')');
            if (!c.done()) throw ParseError("trailing input", c.at);
            return make_sequential(perm);
        }
        if (fam == "bs") {
            c.expect('(');
            std::vector<std::vector<int>> blocks;
            blocks.push_back(c.int_list('{', '}'));
            while (c.eat(',')) blocks.push_back(c.int_list('{', '}'));
            c.expect(')');
            if (!c.done()) throw ParseError("trailing input", c.at);
            return make_block_sequential(blocks);
        }
        if (fam == "bp") {
            c.expect('{');
            std::vector<std::vector<int>> seqs;
            seqs.push_back(c.int_list('(', ')'));
            while (c.eat(',')) seqs.push_back(c.int_list('(', ')'));
            c.expect('}');
            if (!c.done()) throw ParseError("trailing input", c.at);
            return expand_block_parallel(seqs);
        }
        if (fam == "lc") {
            c.expect('P'); c.expect('=');
            auto P = c.int_list('(', ')');
            c.expect(';');
            c.expect('D'); c.expect('=');
            auto D = c.int_list('(', ')');
            if (!c.done()) throw ParseError("trailing input", c.at);
            return expand_local_clocks(P, D);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const EcaError& e) {
        throw ParseError(e.what(), c.at);
    }
    throw ParseError("unknown family tag '" + fam + "'", 0);
}

namespace {
std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[static_cast<size_t>(i)]);
    }
    return out;
}
}  // namespace

std::string save_mode(const UpdateMode& m) {
    switch (m.family) {
        case Family::PAR:
            return "par:n=" + std::to_string(m.n);
        case Family::BIP:
            return "bip:n=" + std::to_string(m.n) +
                   ",first=" + (m.bip_even_first ? "even" : "odd");
        case Family::SEQ: {
            std::vector<int> perm;
            for (const auto& b : m.blocks) perm.push_back(b[0]);
            return "seq:(" + join_ints(perm) + ")";
        }
        case Family::BP: {
            std::string out = "bp:{";
            for (size_t i = 0; i < m.bp_subsequences.size(); ++i) {
                if (i) out += ',';
                out += "(" + join_ints(m.bp_subsequences[i]) + ")";
            }
            return out + "}";
        }
        case Family::LC:
            return "lc:P=(" + join_ints(m.lc_P) + ");D=(" + join_ints(m.lc_D) + ")";
        case Family::BS:
        default: {  // BS form can serialize any explicit block sequence
            std::string out = "bs:(";
            for (size_t i = 0; i < m.blocks.size(); ++i) {
                if (i) out += ',';
                out += "{" + join_ints(m.blocks[i]) + "}";
            }
            return out + ")";
        }
    }
}

}  // namespace eca
