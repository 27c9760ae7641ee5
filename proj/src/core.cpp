#include "eca/core.hpp"

#include <bit>
#include <algorithm>

namespace eca {

// ============================================================ rule symmetries

Rule reflect(Rule r) {
    unsigned out = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                if (r(c, b, a)) out |= 1u << (4 * a + 2 * b + c);
    return Rule(out);
}

Rule complement(Rule r) {
    unsigned out = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                if (!r(1 - a, 1 - b, 1 - c)) out |= 1u << (4 * a + 2 * b + c);
    return Rule(out);
}

Rule class_rep(Rule r) {
    uint8_t best = r.code;
    for (Rule s : {reflect(r), complement(r), complement(reflect(r))})
        best = std::min(best, s.code);
    return Rule(best);
}

// ============================================================ Config basics

int Config::popcount() const {
    int s = 0;
    for (uint64_t v : w) s += std::popcount(v);
    return s;
}

bool Config::operator<(const Config& o) const {
    if (n != o.n) return n < o.n;
    for (int i = 3; i >= 0; --i)
        if (w[i] != o.w[i]) return w[i] < o.w[i];
    return false;
}

std::array<int, 3> neighborhood(const Config& cfg, int i) {
    if (i < 0 || i >= cfg.n) throw EcaError("cell index out of range");
    int n = cfg.n;
    return {cfg.get((i + n - 1) % n), cfg.get(i), cfg.get((i + 1) % n)};
}

uint32_t pack(const Config& cfg) {
    if (cfg.n > 24) throw EcaError("pack: ring too large for packed form (n > 24)");
    return static_cast<uint32_t>(cfg.w[0]);
}

Config unpack(int n, uint64_t bits) {
    if (n < 1 || n > 64) throw EcaError("unpack: n out of range [1,64]");
    Config c(n);
    c.w[0] = n == 64 ? bits : bits & ((uint64_t(1) << n) - 1);
    return c;
}

Config parse_config(const std::string& text) {
    if (text.empty() || text.size() > Config::kMaxN)
        throw EcaError("configuration literal length out of range");
    Config c(static_cast<int>(text.size()));
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1')
            throw EcaError("configuration literal must be 0/1 only");
        c.set(static_cast<int>(i), text[i] - '0');
    }
    return c;
}

std::string format_config(const Config& cfg) {
    std::string s(static_cast<size_t>(cfg.n), '0');
    for (int i = 0; i < cfg.n; ++i)
        if (cfg.get(i)) s[static_cast<size_t>(i)] = '1';
    return s;
}

// ============================================================ rotations

Config rotl1(const Config& cfg) {
    Config out(cfg.n);
    int carry = cfg.get(cfg.n - 1);
    if (cfg.n <= 64) {
        uint64_t m = cfg.n == 64 ? ~uint64_t(0) : ((uint64_t(1) << cfg.n) - 1);
        out.w[0] = ((cfg.w[0] << 1) | uint64_t(carry)) & m;
        return out;
    }
    uint64_t c = static_cast<uint64_t>(carry);
    for (int k = 0; k < 4; ++k) {
        uint64_t nc = cfg.w[k] >> 63;
        out.w[k] = (cfg.w[k] << 1) | c;
        c = nc;
    }
    // clear any bit shifted past position n-1
    int top = cfg.n & 63;
    if (top) out.w[cfg.n >> 6] &= (uint64_t(1) << top) - 1;
    return out;
}

Config rotr1(const Config& cfg) {
    Config out(cfg.n);
    int low = cfg.get(0);
    if (cfg.n <= 64) {
        out.w[0] = (cfg.w[0] >> 1) | (uint64_t(low) << (cfg.n - 1));
        return out;
    }
    for (int k = 0; k < 4; ++k) {
        uint64_t hi = k < 3 ? cfg.w[k + 1] : 0;
        out.w[k] = (cfg.w[k] >> 1) | (hi << 63);
    }
    out.set(cfg.n - 1, low);
    return out;
}

// ============================================================ bit-parallel rule step

namespace {
// OR of the minterms of `rule` over (L,C,R) word triples
template <class Word>
inline Word rule_minterms(Rule rule, Word L, Word C, Word R) {
    Word out = 0;
    for (int pat = 0; pat < 8; ++pat) {
        if (!((rule.code >> pat) & 1)) continue;
        Word t = (pat & 4) ? L : ~L;
        t &= (pat & 2) ? C : ~C;
        t &= (pat & 1) ? R : ~R;
        out |= t;
    }
    return out;
}
}  // namespace

uint64_t apply_masked_u64(uint64_t x, int n, Rule rule, uint64_t mask) {
    uint64_t m = n == 64 ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
    uint64_t L = ((x << 1) | (x >> (n - 1))) & m;  // L_i = x_{i-1}
    uint64_t R = ((x >> 1) | (x << (n - 1))) & m;  // R_i = x_{i+1}
    uint64_t out = rule_minterms<uint64_t>(rule, L, x, R) & m;
    return (x & ~mask) | (out & mask);
}

Config apply_masked(const Config& cfg, Rule rule, const std::array<uint64_t, 4>& mask) {
    if (cfg.n <= 64) {
        Config out(cfg.n);
        out.w[0] = apply_masked_u64(cfg.w[0], cfg.n, rule, mask[0]);
        return out;
    }
    Config L = rotl1(cfg), R = rotr1(cfg), out(cfg.n);
    for (int k = 0; k < 4; ++k) {
        uint64_t v = rule_minterms<uint64_t>(rule, L.w[k], cfg.w[k], R.w[k]);
        out.w[k] = (cfg.w[k] & ~mask[k]) | (v & mask[k]);
    }
    int top = cfg.n & 63;
    if (top) out.w[cfg.n >> 6] &= (uint64_t(1) << top) - 1;
    return out;
}

}  // namespace eca
