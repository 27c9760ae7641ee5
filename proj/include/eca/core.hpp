#pragma once
// Ring configurations, ECA local rules, rule symmetries (88 classes).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace eca {

// ============================================================ errors

struct EcaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeMismatch : EcaError { using EcaError::EcaError; };
struct RingTooSmall : EcaError { using EcaError::EcaError; };

// ============================================================ Rule

// Wolfram code: bit (4a+2b+c) of `code` is f(a,b,c); bit 7 = f(111).
struct Rule {
    uint8_t code = 0;
    Rule() = default;
    explicit Rule(unsigned c) : code(static_cast<uint8_t>(c)) {
        if (c > 255) throw EcaError("rule code out of range [0,256)");
    }
    int operator()(int a, int b, int c) const { return (code >> (4 * a + 2 * b + c)) & 1; }
    bool operator==(const Rule&) const = default;
};

inline int apply_local(Rule r, int a, int b, int c) { return r(a, b, c); }

Rule reflect(Rule r);     // f'(a,b,c) = f(c,b,a)
Rule complement(Rule r);  // f'(a,b,c) = 1 - f(1-a,1-b,1-c)
Rule class_rep(Rule r);   // minimal code in {id, reflect, complement, both} orbit

// ============================================================ Configuration

// Cyclic Boolean word of length n, cell 0 = least significant bit of w[0].
// Fixed 4x64 storage covers every ring size used here (n <= 256).
struct Config {
    static constexpr int kMaxN = 256;
    int n = 0;
    std::array<uint64_t, 4> w{};

    Config() = default;
    explicit Config(int ring) : n(ring) {
        if (ring < 1 || ring > kMaxN) throw EcaError("ring size out of range [1,256]");
    }

    int get(int i) const { return (w[static_cast<unsigned>(i) >> 6] >> (i & 63)) & 1; }
    void set(int i, int v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w[static_cast<unsigned>(i) >> 6] |= m;
        else   w[static_cast<unsigned>(i) >> 6] &= ~m;
    }
    int popcount() const;
    bool operator==(const Config&) const = default;
    bool operator<(const Config& o) const;  // numeric order (for minimal cycle reps)
};

// (x_{i-1 mod n}, x_i, x_{i+1 mod n})
std::array<int, 3> neighborhood(const Config& cfg, int i);

// packed integer <-> Config (n <= 24 for the packed sweep representation)
uint32_t pack(const Config& cfg);
Config unpack(int n, uint64_t bits);

// textual literal: '0'/'1' string, cell 0 leftmost
Config parse_config(const std::string& text);
std::string format_config(const Config& cfg);

// whole-ring rotations by one cell (bit i -> i+1 mod n, and inverse)
Config rotl1(const Config& cfg);
Config rotr1(const Config& cfg);

// one synchronous application of `rule` to the cells selected by `mask`
// (mask uses the same 4x64 layout); cells outside mask keep their state.
// All selected cells read the pre-call state.  Bit-parallel.
Config apply_masked(const Config& cfg, Rule rule, const std::array<uint64_t, 4>& mask);

// single-word fast path (n <= 64): same semantics as apply_masked
uint64_t apply_masked_u64(uint64_t x, int n, Rule rule, uint64_t mask);

}  // namespace eca
