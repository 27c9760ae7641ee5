#pragma once
// The five periodic update-mode families, their validation, normalization to a
// block sequence (B_0,...,B_{p-1}), random generation, and the text format.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eca/core.hpp"

namespace eca {

struct OddRingSize : EcaError { using EcaError::EcaError; };
struct NotAPartition : EcaError { using EcaError::EcaError; };
struct ShiftOutOfRange : EcaError { using EcaError::EcaError; };
struct PeriodOverflow : EcaError { using EcaError::EcaError; };
struct InfeasibleConstraint : EcaError { using EcaError::EcaError; };
struct ParseError : EcaError {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : EcaError(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

enum class Family { PAR, BIP, SEQ, BS, BP, LC, EXPLICIT };
std::string family_name(Family f);
Family parse_family(const std::string& name);

// default cap on the normalized period (substeps per step)
inline constexpr uint64_t kPeriodCap = 10080;

struct UpdateMode {
    Family family = Family::EXPLICIT;
    int n = 0;
    int period = 0;
    std::vector<std::vector<int>> blocks;        // sorted cell lists
    std::vector<std::array<uint64_t, 4>> masks;  // one bitmask per block

    // raw family parameters (kept for save_mode and the direct-semantics oracle)
    bool bip_even_first = true;
    std::vector<std::vector<int>> bp_subsequences;  // BP: partitioned order
    std::vector<int> lc_P, lc_D;                    // LC: periods and shifts

    bool operator==(const UpdateMode& o) const {
        return n == o.n && blocks == o.blocks;
    }
};

UpdateMode make_parallel(int n);
// arbitrary block sequence (must update every cell at least once per period)
UpdateMode make_explicit(int n, const std::vector<std::vector<int>>& blocks);
UpdateMode make_bipartite(int n, bool even_first);
UpdateMode make_sequential(const std::vector<int>& permutation);
UpdateMode make_block_sequential(const std::vector<std::vector<int>>& ordered_blocks);
// conversion phi: B_l = { i_{j, l mod |S_j|} : j }, period = lcm |S_j|
UpdateMode expand_block_parallel(const std::vector<std::vector<int>>& subsequences);
// B_t = { i : t = delta_i mod p_i }, period = lcm p_i
UpdateMode expand_local_clocks(const std::vector<int>& P, const std::vector<int>& D,
                               uint64_t period_cap = kPeriodCap);

// true iff cell is updated at substep t (t mod period)
bool membership(const UpdateMode& mode, int cell, uint64_t t);

// ------------------------------------------------------------ sampling

struct SampleConstraints {
    std::optional<int> bs_blocks;            // BS: exact block count
    std::vector<int> bp_sizes = {1, 2, 3};   // BP: subsequence size menu
    uint64_t bp_lcm_cap = 2520;
    int lc_max_period = 5;                   // LC: p_i in [1, max], at least one = max
};

// counter-based seed split: derive(master, counter) is a documented pure hash
uint64_t derive_seed(uint64_t master, uint64_t counter);

UpdateMode sample_mode(Family family, int n, uint64_t seed,
                       const SampleConstraints& c = {});

// ------------------------------------------------------------ text format
// par:n=K | bip:n=K,first=even|odd | seq:(c0,...) | bs:({..},{..},...)
// bp:{(..),(..),...} | lc:P=(..);D=(..)

UpdateMode load_mode(const std::string& text);
std::string save_mode(const UpdateMode& mode);

}  // namespace eca
