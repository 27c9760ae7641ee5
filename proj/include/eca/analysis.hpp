#pragma once
// Wall detection, max-cycle scaling and regime classification, primorial h(n),
// and crafted lcm configurations for the wall-bearing rules.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "eca/dynamics.hpp"

namespace eca {

struct InsufficientData : EcaError { using EcaError::EcaError; };
struct UnsupportedRule : EcaError { using EcaError::EcaError; };
struct DoesNotFit : EcaError { using EcaError::EcaError; };

// ------------------------------------------------------------ walls

// All u in B^k such that every cell of u is fixed by the rule under every
// assignment of the two out-of-word neighbor bits.  This per-cell condition is
// schedule-independent, hence "absolute".
std::vector<std::string> find_absolute_walls(Rule rule, int k);

// True iff, for every embedding position (word + mode rotated together) and
// every context filling of the other n-|word| cells, the word's cells re-read
// their original values at every step boundary for t_max steps.
bool verify_relative_wall(Rule rule, const UpdateMode& mode,
                          const std::string& word, int n, int t_max = 20);

// ------------------------------------------------------------ scaling

enum class Regime { Constant, Linear, Superpolynomial, Unknown };
std::string regime_name(Regime r);

struct ScalingRecord {
    int rule_code = 0;
    Family family = Family::PAR;
    std::vector<std::pair<int, uint64_t>> points;  // (n, max_cycle), sorted by n
    Regime regime = Regime::Unknown;
};

struct RegimeThresholds {
    uint64_t constant_bound = 8;      // constant: all points <= max(bound, first point)
    double linear_lo = 0.2, linear_hi = 4.0;  // linear: max_cycle/n in band at all n
    // superpolynomial: r(n) = log2(max_cycle)/sqrt(n*log2(n)) satisfies
    // r(last) >= coefficient and r(last) >= r(first)
    double super_coefficient = 0.6;
};

Regime classify_regime(const std::vector<std::pair<int, uint64_t>>& points,
                       const RegimeThresholds& th = {});

// exhaustive for PAR/BIP; otherwise modes_per_n samples per ring size
ScalingRecord max_cycle_scaling(Rule rule, Family family,
                                const SampleConstraints& constraints,
                                const std::vector<int>& n_values, int modes_per_n,
                                uint64_t seed);

// ------------------------------------------------------------ primorial

// h(n): maximal product of distinct primes whose sum is <= n
mpz_class primorial(long n);
mpz_class primorial_bruteforce(long n);  // subset enumeration oracle, n <= 60
double log2_mpz(const mpz_class& v);

// ------------------------------------------------------------ crafted configs

struct CraftedConfig {
    Config config;
    UpdateMode mode;
    uint64_t expected_cycle = 0;  // simulated global cycle length
};

// Wall-delimited segments of the given lengths under a wall-preserving mode.
// Supported rules: 156, 178, 184, 1, 9, 73, 108, 110.
CraftedConfig craft_lcm_config(Rule rule, int n, const std::vector<int>& segments);

}  // namespace eca
