#include <doctest.h>

#include <cmath>
#include <numeric>

#include "eca/analysis.hpp"

using namespace eca;
using Points = std::vector<std::pair<int, uint64_t>>;

TEST_CASE("absolute walls: exact sets for the wall-bearing rules") {
    CHECK(find_absolute_walls(Rule(156), 2) == std::vector<std::string>{"01"});
    // 000 also satisfies the per-cell condition: f(a00)=f(000)=f(00b)=0
    CHECK(find_absolute_walls(Rule(108), 3) ==
          std::vector<std::string>{"000", "100", "001"});
    CHECK(find_absolute_walls(Rule(73), 4) == std::vector<std::string>{"0110"});

    // rule 1's 010/000 and rule 178's 01/10 are only schedule-relative
    auto r1 = find_absolute_walls(Rule(1), 3);
    for (const auto& w : r1) {
        CHECK(w != "010");
        CHECK(w != "000");
    }
    auto r178 = find_absolute_walls(Rule(178), 2);
    for (const auto& w : r178) {
        CHECK(w != "01");
        CHECK(w != "10");
    }
}

TEST_CASE("relative walls: absolute words hold under any mode") {
    CHECK(verify_relative_wall(Rule(156), make_bipartite(8, true), "01", 8));
    CHECK(verify_relative_wall(Rule(156), load_mode("seq:(3,0,5,1,7,2,4,6)"), "01", 8));
    CHECK(verify_relative_wall(Rule(108), make_parallel(9), "001", 9));
}

TEST_CASE("relative walls: 184 and 178 need the crafted block-parallel order") {
    CraftedConfig c184 = craft_lcm_config(Rule(184), 10, {6});
    CHECK(verify_relative_wall(Rule(184), c184.mode, "0011", 10));
    std::vector<int> id(10);
    std::iota(id.begin(), id.end(), 0);
    CHECK_FALSE(verify_relative_wall(Rule(184), make_sequential(id), "0011", 10));

    CraftedConfig c178 = craft_lcm_config(Rule(178), 8, {6});
    CHECK(verify_relative_wall(Rule(178), c178.mode, "01", 8));
    CHECK(verify_relative_wall(Rule(178), c178.mode, "10", 8));
    CHECK_FALSE(verify_relative_wall(Rule(178), make_parallel(8), "01", 8));
}

TEST_CASE("regime classification thresholds") {
    CHECK(classify_regime({{4, 1}, {6, 1}, {8, 1}, {10, 1}}) == Regime::Constant);
    CHECK(classify_regime({{4, 2}, {6, 2}, {8, 2}, {10, 2}}) == Regime::Constant);
    CHECK(classify_regime({{6, 6}, {8, 8}, {10, 10}, {12, 12}}) == Regime::Linear);
    // frozen exhaustive bipartite maxima for rule 156, n = 8..16
    Points p156{{8, 7},  {9, 12},  {10, 15}, {11, 20}, {12, 21},
                {13, 30}, {14, 35}, {15, 60}, {16, 45}};
    CHECK(classify_regime(p156) == Regime::Superpolynomial);
    CHECK_THROWS_AS(classify_regime({{4, 1}, {6, 1}, {8, 1}}), InsufficientData);
}

TEST_CASE("max-cycle scaling: identity rule is constant everywhere") {
    ScalingRecord rec =
        max_cycle_scaling(Rule(204), Family::PAR, {}, {4, 6, 8, 10}, 1, 1);
    for (const auto& [n, c] : rec.points) CHECK(c == 1);
    CHECK(rec.regime == Regime::Constant);

    ScalingRecord seq =
        max_cycle_scaling(Rule(204), Family::SEQ, {}, {4, 6, 8, 10}, 5, 2);
    for (const auto& [n, c] : seq.points) CHECK(c == 1);
}

TEST_CASE("primorial h(n): exact values and brute-force agreement") {
    CHECK(primorial(0) == 1);
    CHECK(primorial(1) == 1);
    CHECK(primorial(2) == 2);
    CHECK(primorial(10) == 30);
    CHECK(primorial(100) == mpz_class("223092870"));
    for (long n : {0L, 5L, 13L, 27L, 41L, 60L})
        CHECK(primorial(n) == primorial_bruteforce(n));
    mpz_class prev = 1;
    for (long n = 1; n <= 200; ++n) {
        mpz_class h = primorial(n);
        CHECK(h >= prev);
        prev = h;
    }
    double ratio = log2_mpz(primorial(1000)) /
                   std::sqrt(1000.0 * std::log2(1000.0));
    CHECK(ratio > 0.6);
    CHECK(ratio < 1.3);
}

TEST_CASE("crafted configurations: rule 156 segment law") {
    for (int k : {2, 4, 6, 8})
        CHECK(craft_lcm_config(Rule(156), k + 2, {k}).expected_cycle ==
              static_cast<uint64_t>(k + 1));
    for (int k : {1, 3, 5, 7})
        CHECK(craft_lcm_config(Rule(156), 2 * (k + 2), {k, k}).expected_cycle ==
              static_cast<uint64_t>(k + 1));
    CHECK(craft_lcm_config(Rule(156), 12, {3, 5}).expected_cycle == 12);
}

TEST_CASE("crafted configurations: rule 108 under the sequential identity") {
    for (int k : {2, 4, 6, 8})
        CHECK(craft_lcm_config(Rule(108), k + 6, {k}).expected_cycle ==
              static_cast<uint64_t>(k + 1));
    CHECK(craft_lcm_config(Rule(108), 9, {3}).expected_cycle == 3);
    CHECK(craft_lcm_config(Rule(108), 11, {5}).expected_cycle == 8);
    CHECK(craft_lcm_config(Rule(108), 13, {7}).expected_cycle == 10);
}

TEST_CASE("crafted configurations: rule 73 cycles compose by lcm") {
    for (int k : {2, 4, 6})
        CHECK(craft_lcm_config(Rule(73), k + 6, {k}).expected_cycle ==
              static_cast<uint64_t>(3 * k - 1));
    CHECK(craft_lcm_config(Rule(73), 18, {2, 4}).expected_cycle == 55);   // lcm(5,11)
    CHECK(craft_lcm_config(Rule(73), 22, {4, 6}).expected_cycle == 187);  // lcm(11,17)
}

TEST_CASE("crafted configurations: rules 178, 1, 9") {
    for (int k : {3, 5, 7})
        CHECK(craft_lcm_config(Rule(178), k + 2, {k}).expected_cycle ==
              static_cast<uint64_t>(k));
    CHECK(craft_lcm_config(Rule(178), 12, {3, 5}).expected_cycle == 15);
    CHECK(craft_lcm_config(Rule(178), 14, {3, 7}).expected_cycle == 21);
    CHECK(craft_lcm_config(Rule(178), 16, {5, 7}).expected_cycle == 35);

    for (int code : {1, 9})
        for (int k : {3, 5, 7, 9})
            CHECK(craft_lcm_config(Rule(code), k + 7, {k}).expected_cycle ==
                  static_cast<uint64_t>((3 * k + 5) / 2));
    CHECK(craft_lcm_config(Rule(110), 10, {3}).expected_cycle >= 1);
}

TEST_CASE("crafted configurations: validation") {
    CHECK_THROWS_AS(craft_lcm_config(Rule(30), 10, {6}), UnsupportedRule);
    CHECK_THROWS_AS(craft_lcm_config(Rule(156), 9, {3}), DoesNotFit);
    CHECK_THROWS_AS(craft_lcm_config(Rule(73), 12, {3}), DoesNotFit);
    CHECK_THROWS_AS(craft_lcm_config(Rule(1), 20, {3, 5}), DoesNotFit);
    CHECK_THROWS_AS(craft_lcm_config(Rule(156), 10, {}), DoesNotFit);
}
