#include <doctest.h>

#include <cmath>

#include "eca/measures.hpp"

using namespace eca;

TEST_CASE("density and energy on named configurations") {
    CHECK(density(parse_config("0000")) == 0.0);
    CHECK(density(parse_config("1111")) == 1.0);
    CHECK(density(parse_config("0011")) == 0.5);

    CHECK(energy_int(parse_config("0000")) == -4);
    CHECK(energy_int(parse_config("1111")) == -4);
    CHECK(normalized_energy(parse_config("000000")) == -1.0);
    CHECK(energy_int(parse_config("0101")) == 4);
    CHECK(normalized_energy(parse_config("010101")) == 1.0);
    CHECK(energy_int(parse_config("0011")) == 0);  // two domain walls
    CHECK(energy_int(parse_config("00110000")) == -4);
    CHECK_THROWS_AS(energy_int(parse_config("1")), RingTooSmall);
}

TEST_CASE("energy agrees with the per-cell sum on wide rings") {
    Config c(130);
    for (int i = 0; i < 130; ++i) c.set(i, (i * i + i / 3) % 7 < 3);
    long e = 0;
    for (int i = 0; i < 130; ++i) {
        int xi = c.get(i), l = c.get((i + 129) % 130), r = c.get((i + 1) % 130);
        e += (1 - 2 * xi) * ((2 * l - 1) + (2 * r - 1));
    }
    CHECK(energy_int(c) == e / 2);
}

TEST_CASE("sample_configs: deterministic, unbiased") {
    auto a = sample_configs(64, 200, 77);
    auto b = sample_configs(64, 200, 77);
    REQUIRE(a.size() == 200);
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    double mean = 0;
    for (const auto& c : a) mean += density(c);
    mean /= 200;
    CHECK(std::abs(mean - 0.5) < 0.02);  // ~4.5 sigma for Bernoulli(1/2)^64

    auto c = sample_configs(100, 10, 3);
    for (const auto& x : c)
        for (int i = 100; i < 256; ++i) CHECK(x.get(i) == 0);
}

TEST_CASE("variance across modes") {
    std::vector<std::vector<double>> two{{0.4, 0.4, 0.4}, {0.6, 0.6, 0.6}};
    for (double v : variance_across_modes(two)) CHECK(v == doctest::Approx(0.02));
    std::vector<std::vector<double>> same{{0.3, 0.1}, {0.3, 0.1}, {0.3, 0.1}};
    for (double v : variance_across_modes(same)) CHECK(v < 1e-30);
    CHECK_THROWS_AS(variance_across_modes({{0.1, 0.2}}), InsufficientSeries);
    CHECK_THROWS_AS(variance_across_modes({{0.1}, {0.1, 0.2}}), InsufficientSeries);
}

TEST_CASE("rule 150: exhaustive ensembles are flat and mode-independent") {
    ConfigSource src;
    src.exhaustive = true;
    MeasureSeries s = run_series(Rule(150), Family::SEQ, {}, 12, src, 3, 20, 11);
    REQUIRE(s.mean_density.size() == 21);
    for (int t = 0; t <= 20; ++t) {
        CHECK(std::abs(s.mean_density[static_cast<size_t>(t)] - 0.5) < 1e-12);
        CHECK(std::abs(s.mean_norm_energy[static_cast<size_t>(t)]) < 1e-12);
        CHECK(s.var_density[static_cast<size_t>(t)] < 1e-12);
        CHECK(s.var_norm_energy[static_cast<size_t>(t)] < 1e-12);
    }
}

TEST_CASE("run_series: reproducible, sampled path consistent across widths") {
    ConfigSource src;
    src.sample_size = 16;
    MeasureSeries a = run_series(Rule(110), Family::BS, {}, 38, src, 2, 10, 5);
    MeasureSeries b = run_series(Rule(110), Family::BS, {}, 38, src, 2, 10, 5);
    CHECK(a.mean_density == b.mean_density);
    CHECK(a.per_mode_norm_energy == b.per_mode_norm_energy);
    CHECK(a.s == 16);
    CHECK_FALSE(a.exhaustive);
    CHECK_THROWS_AS(run_series(Rule(110), Family::BS, {}, 38,
                               ConfigSource{true, 0}, 2, 10, 5),
                    BudgetExceeded);
}
