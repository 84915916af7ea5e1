#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wsnsim/radio.hpp"

using namespace wsnsim;

TEST_CASE("default parameters match the model table") {
    const RadioParams p = default_params();
    CHECK(p.e_ele == 5e-9);
    CHECK(p.e_fs == 10e-12);
    CHECK(p.e_mp == 0.0013e-12);
    CHECK(p.e_init == 0.5);
    CHECK(p.packet_bits == 4000);
    CHECK(p.p_opt == 0.1);
    CHECK(p.epoch_rounds() == 10);
    // sqrt(10e-12 / 0.0013e-12), frozen from an arbitrary-precision check
    CHECK(p.d_crossover == doctest::Approx(87.70580193070293).epsilon(1e-12));
}

TEST_CASE("tx_energy regimes") {
    const RadioParams p = default_params();
    CHECK(tx_energy(p, 4000, 0.0) == doctest::Approx(2.0e-5).epsilon(1e-12));
    // free-space: 4000 * 10e-12 * 2500 = 1.0e-4
    CHECK(tx_energy(p, 4000, 50.0) == doctest::Approx(1.2e-4).epsilon(1e-12));
    // multipath: 100 > crossover, amp = 4000 * 0.0013e-12 * 1e8 = 5.2e-4
    CHECK(tx_energy(p, 4000, 100.0) == doctest::Approx(2.0e-5 + 5.2e-4).epsilon(1e-12));
    CHECK_THROWS_AS(tx_energy(p, 4000, -1.0), std::domain_error);
}

TEST_CASE("tx_energy continuity at the crossover distance") {
    const RadioParams p = default_params();
    const double d = p.d_crossover;
    const double b = 4000.0;
    const double fs_branch = b * p.e_fs * d * d;
    const double mp_branch = b * p.e_mp * (d * d) * (d * d);
    CHECK(std::abs(fs_branch - mp_branch) < 1e-18);
    // at exactly d_crossover the multipath branch is taken
    CHECK(tx_energy(p, 4000, d) == b * p.e_ele + mp_branch);
}

TEST_CASE("tx_energy monotone in distance, linear in bits") {
    const RadioParams p = default_params();
    double prev = -1.0;
    for (double d = 0.0; d <= 150.0; d += 1.3) {
        const double e = tx_energy(p, 4000, d);
        CHECK(e > prev);
        prev = e;
    }
    for (std::int64_t bits : {1, 100, 4000, 8000}) {
        const double per_bit = tx_energy(p, 1, 42.0);
        CHECK(tx_energy(p, bits, 42.0) ==
              doctest::Approx(per_bit * static_cast<double>(bits)).epsilon(1e-12));
    }
}

TEST_CASE("rx_energy") {
    const RadioParams p = default_params();
    CHECK(rx_energy(p, 4000) == doctest::Approx(2.0e-5).epsilon(1e-12));
    CHECK(rx_energy(p, 1) == 5e-9);
    CHECK(rx_energy(p, 8000) == doctest::Approx(4.0e-5).epsilon(1e-12));
}

TEST_CASE("agg_energy") {
    const RadioParams p = default_params();  // e_da = 5e-9
    CHECK(agg_energy(p, 4000, 10) == doctest::Approx(2.0e-4).epsilon(1e-12));
    CHECK(agg_energy(p, 4000, 0) == 0.0);
    CHECK(agg_energy(p, 4000, 1) == doctest::Approx(2.0e-5).epsilon(1e-12));
}

TEST_CASE("ch_round_energy composes bit-exactly from its parts") {
    const RadioParams p = default_params();
    CHECK(ch_round_energy(p, 0, 0.0) == agg_energy(p, 4000, 1) + 2.0e-5);

    const double expected = 9.0 * rx_energy(p, 4000) + agg_energy(p, 4000, 10) +
                            tx_energy(p, 4000, 30.0);
    CHECK(ch_round_energy(p, 9, 30.0) == expected);  // same summation order, bit-exact

    // boundary: the two amplifier branches agree at d_crossover
    const double lo = ch_round_energy(p, 49, std::nextafter(p.d_crossover, 0.0));
    const double hi = ch_round_energy(p, 49, p.d_crossover);
    CHECK(std::abs(lo - hi) < 1e-12);
}

TEST_CASE("non_ch_round_energy equals tx_energy at the packet size") {
    const RadioParams p = default_params();
    CHECK(non_ch_round_energy(p, 0.0) == doctest::Approx(2.0e-5).epsilon(1e-12));
    CHECK(non_ch_round_energy(p, 50.0) == doctest::Approx(1.2e-4).epsilon(1e-12));
    CHECK(non_ch_round_energy(p, p.d_crossover) == tx_energy(p, 4000, p.d_crossover));
}

TEST_CASE("parameter validation") {
    RadioParams p = default_params();
    p.p_opt = 1.5;
    CHECK_THROWS_AS(p.finalize(), std::invalid_argument);
    p = default_params();
    p.e_fs = 0.0;
    CHECK_THROWS_AS(p.finalize(), std::invalid_argument);
}
