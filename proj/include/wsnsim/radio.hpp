#pragma once

#include <cstdint>

namespace wsnsim {

// Physical constants of the first-order radio model plus the derived
// amplifier crossover distance. All energies in joules, distances in meters.
struct RadioParams {
    double e_ele = 5e-9;          // electronics energy, J/bit (tx and rx)
    double e_fs = 10e-12;         // free-space amplifier, J/bit/m^2
    double e_mp = 0.0013e-12;     // multipath amplifier, J/bit/m^4
    double e_da = 5e-9;           // aggregation energy, J/bit/signal
    double e_init = 0.5;          // initial node energy, J
    std::int64_t packet_bits = 4000;
    double p_opt = 0.1;           // CH probability per round
    double d_crossover = 0.0;     // sqrt(e_fs / e_mp), set by finalize()

    // Recomputes d_crossover from the amplifier coefficients and validates
    // the parameter ranges. Throws std::invalid_argument on bad values.
    void finalize();

    // Epoch length in rounds, round(1/p_opt).
    int epoch_rounds() const;
};

RadioParams default_params();

// Energy to transmit `bits` over `distance` meters: electronics plus the
// amplifier term. Free-space (d^2) below the crossover distance, multipath
// (d^4) at or above it. Throws std::domain_error for negative distance.
double tx_energy(const RadioParams& p, std::int64_t bits, double distance);

// Energy to receive `bits`.
double rx_energy(const RadioParams& p, std::int64_t bits);

// Energy to aggregate `signals` packets of `bits` each.
double agg_energy(const RadioParams& p, std::int64_t bits, std::int64_t signals);

// Full per-round cost of a cluster head with `member_count` members at
// distance `d_bs` from the base station. Summation order is fixed:
// reception, aggregation, transmission.
double ch_round_energy(const RadioParams& p, std::int64_t member_count, double d_bs);

// Same composition priced at a fractional expected cluster size (n/k).
double ch_round_energy_mean(const RadioParams& p, double mean_members, double d_bs);

// Per-round cost of a non-CH transmitter sending to a target at `d_target`
// (the cluster head for members, the base station for direct senders).
double non_ch_round_energy(const RadioParams& p, double d_target);

}  // namespace wsnsim
