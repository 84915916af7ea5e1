#include "wsnsim/radio.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wsnsim {

void RadioParams::finalize() {
    if (e_ele <= 0 || e_fs <= 0 || e_mp <= 0 || e_da <= 0 || e_init <= 0) {
        throw std::invalid_argument("radio: all energy coefficients must be strictly positive");
    }
    if (packet_bits <= 0) {
        throw std::invalid_argument("radio: packet_bits must be positive");
    }
    if (p_opt <= 0.0 || p_opt > 1.0) {
        throw std::invalid_argument("radio: p_opt must lie in (0, 1], got " +
                                    std::to_string(p_opt));
    }
    if (std::llround(1.0 / p_opt) < 1) {
        throw std::invalid_argument("radio: 1/p_opt must round to a positive epoch length");
    }
    d_crossover = std::sqrt(e_fs / e_mp);
}

int RadioParams::epoch_rounds() const {
    return static_cast<int>(std::llround(1.0 / p_opt));
}

RadioParams default_params() {
    RadioParams p;
    p.finalize();
    return p;
}

double tx_energy(const RadioParams& p, std::int64_t bits, double distance) {
    if (distance < 0.0) {
        throw std::domain_error("tx_energy: negative distance");
    }
    const double b = static_cast<double>(bits);
    double amp;
    if (distance < p.d_crossover) {
        amp = b * p.e_fs * distance * distance;
    } else {
        const double d2 = distance * distance;
        amp = b * p.e_mp * d2 * d2;
    }
    return b * p.e_ele + amp;
}

double rx_energy(const RadioParams& p, std::int64_t bits) {
    return static_cast<double>(bits) * p.e_ele;
}

double agg_energy(const RadioParams& p, std::int64_t bits, std::int64_t signals) {
    return static_cast<double>(bits) * p.e_da * static_cast<double>(signals);
}

double ch_round_energy(const RadioParams& p, std::int64_t member_count, double d_bs) {
    // Fixed summation order: reception, aggregation, transmission.
    double e = static_cast<double>(member_count) * rx_energy(p, p.packet_bits);
    e += agg_energy(p, p.packet_bits, member_count + 1);
    e += tx_energy(p, p.packet_bits, d_bs);
    return e;
}

double ch_round_energy_mean(const RadioParams& p, double mean_members, double d_bs) {
    double e = mean_members * rx_energy(p, p.packet_bits);
    e += static_cast<double>(p.packet_bits) * p.e_da * (mean_members + 1.0);
    e += tx_energy(p, p.packet_bits, d_bs);
    return e;
}

double non_ch_round_energy(const RadioParams& p, double d_target) {
    return tx_energy(p, p.packet_bits, d_target);
}

}  // namespace wsnsim
