#pragma once

// Error counting and the classical Hamming(7,4) + 16-QAM reference chain.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "lumilink/error.hpp"
#include "lumilink/modem/channel.hpp"
#include "lumilink/modem/hamming.hpp"
#include "lumilink/modem/qam16.hpp"
#include "lumilink/rng.hpp"

namespace lumilink::modem {

struct ErrorRates {
    double ber = 0.0;
    double bler = 0.0;
};

inline ErrorRates measure_error_rates(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits,
                                      std::size_t block_size) {
    lumilink::detail::require(tx_bits.size() == rx_bits.size(), "measure_error_rates: length mismatch");
    lumilink::detail::require(block_size > 0 && tx_bits.size() % block_size == 0,
                              "measure_error_rates: length must be a multiple of the block size");
    if (tx_bits.empty()) return {};
    std::size_t bit_errors = 0, block_errors = 0;
    for (std::size_t b = 0; b < tx_bits.size(); b += block_size) {
        std::size_t in_block = 0;
        for (std::size_t i = b; i < b + block_size; ++i) in_block += (tx_bits[i] & 1u) != (rx_bits[i] & 1u);
        bit_errors += in_block;
        block_errors += in_block > 0;
    }
    return {static_cast<double>(bit_errors) / static_cast<double>(tx_bits.size()),
            static_cast<double>(block_errors) / static_cast<double>(tx_bits.size() / block_size)};
}

template <std::uniform_random_bit_generator Generator>
std::vector<std::uint8_t> random_bits(std::size_t n, Generator& gen) {
    std::vector<std::uint8_t> bits(n);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = gen();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return bits;
}

inline std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
    auto gen = make_rng(seed);
    return random_bits(n, gen);
}

/// Energy per coded complex symbol for a given energy per information bit.
/// Coded chain: 4 info bits -> 7 code bits -> 7/4 symbols, so Es = Eb * 16/7.
inline double ebn0_to_esn0_dB(double eb_n0_dB, bool coded) {
    const double bits_per_symbol = coded ? 4.0 * 4.0 / 7.0 : 4.0;
    return eb_n0_dB + 10.0 * std::log10(bits_per_symbol);
}

/// Hamming(7,4) -> 16-QAM -> AWGN -> hard demap -> syndrome decode.
/// Four codewords (28 bits) fill exactly seven symbols; only a ragged tail is
/// zero-filled. BLER counts 4-bit messages.
inline ErrorRates run_classical_chain(std::span<const std::uint8_t> message_bits, double es_n0_dB,
                                      std::uint64_t seed) {
    lumilink::detail::require(message_bits.size() % 4 == 0, "run_classical_chain: bit count must be a multiple of 4");
    auto coded = hamming74_encode_bits(message_bits);
    const std::size_t coded_len = coded.size();
    coded.resize((coded_len + 3) / 4 * 4, 0);
    const auto rx = awgn(qam16_map(coded), es_n0_dB, seed);
    auto hard = qam16_demap(rx);
    hard.resize(coded_len);
    const auto decoded = hamming74_decode_bits(hard);
    return measure_error_rates(message_bits, decoded, 4);
}

struct UncodedRates {
    double ber = 0.0;
    double ser = 0.0;
};

/// Plain 16-QAM on the raw bits; message length must be a multiple of 4.
inline UncodedRates run_uncoded_chain(std::span<const std::uint8_t> bits, double es_n0_dB, std::uint64_t seed) {
    const auto tx = qam16_map(bits);
    const auto rx_bits = qam16_demap(awgn(tx, es_n0_dB, seed));
    const auto rates = measure_error_rates(bits, rx_bits, 4);
    return {rates.ber, rates.bler};
}

enum class SnrAxis { EsN0, EbN0 };

struct BerPoint {
    double snr_db;
    double ber;
    double bler;
    std::size_t n_bits;
    std::uint64_t seed;
};

struct BerSweepSpec {
    std::vector<double> snr_grid_db;
    SnrAxis axis = SnrAxis::EsN0;
    bool coded = true;
    std::size_t n_bits = 400000;
};

/// Each grid point draws its own bits and noise from derive_seed(master, "modem", index),
/// so points are independent of evaluation order.
inline std::vector<BerPoint> sweep_ber(const BerSweepSpec& spec, std::uint64_t master_seed) {
    lumilink::detail::require(spec.n_bits > 0 && spec.n_bits % 4 == 0, "sweep_ber: n_bits must be a positive multiple of 4");
    std::vector<BerPoint> points;
    for (std::size_t i = 0; i < spec.snr_grid_db.size(); ++i) {
        const double snr = spec.snr_grid_db[i];
        const std::uint64_t seed = derive_seed(master_seed, "modem", i);
        const auto bits = random_bits(spec.n_bits, derive_seed(seed, "bits"));
        const double es_n0 = spec.axis == SnrAxis::EbN0 ? ebn0_to_esn0_dB(snr, spec.coded) : snr;
        ErrorRates r;
        if (spec.coded) {
            r = run_classical_chain(bits, es_n0, derive_seed(seed, "noise"));
        } else {
            const auto u = run_uncoded_chain(bits, es_n0, derive_seed(seed, "noise"));
            r = {u.ber, u.ser};
        }
        points.push_back({snr, r.ber, r.bler, spec.n_bits, seed});
    }
    return points;
}

}  // namespace lumilink::modem
