#pragma once

// Gray-labelled square 16-QAM at unit average energy. A 4-bit label b0 b1 b2 b3
// puts (b0, b1) on the in-phase axis and (b2, b3) on quadrature, each pair
// Gray-coded 00, 01, 11, 10 -> -3, -1, +1, +3 before scaling by 1/sqrt(10).

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "lumilink/error.hpp"
#include "lumilink/iq.hpp"

namespace lumilink::modem {

inline constexpr int kQam16BitsPerSymbol = 4;

namespace detail {

constexpr double gray_level(unsigned pair) {
    switch (pair & 3u) {
        case 0b00: return -3.0;
        case 0b01: return -1.0;
        case 0b11: return 1.0;
        default: return 3.0;
    }
}

inline std::array<Complex, 16> make_qam16() {
    std::array<Complex, 16> points{};
    const double scale = 1.0 / std::sqrt(10.0);
    for (unsigned label = 0; label < 16; ++label)
        points[label] = Complex(gray_level(label >> 2) * scale, gray_level(label) * scale);
    return points;
}

}  // namespace detail

/// Constellation indexed by 4-bit label.
inline const std::array<Complex, 16>& qam16_constellation() {
    static const auto points = detail::make_qam16();
    return points;
}

/// Maps bits (one 0/1 byte per bit, first bit is label MSB) to unit-energy symbols.
inline IqFrame qam16_map(std::span<const std::uint8_t> bits) {
    lumilink::detail::require(bits.size() % kQam16BitsPerSymbol == 0,
                              "qam16_map: bit count must be a multiple of 4");
    const auto& points = qam16_constellation();
    std::vector<Complex> symbols;
    symbols.reserve(bits.size() / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned label = 0;
        for (std::size_t j = 0; j < 4; ++j) label = label << 1 | (bits[i + j] & 1u);
        symbols.push_back(points[label]);
    }
    return IqFrame(std::move(symbols));
}

/// Minimum-distance hard decision; exact ties resolve to the lowest label.
inline unsigned qam16_decide(Complex sample) {
    const auto& points = qam16_constellation();
    unsigned best = 0;
    double best_d = std::norm(sample - points[0]);
    for (unsigned label = 1; label < 16; ++label) {
        const double d = std::norm(sample - points[label]);
        if (d < best_d) {
            best_d = d;
            best = label;
        }
    }
    return best;
}

inline std::vector<unsigned> qam16_decide_all(const IqFrame& frame) {
    std::vector<unsigned> labels;
    labels.reserve(frame.size());
    for (const auto& s : frame.samples()) labels.push_back(qam16_decide(s));
    return labels;
}

inline std::vector<std::uint8_t> qam16_demap(const IqFrame& frame) {
    std::vector<std::uint8_t> bits;
    bits.reserve(frame.size() * 4);
    for (const auto& s : frame.samples()) {
        const unsigned label = qam16_decide(s);
        for (int j = 3; j >= 0; --j) bits.push_back(static_cast<std::uint8_t>((label >> j) & 1u));
    }
    return bits;
}

/// Q(x) = P(N(0,1) > x).
inline double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Square 16-QAM symbol error probability on AWGN: 3 Q(a) (1 - 3/4 Q(a)), a = sqrt(Es / (5 N0)).
inline double qam16_ser_theory(double es_n0_dB) {
    const double q = gaussian_q(std::sqrt(std::pow(10.0, es_n0_dB / 10.0) / 5.0));
    return 3.0 * q * (1.0 - 0.75 * q);
}

}  // namespace lumilink::modem
