#pragma once

// Systematic Hamming(7,4). Codeword bit order d1 d2 d3 d4 p1 p2 p3 with
//   p1 = d1^d2^d4,  p2 = d1^d3^d4,  p3 = d2^d3^d4.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lumilink/error.hpp"

namespace lumilink::modem {

/// Four data bits; bit 3 (MSB) is d1.
class Message4 {
public:
    constexpr Message4() = default;
    constexpr explicit Message4(unsigned value) : value_(static_cast<std::uint8_t>(value)) {
        if (value > 15) throw DomainError("Message4: value must be in [0, 15]");
    }
    constexpr std::uint8_t value() const noexcept { return value_; }
    constexpr int bit(int i) const noexcept { return (value_ >> (3 - i)) & 1; }  // i = 0 is d1
    friend constexpr bool operator==(Message4, Message4) = default;

private:
    std::uint8_t value_ = 0;
};

/// Seven code bits; bit 6 (MSB) is d1, bit 0 is p3.
class Codeword7 {
public:
    constexpr Codeword7() = default;
    constexpr explicit Codeword7(unsigned value) : value_(static_cast<std::uint8_t>(value)) {
        if (value > 127) throw DomainError("Codeword7: value must be in [0, 127]");
    }
    constexpr std::uint8_t value() const noexcept { return value_; }
    constexpr int bit(int i) const noexcept { return (value_ >> (6 - i)) & 1; }  // i = 0 is d1
    constexpr Codeword7 flipped(int i) const { return Codeword7(value_ ^ (1u << (6 - i))); }
    friend constexpr Codeword7 operator^(Codeword7 a, Codeword7 b) { return Codeword7(a.value_ ^ b.value_); }
    friend constexpr bool operator==(Codeword7, Codeword7) = default;

private:
    std::uint8_t value_ = 0;
};

constexpr int hamming_distance(Codeword7 a, Codeword7 b) noexcept {
    unsigned x = static_cast<unsigned>(a.value() ^ b.value());
    int n = 0;
    for (; x; x &= x - 1) ++n;
    return n;
}

constexpr Codeword7 hamming74_encode(Message4 msg) {
    const int d1 = msg.bit(0), d2 = msg.bit(1), d3 = msg.bit(2), d4 = msg.bit(3);
    const int p1 = d1 ^ d2 ^ d4;
    const int p2 = d1 ^ d3 ^ d4;
    const int p3 = d2 ^ d3 ^ d4;
    return Codeword7(static_cast<unsigned>(msg.value() << 3 | p1 << 2 | p2 << 1 | p3));
}

/// Parity-check columns per codeword position, as 3-bit syndromes (s1 s2 s3).
inline constexpr std::array<std::uint8_t, 7> kSyndromeColumns{0b110, 0b101, 0b011, 0b111, 0b100, 0b010, 0b001};

constexpr std::uint8_t syndrome(Codeword7 word) noexcept {
    std::uint8_t s = 0;
    for (int i = 0; i < 7; ++i)
        if (word.bit(i)) s ^= kSyndromeColumns[static_cast<std::size_t>(i)];
    return s;
}

struct DecodeResult {
    Message4 message;
    bool corrected;
};

/// Syndrome decoding; a nonzero syndrome flips the matching position.
constexpr DecodeResult hamming74_decode(Codeword7 word) {
    const std::uint8_t s = syndrome(word);
    if (s != 0) {
        for (int i = 0; i < 7; ++i)
            if (kSyndromeColumns[static_cast<std::size_t>(i)] == s) {
                word = word.flipped(i);
                break;
            }
    }
    return {Message4(static_cast<unsigned>(word.value() >> 3)), s != 0};
}

/// Bit-stream form: every 4 input bits (0/1 bytes) become 7 output bits.
inline std::vector<std::uint8_t> hamming74_encode_bits(std::span<const std::uint8_t> bits) {
    detail::require(bits.size() % 4 == 0, "hamming74_encode_bits: bit count must be a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(bits.size() / 4 * 7);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned v = 0;
        for (std::size_t j = 0; j < 4; ++j) v = v << 1 | (bits[i + j] & 1u);
        const auto cw = hamming74_encode(Message4(v));
        for (int j = 0; j < 7; ++j) out.push_back(static_cast<std::uint8_t>(cw.bit(j)));
    }
    return out;
}

inline std::vector<std::uint8_t> hamming74_decode_bits(std::span<const std::uint8_t> bits) {
    detail::require(bits.size() % 7 == 0, "hamming74_decode_bits: bit count must be a multiple of 7");
    std::vector<std::uint8_t> out;
    out.reserve(bits.size() / 7 * 4);
    for (std::size_t i = 0; i < bits.size(); i += 7) {
        unsigned v = 0;
        for (std::size_t j = 0; j < 7; ++j) v = v << 1 | (bits[i + j] & 1u);
        const auto msg = hamming74_decode(Codeword7(v)).message;
        for (int j = 0; j < 4; ++j) out.push_back(static_cast<std::uint8_t>(msg.bit(j)));
    }
    return out;
}

}  // namespace lumilink::modem
