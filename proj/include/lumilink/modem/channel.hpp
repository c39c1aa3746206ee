#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "lumilink/error.hpp"
#include "lumilink/iq.hpp"
#include "lumilink/rng.hpp"

namespace lumilink::modem {

/// Pass as es_n0_dB to request a noiseless channel.
inline constexpr double kNoiselessSnr = std::numeric_limits<double>::infinity();

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Adds circular Gaussian noise with N0 = avg_energy / (Es/N0), N0/2 per component.
template <std::uniform_random_bit_generator Generator>
IqFrame awgn(const IqFrame& frame, double es_n0_dB, Generator& gen) {
    if (es_n0_dB == kNoiselessSnr) return frame;
    lumilink::detail::require(std::isfinite(es_n0_dB), "awgn: Es/N0 must be finite or +inf");
    const double n0 = frame.avg_energy() / db_to_linear(es_n0_dB);
    std::normal_distribution<double> normal(0.0, std::sqrt(n0 / 2.0));
    std::vector<Complex> out(frame.samples().begin(), frame.samples().end());
    for (auto& s : out) {
        const double re = normal(gen);
        const double im = normal(gen);
        s += Complex(re, im);
    }
    return IqFrame(std::move(out));
}

inline IqFrame awgn(const IqFrame& frame, double es_n0_dB, std::uint64_t seed) {
    auto gen = make_rng(seed);
    return awgn(frame, es_n0_dB, gen);
}

/// Reverse biasing the PV junction widens the -3 dB bandwidth by up to 60 %.
inline constexpr double kReverseBiasBandwidthGain = 1.6;

struct PvChannelModel {
    double f3db_hz;
    bool reverse_biased = false;
    double sample_rate_hz;

    double effective_f3db_hz() const noexcept {
        return reverse_biased ? f3db_hz * kReverseBiasBandwidthGain : f3db_hz;
    }

    void validate() const {
        lumilink::detail::require(f3db_hz > 0.0 && sample_rate_hz > 0.0,
                                  "PvChannelModel: bandwidth and sample rate must be positive");
        lumilink::detail::require(effective_f3db_hz() < sample_rate_hz / 2.0,
                                  "PvChannelModel: effective -3 dB bandwidth must be below Nyquist");
    }
};

/// First-order IIR from the bilinear transform of 1 / (1 + s/wc), prewarped so
/// the digital response is exactly -3.01 dB at the effective cutoff.
struct OnePoleLowpass {
    double b0;  // = b1
    double a1;

    explicit OnePoleLowpass(const PvChannelModel& model) {
        model.validate();
        const double k = std::tan(std::numbers::pi * model.effective_f3db_hz() / model.sample_rate_hz);
        b0 = k / (1.0 + k);
        a1 = (k - 1.0) / (1.0 + k);
    }

    /// |H(e^{jw})| at frequency f.
    double magnitude(double f_hz, double sample_rate_hz) const {
        const Complex z = std::polar(1.0, -2.0 * std::numbers::pi * f_hz / sample_rate_hz);
        return std::abs(b0 * (1.0 + z) / (1.0 + a1 * z));
    }
};

/// Low-pass the I and Q streams independently; filter state starts at rest.
inline IqFrame pv_lowpass(const IqFrame& frame, const PvChannelModel& model) {
    const OnePoleLowpass filter(model);
    std::vector<Complex> out;
    out.reserve(frame.size());
    Complex x_prev{}, y_prev{};
    for (const auto& x : frame.samples()) {
        const Complex y = filter.b0 * (x + x_prev) - filter.a1 * y_prev;
        out.push_back(y);
        x_prev = x;
        y_prev = y;
    }
    return IqFrame(std::move(out));
}

}  // namespace lumilink::modem
