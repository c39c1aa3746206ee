#pragma once

// Two time-synchronized ground receivers, separated by d, see the same downlink
// frame through independent atmospheric phase delays. The differential phase is
// estimated from the streams themselves and removed before equal-gain combining.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "lumilink/atmosphere.hpp"
#include "lumilink/error.hpp"
#include "lumilink/iq.hpp"
#include "lumilink/modem/chain.hpp"
#include "lumilink/modem/channel.hpp"
#include "lumilink/modem/qam16.hpp"
#include "lumilink/rng.hpp"

namespace lumilink::diversity {

inline constexpr std::size_t kMinFrameSymbols = 64;

struct DiversityScenario {
    atmosphere::PhaseVarianceInputs path{20000.0, 20000.0, 40.0 * std::numbers::pi / 180.0,
                                         atmosphere::OpticalCarrier(620e-9)};
    atmosphere::CnProfile profile{};
    double es_n0_dB = 8.0;  // per receiver
    std::size_t frame_symbols = 1024;
    std::uint64_t seed = 1;

    double separation_m() const noexcept { return path.separation_m; }

    void validate() const {
        path.validate();
        profile.validate();
        detail::require(frame_symbols >= kMinFrameSymbols, "DiversityScenario: frame must hold at least 64 symbols");
        detail::require(!std::isnan(es_n0_dB), "DiversityScenario: Es/N0 must be a number");
    }
};

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double phi) {
    double w = std::remainder(phi, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

inline IqFrame rotate(const IqFrame& frame, double phase) {
    const Complex r = std::polar(1.0, phase);
    std::vector<Complex> out(frame.samples().begin(), frame.samples().end());
    for (auto& s : out) s *= r;
    return IqFrame(std::move(out));
}

struct TwoPathObservation {
    IqFrame rx1;
    IqFrame rx2;
    double phi1;
    double phi2;
    double true_dphi;  // phi1 - phi2, unwrapped; for test oracles only
};

/// Rotates the frame by e^{i phi1} and e^{i phi2} and adds independent AWGN to each.
/// Phases come from the atmosphere module's pair sampler.
inline TwoPathObservation simulate_two_paths(const IqFrame& frame, const DiversityScenario& scenario,
                                             const atmosphere::PhasePairSampler& sampler) {
    auto phase_gen = make_rng(derive_seed(scenario.seed, "diversity-phase"));
    const auto [phi1, phi2] = sampler(phase_gen);
    auto rx1 = modem::awgn(rotate(frame, phi1), scenario.es_n0_dB, derive_seed(scenario.seed, "diversity-noise", 1));
    auto rx2 = modem::awgn(rotate(frame, phi2), scenario.es_n0_dB, derive_seed(scenario.seed, "diversity-noise", 2));
    return {std::move(rx1), std::move(rx2), phi1, phi2, phi1 - phi2};
}

inline TwoPathObservation simulate_two_paths(const IqFrame& frame, const DiversityScenario& scenario) {
    scenario.validate();
    return simulate_two_paths(frame, scenario, atmosphere::PhasePairSampler(scenario.path, scenario.profile));
}

/// arg( sum rx1 * conj(rx2) ), in (-pi, pi].
inline double estimate_differential_phase(const IqFrame& rx1, const IqFrame& rx2) {
    detail::require(rx1.size() == rx2.size(), "estimate_differential_phase: length mismatch");
    detail::require(rx1.size() >= kMinFrameSymbols, "estimate_differential_phase: need at least 64 samples");
    Complex acc{};
    for (std::size_t i = 0; i < rx1.size(); ++i) acc += rx1[i] * std::conj(rx2[i]);
    return wrap_phase(std::arg(acc));
}

/// (rx1 + rx2 e^{i dphi}) / 2: de-rotate receiver 2 onto receiver 1, equal gains.
inline IqFrame combine(const IqFrame& rx1, const IqFrame& rx2, double estimated_dphi) {
    detail::require(rx1.size() == rx2.size(), "combine: length mismatch");
    const Complex r = std::polar(1.0, estimated_dphi);
    std::vector<Complex> out(rx1.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (rx1[i] + rx2[i] * r);
    return IqFrame(std::move(out));
}

/// Signal-to-error power ratio of `rx` against the reference frame, in dB.
inline double measured_snr_dB(const IqFrame& reference, const IqFrame& rx) {
    detail::require(reference.size() == rx.size() && !rx.empty(), "measured_snr_dB: length mismatch");
    double err = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) err += std::norm(rx[i] - reference[i]);
    err /= static_cast<double>(rx.size());
    return 10.0 * std::log10(reference.avg_energy() / err);
}

struct CombinerOutput {
    double estimated_dphi;
    IqFrame combined;
    double snr_single_dB;    // receiver 1
    double snr_combined_dB;
};

struct DiversityResult {
    CombinerOutput output;
    double true_dphi;
    double snr_rx2_dB;
    double ber_rx1;
    double ber_rx2;
    double ber_combined;

    double best_single_ber() const noexcept { return std::min(ber_rx1, ber_rx2); }
};

/// Random 16-QAM frame -> two paths -> estimate -> combine -> demap.
/// Carrier phase of receiver 1 is taken as the common reference (ideal carrier
/// recovery), so each stream is de-rotated by its own absolute phase before
/// the hard decision; combining itself only uses the estimated differential.
inline DiversityResult run_diversity_experiment(const DiversityScenario& scenario,
                                                const atmosphere::PhasePairSampler& sampler) {
    scenario.validate();
    const auto bits = modem::random_bits(scenario.frame_symbols * 4, derive_seed(scenario.seed, "diversity-bits"));
    const auto tx = modem::qam16_map(bits);
    const auto obs = simulate_two_paths(tx, scenario, sampler);

    const double est = estimate_differential_phase(obs.rx1, obs.rx2);
    auto combined = combine(obs.rx1, obs.rx2, est);

    const auto aligned1 = rotate(obs.rx1, -obs.phi1);
    const auto aligned2 = rotate(obs.rx2, -obs.phi2);
    const auto aligned_c = rotate(combined, -obs.phi1);

    auto ber = [&](const IqFrame& f) { return modem::measure_error_rates(bits, modem::qam16_demap(f), 4).ber; };
    DiversityResult r{
        CombinerOutput{est, std::move(combined), measured_snr_dB(tx, aligned1), measured_snr_dB(tx, aligned_c)},
        obs.true_dphi,
        measured_snr_dB(tx, aligned2),
        ber(aligned1),
        ber(aligned2),
        ber(aligned_c)};
    return r;
}

inline DiversityResult run_diversity_experiment(const DiversityScenario& scenario) {
    scenario.validate();
    return run_diversity_experiment(scenario, atmosphere::PhasePairSampler(scenario.path, scenario.profile));
}

}  // namespace lumilink::diversity
