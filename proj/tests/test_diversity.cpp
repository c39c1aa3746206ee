#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lumilink/diversity.hpp"

using namespace lumilink::diversity;
using lumilink::Complex;
using lumilink::IqFrame;
namespace atm = lumilink::atmosphere;
namespace modem = lumilink::modem;

namespace {

IqFrame random_qam(std::size_t n, std::uint64_t seed) { return modem::qam16_map(modem::random_bits(4 * n, seed)); }

}  // namespace

TEST(WrapPhase, IntoHalfOpenInterval) {
    EXPECT_DOUBLE_EQ(wrap_phase(std::numbers::pi), std::numbers::pi);
    EXPECT_DOUBLE_EQ(wrap_phase(-std::numbers::pi), std::numbers::pi);
    EXPECT_NEAR(wrap_phase(3.0 * std::numbers::pi / 2.0), -std::numbers::pi / 2.0, 1e-15);
    for (double x = -50.0; x < 50.0; x += 0.37) {
        const double w = wrap_phase(x);
        EXPECT_GT(w, -std::numbers::pi);
        EXPECT_LE(w, std::numbers::pi);
        EXPECT_NEAR(std::remainder(w - x, 2.0 * std::numbers::pi), 0.0, 1e-12);
    }
}

TEST(Estimator, RecoversKnownRotation) {
    const auto tx = random_qam(1024, 1);
    for (double dphi : {-3.0, -1.0, 0.0, 0.4, 2.5, 3.1}) {
        const auto rx1 = modem::awgn(rotate(tx, dphi + 0.3), 20.0, 2);
        const auto rx2 = modem::awgn(rotate(tx, 0.3), 20.0, 3);
        EXPECT_NEAR(wrap_phase(estimate_differential_phase(rx1, rx2) - dphi), 0.0, 0.02) << dphi;
    }
    EXPECT_THROW(estimate_differential_phase(random_qam(32, 1), random_qam(32, 2)), lumilink::DomainError);
}

TEST(Combiner, PerfectEstimateGivesThreeDbAtEqualSnr) {
    const auto tx = random_qam(200000, 4);
    const double phi1 = 0.7, phi2 = -1.9;
    const auto rx1 = modem::awgn(rotate(tx, phi1), 8.0, 5);
    const auto rx2 = modem::awgn(rotate(tx, phi2), 8.0, 6);
    const auto c = combine(rx1, rx2, phi1 - phi2);
    const double single = measured_snr_dB(tx, rotate(rx1, -phi1));
    const double both = measured_snr_dB(tx, rotate(c, -phi1));
    EXPECT_NEAR(both - single, 10.0 * std::log10(2.0), 0.05);
}

TEST(Combiner, NoiselessCombiningIsExact) {
    const auto tx = random_qam(128, 7);
    const auto c = combine(rotate(tx, 1.0), rotate(tx, -0.5), 1.5);
    for (std::size_t i = 0; i < tx.size(); ++i) EXPECT_NEAR(std::abs(c[i] - tx[i] * std::polar(1.0, 1.0)), 0.0, 1e-12);
}

TEST(TwoPaths, DifferentialVarianceFollowsAtmosphere) {
    DiversityScenario s;
    const atm::PhasePairSampler sampler(s.path, s.profile);
    const auto tx = random_qam(64, 8);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        s.seed = static_cast<std::uint64_t>(i) + 1;
        const auto obs = simulate_two_paths(tx, s, sampler);
        EXPECT_DOUBLE_EQ(obs.true_dphi, obs.phi1 - obs.phi2);
        sum += obs.true_dphi;
        sum2 += obs.true_dphi * obs.true_dphi;
    }
    const double mean = sum / n;
    EXPECT_NEAR((sum2 / n - mean * mean) / atm::phase_variance(s.path, s.profile), 1.0, 0.03);
}

TEST(Experiment, CombinedNeverWorseOverPairedSeeds) {
    DiversityScenario s;
    const atm::PhasePairSampler sampler(s.path, s.profile);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        s.seed = seed;
        const auto r = run_diversity_experiment(s, sampler);
        EXPECT_LE(r.ber_combined, r.best_single_ber()) << "seed " << seed;
        EXPECT_GT(r.output.snr_combined_dB, r.output.snr_single_dB);
        EXPECT_NEAR(wrap_phase(r.output.estimated_dphi - r.true_dphi), 0.0, 0.1);
    }
}

TEST(Experiment, ReproducibleAndValidated) {
    DiversityScenario s;
    s.seed = 3;
    const auto a = run_diversity_experiment(s);
    const auto b = run_diversity_experiment(s);
    EXPECT_EQ(a.ber_combined, b.ber_combined);
    EXPECT_EQ(a.output.combined, b.output.combined);
    s.frame_symbols = 63;
    EXPECT_THROW(run_diversity_experiment(s), lumilink::DomainError);
}

TEST(Experiment, ZeroSeparationMeansNoDifferentialPhase) {
    DiversityScenario s;
    s.path.separation_m = 0.0;
    const auto r = run_diversity_experiment(s);
    EXPECT_EQ(r.true_dphi, 0.0);
    EXPECT_NEAR(r.output.estimated_dphi, 0.0, 0.1);
}
