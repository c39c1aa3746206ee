#pragma once

// Refractive-index structure profile and differential phase statistics for
// two receivers separated on the ground.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "lumilink/error.hpp"
#include "lumilink/linkbudget.hpp"
#include "lumilink/rng.hpp"

namespace lumilink::atmosphere {

using linkbudget::OpticalCarrier;

inline constexpr double kDefaultGroundConstant = 1.7e-14;  // m^(-2/3)
inline constexpr int kDefaultPanels = 1 << 12;

struct CnProfile {
    double wind_speed_mps = 27.0;
    double ground_constant = kDefaultGroundConstant;

    void validate() const {
        detail::require(wind_speed_mps >= 0.0 && std::isfinite(wind_speed_mps),
                        "CnProfile: wind speed must be non-negative");
        detail::require(ground_constant >= 0.0 && std::isfinite(ground_constant),
                        "CnProfile: ground constant must be non-negative");
    }
};

/// Cn^2(h) = 0.0059 (v/27)^2 (1e-5 h)^10 e^(-h/1000) + C0 e^(-h/100), h in metres.
inline double cn2(const CnProfile& profile, double height_m) {
    detail::require(height_m >= 0.0, "cn2: height must be non-negative");
    const double wind = profile.wind_speed_mps / 27.0;
    const double scaled = 1e-5 * height_m;
    const double s2 = scaled * scaled;
    const double s10 = s2 * s2 * s2 * s2 * s2;
    return 0.0059 * wind * wind * s10 * std::exp(-height_m / 1000.0) +
           profile.ground_constant * std::exp(-height_m / 100.0);
}

/// Composite Simpson estimate of the path-weighted integral  int_0^H Cn^2(z) z^(5/3) dz.
/// `n_panels` must be even.
inline double integrate_cn2_z53(const CnProfile& profile, double top_m, int n_panels = kDefaultPanels) {
    detail::require(top_m > 0.0, "integrate_cn2_z53: upper bound must be positive");
    detail::require(n_panels >= 2 && n_panels % 2 == 0, "integrate_cn2_z53: panel count must be even and >= 2");
    const double h = top_m / n_panels;
    auto f = [&](double z) { return cn2(profile, z) * std::pow(z, 5.0 / 3.0); };
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n_panels; ++i) (i % 2 ? odd : even) += f(i * h);
    return h / 3.0 * (f(0.0) + 4.0 * odd + 2.0 * even + f(top_m));
}

struct PhaseVarianceInputs {
    double separation_m;
    double path_top_m;
    double zenith_angle_rad;
    OpticalCarrier carrier;

    void validate() const {
        detail::require(separation_m >= 0.0, "phase variance: separation must be non-negative");
        detail::require(path_top_m > 0.0, "phase variance: path top must be positive");
        linkbudget::check_zenith(zenith_angle_rad);
    }
};

/// sigma_phi^2 = 2.914 k^2 (d/H)^(5/3) sec(psi) int_0^H Cn^2(z) z^(5/3) dz   [rad^2]
inline double phase_variance(const PhaseVarianceInputs& in, const CnProfile& profile,
                             int n_panels = kDefaultPanels) {
    in.validate();
    profile.validate();
    const double k = in.carrier.wavenumber_per_m();
    const double geometry = std::pow(in.separation_m / in.path_top_m, 5.0 / 3.0);
    return 2.914 * k * k * geometry / std::cos(in.zenith_angle_rad) *
           integrate_cn2_z53(profile, in.path_top_m, n_panels);
}

/// Refractive-index samples n0 - n1(z) on an ascending height grid.
struct PhasePathSample {
    std::vector<double> heights_m;
    std::vector<double> n1_values;
    double n0 = 1.0;

    void validate() const {
        detail::require(heights_m.size() >= 2, "PhasePathSample: need at least two samples");
        detail::require(heights_m.size() == n1_values.size(), "PhasePathSample: size mismatch");
        detail::require(heights_m.front() >= 0.0, "PhasePathSample: heights must start at or above 0");
        for (std::size_t i = 1; i < heights_m.size(); ++i)
            detail::require(heights_m[i] > heights_m[i - 1], "PhasePathSample: heights must be strictly increasing");
    }
};

/// phi = k int [n0 - n1(z)] dz, trapezoid rule over the sample grid.
inline double refractive_phase_delay(const PhasePathSample& sample, const OpticalCarrier& carrier) {
    sample.validate();
    const auto& z = sample.heights_m;
    const auto& n1 = sample.n1_values;
    double integral = 0.0;
    for (std::size_t i = 1; i < z.size(); ++i)
        integral += 0.5 * (z[i] - z[i - 1]) * ((sample.n0 - n1[i]) + (sample.n0 - n1[i - 1]));
    return carrier.wavenumber_per_m() * integral;
}

/// Draws (phi1, phi2) as  c + u1, c + u2  with c, u1, u2 independent zero-mean
/// Gaussians of variance sigma^2/2, so Var(phi1 - phi2) = sigma^2.
class PhasePairSampler {
public:
    explicit PhasePairSampler(double differential_variance)
        : sigma_(std::sqrt(differential_variance / 2.0)) {
        detail::require(differential_variance >= 0.0 && std::isfinite(differential_variance),
                        "PhasePairSampler: variance must be finite and non-negative");
    }

    PhasePairSampler(const PhaseVarianceInputs& in, const CnProfile& profile)
        : PhasePairSampler(phase_variance(in, profile)) {}

    double differential_variance() const noexcept { return 2.0 * sigma_ * sigma_; }

    template <std::uniform_random_bit_generator Generator>
    std::pair<double, double> operator()(Generator& gen) const {
        std::normal_distribution<double> normal(0.0, 1.0);
        const double common = sigma_ * normal(gen);
        const double u1 = sigma_ * normal(gen);
        const double u2 = sigma_ * normal(gen);
        return {common + u1, common + u2};
    }

private:
    double sigma_;
};

inline std::pair<double, double> sample_phase_pair(const PhaseVarianceInputs& in, const CnProfile& profile,
                                                   std::uint64_t seed) {
    auto gen = make_rng(seed);
    return PhasePairSampler(in, profile)(gen);
}

}  // namespace lumilink::atmosphere
