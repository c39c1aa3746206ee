#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "lumilink/linkbudget.hpp"

using namespace lumilink::linkbudget;
using lumilink::DomainError;

namespace {

const auto kRed = OpticalCarrier::from_nanometres(620.0);
const auto kYag = OpticalCarrier::from_nanometres(1064.0);

}  // namespace

TEST(OpticalCarrier, PhotonEnergyTimesWavelengthIsHc) {
    for (double nm : {400.0, 620.0, 1064.0, 1550.0}) {
        const auto c = OpticalCarrier::from_nanometres(nm);
        EXPECT_NEAR(c.photon_energy_J() * c.wavelength_m() / (kPlanck * kSpeedOfLight), 1.0, 1e-12);
        EXPECT_DOUBLE_EQ(c.wavenumber_per_m(), 2.0 * std::numbers::pi / c.wavelength_m());
    }
    EXPECT_NEAR(kRed.photon_energy_J(), 3.204e-19, 0.001e-19);
    EXPECT_THROW(OpticalCarrier(0.0), DomainError);
    EXPECT_THROW(OpticalCarrier(-1e-6), DomainError);
}

TEST(SlantRange, SecantModel) {
    EXPECT_NEAR(slant_range(400e3, deg_to_rad(40.0)), 522.1e3, 500.0);
    EXPECT_DOUBLE_EQ(slant_range(400e3, 0.0), 400e3);
    EXPECT_NEAR(slant_range(500e3, deg_to_rad(60.0)), 1000e3, 1e-6);
    EXPECT_THROW(slant_range(400e3, std::numbers::pi / 2.0), DomainError);
    EXPECT_THROW(slant_range(400e3, -0.1), DomainError);
    EXPECT_THROW(slant_range(0.0, 0.1), DomainError);
}

TEST(SlantRange, SphericalIsShorterAndMatchesAtZenith) {
    EXPECT_NEAR(slant_range_spherical(400e3, 0.0), 400e3, 1e-6);
    const double sph = slant_range_spherical(400e3, deg_to_rad(40.0));
    EXPECT_LT(sph, slant_range(400e3, deg_to_rad(40.0)));
    EXPECT_NEAR(sph, 512e3, 1e3);
    const auto g = make_path(400e3, deg_to_rad(40.0));
    EXPECT_GE(g.path_length_m, g.altitude_m);
}

TEST(TxPower, ElectroOpticalConversion) {
    EXPECT_DOUBLE_EQ(optical_tx_power_W(140.0, 0.70), 98.0);
    EXPECT_NEAR(watts_to_dbw(optical_tx_power_W(140.0, 0.70)), 19.91, 0.005);
    EXPECT_NEAR(watts_to_dbw(optical_tx_power_W(150.0, 1.0)), 21.76, 0.005);
    EXPECT_EQ(optical_tx_power_W(0.0, 0.7), 0.0);
    EXPECT_THROW(optical_tx_power_W(1.0, 0.0), DomainError);
    EXPECT_THROW(optical_tx_power_W(1.0, 1.01), DomainError);
}

TEST(Gains, TransmitAperture) {
    EXPECT_NEAR(tx_gain_aperture(0.3, kYag), 121.05, 0.01);
    EXPECT_NEAR(tx_gain_aperture(kYag.wavelength_m() / 4.0, kYag), 0.0, 1e-12);
    EXPECT_NEAR(tx_gain_aperture(0.6, kYag), 127.07, 0.01);
    EXPECT_THROW(tx_gain_aperture(0.0, kYag), DomainError);
}

TEST(Gains, ReceiveAperture) {
    EXPECT_NEAR(rx_gain_aperture(0.3, kRed), 123.64, 0.01);
    EXPECT_NEAR(rx_gain_aperture(kRed.wavelength_m() / std::numbers::pi, kRed), 0.0, 1e-12);
    EXPECT_NEAR(rx_gain_aperture(0.15, kRed), 117.62, 0.01);
}

TEST(Gains, ReceiveArea) {
    EXPECT_NEAR(rx_gain_area(0.007, kYag), 108.9, 0.1);
    const double lambda = kYag.wavelength_m();
    EXPECT_NEAR(rx_gain_area(lambda * lambda / (4.0 * std::numbers::pi), kYag), 0.0, 1e-12);
    EXPECT_NEAR(rx_gain_area(0.014, kYag), 111.9, 0.02);
}

TEST(Gains, AreaApertureDualityIsAConstantOffset) {
    const double offset = 10.0 * std::log10(4.0 * std::numbers::pi * (std::numbers::pi / 4.0) /
                                            (std::numbers::pi * std::numbers::pi));
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> d(0.01, 2.0), nm(300.0, 2000.0);
    for (int i = 0; i < 200; ++i) {
        const double diameter = d(gen);
        const auto c = OpticalCarrier::from_nanometres(nm(gen));
        const double area = std::numbers::pi * diameter * diameter / 4.0;
        EXPECT_NEAR(rx_gain_area(area, c) - rx_gain_aperture(diameter, c), offset, 1e-9);
    }
}

TEST(PathLoss, TableValuesAndScaling) {
    EXPECT_NEAR(free_space_path_loss(522e3, kRed), 260.5, 0.1);
    EXPECT_NEAR(free_space_path_loss(522e3, kYag), 255.8, 0.1);
    EXPECT_NEAR(free_space_path_loss(kRed.wavelength_m() / (4.0 * std::numbers::pi), kRed), 0.0, 1e-12);

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> len(1e3, 1e8), ratio(1.0001, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double l = len(gen), r = ratio(gen);
        EXPECT_LT(free_space_path_loss(l, kRed), free_space_path_loss(l * r, kRed));
        EXPECT_NEAR(free_space_path_loss(l * r, kRed) - free_space_path_loss(l, kRed), 20.0 * std::log10(r), 1e-9);
    }
}

TEST(Budget, LedgerSumsExactly) {
    const auto down = compose_budget(19.9, 12.0, 260.5, 2.0, 1.0, 123.6);
    EXPECT_NEAR(down.received_power_dBW, -108.0, 1e-9);
    EXPECT_NEAR(down.received_power_dBW, -107.3, 1.5);
    const auto up = compose_budget(21.76, 121.0, 255.8, 2.0, 1.0, 108.9);
    EXPECT_NEAR(up.received_power_dBW, -7.14, 1e-9);
    EXPECT_NEAR(up.received_power_dBW, -8.12, 1.5);
    const auto zero = compose_budget(0, 0, 0, 0, 0, 0);
    EXPECT_EQ(zero.received_power_dBW, 0.0);
    EXPECT_EQ(zero.received_power_W, 1.0);
    EXPECT_THROW(compose_budget(NAN, 0, 0, 0, 0, 0), DomainError);
    EXPECT_THROW(compose_budget(0, 0, INFINITY, 0, 0, 0), DomainError);
}

TEST(Budget, LedgerPropertyOnRandomTerms) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> v(-300.0, 300.0);
    for (int i = 0; i < 500; ++i) {
        const auto r = compose_budget(v(gen), v(gen), v(gen), v(gen), v(gen), v(gen));
        const double resum =
            r.tx_power_dBW + r.tx_gain_dBi - r.fspl_dB - r.atmospheric_loss_dB - r.pointing_loss_dB + r.rx_gain_dBi;
        EXPECT_EQ(resum, r.received_power_dBW);
        EXPECT_EQ(r.received_power_W, std::pow(10.0, r.received_power_dBW / 10.0));
    }
}

TEST(Budget, DbwWattsRoundTrip) {
    EXPECT_NEAR(dbw_to_watts(-8.12), 0.154, 0.001);
    EXPECT_DOUBLE_EQ(dbw_to_watts(0.0), 1.0);
    EXPECT_DOUBLE_EQ(dbw_to_watts(10.0), 10.0);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> exponent(-15.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::pow(10.0, exponent(gen));
        EXPECT_NEAR(dbw_to_watts(watts_to_dbw(x)) / x, 1.0, 1e-12);
    }
}

TEST(BitRate, PhotonLimited) {
    EXPECT_NEAR(photon_limited_bitrate(std::pow(10.0, -10.73), kRed, 700.0), 8.3e4, 0.01e4);
    EXPECT_NEAR(photon_limited_bitrate(std::pow(10.0, -10.73), kRed, 700.0), 8.85e4, 0.1 * 8.85e4);
    EXPECT_EQ(photon_limited_bitrate(0.0, kRed, 700.0), 0.0);
    EXPECT_NEAR(photon_limited_bitrate(kRed.photon_energy_J() * 700.0, kRed, 700.0), 1.0, 1e-12);
    EXPECT_THROW(photon_limited_bitrate(1.0, kRed, 0.0), DomainError);
}

TEST(BitRate, LinearInPowerInverseInPhotons) {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> p(1e-15, 1e-3), k(0.1, 100.0), n(1.0, 5000.0);
    for (int i = 0; i < 200; ++i) {
        const double pw = p(gen), s = k(gen), ppb = n(gen);
        const double base = photon_limited_bitrate(pw, kRed, ppb);
        EXPECT_NEAR(photon_limited_bitrate(pw * s, kRed, ppb) / base, s, 1e-12 * s);
        EXPECT_NEAR(photon_limited_bitrate(pw, kRed, ppb * s) * s / base, 1.0, 1e-12);
    }
}

TEST(Irradiance, IsotropicSpreading) {
    const double l = 522e3;
    EXPECT_NEAR(ground_irradiance(4.0 * std::numbers::pi * l * l, l), 1.0, 1e-12);
    EXPECT_NEAR(ground_irradiance(1549.0, 522e3), 4.52e-10, 0.01e-10);
    EXPECT_EQ(ground_irradiance(0.0, l), 0.0);
    EXPECT_THROW(ground_irradiance(1.0, 0.0), DomainError);
}

TEST(Irradiance, VisualMagnitude) {
    EXPECT_DOUBLE_EQ(visual_magnitude(2e-8, 2e-8), 0.0);
    EXPECT_NEAR(visual_magnitude(8.16e-9, 2.0e-8), 0.97, 0.005);
    EXPECT_NEAR(visual_magnitude(2e-8 / 100.0, 2e-8), 5.0, 1e-12);
    EXPECT_THROW(visual_magnitude(0.0, 1.0), DomainError);
    EXPECT_THROW(visual_magnitude(1.0, -1.0), DomainError);
}

TEST(Scenarios, DefaultsReproduceTables) {
    const auto path = make_path(400e3, deg_to_rad(40.0));
    const auto down = downlink_budget({}, path);
    EXPECT_NEAR(down.tx_power_dBW, 19.9, 0.05);
    EXPECT_NEAR(down.fspl_dB, 260.5, 0.1);
    EXPECT_NEAR(down.rx_gain_dBi, 123.6, 0.1);
    EXPECT_NEAR(down.received_power_dBW, -107.3, 1.5);
    ASSERT_TRUE(down.bit_rate_bps.has_value());
    EXPECT_EQ(down.ledger_sum_dBW(), down.received_power_dBW);

    const auto up = uplink_budget({}, path);
    EXPECT_NEAR(up.tx_power_dBW, 21.76, 0.005);
    EXPECT_NEAR(up.tx_gain_dBi, 121.0, 0.1);
    EXPECT_NEAR(up.fspl_dB, 255.8, 0.1);
    EXPECT_NEAR(up.rx_gain_dBi, 108.9, 0.1);
    EXPECT_NEAR(up.received_power_dBW, -8.12, 1.5);
}

TEST(Scenarios, CsvHasHeaderAndLedgerRows) {
    const auto r = compose_budget(1, 2, 3, 4, 5, 6);
    std::ostringstream out;
    write_csv(out, r);
    const auto text = out.str();
    EXPECT_EQ(text.rfind("term,value,unit\n", 0), 0u);
    EXPECT_NE(text.find("received_power,-3,dBW\n"), std::string::npos);
    std::ostringstream table;
    write_table(table, "t", r);
    EXPECT_NE(table.str().find("-3.00 dBW"), std::string::npos);
}
