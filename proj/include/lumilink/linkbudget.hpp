#pragma once

// Radiometric link budget for the LED downlink and the laser-to-PV-cell uplink.
// Everything here is a pure function of value types; all arithmetic is double.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lumilink/error.hpp"
#include "lumilink/format.hpp"

namespace lumilink::linkbudget {

inline constexpr double kPlanck = 6.62607015e-34;      // J s (exact SI)
inline constexpr double kSpeedOfLight = 299792458.0;    // m/s (exact SI)
inline constexpr double kMeanEarthRadius = 6371.0e3;    // m

inline double watts_to_dbw(double watts) {
    detail::require(watts > 0.0, "watts_to_dbw: power must be positive");
    return 10.0 * std::log10(watts);
}

inline double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }

/// Monochromatic carrier; the single source of wavelength, wavenumber and photon energy.
class OpticalCarrier {
public:
    explicit OpticalCarrier(double wavelength_m) : wavelength_m_(wavelength_m) {
        detail::require(std::isfinite(wavelength_m) && wavelength_m > 0.0,
                        "OpticalCarrier: wavelength must be positive");
    }

    static OpticalCarrier from_nanometres(double nm) { return OpticalCarrier(nm * 1e-9); }

    double wavelength_m() const noexcept { return wavelength_m_; }
    double photon_energy_J() const noexcept { return kPlanck * kSpeedOfLight / wavelength_m_; }
    double wavenumber_per_m() const noexcept { return 2.0 * std::numbers::pi / wavelength_m_; }

private:
    double wavelength_m_;
};

enum class EarthModel { Flat, Spherical };

struct PathGeometry {
    double altitude_m;
    double zenith_angle_rad;
    double path_length_m;
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

inline void check_zenith(double zenith_rad) {
    detail::require(zenith_rad >= 0.0 && zenith_rad < std::numbers::pi / 2.0,
                    "zenith angle must lie in [0, pi/2)");
}

/// Flat-Earth secant model: L = h / cos(psi).
inline double slant_range(double altitude_m, double zenith_rad) {
    detail::require(altitude_m > 0.0, "slant_range: altitude must be positive");
    check_zenith(zenith_rad);
    return altitude_m / std::cos(zenith_rad);
}

/// Line-of-sight range over a spherical Earth, zenith angle measured at the ground station.
inline double slant_range_spherical(double altitude_m, double zenith_rad,
                                    double earth_radius_m = kMeanEarthRadius) {
    detail::require(altitude_m > 0.0, "slant_range_spherical: altitude must be positive");
    check_zenith(zenith_rad);
    const double r = earth_radius_m;
    const double s = std::sin(zenith_rad);
    return std::sqrt((r + altitude_m) * (r + altitude_m) - r * r * s * s) - r * std::cos(zenith_rad);
}

inline PathGeometry make_path(double altitude_m, double zenith_rad, EarthModel model = EarthModel::Flat) {
    const double length = model == EarthModel::Flat ? slant_range(altitude_m, zenith_rad)
                                                    : slant_range_spherical(altitude_m, zenith_rad);
    return {altitude_m, zenith_rad, length};
}

inline double optical_tx_power_W(double electrical_power_W, double efficiency) {
    detail::require(efficiency > 0.0 && efficiency <= 1.0, "optical_tx_power_W: efficiency must be in (0, 1]");
    detail::require(electrical_power_W >= 0.0, "optical_tx_power_W: electrical power must be non-negative");
    return electrical_power_W * efficiency;
}

/// G = 16 d^2 / lambda^2, in dBi.
inline double tx_gain_aperture(double diameter_m, const OpticalCarrier& carrier) {
    detail::require(diameter_m > 0.0, "tx_gain_aperture: diameter must be positive");
    const double ratio = diameter_m / carrier.wavelength_m();
    return 10.0 * std::log10(16.0 * ratio * ratio);
}

/// G = (pi d / lambda)^2, in dBi.
inline double rx_gain_aperture(double diameter_m, const OpticalCarrier& carrier) {
    detail::require(diameter_m > 0.0, "rx_gain_aperture: diameter must be positive");
    const double x = std::numbers::pi * diameter_m / carrier.wavelength_m();
    return 10.0 * std::log10(x * x);
}

/// Effective-aperture gain G = 4 pi A / lambda^2, in dBi.
inline double rx_gain_area(double area_m2, const OpticalCarrier& carrier) {
    detail::require(area_m2 > 0.0, "rx_gain_area: area must be positive");
    const double lambda = carrier.wavelength_m();
    return 10.0 * std::log10(4.0 * std::numbers::pi * area_m2 / (lambda * lambda));
}

inline double free_space_path_loss(double path_length_m, const OpticalCarrier& carrier) {
    detail::require(path_length_m > 0.0, "free_space_path_loss: path length must be positive");
    return 20.0 * std::log10(4.0 * std::numbers::pi * path_length_m / carrier.wavelength_m());
}

struct LinkBudgetReport {
    double tx_power_dBW = 0.0;
    double tx_gain_dBi = 0.0;
    double fspl_dB = 0.0;
    double atmospheric_loss_dB = 0.0;
    double pointing_loss_dB = 0.0;
    double rx_gain_dBi = 0.0;
    double received_power_dBW = 0.0;
    double received_power_W = 0.0;
    std::optional<double> bit_rate_bps;
    std::optional<double> irradiance_W_per_m2;

    /// The same ledger sum compose_budget uses; equal to received_power_dBW bit for bit.
    double ledger_sum_dBW() const noexcept {
        return tx_power_dBW + tx_gain_dBi - fspl_dB - atmospheric_loss_dB - pointing_loss_dB + rx_gain_dBi;
    }

    double eirp_dBW() const noexcept { return tx_power_dBW + tx_gain_dBi; }
};

inline LinkBudgetReport compose_budget(double tx_power_dBW, double tx_gain_dBi, double fspl_dB,
                                       double atm_loss_dB, double pointing_loss_dB, double rx_gain_dBi) {
    for (double v : {tx_power_dBW, tx_gain_dBi, fspl_dB, atm_loss_dB, pointing_loss_dB, rx_gain_dBi})
        detail::require(std::isfinite(v), "compose_budget: all terms must be finite");
    LinkBudgetReport r;
    r.tx_power_dBW = tx_power_dBW;
    r.tx_gain_dBi = tx_gain_dBi;
    r.fspl_dB = fspl_dB;
    r.atmospheric_loss_dB = atm_loss_dB;
    r.pointing_loss_dB = pointing_loss_dB;
    r.rx_gain_dBi = rx_gain_dBi;
    r.received_power_dBW = r.ledger_sum_dBW();
    r.received_power_W = dbw_to_watts(r.received_power_dBW);
    return r;
}

/// Photon-counting limit: bits/s = P / (E_photon * photons_per_bit).
inline double photon_limited_bitrate(double received_power_W, const OpticalCarrier& carrier,
                                     double photons_per_bit) {
    detail::require(received_power_W >= 0.0, "photon_limited_bitrate: power must be non-negative");
    detail::require(photons_per_bit > 0.0, "photon_limited_bitrate: photons_per_bit must be positive");
    return received_power_W / (carrier.photon_energy_J() * photons_per_bit);
}

/// Isotropic-equivalent flux density at range L.
inline double ground_irradiance(double eirp_W, double path_length_m) {
    detail::require(eirp_W >= 0.0, "ground_irradiance: EIRP must be non-negative");
    detail::require(path_length_m > 0.0, "ground_irradiance: path length must be positive");
    return eirp_W / (4.0 * std::numbers::pi * path_length_m * path_length_m);
}

inline double visual_magnitude(double irradiance_W_per_m2, double zero_point_W_per_m2) {
    detail::require(irradiance_W_per_m2 > 0.0 && zero_point_W_per_m2 > 0.0,
                    "visual_magnitude: irradiance and zero point must be positive");
    return -2.5 * std::log10(irradiance_W_per_m2 / zero_point_W_per_m2);
}

struct LedgerRow {
    std::string term;
    double value;
    std::string unit;
};

inline std::vector<LedgerRow> ledger_rows(const LinkBudgetReport& r) {
    std::vector<LedgerRow> rows{
        {"tx_power", r.tx_power_dBW, "dBW"},
        {"tx_gain", r.tx_gain_dBi, "dBi"},
        {"fspl", r.fspl_dB, "dB"},
        {"atmospheric_loss", r.atmospheric_loss_dB, "dB"},
        {"pointing_loss", r.pointing_loss_dB, "dB"},
        {"rx_gain", r.rx_gain_dBi, "dBi"},
        {"received_power", r.received_power_dBW, "dBW"},
        {"received_power_w", r.received_power_W, "W"},
    };
    if (r.bit_rate_bps) rows.push_back({"bit_rate", *r.bit_rate_bps, "bit/s"});
    if (r.irradiance_W_per_m2) rows.push_back({"irradiance", *r.irradiance_W_per_m2, "W/m^2"});
    return rows;
}

inline void write_csv(std::ostream& out, const LinkBudgetReport& report,
                      const std::vector<LedgerRow>& extra = {}) {
    CsvWriter csv(out);
    csv.header({"term", "value", "unit"});
    for (const auto& rows : {ledger_rows(report), extra})
        for (const auto& row : rows) {
            csv.field(row.term).field(row.value).field(row.unit);
            csv.end_row();
        }
}

/// Aligned two-column rendering at 0.01 resolution for dB terms.
inline void write_table(std::ostream& out, const std::string& title, const LinkBudgetReport& report) {
    out << title << '\n';
    for (const auto& row : ledger_rows(report)) {
        std::string value = row.unit.starts_with("dB") ? format_fixed(row.value, 2) : format_number(row.value);
        std::string term = row.term;
        term.resize(std::max<std::size_t>(term.size(), 20), ' ');
        std::string padded(std::max<std::size_t>(14, value.size()) - value.size(), ' ');
        out << "  " << term << padded << value << ' ' << row.unit << '\n';
    }
}

struct DownlinkParams {
    double wavelength_nm = 620.0;
    double electrical_power_W = 140.0;
    double efficiency = 0.70;
    double tx_gain_dBi = 12.0;
    double rx_aperture_m = 0.30;
    double atmospheric_loss_dB = 2.0;
    double pointing_loss_dB = 1.0;
    double photons_per_bit = 700.0;
    double magnitude_zero_point_W_per_m2 = 2.0e-8;
};

struct UplinkParams {
    double wavelength_nm = 1064.0;
    double electrical_power_W = 150.0;
    double efficiency = 1.0;
    double tx_aperture_m = 0.30;
    double rx_area_m2 = 70.0e-4;
    double atmospheric_loss_dB = 2.0;
    double pointing_loss_dB = 1.0;
};

/// LED downlink: fixed transmitter gain, telescope receiver, photon-limited bit rate.
inline LinkBudgetReport downlink_budget(const DownlinkParams& p, const PathGeometry& path) {
    const auto carrier = OpticalCarrier::from_nanometres(p.wavelength_nm);
    auto r = compose_budget(watts_to_dbw(optical_tx_power_W(p.electrical_power_W, p.efficiency)),
                            p.tx_gain_dBi, free_space_path_loss(path.path_length_m, carrier),
                            p.atmospheric_loss_dB, p.pointing_loss_dB, rx_gain_aperture(p.rx_aperture_m, carrier));
    r.bit_rate_bps = photon_limited_bitrate(r.received_power_W, carrier, p.photons_per_bit);
    r.irradiance_W_per_m2 = ground_irradiance(dbw_to_watts(r.eirp_dBW()), path.path_length_m);
    return r;
}

/// Laser uplink onto the PV-cell array: aperture transmitter, area receiver.
inline LinkBudgetReport uplink_budget(const UplinkParams& p, const PathGeometry& path) {
    const auto carrier = OpticalCarrier::from_nanometres(p.wavelength_nm);
    return compose_budget(watts_to_dbw(optical_tx_power_W(p.electrical_power_W, p.efficiency)),
                          tx_gain_aperture(p.tx_aperture_m, carrier),
                          free_space_path_loss(path.path_length_m, carrier), p.atmospheric_loss_dB,
                          p.pointing_loss_dB, rx_gain_area(p.rx_area_m2, carrier));
}

}  // namespace lumilink::linkbudget
