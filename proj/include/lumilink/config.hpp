#pragma once

// Flat `section.key = value` scenario files. Every key is declared once in
// the field table below with its parser, printer and range check; missing
// keys keep their defaults, unknown keys are rejected.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "lumilink/atmosphere.hpp"
#include "lumilink/autoencoder.hpp"
#include "lumilink/diversity.hpp"
#include "lumilink/error.hpp"
#include "lumilink/format.hpp"
#include "lumilink/linkbudget.hpp"
#include "lumilink/modem/chain.hpp"
#include "lumilink/wakeup.hpp"

namespace lumilink {

struct LinkBudgetSection {
    double altitude_km = 400.0;
    double zenith_deg = 40.0;
    linkbudget::EarthModel earth_model = linkbudget::EarthModel::Flat;
    linkbudget::DownlinkParams downlink{};
    linkbudget::UplinkParams uplink{};

    linkbudget::PathGeometry path() const {
        return linkbudget::make_path(altitude_km * 1e3, linkbudget::deg_to_rad(zenith_deg), earth_model);
    }
};

struct AtmosphereSection {
    atmosphere::CnProfile profile{};
    double separation_m = 20000.0;
    double path_top_m = 20000.0;
    double zenith_deg = 40.0;
    double wavelength_nm = 620.0;
    int panels = atmosphere::kDefaultPanels;
    double curve_top_m = 30000.0;
    int curve_points = 301;

    atmosphere::PhaseVarianceInputs inputs() const {
        return {separation_m, path_top_m, linkbudget::deg_to_rad(zenith_deg),
                atmosphere::OpticalCarrier::from_nanometres(wavelength_nm)};
    }
};

struct ModemSection {
    modem::SnrAxis axis = modem::SnrAxis::EbN0;
    double snr_start_db = 0.0;
    double snr_stop_db = 12.0;
    double snr_step_db = 1.0;
    std::size_t n_bits = 400000;
    bool coded = true;
};

struct DiversitySection {
    double separation_m = 20000.0;
    double es_n0_db = 8.0;
    std::size_t frame_symbols = 1024;
    int trials = 20;
};

struct WakeupSection {
    wakeup::WakeupConfig receiver{};
    wakeup::Millis horizon_ms = 10000;
    std::string scenario_csv;  // empty: single-beacon scenario below
    int beacon_face = 2;
    wakeup::Millis beacon_onset_ms = 1234;
    double beacon_snr_db = 12.0;
    double background_snr_db = 0.0;
    std::string commands = "telemetry:c0ffee;powercycle";
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    LinkBudgetSection linkbudget{};
    AtmosphereSection atmosphere{};
    ModemSection modem{};
    autoencoder::AeConfig autoencoder{};
    double ae_eval_start_db = -2.0;
    double ae_eval_stop_db = 10.0;
    double ae_eval_step_db = 1.0;
    DiversitySection diversity{};
    WakeupSection wakeup{};

    /// Autoencoder settings with the master-derived seed and evaluation grid filled in.
    autoencoder::AeConfig autoencoder_config() const {
        auto c = autoencoder;
        c.seed = derive_seed(seed, "autoencoder");
        c.eval_grid_dB = grid(ae_eval_start_db, ae_eval_stop_db, ae_eval_step_db);
        return c;
    }

    diversity::DiversityScenario diversity_scenario(std::uint64_t trial) const {
        diversity::DiversityScenario s;
        s.path = atmosphere.inputs();
        s.path.separation_m = diversity.separation_m;
        s.profile = atmosphere.profile;
        s.es_n0_dB = diversity.es_n0_db;
        s.frame_symbols = diversity.frame_symbols;
        s.seed = derive_seed(seed, "diversity", trial);
        return s;
    }

    /// Inclusive arithmetic grid; the stop value is kept when within step/1e6 of the end.
    static std::vector<double> grid(double start, double stop, double step) {
        std::vector<double> out;
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-6));
        for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
};

namespace config_detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Thrown by value parsers/checks; the loader attaches key and line.
struct BadValue {
    std::string message;
};

inline double parse_double(std::string_view text) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw BadValue{"expected a number, got '" + std::string(text) + "'"};
    return v;
}

template <class Int>
Int parse_int(std::string_view text) {
    Int v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw BadValue{"expected an integer, got '" + std::string(text) + "'"};
    return v;
}

inline bool parse_bool(std::string_view text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw BadValue{"expected true/false, got '" + std::string(text) + "'"};
}

struct Field {
    std::string_view key;
    std::function<void(ScenarioConfig&, std::string_view)> parse;
    std::function<std::string(const ScenarioConfig&)> print;
};

using Check = std::function<void(double)>;

inline Check any() { return [](double) {}; }
inline Check finite() {
    return [](double v) { if (!std::isfinite(v)) throw BadValue{"must be finite"}; };
}
inline Check positive() {
    return [](double v) { if (!(v > 0.0) || !std::isfinite(v)) throw BadValue{"must be positive"}; };
}
inline Check non_negative() {
    return [](double v) { if (!(v >= 0.0) || !std::isfinite(v)) throw BadValue{"must be non-negative"}; };
}
inline Check range(double lo, double hi, const char* what) {
    return [=](double v) { if (!(v >= lo && v <= hi)) throw BadValue{std::string("must be ") + what}; };
}
inline Check below(double lo, double hi, const char* what) {
    return [=](double v) { if (!(v >= lo && v < hi)) throw BadValue{std::string("must be ") + what}; };
}

template <class Access>
Field real(std::string_view key, Access access, Check check = finite()) {
    return {key,
            [=](ScenarioConfig& c, std::string_view text) {
                const double v = parse_double(text);
                check(v);
                access(c) = v;
            },
            [=](const ScenarioConfig& c) { return format_exact(access(c)); }};
}

template <class Access>
Field integer(std::string_view key, Access access, long long min_value) {
    return {key,
            [=](ScenarioConfig& c, std::string_view text) {
                using T = std::remove_reference_t<decltype(access(c))>;
                const auto v = parse_int<long long>(text);
                if (v < min_value) throw BadValue{"must be >= " + std::to_string(min_value)};
                access(c) = static_cast<T>(v);
            },
            [=](const ScenarioConfig& c) { return std::to_string(access(c)); }};
}

template <class Access>
Field boolean(std::string_view key, Access access) {
    return {key, [=](ScenarioConfig& c, std::string_view text) { access(c) = parse_bool(text); },
            [=](const ScenarioConfig& c) { return std::string(access(c) ? "true" : "false"); }};
}

template <class Access>
Field text(std::string_view key, Access access) {
    return {key, [=](ScenarioConfig& c, std::string_view t) { access(c) = std::string(t); },
            [=](const ScenarioConfig& c) { return access(c); }};
}

#define LUMILINK_FIELD(expr) [](auto& c) -> auto& { return c.expr; }

inline const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back({"global.seed",
                     [](ScenarioConfig& c, std::string_view t) { c.seed = parse_int<std::uint64_t>(t); },
                     [](const ScenarioConfig& c) { return std::to_string(c.seed); }});

        f.push_back(real("linkbudget.altitude_km", LUMILINK_FIELD(linkbudget.altitude_km), positive()));
        f.push_back(real("linkbudget.zenith_deg", LUMILINK_FIELD(linkbudget.zenith_deg), below(0, 90, "in [0, 90)")));
        f.push_back({"linkbudget.earth_model",
                     [](ScenarioConfig& c, std::string_view t) {
                         if (t == "flat") c.linkbudget.earth_model = linkbudget::EarthModel::Flat;
                         else if (t == "spherical") c.linkbudget.earth_model = linkbudget::EarthModel::Spherical;
                         else throw BadValue{"expected flat or spherical"};
                     },
                     [](const ScenarioConfig& c) {
                         return std::string(c.linkbudget.earth_model == linkbudget::EarthModel::Flat ? "flat" : "spherical");
                     }});
        f.push_back(real("linkbudget.dl_wavelength_nm", LUMILINK_FIELD(linkbudget.downlink.wavelength_nm), positive()));
        f.push_back(real("linkbudget.dl_electrical_power_w", LUMILINK_FIELD(linkbudget.downlink.electrical_power_W), positive()));
        f.push_back(real("linkbudget.dl_efficiency", LUMILINK_FIELD(linkbudget.downlink.efficiency),
                         [](double v) { if (!(v > 0.0 && v <= 1.0)) throw BadValue{"must be in (0, 1]"}; }));
        f.push_back(real("linkbudget.dl_tx_gain_dbi", LUMILINK_FIELD(linkbudget.downlink.tx_gain_dBi)));
        f.push_back(real("linkbudget.dl_rx_aperture_m", LUMILINK_FIELD(linkbudget.downlink.rx_aperture_m), positive()));
        f.push_back(real("linkbudget.dl_atmospheric_loss_db", LUMILINK_FIELD(linkbudget.downlink.atmospheric_loss_dB)));
        f.push_back(real("linkbudget.dl_pointing_loss_db", LUMILINK_FIELD(linkbudget.downlink.pointing_loss_dB)));
        f.push_back(real("linkbudget.photons_per_bit", LUMILINK_FIELD(linkbudget.downlink.photons_per_bit), positive()));
        f.push_back(real("linkbudget.magnitude_zero_point_w_m2",
                         LUMILINK_FIELD(linkbudget.downlink.magnitude_zero_point_W_per_m2), positive()));
        f.push_back(real("linkbudget.ul_wavelength_nm", LUMILINK_FIELD(linkbudget.uplink.wavelength_nm), positive()));
        f.push_back(real("linkbudget.ul_electrical_power_w", LUMILINK_FIELD(linkbudget.uplink.electrical_power_W), positive()));
        f.push_back(real("linkbudget.ul_efficiency", LUMILINK_FIELD(linkbudget.uplink.efficiency),
                         [](double v) { if (!(v > 0.0 && v <= 1.0)) throw BadValue{"must be in (0, 1]"}; }));
        f.push_back(real("linkbudget.ul_tx_aperture_m", LUMILINK_FIELD(linkbudget.uplink.tx_aperture_m), positive()));
        f.push_back({"linkbudget.ul_rx_area_cm2",
                     [](ScenarioConfig& c, std::string_view t) {
                         const double v = parse_double(t);
                         positive()(v);
                         c.linkbudget.uplink.rx_area_m2 = v * 1e-4;
                     },
                     [](const ScenarioConfig& c) { return format_exact(c.linkbudget.uplink.rx_area_m2 * 1e4); }});
        f.push_back(real("linkbudget.ul_atmospheric_loss_db", LUMILINK_FIELD(linkbudget.uplink.atmospheric_loss_dB)));
        f.push_back(real("linkbudget.ul_pointing_loss_db", LUMILINK_FIELD(linkbudget.uplink.pointing_loss_dB)));

        f.push_back(real("atmosphere.wind_speed_mps", LUMILINK_FIELD(atmosphere.profile.wind_speed_mps), non_negative()));
        f.push_back(real("atmosphere.C0", LUMILINK_FIELD(atmosphere.profile.ground_constant), non_negative()));
        f.push_back(real("atmosphere.separation_m", LUMILINK_FIELD(atmosphere.separation_m), non_negative()));
        f.push_back(real("atmosphere.path_top_m", LUMILINK_FIELD(atmosphere.path_top_m), positive()));
        f.push_back(real("atmosphere.zenith_deg", LUMILINK_FIELD(atmosphere.zenith_deg), below(0, 90, "in [0, 90)")));
        f.push_back(real("atmosphere.wavelength_nm", LUMILINK_FIELD(atmosphere.wavelength_nm), positive()));
        f.push_back(integer("atmosphere.panels", LUMILINK_FIELD(atmosphere.panels), 2));
        f.push_back(real("atmosphere.curve_top_m", LUMILINK_FIELD(atmosphere.curve_top_m), positive()));
        f.push_back(integer("atmosphere.curve_points", LUMILINK_FIELD(atmosphere.curve_points), 2));

        f.push_back({"modem.snr_axis",
                     [](ScenarioConfig& c, std::string_view t) {
                         if (t == "esn0") c.modem.axis = modem::SnrAxis::EsN0;
                         else if (t == "ebn0") c.modem.axis = modem::SnrAxis::EbN0;
                         else throw BadValue{"expected esn0 or ebn0"};
                     },
                     [](const ScenarioConfig& c) { return std::string(c.modem.axis == modem::SnrAxis::EsN0 ? "esn0" : "ebn0"); }});
        f.push_back(real("modem.snr_start_db", LUMILINK_FIELD(modem.snr_start_db)));
        f.push_back(real("modem.snr_stop_db", LUMILINK_FIELD(modem.snr_stop_db)));
        f.push_back(real("modem.snr_step_db", LUMILINK_FIELD(modem.snr_step_db), positive()));
        f.push_back(integer("modem.n_bits", LUMILINK_FIELD(modem.n_bits), 4));
        f.push_back(boolean("modem.coded", LUMILINK_FIELD(modem.coded)));

        f.push_back(integer("autoencoder.hidden_width", LUMILINK_FIELD(autoencoder.hidden_width), 1));
        f.push_back(integer("autoencoder.channel_uses", LUMILINK_FIELD(autoencoder.channel_uses), 1));
        f.push_back(real("autoencoder.learning_rate", LUMILINK_FIELD(autoencoder.learning_rate), positive()));
        f.push_back(integer("autoencoder.batch_size", LUMILINK_FIELD(autoencoder.batch_size), 1));
        f.push_back(real("autoencoder.train_esn0_db", LUMILINK_FIELD(autoencoder.train_es_n0_dB)));
        f.push_back(integer("autoencoder.steps", LUMILINK_FIELD(autoencoder.steps), 0));
        f.push_back(real("autoencoder.eval_start_db", LUMILINK_FIELD(ae_eval_start_db)));
        f.push_back(real("autoencoder.eval_stop_db", LUMILINK_FIELD(ae_eval_stop_db)));
        f.push_back(real("autoencoder.eval_step_db", LUMILINK_FIELD(ae_eval_step_db), positive()));
        f.push_back(integer("autoencoder.eval_messages", LUMILINK_FIELD(autoencoder.eval_messages_per_point), 1));

        f.push_back(real("diversity.separation_m", LUMILINK_FIELD(diversity.separation_m), non_negative()));
        f.push_back(real("diversity.esn0_db", LUMILINK_FIELD(diversity.es_n0_db)));
        f.push_back(integer("diversity.frame_symbols", LUMILINK_FIELD(diversity.frame_symbols),
                            static_cast<long long>(diversity::kMinFrameSymbols)));
        f.push_back(integer("diversity.trials", LUMILINK_FIELD(diversity.trials), 1));

        f.push_back(integer("wakeup.n_faces", LUMILINK_FIELD(wakeup.receiver.n_faces), 1));
        f.push_back(integer("wakeup.dwell_ms", LUMILINK_FIELD(wakeup.receiver.dwell_ms), 1));
        f.push_back(real("wakeup.beacon_duration_s", LUMILINK_FIELD(wakeup.receiver.beacon_duration_s), positive()));
        f.push_back(real("wakeup.adc_rate_sps", LUMILINK_FIELD(wakeup.receiver.adc_rate_sps), positive()));
        f.push_back(real("wakeup.polling_rate_factor", LUMILINK_FIELD(wakeup.receiver.polling_rate_factor),
                         [](double v) { if (!(v > 0.0 && v <= 1.0)) throw BadValue{"must be in (0, 1]"}; }));
        f.push_back(real("wakeup.threshold_db", LUMILINK_FIELD(wakeup.receiver.detection_threshold_dB)));
        f.push_back(integer("wakeup.clock_recovery_ms", LUMILINK_FIELD(wakeup.receiver.clock_recovery_ms), 0));
        f.push_back(real("wakeup.snr_jitter_db", LUMILINK_FIELD(wakeup.receiver.snr_jitter_dB), non_negative()));
        f.push_back(integer("wakeup.horizon_ms", LUMILINK_FIELD(wakeup.horizon_ms), 1));
        f.push_back(text("wakeup.scenario_csv", LUMILINK_FIELD(wakeup.scenario_csv)));
        f.push_back(integer("wakeup.beacon_face", LUMILINK_FIELD(wakeup.beacon_face), 0));
        f.push_back(integer("wakeup.beacon_onset_ms", LUMILINK_FIELD(wakeup.beacon_onset_ms), 0));
        f.push_back(real("wakeup.beacon_snr_db", LUMILINK_FIELD(wakeup.beacon_snr_db)));
        f.push_back(real("wakeup.background_snr_db", LUMILINK_FIELD(wakeup.background_snr_db)));
        f.push_back(text("wakeup.commands", LUMILINK_FIELD(wakeup.commands)));
        return f;
    }();
    return table;
}

#undef LUMILINK_FIELD

}  // namespace config_detail

/// Parses `telemetry:<hex>` and `powercycle` items separated by ';'.
inline std::vector<wakeup::Command> parse_commands(std::string_view spec) {
    std::vector<wakeup::Command> out;
    while (!spec.empty()) {
        const auto pos = spec.find(';');
        const auto item = config_detail::trim(spec.substr(0, pos));
        spec = pos == std::string_view::npos ? std::string_view{} : spec.substr(pos + 1);
        if (item.empty()) continue;
        if (item == "powercycle") {
            out.emplace_back(wakeup::PowerCycle{});
        } else if (item.starts_with("telemetry:")) {
            const auto hex = item.substr(10);
            if (hex.size() % 2 != 0) throw config_detail::BadValue{"telemetry payload must have an even number of hex digits"};
            wakeup::Telemetry t;
            for (std::size_t i = 0; i < hex.size(); i += 2) {
                unsigned byte = 0;
                auto [ptr, ec] = std::from_chars(hex.data() + i, hex.data() + i + 2, byte, 16);
                if (ec != std::errc{} || ptr != hex.data() + i + 2) throw config_detail::BadValue{"bad hex in telemetry payload"};
                t.payload.push_back(static_cast<std::uint8_t>(byte));
            }
            out.emplace_back(std::move(t));
        } else {
            throw config_detail::BadValue{"unknown command '" + std::string(item) + "'"};
        }
    }
    return out;
}

/// Cross-field checks that no single key can decide.
inline void validate(const ScenarioConfig& c) {
    auto fail = [](const char* key, const std::string& msg) { throw ConfigError(key, 0, msg); };
    try {
        (void)c.linkbudget.path();
    } catch (const DomainError& e) {
        fail("linkbudget", e.what());
    }
    if (c.atmosphere.panels % 2 != 0) fail("atmosphere.panels", "must be even");
    if (c.modem.n_bits % 4 != 0) fail("modem.n_bits", "must be a multiple of 4");
    if (c.modem.snr_stop_db < c.modem.snr_start_db) fail("modem.snr_stop_db", "must be >= snr_start_db");
    if (c.ae_eval_stop_db < c.ae_eval_start_db) fail("autoencoder.eval_stop_db", "must be >= eval_start_db");
    try {
        c.autoencoder_config().validate();
    } catch (const DomainError& e) {
        fail("autoencoder", e.what());
    }
    if (c.wakeup.beacon_face >= c.wakeup.receiver.n_faces) fail("wakeup.beacon_face", "must be < wakeup.n_faces");
    try {
        c.wakeup.receiver.validate();
        (void)parse_commands(c.wakeup.commands);
    } catch (const DomainError& e) {
        fail("wakeup", e.what());
    } catch (const config_detail::BadValue& e) {
        fail("wakeup.commands", e.message);
    }
}

inline ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig config;
    const auto& table = config_detail::fields();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = config_detail::trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'section.key = value'");
        const auto key = config_detail::trim(view.substr(0, eq));
        const auto value = config_detail::trim(view.substr(eq + 1));
        auto it = std::find_if(table.begin(), table.end(), [&](const auto& f) { return f.key == key; });
        if (it == table.end()) throw ConfigError(std::string(key), line_no, "unknown key");
        try {
            it->parse(config, value);
        } catch (const config_detail::BadValue& e) {
            throw ConfigError(std::string(key), line_no, e.message);
        }
    }
    validate(config);
    return config;
}

inline ScenarioConfig parse_config_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
    return parse_config(in);
}

/// Writes every key in table order; parse_config reads it back identically.
inline void save_config(std::ostream& out, const ScenarioConfig& config) {
    for (const auto& f : config_detail::fields()) out << f.key << " = " << f.print(config) << '\n';
}

}  // namespace lumilink
