#pragma once

// Subcommand implementations behind the `lumilink` executable. Each writes CSV
// artifacts into an output directory and returns the process exit code:
// 0 success, 1 validation error, 2 runtime failure (including training divergence).

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>

#include "lumilink/atmosphere.hpp"
#include "lumilink/autoencoder.hpp"
#include "lumilink/config.hpp"
#include "lumilink/diversity.hpp"
#include "lumilink/format.hpp"
#include "lumilink/linkbudget.hpp"
#include "lumilink/modem/chain.hpp"
#include "lumilink/wakeup.hpp"

namespace lumilink::app {

namespace fs = std::filesystem;

inline constexpr std::array<std::string_view, 7> kSubcommands{
    "linkbudget", "atmosphere", "simulate-ber", "train-autoencoder", "diversity-sim", "wakeup-sim", "report"};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

inline std::string usage() {
    std::string u = "usage: lumilink [--config <path>] [--out <dir>] [--seed <u64>] <subcommand>\nsubcommands:";
    for (auto s : kSubcommands) u += std::string(" ") + std::string(s);
    return u + "\n";
}

/// Values printed in the two link budget tables, used by `report`.
struct PublishedRow {
    std::string_view term;
    double published;
    std::string_view unit;
};

inline constexpr std::array<PublishedRow, 7> kDownlinkTable{{{"tx_power", 19.9, "dBW"},
                                                         {"tx_gain", 12.0, "dBi"},
                                                         {"path_length", 522.0, "km"},
                                                         {"fspl", 260.5, "dB"},
                                                         {"rx_gain", 123.6, "dBi"},
                                                         {"received_power", -107.3, "dBW"},
                                                         {"bit_rate", 8.85e4, "bit/s"}}};

inline constexpr std::array<PublishedRow, 6> kUplinkTable{{{"tx_power", 21.76, "dBW"},
                                                       {"tx_gain", 121.0, "dBi"},
                                                       {"path_length", 522.0, "km"},
                                                       {"fspl", 255.8, "dB"},
                                                       {"rx_gain", 108.9, "dBi"},
                                                       {"received_power", -8.12, "dBW"}}};

namespace detail {

inline std::ofstream open_csv(const fs::path& dir, const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
}

inline double lookup(const linkbudget::LinkBudgetReport& r, std::string_view term, double path_km) {
    if (term == "tx_power") return r.tx_power_dBW;
    if (term == "tx_gain") return r.tx_gain_dBi;
    if (term == "path_length") return path_km;
    if (term == "fspl") return r.fspl_dB;
    if (term == "rx_gain") return r.rx_gain_dBi;
    if (term == "received_power") return r.received_power_dBW;
    if (term == "bit_rate") return r.bit_rate_bps.value_or(NAN);
    return NAN;
}

inline int run_linkbudget(const ScenarioConfig& c, const fs::path& dir, std::ostream& out) {
    const auto path = c.linkbudget.path();
    const auto& dl = c.linkbudget.downlink;
    const auto down = linkbudget::downlink_budget(dl, path);
    const auto up = linkbudget::uplink_budget(c.linkbudget.uplink, path);
    const double magnitude = linkbudget::visual_magnitude(*down.irradiance_W_per_m2, dl.magnitude_zero_point_W_per_m2);
    {
        auto f = open_csv(dir, "linkbudget_downlink.csv");
        linkbudget::write_csv(f, down, {{"path_length", path.path_length_m, "m"}, {"visual_magnitude", magnitude, "mag"}});
    }
    {
        auto f = open_csv(dir, "linkbudget_uplink.csv");
        linkbudget::write_csv(f, up, {{"path_length", path.path_length_m, "m"}});
    }
    out << "slant range: " << format_fixed(path.path_length_m / 1e3, 2) << " km\n";
    linkbudget::write_table(out, "Downlink (LED, " + format_number(dl.wavelength_nm) + " nm)", down);
    out << "  visual magnitude     " << format_fixed(magnitude, 2) << '\n';
    linkbudget::write_table(out, "Uplink (laser, " + format_number(c.linkbudget.uplink.wavelength_nm) + " nm)", up);
    return kExitOk;
}

inline int run_atmosphere(const ScenarioConfig& c, const fs::path& dir, std::ostream& out) {
    const auto& a = c.atmosphere;
    {
        auto f = open_csv(dir, "atmosphere_cn2.csv");
        CsvWriter csv(f);
        csv.header({"height_m", "cn2"});
        for (int i = 0; i < a.curve_points; ++i) {
            const double h = a.curve_top_m * i / (a.curve_points - 1);
            csv.field(h).field(atmosphere::cn2(a.profile, h));
            csv.end_row();
        }
    }
    const auto inputs = a.inputs();
    const double integral = atmosphere::integrate_cn2_z53(a.profile, a.path_top_m, a.panels);
    const double variance = atmosphere::phase_variance(inputs, a.profile, a.panels);
    auto f = open_csv(dir, "atmosphere_phase.csv");
    CsvWriter csv(f);
    csv.header({"quantity", "value", "unit"});
    csv.field("cn2_ground").field(atmosphere::cn2(a.profile, 0.0)).field("m^-2/3");
    csv.end_row();
    csv.field("cn2_z53_integral").field(integral).field("m^2");
    csv.end_row();
    csv.field("phase_variance").field(variance).field("rad^2");
    csv.end_row();
    csv.field("phase_std").field(std::sqrt(variance)).field("rad");
    csv.end_row();
    out << "differential phase variance: " << format_number(variance) << " rad^2 (d = " << format_number(a.separation_m)
        << " m, H = " << format_number(a.path_top_m) << " m)\n";
    return kExitOk;
}

inline int run_simulate_ber(const ScenarioConfig& c, const fs::path& dir, std::ostream& out) {
    modem::BerSweepSpec spec;
    spec.snr_grid_db = ScenarioConfig::grid(c.modem.snr_start_db, c.modem.snr_stop_db, c.modem.snr_step_db);
    spec.axis = c.modem.axis;
    spec.coded = c.modem.coded;
    spec.n_bits = c.modem.n_bits;
    const auto points = modem::sweep_ber(spec, derive_seed(c.seed, "simulate-ber"));
    auto f = open_csv(dir, "ber.csv");
    CsvWriter csv(f);
    csv.header({"snr_db", "ber", "bler", "n_bits", "seed"});
    for (const auto& p : points) {
        csv.field(p.snr_db).field(p.ber).field(p.bler).field(static_cast<std::uint64_t>(p.n_bits)).field(p.seed);
        csv.end_row();
    }
    out << "wrote " << points.size() << " points to ber.csv\n";
    return kExitOk;
}

inline void write_train_report(const fs::path& dir, const autoencoder::TrainReport& r) {
    {
        auto f = open_csv(dir, "autoencoder_train.csv");
        CsvWriter csv(f);
        csv.header({"step", "loss"});
        for (std::size_t i = 0; i < r.losses.size(); ++i) {
            csv.field(static_cast<std::uint64_t>(i)).field(r.losses[i]);
            csv.end_row();
        }
    }
    auto f = open_csv(dir, "autoencoder_bler.csv");
    CsvWriter csv(f);
    csv.header({"es_n0_db", "bler_before", "bler_after"});
    for (std::size_t i = 0; i < r.eval_grid_dB.size(); ++i) {
        csv.field(r.eval_grid_dB[i]);
        csv.field(i < r.bler_before.size() ? r.bler_before[i] : NAN);
        csv.field(i < r.bler_after.size() ? r.bler_after[i] : NAN);
        csv.end_row();
    }
}

inline int run_train_autoencoder(const ScenarioConfig& c, const fs::path& dir, std::ostream& out) {
    try {
        auto result = autoencoder::train(c.autoencoder_config());
        write_train_report(dir, result.report);
        std::ofstream params(dir / "autoencoder.llae", std::ios::binary);
        autoencoder::save_params(params, result.params);
        out << "final loss " << format_number(result.report.losses.empty() ? NAN : result.report.losses.back())
            << ", trained in " << format_fixed(result.report.wall_seconds, 2) << " s\n";
        return kExitOk;
    } catch (const autoencoder::TrainingError& e) {
        write_train_report(dir, e.report());
        throw;
    }
}

inline int run_diversity(const ScenarioConfig& c, const fs::path& dir, std::ostream& out) {
    const auto first = c.diversity_scenario(0);
    const atmosphere::PhasePairSampler sampler(first.path, first.profile);
    auto f = open_csv(dir, "diversity.csv");
    CsvWriter csv(f);
    csv.header({"seed", "true_dphi", "est_dphi", "snr_single_db", "snr_combined_db", "ber_single", "ber_combined"});
    double gain = 0.0;
    for (int t = 0; t < c.diversity.trials; ++t) {
        const auto scenario = c.diversity_scenario(static_cast<std::uint64_t>(t));
        const auto r = diversity::run_diversity_experiment(scenario, sampler);
        csv.field(scenario.seed).field(r.true_dphi).field(r.output.estimated_dphi).field(r.output.snr_single_dB);
        csv.field(r.output.snr_combined_dB).field(r.ber_rx1).field(r.ber_combined);
        csv.end_row();
        gain += r.output.snr_combined_dB - r.output.snr_single_dB;
    }
    out << "mean combining gain " << format_fixed(gain / c.diversity.trials, 2) << " dB over " << c.diversity.trials
        << " trials\n";
    return kExitOk;
}

inline int run_wakeup(const ScenarioConfig& c, const fs::path& dir, std::ostream& out) {
    const auto& w = c.wakeup;
    std::vector<wakeup::FaceSignal> faces;
    if (w.scenario_csv.empty()) {
        faces = wakeup::single_beacon_scenario(w.receiver, w.beacon_face, w.beacon_onset_ms, w.beacon_snr_db,
                                               w.background_snr_db);
    } else {
        std::ifstream in(w.scenario_csv);
        if (!in) throw ConfigError("wakeup.scenario_csv", 0, "cannot open '" + w.scenario_csv + "'");
        faces = wakeup::read_face_traces(in);
    }
    for (const auto& warning : w.receiver.warnings()) out << "warning: " << warning << '\n';
    out << "scan polling at " << format_number(w.receiver.polling_sample_rate_sps()) << " samples/s ("
        << format_number(100.0 * w.receiver.polling_rate_factor) << " % of the full ADC rate)\n";

    const auto seed = derive_seed(c.seed, "wakeup-sim");
    wakeup::ReceiverState state;
    auto log = wakeup::run_scan(w.receiver, faces, w.horizon_ms, seed, state);
    if (state.mode == wakeup::Mode::Linked) {
        for (const auto& cmd : parse_commands(w.commands)) {
            auto events = wakeup::handle_command(state, cmd, state.clock_ms + 1);
            log.insert(log.end(), events.begin(), events.end());
            if (state.mode == wakeup::Mode::Scanning) {
                const auto rescan = wakeup::run_scan(w.receiver, faces, state.clock_ms + w.horizon_ms, seed, state);
                log.insert(log.end(), rescan.begin(), rescan.end());
            }
        }
    }
    auto f = open_csv(dir, "wakeup_events.csv");
    wakeup::write_event_log(f, log);
    out << "wrote " << log.size() << " events to wakeup_events.csv\n";
    return kExitOk;
}

template <std::size_t N>
void report_table(CsvWriter& csv, std::ostream& out, std::string_view name, const std::array<PublishedRow, N>& rows,
                  const linkbudget::LinkBudgetReport& r, double path_km) {
    out << name << '\n' << "  term                   published    computed        delta\n";
    for (const auto& row : rows) {
        const double computed = lookup(r, row.term, path_km);
        const double delta = computed - row.published;
        csv.field(name).field(row.term).field(row.published).field(computed).field(delta).field(row.unit);
        csv.end_row();
        std::string term(row.term);
        term.resize(20, ' ');
        auto col = [](std::string s) {
            s.insert(0, s.size() < 12 ? 12 - s.size() : 0, ' ');
            return s;
        };
        out << "  " << term << ' ' << col(format_number(row.published)) << ' ' << col(format_fixed(computed, 2)) << ' '
            << col(format_fixed(delta, 2)) << ' ' << row.unit << '\n';
    }
}

inline int run_report(const ScenarioConfig& c, const fs::path& dir, std::ostream& out) {
    const auto path = c.linkbudget.path();
    const auto down = linkbudget::downlink_budget(c.linkbudget.downlink, path);
    const auto up = linkbudget::uplink_budget(c.linkbudget.uplink, path);
    auto f = open_csv(dir, "report.csv");
    CsvWriter csv(f);
    csv.header({"table", "term", "published", "computed", "delta", "unit"});
    report_table(csv, out, "downlink", kDownlinkTable, down, path.path_length_m / 1e3);
    report_table(csv, out, "uplink", kUplinkTable, up, path.path_length_m / 1e3);
    return kExitOk;
}

}  // namespace detail

/// Runs one subcommand. Errors are reported on `err` as a single line
/// `error kind=<validation|runtime> message=<text>`.
inline int dispatch(std::string_view subcommand, const ScenarioConfig& config, const fs::path& out_dir,
                    std::ostream& out, std::ostream& err) {
    auto fail = [&](int code, std::string_view kind, std::string_view message) {
        err << "error kind=" << kind << " message=" << message << '\n';
        return code;
    };
    try {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (subcommand == "linkbudget") return detail::run_linkbudget(config, out_dir, out);
        if (subcommand == "atmosphere") return detail::run_atmosphere(config, out_dir, out);
        if (subcommand == "simulate-ber") return detail::run_simulate_ber(config, out_dir, out);
        if (subcommand == "train-autoencoder") return detail::run_train_autoencoder(config, out_dir, out);
        if (subcommand == "diversity-sim") return detail::run_diversity(config, out_dir, out);
        if (subcommand == "wakeup-sim") return detail::run_wakeup(config, out_dir, out);
        if (subcommand == "report") return detail::run_report(config, out_dir, out);
        out << usage();
        return fail(kExitValidation, "validation", "unknown subcommand '" + std::string(subcommand) + "'");
    } catch (const ConfigError& e) {
        return fail(kExitValidation, "validation", e.what());
    } catch (const DomainError& e) {
        return fail(kExitValidation, "validation", e.what());
    } catch (const std::exception& e) {
        return fail(kExitRuntime, "runtime", e.what());
    }
}

}  // namespace lumilink::app
