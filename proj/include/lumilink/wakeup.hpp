#pragma once

// Discrete-event model of the PV-cell uplink wake-up receiver. An envelope
// detector is polled face by face (fixed dwell each); a ground beacon seen
// above threshold triggers clock recovery, best-SNR face selection, and then
// telemetry / power-cycle command handling. Time advances in 1 ms ticks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lumilink/error.hpp"
#include "lumilink/format.hpp"
#include "lumilink/rng.hpp"

namespace lumilink::wakeup {

using Millis = std::int64_t;

struct WakeupConfig {
    int n_faces = 6;
    Millis dwell_ms = 100;
    double beacon_duration_s = 5.0;
    double adc_rate_sps = 2.0e6;
    double polling_rate_factor = 0.1;  // fraction of the full ADC rate used while scanning
    double detection_threshold_dB = 6.0;
    Millis clock_recovery_ms = 10;
    double snr_jitter_dB = 0.0;  // Gaussian measurement noise on each SNR reading

    Millis revisit_gap_ms() const noexcept { return static_cast<Millis>(n_faces) * dwell_ms; }
    double polling_sample_rate_sps() const noexcept { return adc_rate_sps * polling_rate_factor; }

    void validate() const {
        detail::require(n_faces >= 1, "WakeupConfig: n_faces must be >= 1");
        detail::require(dwell_ms > 0, "WakeupConfig: dwell must be positive");
        detail::require(beacon_duration_s > 0.0, "WakeupConfig: beacon duration must be positive");
        detail::require(adc_rate_sps > 0.0, "WakeupConfig: ADC rate must be positive");
        detail::require(polling_rate_factor > 0.0 && polling_rate_factor <= 1.0,
                        "WakeupConfig: polling rate factor must be in (0, 1]");
        detail::require(clock_recovery_ms >= 0, "WakeupConfig: clock recovery time must be non-negative");
        detail::require(snr_jitter_dB >= 0.0, "WakeupConfig: SNR jitter must be non-negative");
    }

    /// Non-fatal configuration issues.
    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (beacon_duration_s * 1000.0 < static_cast<double>(revisit_gap_ms()))
            w.emplace_back("beacon shorter than one full scan cycle; detection is not guaranteed");
        return w;
    }
};

struct TracePoint {
    Millis time_ms;
    double snr_dB;
    bool beacon;
};

/// Step-function trace: each point holds until the next. Before the first
/// point the face is dark (no beacon, SNR = -inf).
class FaceTrace {
public:
    FaceTrace() = default;
    explicit FaceTrace(std::vector<TracePoint> points) : points_(std::move(points)) {
        std::stable_sort(points_.begin(), points_.end(),
                         [](const TracePoint& a, const TracePoint& b) { return a.time_ms < b.time_ms; });
    }

    void add(TracePoint p) {
        auto it = std::upper_bound(points_.begin(), points_.end(), p.time_ms,
                                   [](Millis t, const TracePoint& q) { return t < q.time_ms; });
        points_.insert(it, p);
    }

    TracePoint at(Millis t) const {
        auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                   [](Millis time, const TracePoint& q) { return time < q.time_ms; });
        if (it == points_.begin()) return {t, -std::numeric_limits<double>::infinity(), false};
        return *std::prev(it);
    }

    const std::vector<TracePoint>& points() const noexcept { return points_; }

private:
    std::vector<TracePoint> points_;
};

struct FaceSignal {
    int face_id;
    FaceTrace trace;
};

enum class EventKind {
    ScanStart,
    FaceDwell,
    BeaconDetected,
    ClockRecovered,
    FaceSelected,
    TelemetryDelivered,
    PowerCycleIssued,
    ProtocolError,
};

inline std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::ScanStart: return "ScanStart";
        case EventKind::FaceDwell: return "FaceDwell";
        case EventKind::BeaconDetected: return "BeaconDetected";
        case EventKind::ClockRecovered: return "ClockRecovered";
        case EventKind::FaceSelected: return "FaceSelected";
        case EventKind::TelemetryDelivered: return "TelemetryDelivered";
        case EventKind::PowerCycleIssued: return "PowerCycleIssued";
        case EventKind::ProtocolError: return "ProtocolError";
    }
    return "?";
}

struct WakeupEvent {
    WakeupEvent(Millis t, EventKind k, int face = -1, double snr = std::numeric_limits<double>::quiet_NaN())
        : timestamp_ms(t), kind(k), face_id(face), snr_dB(snr) {}

    Millis timestamp_ms;
    EventKind kind;
    int face_id;
    double snr_dB;
    std::vector<double> snapshot_dB;        // FaceSelected: reading of every face, by position
    std::vector<std::uint8_t> payload;      // TelemetryDelivered
    std::string message;                    // ProtocolError

    std::string detail() const {
        switch (kind) {
            case EventKind::BeaconDetected: return "snr_db=" + format_number(snr_dB);
            case EventKind::FaceSelected: {
                std::string out = "snapshot_db=";
                for (std::size_t i = 0; i < snapshot_dB.size(); ++i) {
                    if (i) out += ';';
                    out += format_number(snapshot_dB[i]);
                }
                return out;
            }
            case EventKind::TelemetryDelivered: {
                static constexpr char hex[] = "0123456789abcdef";
                std::string out = "payload=";
                for (auto b : payload) {
                    out += hex[b >> 4];
                    out += hex[b & 15];
                }
                return out;
            }
            case EventKind::ProtocolError: return message;
            default: return "";
        }
    }
};

using EventLog = std::vector<WakeupEvent>;

enum class Mode { Scanning, Linked };

struct ReceiverState {
    Mode mode = Mode::Scanning;
    Millis clock_ms = 0;
    int selected_face = -1;
};

/// Argmax with ties broken toward the lowest index.
inline int select_face(std::span<const double> snr_dB) {
    detail::require(!snr_dB.empty(), "select_face: no faces");
    int best = 0;
    for (std::size_t i = 1; i < snr_dB.size(); ++i)
        if (snr_dB[i] > snr_dB[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
    return best;
}

namespace detail {

inline void check_faces(const std::vector<FaceSignal>& faces) {
    lumilink::detail::require(!faces.empty(), "run_scan: empty face set");
    for (std::size_t i = 0; i < faces.size(); ++i)
        for (std::size_t j = i + 1; j < faces.size(); ++j)
            lumilink::detail::require(faces[i].face_id != faces[j].face_id, "run_scan: duplicate face id");
}

}  // namespace detail

/// Round-robin scan from `state.clock_ms` until a link forms or `horizon_ms`
/// is reached. Each dwell emits FaceDwell; inside a dwell the polled face is
/// checked every millisecond. On detection: BeaconDetected, then after the
/// clock-recovery delay ClockRecovered and FaceSelected (best reading across
/// all faces at that instant). Faces are polled in the order given.
inline EventLog run_scan(const WakeupConfig& config, const std::vector<FaceSignal>& faces, Millis horizon_ms,
                         std::uint64_t seed, ReceiverState& state) {
    config.validate();
    detail::check_faces(faces);
    lumilink::detail::require(horizon_ms > 0, "run_scan: horizon must be positive");
    lumilink::detail::require(state.mode == Mode::Scanning, "run_scan: receiver is not scanning");

    auto gen = make_rng(derive_seed(seed, "wakeup", static_cast<std::uint64_t>(state.clock_ms)));
    std::normal_distribution<double> jitter(0.0, config.snr_jitter_dB);
    auto reading = [&](const FaceSignal& f, Millis t) {
        const double snr = f.trace.at(t).snr_dB;
        return config.snr_jitter_dB > 0.0 ? snr + jitter(gen) : snr;
    };

    EventLog log;
    Millis t = state.clock_ms;
    log.push_back({t, EventKind::ScanStart});
    for (std::size_t slot = 0; t < horizon_ms; ++slot) {
        const auto& face = faces[slot % faces.size()];
        log.push_back({t, EventKind::FaceDwell, face.face_id});
        const Millis dwell_end = std::min(t + config.dwell_ms, horizon_ms);
        for (Millis tick = t; tick < dwell_end; ++tick) {
            if (!face.trace.at(tick).beacon) continue;
            const double snr = reading(face, tick);
            if (snr < config.detection_threshold_dB) continue;

            log.push_back({tick, EventKind::BeaconDetected, face.face_id, snr});
            const Millis locked = tick + config.clock_recovery_ms;
            log.push_back({locked, EventKind::ClockRecovered, face.face_id});
            WakeupEvent selected{locked, EventKind::FaceSelected};
            for (const auto& f : faces) selected.snapshot_dB.push_back(reading(f, locked));
            const int best = select_face(selected.snapshot_dB);
            selected.face_id = faces[static_cast<std::size_t>(best)].face_id;
            selected.snr_dB = selected.snapshot_dB[static_cast<std::size_t>(best)];
            log.push_back(std::move(selected));

            state.mode = Mode::Linked;
            state.selected_face = log.back().face_id;
            state.clock_ms = locked;
            return log;
        }
        t = dwell_end;
    }
    state.clock_ms = std::max(state.clock_ms, horizon_ms);
    return log;
}

inline EventLog run_scan(const WakeupConfig& config, const std::vector<FaceSignal>& faces, Millis horizon_ms,
                         std::uint64_t seed) {
    ReceiverState state;
    return run_scan(config, faces, horizon_ms, seed, state);
}

struct Telemetry {
    std::vector<std::uint8_t> payload;
};
struct PowerCycle {};
using Command = std::variant<Telemetry, PowerCycle>;

/// Applies an uplink command at `time_ms` (clamped to the receiver clock).
/// Commands before a link exists produce a ProtocolError event.
inline EventLog handle_command(ReceiverState& state, const Command& command, Millis time_ms) {
    const Millis t = std::max(state.clock_ms, time_ms);
    state.clock_ms = t;
    if (state.mode != Mode::Linked) {
        WakeupEvent e{t, EventKind::ProtocolError};
        e.message = "command received before link established";
        return {e};
    }
    if (const auto* tm = std::get_if<Telemetry>(&command)) {
        WakeupEvent e{t, EventKind::TelemetryDelivered, state.selected_face};
        e.payload = tm->payload;
        return {e};
    }
    state.mode = Mode::Scanning;
    const int face = state.selected_face;
    state.selected_face = -1;
    return {WakeupEvent{t, EventKind::PowerCycleIssued, face}};
}

/// Standard scenario: every face sits at `background_snr_dB` with no beacon,
/// except `beacon_face`, which carries the beacon from `onset_ms` for the
/// configured beacon duration at `beacon_snr_dB`.
inline std::vector<FaceSignal> single_beacon_scenario(const WakeupConfig& config, int beacon_face, Millis onset_ms,
                                                      double beacon_snr_dB, double background_snr_dB = 0.0) {
    std::vector<FaceSignal> faces;
    const auto duration = static_cast<Millis>(std::llround(config.beacon_duration_s * 1000.0));
    for (int f = 0; f < config.n_faces; ++f) {
        FaceTrace trace({{0, background_snr_dB, false}});
        if (f == beacon_face) {
            trace.add({onset_ms, beacon_snr_dB, true});
            trace.add({onset_ms + duration, background_snr_dB, false});
        }
        faces.push_back({f, std::move(trace)});
    }
    return faces;
}

// CSV I/O ------------------------------------------------------------------

/// Reads `time_ms,face_id,snr_db,beacon` rows (header required). Faces are
/// returned in ascending id order.
inline std::vector<FaceSignal> read_face_traces(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("face trace CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "time_ms,face_id,snr_db,beacon")
        throw std::runtime_error("face trace CSV: expected header time_ms,face_id,snr_db,beacon");
    std::vector<FaceSignal> faces;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 4)
            throw std::runtime_error("face trace CSV line " + std::to_string(line_no) + ": expected 4 fields");
        TracePoint p{};
        int face_id = 0;
        try {
            p.time_ms = std::stoll(cells[0]);
            face_id = std::stoi(cells[1]);
            p.snr_dB = std::stod(cells[2]);
        } catch (const std::exception&) {
            throw std::runtime_error("face trace CSV line " + std::to_string(line_no) + ": malformed number");
        }
        if (cells[3] == "1" || cells[3] == "true") p.beacon = true;
        else if (cells[3] == "0" || cells[3] == "false") p.beacon = false;
        else throw std::runtime_error("face trace CSV line " + std::to_string(line_no) + ": beacon must be 0/1");
        auto it = std::find_if(faces.begin(), faces.end(), [&](const FaceSignal& f) { return f.face_id == face_id; });
        if (it == faces.end()) {
            faces.push_back({face_id, {}});
            it = std::prev(faces.end());
        }
        it->trace.add(p);
    }
    std::sort(faces.begin(), faces.end(), [](const FaceSignal& a, const FaceSignal& b) { return a.face_id < b.face_id; });
    return faces;
}

inline void write_event_log(std::ostream& out, const EventLog& log) {
    CsvWriter csv(out);
    csv.header({"timestamp_ms", "kind", "face_id", "detail"});
    for (const auto& e : log) {
        csv.field(static_cast<std::int64_t>(e.timestamp_ms)).field(to_string(e.kind)).field(e.face_id).field(e.detail());
        csv.end_row();
    }
}

}  // namespace lumilink::wakeup
