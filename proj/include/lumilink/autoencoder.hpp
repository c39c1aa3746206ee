#pragma once

// End-to-end learned modem: one-hot message -> dense encoder -> power
// normalization -> AWGN -> dense decoder -> softmax. Gradients are computed by
// hand-written reverse-mode accumulation; Adam drives training.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lumilink/error.hpp"
#include "lumilink/iq.hpp"
#include "lumilink/modem/channel.hpp"
#include "lumilink/rng.hpp"

namespace lumilink::autoencoder {

struct AeShape {
    int n_messages = 16;
    int channel_uses = 7;  // complex
    int hidden_width = 32;

    int real_dim() const noexcept { return 2 * channel_uses; }
    friend bool operator==(const AeShape&, const AeShape&) = default;
};

struct AeConfig {
    int n_messages = 16;
    int bits_per_message = 4;
    int channel_uses = 7;
    int hidden_width = 32;
    double learning_rate = 1e-3;
    int batch_size = 256;
    double train_es_n0_dB = 10.0;
    int steps = 5000;
    std::uint64_t seed = 1;
    std::vector<double> eval_grid_dB{0, 2, 4, 6, 8, 10};
    int eval_messages_per_point = 20000;

    AeShape shape() const { return {n_messages, channel_uses, hidden_width}; }

    void validate() const {
        detail::require(bits_per_message >= 1 && bits_per_message <= 16, "AeConfig: bits_per_message out of range");
        detail::require(n_messages == (1 << bits_per_message), "AeConfig: n_messages must equal 2^bits_per_message");
        detail::require(channel_uses >= 1, "AeConfig: channel_uses must be >= 1");
        detail::require(hidden_width >= 1, "AeConfig: hidden_width must be >= 1");
        detail::require(learning_rate > 0.0 && std::isfinite(learning_rate), "AeConfig: learning_rate must be positive");
        detail::require(batch_size >= 1, "AeConfig: batch_size must be >= 1");
        detail::require(std::isfinite(train_es_n0_dB) || train_es_n0_dB == modem::kNoiselessSnr,
                        "AeConfig: train_es_n0_dB must be finite or +inf (noiseless)");
        detail::require(steps >= 0, "AeConfig: steps must be non-negative");
        detail::require(eval_messages_per_point >= 1, "AeConfig: eval_messages_per_point must be >= 1");
    }
};

/// Layer order: encoder hidden, encoder output, decoder hidden, decoder output.
enum class Layer : int { EncoderHidden = 0, EncoderOut = 1, DecoderHidden = 2, DecoderOut = 3 };
inline constexpr int kLayerCount = 4;

struct LayerDims {
    int rows;  // outputs
    int cols;  // inputs
    std::size_t size() const noexcept { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols + 1); }
    friend bool operator==(const LayerDims&, const LayerDims&) = default;
};

inline std::array<LayerDims, kLayerCount> layer_dims(const AeShape& s) {
    return {{{s.hidden_width, s.n_messages},
             {s.real_dim(), s.hidden_width},
             {s.hidden_width, s.real_dim()},
             {s.n_messages, s.hidden_width}}};
}

/// All weights and biases in one contiguous buffer. Each layer stores its
/// row-major weight matrix followed by its bias vector.
class MlpParams {
public:
    MlpParams() = default;

    explicit MlpParams(const AeShape& shape) : shape_(shape), dims_(layer_dims(shape)) {
        detail::require(shape.n_messages >= 1 && shape.channel_uses >= 1 && shape.hidden_width >= 1,
                        "MlpParams: all dimensions must be positive");
        std::size_t offset = 0;
        for (int l = 0; l < kLayerCount; ++l) {
            offsets_[static_cast<std::size_t>(l)] = offset;
            offset += dims_[static_cast<std::size_t>(l)].size();
        }
        values_.assign(offset, 0.0);
    }

    /// Glorot-uniform weights, zero biases; a pure function of (shape, seed).
    static MlpParams initialize(const AeShape& shape, std::uint64_t seed) {
        MlpParams p(shape);
        auto gen = make_rng(derive_seed(seed, "ae-init"));
        for (int l = 0; l < kLayerCount; ++l) {
            const auto d = p.dims(static_cast<Layer>(l));
            const double limit = std::sqrt(6.0 / (d.rows + d.cols));
            std::uniform_real_distribution<double> uni(-limit, limit);
            for (auto& w : p.weights(static_cast<Layer>(l))) w = uni(gen);
        }
        return p;
    }

    const AeShape& shape() const noexcept { return shape_; }
    LayerDims dims(Layer l) const { return dims_[index(l)]; }

    std::span<double> weights(Layer l) { return {values_.data() + offsets_[index(l)], weight_count(l)}; }
    std::span<const double> weights(Layer l) const { return {values_.data() + offsets_[index(l)], weight_count(l)}; }
    std::span<double> bias(Layer l) {
        return {values_.data() + offsets_[index(l)] + weight_count(l), static_cast<std::size_t>(dims(l).rows)};
    }
    std::span<const double> bias(Layer l) const {
        return {values_.data() + offsets_[index(l)] + weight_count(l), static_cast<std::size_t>(dims(l).rows)};
    }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool all_finite() const {
        return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
    }

    friend bool operator==(const MlpParams& a, const MlpParams& b) {
        return a.shape_ == b.shape_ && a.values_ == b.values_;
    }

private:
    static std::size_t index(Layer l) { return static_cast<std::size_t>(l); }
    std::size_t weight_count(Layer l) const {
        const auto d = dims(l);
        return static_cast<std::size_t>(d.rows) * static_cast<std::size_t>(d.cols);
    }

    AeShape shape_{};
    std::array<LayerDims, kLayerCount> dims_{};
    std::array<std::size_t, kLayerCount> offsets_{};
    std::vector<double> values_;
};

namespace detail {

inline void dense(std::span<const double> w, std::span<const double> b, std::span<const double> in,
                  std::span<double> out) {
    const std::size_t cols = in.size();
    for (std::size_t r = 0; r < out.size(); ++r) {
        double acc = b[r];
        const double* row = w.data() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) acc += row[c] * in[c];
        out[r] = acc;
    }
}

inline void relu(std::span<const double> pre, std::span<double> out) {
    for (std::size_t i = 0; i < pre.size(); ++i) out[i] = pre[i] > 0.0 ? pre[i] : 0.0;
}

/// Numerically stable softmax; returns log-sum-exp of the logits.
inline double softmax(std::span<const double> logits, std::span<double> probs) {
    const double peak = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) sum += probs[i] = std::exp(logits[i] - peak);
    for (auto& p : probs) p /= sum;
    return peak + std::log(sum);
}

/// Activations of one message through the whole network, kept for backprop.
struct Trace {
    int message = 0;
    std::vector<double> h1_pre, h1, x, s, y, h2_pre, h2, logits, probs;
    double norm2 = 0.0;  // |x|^2 before normalization
    double log_partition = 0.0;

    explicit Trace(const AeShape& sh)
        : h1_pre(static_cast<std::size_t>(sh.hidden_width)), h1(h1_pre.size()),
          x(static_cast<std::size_t>(sh.real_dim())), s(x.size()), y(x.size()),
          h2_pre(h1_pre.size()), h2(h1_pre.size()),
          logits(static_cast<std::size_t>(sh.n_messages)), probs(logits.size()) {}
};

inline void encode_into(const MlpParams& p, int message, Trace& t) {
    const auto& sh = p.shape();
    t.message = message;
    const auto w1 = p.weights(Layer::EncoderHidden);
    const auto b1 = p.bias(Layer::EncoderHidden);
    // One-hot input: the first layer reduces to picking column `message`.
    for (int j = 0; j < sh.hidden_width; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        t.h1_pre[jj] = w1[jj * static_cast<std::size_t>(sh.n_messages) + static_cast<std::size_t>(message)] + b1[jj];
    }
    relu(t.h1_pre, t.h1);
    dense(p.weights(Layer::EncoderOut), p.bias(Layer::EncoderOut), t.h1, t.x);
    t.norm2 = std::inner_product(t.x.begin(), t.x.end(), t.x.begin(), 0.0);
    if (!(t.norm2 > 0.0) || !std::isfinite(t.norm2))
        throw DegenerateEncodingError("encoder output has zero or non-finite energy; cannot normalize");
    const double alpha = std::sqrt(static_cast<double>(sh.channel_uses) / t.norm2);
    for (std::size_t i = 0; i < t.x.size(); ++i) t.s[i] = alpha * t.x[i];
}

inline void decode_into(const MlpParams& p, Trace& t) {
    dense(p.weights(Layer::DecoderHidden), p.bias(Layer::DecoderHidden), t.y, t.h2_pre);
    relu(t.h2_pre, t.h2);
    dense(p.weights(Layer::DecoderOut), p.bias(Layer::DecoderOut), t.h2, t.logits);
    t.log_partition = softmax(t.logits, t.probs);
}

inline void check_message(const AeShape& sh, int message) {
    lumilink::detail::require(message >= 0 && message < sh.n_messages, "autoencoder: message index out of range");
}

}  // namespace detail

/// Encoder output as `channel_uses` complex samples with mean |s|^2 = 1.
inline IqFrame encode_forward(const MlpParams& params, int message_index) {
    detail::check_message(params.shape(), message_index);
    detail::Trace t(params.shape());
    detail::encode_into(params, message_index, t);
    std::vector<Complex> out(static_cast<std::size_t>(params.shape().channel_uses));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Complex(t.s[2 * i], t.s[2 * i + 1]);
    return IqFrame(std::move(out));
}

inline std::vector<double> decode_logits(const MlpParams& params, const IqFrame& frame) {
    lumilink::detail::require(frame.size() == static_cast<std::size_t>(params.shape().channel_uses),
                              "decode_forward: frame length must equal channel_uses");
    detail::Trace t(params.shape());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        t.y[2 * i] = frame[i].real();
        t.y[2 * i + 1] = frame[i].imag();
    }
    detail::decode_into(params, t);
    return t.logits;
}

/// Posterior over messages; positive entries summing to one.
inline std::vector<double> decode_forward(const MlpParams& params, const IqFrame& frame) {
    const auto logits = decode_logits(params, frame);
    std::vector<double> probs(logits.size());
    detail::softmax(logits, probs);
    return probs;
}

inline std::vector<double> softmax(std::span<const double> logits) {
    lumilink::detail::require(!logits.empty(), "softmax: empty input");
    std::vector<double> probs(logits.size());
    detail::softmax(logits, probs);
    return probs;
}

struct LossAndGradients {
    double loss;
    MlpParams gradients;
};

/// Mean cross-entropy over the batch with fresh AWGN per sample drawn from `gen`,
/// plus its exact gradient (noise held constant).
template <std::uniform_random_bit_generator Generator>
LossAndGradients loss_and_gradients(const MlpParams& params, std::span<const int> batch, double es_n0_dB,
                                    Generator& gen) {
    lumilink::detail::require(!batch.empty(), "loss_and_gradients: empty batch");
    const auto& sh = params.shape();
    const std::size_t hidden = static_cast<std::size_t>(sh.hidden_width);
    const std::size_t real_dim = static_cast<std::size_t>(sh.real_dim());
    const std::size_t n_msg = static_cast<std::size_t>(sh.n_messages);

    const bool noiseless = es_n0_dB == modem::kNoiselessSnr;
    const double n0 = noiseless ? 0.0 : 1.0 / modem::db_to_linear(es_n0_dB);
    std::normal_distribution<double> noise(0.0, std::sqrt(n0 / 2.0));

    MlpParams grad(sh);
    auto gW1 = grad.weights(Layer::EncoderHidden);
    auto gb1 = grad.bias(Layer::EncoderHidden);
    auto gW2 = grad.weights(Layer::EncoderOut);
    auto gb2 = grad.bias(Layer::EncoderOut);
    auto gW3 = grad.weights(Layer::DecoderHidden);
    auto gb3 = grad.bias(Layer::DecoderHidden);
    auto gW4 = grad.weights(Layer::DecoderOut);
    auto gb4 = grad.bias(Layer::DecoderOut);
    const auto W2 = params.weights(Layer::EncoderOut);
    const auto W3 = params.weights(Layer::DecoderHidden);
    const auto W4 = params.weights(Layer::DecoderOut);

    detail::Trace t(sh);
    std::vector<double> dz(n_msg), dh2(hidden), dy(real_dim), dx(real_dim), dh1(hidden);
    double total = 0.0;
    for (int message : batch) {
        detail::check_message(sh, message);
        detail::encode_into(params, message, t);
        for (std::size_t i = 0; i < real_dim; ++i) t.y[i] = noiseless ? t.s[i] : t.s[i] + noise(gen);
        detail::decode_into(params, t);
        const auto m = static_cast<std::size_t>(message);
        total += t.log_partition - t.logits[m];

        // Softmax + cross-entropy.
        for (std::size_t k = 0; k < n_msg; ++k) dz[k] = t.probs[k] - (k == m ? 1.0 : 0.0);
        for (std::size_t k = 0; k < n_msg; ++k) {
            gb4[k] += dz[k];
            for (std::size_t j = 0; j < hidden; ++j) gW4[k * hidden + j] += dz[k] * t.h2[j];
        }
        for (std::size_t j = 0; j < hidden; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n_msg; ++k) acc += W4[k * hidden + j] * dz[k];
            dh2[j] = t.h2_pre[j] > 0.0 ? acc : 0.0;
        }
        for (std::size_t j = 0; j < hidden; ++j) {
            gb3[j] += dh2[j];
            for (std::size_t i = 0; i < real_dim; ++i) gW3[j * real_dim + i] += dh2[j] * t.y[i];
        }
        for (std::size_t i = 0; i < real_dim; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < hidden; ++j) acc += W3[j * real_dim + i] * dh2[j];
            dy[i] = acc;  // noise is additive, so ds = dy
        }
        // s = alpha x, alpha = sqrt(n / |x|^2):  dx = alpha (ds - x (x.ds) / |x|^2)
        const double alpha = std::sqrt(static_cast<double>(sh.channel_uses) / t.norm2);
        const double x_dot = std::inner_product(t.x.begin(), t.x.end(), dy.begin(), 0.0);
        for (std::size_t i = 0; i < real_dim; ++i) dx[i] = alpha * (dy[i] - t.x[i] * x_dot / t.norm2);
        for (std::size_t i = 0; i < real_dim; ++i) {
            gb2[i] += dx[i];
            for (std::size_t j = 0; j < hidden; ++j) gW2[i * hidden + j] += dx[i] * t.h1[j];
        }
        for (std::size_t j = 0; j < hidden; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < real_dim; ++i) acc += W2[i * hidden + j] * dx[i];
            dh1[j] = t.h1_pre[j] > 0.0 ? acc : 0.0;
        }
        for (std::size_t j = 0; j < hidden; ++j) {
            gb1[j] += dh1[j];
            gW1[j * n_msg + m] += dh1[j];
        }
    }
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (auto& g : grad.values()) g *= scale;
    return {total * scale, std::move(grad)};
}

inline LossAndGradients loss_and_gradients(const MlpParams& params, std::span<const int> batch, double es_n0_dB,
                                           std::uint64_t seed) {
    auto gen = make_rng(seed);
    return loss_and_gradients(params, batch, es_n0_dB, gen);
}

/// Adam with bias correction.
class Adam {
public:
    Adam(std::size_t n, double learning_rate, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

    void step(std::span<double> params, std::span<const double> grads) {
        lumilink::detail::require(params.size() == m_.size() && grads.size() == m_.size(), "Adam: size mismatch");
        ++t_;
        const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
        const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
        for (std::size_t i = 0; i < params.size(); ++i) {
            m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
            params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
        }
    }

    long steps_taken() const noexcept { return t_; }

private:
    double lr_, beta1_, beta2_, eps_;
    std::vector<double> m_, v_;
    long t_ = 0;
};

/// Block (message) error rate per grid point with hard argmax decisions.
/// Messages cycle 0, 1, ..., n-1 so every message is equally represented.
inline std::vector<double> evaluate_bler(const MlpParams& params, std::span<const double> es_n0_grid_dB,
                                         int n_messages_per_point, std::uint64_t seed) {
    lumilink::detail::require(!es_n0_grid_dB.empty(), "evaluate_bler: empty grid");
    lumilink::detail::require(n_messages_per_point >= 1, "evaluate_bler: need at least one message per point");
    const auto& sh = params.shape();
    // Transmit frames are deterministic per message; precompute them once.
    std::vector<detail::Trace> tx;
    tx.reserve(static_cast<std::size_t>(sh.n_messages));
    for (int m = 0; m < sh.n_messages; ++m) {
        tx.emplace_back(sh);
        detail::encode_into(params, m, tx.back());
    }
    detail::Trace rx(sh);
    std::vector<double> result;
    for (std::size_t g = 0; g < es_n0_grid_dB.size(); ++g) {
        const double snr = es_n0_grid_dB[g];
        const bool noiseless = snr == modem::kNoiselessSnr;
        const double n0 = noiseless ? 0.0 : 1.0 / modem::db_to_linear(snr);
        std::normal_distribution<double> noise(0.0, std::sqrt(n0 / 2.0));
        auto gen = make_rng(derive_seed(seed, "ae-eval", g));
        long errors = 0;
        for (int n = 0; n < n_messages_per_point; ++n) {
            const int m = n % sh.n_messages;
            const auto& s = tx[static_cast<std::size_t>(m)].s;
            for (std::size_t i = 0; i < s.size(); ++i) rx.y[i] = noiseless ? s[i] : s[i] + noise(gen);
            detail::decode_into(params, rx);
            const auto best = std::max_element(rx.logits.begin(), rx.logits.end()) - rx.logits.begin();
            errors += best != m;
        }
        result.push_back(static_cast<double>(errors) / n_messages_per_point);
    }
    return result;
}

struct TrainReport {
    std::vector<double> losses;  // one per optimizer step
    std::vector<double> eval_grid_dB;
    std::vector<double> bler_before;
    std::vector<double> bler_after;
    double wall_seconds = 0.0;
};

/// Training stopped because the loss became non-finite; carries the partial report.
class TrainingError : public std::runtime_error {
public:
    TrainingError(const std::string& what, TrainReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const TrainReport& report() const noexcept { return report_; }

private:
    TrainReport report_;
};

struct TrainResult {
    MlpParams params;
    TrainReport report;
};

/// Mini-batch Adam training; (config, seed) determines initialization, batch
/// order and every noise draw, so the final parameters are reproducible bit for bit.
inline TrainResult train(const AeConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    auto params = MlpParams::initialize(config.shape(), config.seed);
    TrainReport report;
    report.eval_grid_dB = config.eval_grid_dB;
    const auto eval_seed = derive_seed(config.seed, "ae-eval-grid");
    if (!config.eval_grid_dB.empty())
        report.bler_before = evaluate_bler(params, config.eval_grid_dB, config.eval_messages_per_point, eval_seed);

    Adam adam(params.values().size(), config.learning_rate);
    auto gen = make_rng(derive_seed(config.seed, "ae-train"));
    std::uniform_int_distribution<int> pick(0, config.n_messages - 1);
    std::vector<int> batch(static_cast<std::size_t>(config.batch_size));
    report.losses.reserve(static_cast<std::size_t>(config.steps));
    for (int step = 0; step < config.steps; ++step) {
        for (auto& m : batch) m = pick(gen);
        auto [loss, grads] = loss_and_gradients(params, batch, config.train_es_n0_dB, gen);
        report.losses.push_back(loss);
        if (!std::isfinite(loss) || !grads.all_finite()) {
            report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            throw TrainingError("training diverged at step " + std::to_string(step), std::move(report));
        }
        adam.step(params.values(), grads.values());
    }
    if (!config.eval_grid_dB.empty())
        report.bler_after = evaluate_bler(params, config.eval_grid_dB, config.eval_messages_per_point, eval_seed);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(params), std::move(report)};
}

// ---------------------------------------------------------------------------
// Parameter file: "LLAE" | u16 version | u16 layer count | per layer u32 rows,
// u32 cols | f64 values (per layer: weights row-major, then bias). Little-endian.

inline constexpr std::array<char, 4> kParamsMagic{'L', 'L', 'A', 'E'};
inline constexpr std::uint16_t kParamsVersion = 1;

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
    const U bits = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(U); ++i) out.put(static_cast<char>((bits >> (8 * i)) & 0xff));
}

template <class T>
T get_le(std::istream& in) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw std::runtime_error("parameter file truncated");
        bits |= static_cast<U>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return std::bit_cast<T>(bits);
}

}  // namespace detail

inline void save_params(std::ostream& out, const MlpParams& params) {
    out.write(kParamsMagic.data(), kParamsMagic.size());
    detail::put_le<std::uint16_t>(out, kParamsVersion);
    detail::put_le<std::uint16_t>(out, kLayerCount);
    for (int l = 0; l < kLayerCount; ++l) {
        const auto d = params.dims(static_cast<Layer>(l));
        detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.rows));
        detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.cols));
    }
    for (double v : params.values()) detail::put_le<double>(out, v);
}

inline MlpParams load_params(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kParamsMagic) throw std::runtime_error("not an LLAE parameter file");
    if (detail::get_le<std::uint16_t>(in) != kParamsVersion) throw std::runtime_error("unsupported LLAE version");
    if (detail::get_le<std::uint16_t>(in) != kLayerCount) throw std::runtime_error("unexpected LLAE layer count");
    std::array<LayerDims, kLayerCount> dims{};
    for (auto& d : dims) {
        d.rows = static_cast<int>(detail::get_le<std::uint32_t>(in));
        d.cols = static_cast<int>(detail::get_le<std::uint32_t>(in));
    }
    const AeShape shape{dims[3].rows, dims[0].rows == 0 ? 0 : dims[1].rows / 2, dims[0].rows};
    if (dims[1].rows % 2 != 0 || layer_dims(shape) != dims)
        throw std::runtime_error("inconsistent LLAE shape header");
    MlpParams params(shape);
    for (auto& v : params.values()) v = detail::get_le<double>(in);
    return params;
}

}  // namespace lumilink::autoencoder
