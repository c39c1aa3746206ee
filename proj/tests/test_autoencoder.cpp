#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "lumilink/autoencoder.hpp"

using namespace lumilink::autoencoder;
using lumilink::Complex;
using lumilink::IqFrame;

namespace {

std::vector<int> all_messages(int repeats) {
    std::vector<int> batch;
    for (int r = 0; r < repeats; ++r)
        for (int m = 0; m < 16; ++m) batch.push_back(m);
    return batch;
}

AeConfig small_config(int steps) {
    AeConfig c;
    c.steps = steps;
    c.batch_size = 64;
    c.eval_grid_dB = {10.0};
    c.eval_messages_per_point = 1600;
    return c;
}

}  // namespace

TEST(Mlp, LayoutAndInitialization) {
    const AeShape sh{};
    const auto p = MlpParams::initialize(sh, 3);
    EXPECT_EQ(p.values().size(), 32u * 17 + 14u * 33 + 32u * 15 + 16u * 33);
    EXPECT_EQ(p.dims(Layer::EncoderOut), (LayerDims{14, 32}));
    for (int l = 0; l < kLayerCount; ++l) {
        const auto layer = static_cast<Layer>(l);
        const auto d = p.dims(layer);
        const double limit = std::sqrt(6.0 / (d.rows + d.cols));
        for (double w : p.weights(layer)) EXPECT_LE(std::abs(w), limit);
        for (double b : p.bias(layer)) EXPECT_EQ(b, 0.0);
    }
    EXPECT_EQ(p, MlpParams::initialize(sh, 3));
    EXPECT_FALSE(p == MlpParams::initialize(sh, 4));
}

TEST(Encoder, PowerConstraintHoldsForEveryMessage) {
    std::mt19937_64 gen(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = MlpParams::initialize(AeShape{}, gen());
        for (int m = 0; m < 16; ++m) {
            const auto s = encode_forward(p, m);
            ASSERT_EQ(s.size(), 7u);
            double e = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) e += std::norm(s[i]);
            EXPECT_NEAR(e, 7.0, 1e-9);
        }
    }
}

TEST(Encoder, DegenerateOutputIsAnError) {
    auto p = MlpParams::initialize(AeShape{}, 1);
    for (auto& w : p.weights(Layer::EncoderOut)) w = 0.0;
    for (auto& b : p.bias(Layer::EncoderOut)) b = 0.0;
    EXPECT_THROW(encode_forward(p, 0), lumilink::DegenerateEncodingError);
    EXPECT_THROW(encode_forward(p, 16), lumilink::DomainError);
    EXPECT_THROW(encode_forward(p, -1), lumilink::DomainError);
}

TEST(Decoder, OutputsAProbabilityVector) {
    const auto p = MlpParams::initialize(AeShape{}, 5);
    std::mt19937_64 gen(2);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> y(7);
        for (auto& v : y) v = Complex(n(gen), n(gen));
        const auto probs = decode_forward(p, IqFrame(y));
        ASSERT_EQ(probs.size(), 16u);
        for (double q : probs) EXPECT_GT(q, 0.0);
        EXPECT_NEAR(std::accumulate(probs.begin(), probs.end(), 0.0), 1.0, 1e-12);
    }
    EXPECT_THROW(decode_forward(p, IqFrame(std::vector<Complex>(6))), lumilink::DomainError);
}

TEST(Softmax, StableAndShiftInvariant) {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> b{1001.0, 1002.0, 1003.0};
    const auto pa = softmax(a), pb = softmax(b);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(pa[i], pb[i], 1e-15);
    const auto big = softmax(std::vector<double>{800.0, -800.0});
    EXPECT_EQ(big[0], 1.0);
    EXPECT_TRUE(std::isfinite(big[1]));
    EXPECT_NEAR(pa[2], std::exp(3.0) / (std::exp(1.0) + std::exp(2.0) + std::exp(3.0)), 1e-15);
}

TEST(Loss, NearChanceAtInitialization) {
    const auto batch = all_messages(64);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto p = MlpParams::initialize(AeShape{}, seed);
        const double loss = loss_and_gradients(p, batch, 10.0, seed + 100).loss;
        EXPECT_NEAR(loss, std::log(16.0), 0.15) << "seed " << seed;
    }
}

TEST(Loss, GradientMatchesFiniteDifferences) {
    const auto p = MlpParams::initialize(AeShape{}, 11);
    const auto batch = all_messages(2);
    const std::uint64_t noise_seed = 12;
    const auto analytic = loss_and_gradients(p, batch, 10.0, noise_seed).gradients;

    std::mt19937_64 gen(13);
    std::uniform_int_distribution<std::size_t> pick(0, p.values().size() - 1);
    const double h = 1e-5;
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t i = pick(gen);
        auto plus = p, minus = p;
        plus.values()[i] += h;
        minus.values()[i] -= h;
        const double fd = (loss_and_gradients(plus, batch, 10.0, noise_seed).loss -
                           loss_and_gradients(minus, batch, 10.0, noise_seed).loss) /
                          (2.0 * h);
        const double g = analytic.values()[i];
        EXPECT_LE(std::abs(g - fd), 1e-4 * std::max(std::abs(g), std::abs(fd)) + 1e-7) << "component " << i;
        ++checked;
    }
    EXPECT_GE(checked, 100);
}

TEST(Loss, RejectsBadBatches) {
    const auto p = MlpParams::initialize(AeShape{}, 1);
    EXPECT_THROW(loss_and_gradients(p, std::vector<int>{}, 10.0, 1u), lumilink::DomainError);
    EXPECT_THROW(loss_and_gradients(p, std::vector<int>{16}, 10.0, 1u), lumilink::DomainError);
}

TEST(Adam, FirstStepMovesByLearningRate) {
    std::vector<double> x{1.0, -2.0, 0.5};
    Adam adam(3, 0.1);
    adam.step(x, std::vector<double>{3.0, -0.01, 0.0});
    EXPECT_NEAR(x[0], 0.9, 1e-9);
    EXPECT_NEAR(x[1], -1.9, 1e-6);
    EXPECT_EQ(x[2], 0.5);
    EXPECT_EQ(adam.steps_taken(), 1);
}

TEST(Training, OverfitsNoiselessChannel) {
    auto c = small_config(1500);
    c.train_es_n0_dB = lumilink::modem::kNoiselessSnr;
    c.eval_grid_dB = {lumilink::modem::kNoiselessSnr};
    const auto r = train(c);
    EXPECT_EQ(r.report.bler_after.at(0), 0.0);
    EXPECT_LT(r.report.losses.back(), 0.05);
    EXPECT_LT(r.report.losses.back(), r.report.losses.front());
}

TEST(Training, ReproducibleBitForBit) {
    const auto a = train(small_config(50));
    const auto b = train(small_config(50));
    EXPECT_EQ(a.params, b.params);
    EXPECT_EQ(a.report.losses, b.report.losses);
    auto other = small_config(50);
    other.seed = 2;
    EXPECT_FALSE(train(other).params == a.params);
}

TEST(Training, ImprovesBlockErrorRate) {
    const auto r = train(small_config(1000));
    ASSERT_EQ(r.report.bler_before.size(), 1u);
    EXPECT_LT(r.report.bler_after[0], r.report.bler_before[0]);
    EXPECT_EQ(r.report.losses.size(), 1000u);
}

TEST(Training, DivergenceIsReported) {
    auto c = small_config(20);
    c.learning_rate = 1e300;
    try {
        train(c);
        FAIL() << "expected divergence";
    } catch (const TrainingError& e) {
        EXPECT_FALSE(e.report().losses.empty());
    } catch (const lumilink::DegenerateEncodingError&) {
        SUCCEED();
    }
}

TEST(Evaluation, BlerDecreasesWithSnr) {
    const auto r = train(small_config(1500));
    const std::vector<double> grid{0.0, 4.0, 8.0, 12.0};
    const auto bler = evaluate_bler(r.params, grid, 8000, 9);
    for (std::size_t i = 1; i < bler.size(); ++i) EXPECT_LE(bler[i], bler[i - 1]);
    EXPECT_EQ(bler, evaluate_bler(r.params, grid, 8000, 9));
}

TEST(ParamsFile, RoundTripIsBitExact) {
    const auto p = MlpParams::initialize(AeShape{}, 21);
    std::stringstream buf;
    save_params(buf, p);
    const auto bytes = buf.str();
    EXPECT_EQ(bytes.substr(0, 4), "LLAE");
    EXPECT_EQ(bytes.size(), 4u + 2 + 2 + 4 * 8 + p.values().size() * 8);
    const auto q = load_params(buf);
    EXPECT_EQ(p, q);
}

TEST(ParamsFile, RejectsCorruptInput) {
    std::stringstream bad("XXXX");
    EXPECT_THROW(load_params(bad), std::runtime_error);
    std::stringstream buf;
    save_params(buf, MlpParams::initialize(AeShape{}, 1));
    std::stringstream truncated(buf.str().substr(0, 100));
    EXPECT_THROW(load_params(truncated), std::runtime_error);
}
