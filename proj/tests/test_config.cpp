#include <gtest/gtest.h>

#include <sstream>
#include <variant>

#include "lumilink/config.hpp"

using lumilink::ConfigError;
using lumilink::ScenarioConfig;
using lumilink::parse_config_string;

TEST(ConfigParse, EmptyFileGivesDefaults) {
    const auto c = parse_config_string("");
    EXPECT_EQ(c.seed, 1u);
    EXPECT_EQ(c.linkbudget.altitude_km, 400.0);
    EXPECT_EQ(c.atmosphere.profile.wind_speed_mps, 27.0);
    EXPECT_EQ(c.atmosphere.profile.ground_constant, 1.7e-14);
    EXPECT_EQ(c.wakeup.receiver.n_faces, 6);
}

TEST(ConfigParse, KeysCommentsAndWhitespace) {
    const auto c = parse_config_string(
        "# scenario\n"
        "global.seed = 42\n"
        "  atmosphere.C0=2e-14   # stronger ground layer\n"
        "modem.coded = false\n"
        "wakeup.n_faces = 10\n"
        "wakeup.commands = telemetry:0a0b\n");
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.atmosphere.profile.ground_constant, 2e-14);
    EXPECT_FALSE(c.modem.coded);
    EXPECT_EQ(c.wakeup.receiver.n_faces, 10);
}

TEST(ConfigParse, UnknownKeyReportsKeyAndLine) {
    try {
        parse_config_string("global.seed = 1\n\nmodem.bogus = 3\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "modem.bogus");
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(ConfigParse, RangeAndTypeErrors) {
    auto key_of = [](const char* text) {
        try {
            parse_config_string(text);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("<none>");
    };
    EXPECT_EQ(key_of("linkbudget.zenith_deg = 90\n"), "linkbudget.zenith_deg");
    EXPECT_EQ(key_of("atmosphere.C0 = -1\n"), "atmosphere.C0");
    EXPECT_EQ(key_of("modem.n_bits = 1x\n"), "modem.n_bits");
    EXPECT_EQ(key_of("modem.coded = maybe\n"), "modem.coded");
    EXPECT_EQ(key_of("atmosphere.panels = 7\n"), "atmosphere.panels");
    EXPECT_EQ(key_of("modem.n_bits = 6\n"), "modem.n_bits");
    EXPECT_EQ(key_of("wakeup.beacon_face = 6\n"), "wakeup.beacon_face");
    EXPECT_EQ(key_of("wakeup.commands = reboot\n"), "wakeup.commands");
    EXPECT_EQ(key_of("no equals sign\n"), "");
    EXPECT_THROW(lumilink::load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST(ConfigParse, SaveThenParseIsIdentity) {
    auto c = parse_config_string("global.seed = 9\nautoencoder.learning_rate = 0.0025\nlinkbudget.photons_per_bit = 650.5\n");
    std::ostringstream a;
    lumilink::save_config(a, c);
    const auto again = parse_config_string(a.str());
    std::ostringstream b;
    lumilink::save_config(b, again);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(again.autoencoder.learning_rate, 0.0025);
}

TEST(ConfigDerived, GridsAndSeeds) {
    EXPECT_EQ(ScenarioConfig::grid(0.0, 1.0, 0.25), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(ScenarioConfig::grid(-2.0, 10.0, 1.0).size(), 13u);
    ScenarioConfig c;
    EXPECT_NE(c.autoencoder_config().seed, c.seed);
    EXPECT_NE(c.diversity_scenario(0).seed, c.diversity_scenario(1).seed);
    c.seed = 2;
    EXPECT_NE(c.autoencoder_config().seed, ScenarioConfig{}.autoencoder_config().seed);
}

TEST(Commands, ParsesTelemetryAndPowerCycle) {
    const auto cmds = lumilink::parse_commands("telemetry:c0ffee; powercycle ;");
    ASSERT_EQ(cmds.size(), 2u);
    EXPECT_EQ(std::get<lumilink::wakeup::Telemetry>(cmds[0]).payload, (std::vector<std::uint8_t>{0xc0, 0xff, 0xee}));
    EXPECT_TRUE(std::holds_alternative<lumilink::wakeup::PowerCycle>(cmds[1]));
    EXPECT_TRUE(lumilink::parse_commands("").empty());
}
