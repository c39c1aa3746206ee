#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lumilink/app.hpp"
#include "lumilink/config.hpp"

int main(int argc, char** argv) {
    namespace app = lumilink::app;

    CLI::App cli{"Small-satellite optical link simulator", "lumilink"};
    cli.fallthrough();
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    cli.add_option("--config", config_path, "scenario file (section.key = value)");
    cli.add_option("--out", out_dir, "output directory (default: $LUMILINK_OUT or .)");
    cli.add_option("--seed", seed, "master seed, overrides global.seed");
    cli.require_subcommand(1);
    const std::map<std::string_view, std::string> help{
        {"linkbudget", "downlink and uplink budget tables"},
        {"atmosphere", "Cn2 profile and differential phase variance"},
        {"simulate-ber", "Hamming(7,4) + 16-QAM BER/BLER sweep over AWGN"},
        {"train-autoencoder", "train the 16-message autoencoder modem"},
        {"diversity-sim", "two-receiver phase estimation and combining"},
        {"wakeup-sim", "wake-up receiver scan and command handling"},
        {"report", "computed vs published link-budget values"}};
    for (auto name : app::kSubcommands) cli.add_subcommand(std::string(name), help.at(name));

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << app::usage();
        std::cerr << "error kind=validation message=" << e.what() << '\n';
        return app::kExitValidation;
    }

    lumilink::ScenarioConfig config;
    try {
        if (!config_path.empty()) config = lumilink::load_config(config_path);
    } catch (const lumilink::ConfigError& e) {
        std::cerr << "error kind=validation message=" << e.what() << '\n';
        return app::kExitValidation;
    }
    if (seed) config.seed = *seed;

    if (out_dir.empty()) {
        const char* env = std::getenv("LUMILINK_OUT");
        out_dir = env && *env ? env : ".";
    }
    const auto* sub = cli.get_subcommands().front();
    return app::dispatch(sub->get_name(), config, out_dir, std::cout, std::cerr);
}
