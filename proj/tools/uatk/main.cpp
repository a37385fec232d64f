// uatk: batch front-end for the approximation toolkit.
//
//   uatk <command> --config run.json [--out DIR] [--seed N] [--set key=value ...]
//   uatk run --config run.json        (command taken from the config)
//
// Exit status: 0 ok, 2 bad config or input, 3 construction/numerical failure,
// 4 certificate or inequality violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "uatk/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace uatk::cli;

namespace {

int report(int code, const std::string& type, const std::string& message)
{
    json err{{"error", {{"type", type}, {"message", message}, {"exit", code}}}};
    std::cerr << err.dump() << "\n";
    return code;
}

json load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

fs::path output_dir(const std::string& flag, const json& config)
{
    if (!flag.empty()) {
        return flag;
    }
    if (config.contains("output")) {
        if (!config["output"].is_string()) {
            throw ConfigError("output must be a string");
        }
        return config["output"].get<std::string>();
    }
    if (const char* env = std::getenv("UATK_OUT_DIR"); env && *env) {
        return env;
    }
    return "uatk_out";
}

void write_outputs(const fs::path& dir, const RunOutput& out)
{
    fs::create_directories(dir);
    for (const auto& [name, content] : out.files) {
        std::ofstream f(dir / name, std::ios::binary);
        f << content;
        if (!f) {
            throw std::runtime_error("failed writing " + (dir / name).string());
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"uatk: universal approximation experiments from JSON configs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
    std::string command;

    auto attach = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run config")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_flag, "output directory (else config 'output', $UATK_OUT_DIR, ./uatk_out)");
        sub->add_option("--seed", seed, "RNG seed; overrides the config's");
        sub->add_option("--set", overrides, "override a config field, e.g. --set target.weights=uniform");
        sub->callback([&command, sub] { command = sub->get_name(); });
    };
    for (const auto& name : kCommands) {
        attach(app.add_subcommand(name, "run a " + name + " config"));
    }
    attach(app.add_subcommand("run", "run the command named in the config"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(2, "usage", e.what());
    }

    try {
        json config = load_config(config_path);
        if (!config.is_object()) {
            throw ConfigError("config must be a JSON object");
        }
        for (const auto& o : overrides) {
            apply_override(config, o);
        }
        if (app.get_subcommand("run")->parsed()) {
            if (!config.contains("command") || !config["command"].is_string()) {
                throw ConfigError("'run' needs a string 'command' field in the config");
            }
            command = config["command"].get<std::string>();
        }
        if (seed) {
            config["seed"] = *seed;
        }
        const fs::path dir = output_dir(out_flag, config);
        const RunOutput out = run_command(command, config);
        write_outputs(dir, out);
        if (out.status == 4) {
            return report(4, "violation", "inequality check failed; see " + (dir / "report.json").string());
        }
        return out.status;
    } catch (const ConfigError& e) {
        return report(2, "config", e.what());
    } catch (const uatk::PreconditionError& e) {
        return report(2, "precondition", e.what());
    } catch (const uatk::InputError& e) {
        return report(2, "input", e.what());
    } catch (const uatk::ConstructionError& e) {
        return report(3, "construction", e.what());
    } catch (const uatk::NumericalError& e) {
        return report(3, "numerical", e.what());
    } catch (const uatk::CertificateViolation& e) {
        return report(4, "certificate", e.what());
    } catch (const json::exception& e) {
        return report(2, "config", e.what());
    } catch (const std::exception& e) {
        return report(1, "internal", e.what());
    }
}
