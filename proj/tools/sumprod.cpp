// Command-line front end. Argument parsing lives here; everything else is
// sumprod::cli::dispatch so the tests can run the same path in-process.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "sumprod/cli.hpp"

int main(int argc, char** argv) {
    namespace cli = sumprod::cli;

    CLI::App app{"Sum-product experiments over Q[x]"};
    app.require_subcommand(1, 1);

    std::string format = "json";
    cli::RunConfig cfg;
    app.add_option("--format", format, "json, csv (growth only) or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", cfg.seed, "seed for random instance families");
    app.add_option("--max-set", cfg.caps.max_set, "largest set materialized");
    app.add_option("--max-space", cfg.caps.max_space, "largest search space enumerated");
    app.add_option("--max-mem-keys", cfg.caps.max_mem_keys, "largest meet-in-the-middle table");
    app.add_flag("--timing", cfg.timing, "report elapsed_ms for searches");

    // One storage slot per (subcommand, key); only options actually given are forwarded.
    std::map<std::string, std::map<std::string, std::string>> slots;
    for (const auto& spec : cli::subcommands()) {
        CLI::App* sc = app.add_subcommand(spec.name, spec.help);
        sc->fallthrough();
        auto& store = slots[spec.name];
        for (const auto& p : spec.params) {
            std::string help = p.help;
            if (!p.default_value.empty()) help += " [" + p.default_value + "]";
            CLI::Option* opt = sc->add_option("--" + p.name, store[p.name], help);
            if (p.required) opt->required();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kExitUsage;
    }

    cfg.format = *cli::parse_format(format);
    for (CLI::App* sc : app.get_subcommands()) {
        cfg.subcommand = sc->get_name();
        for (const auto& [key, value] : slots[cfg.subcommand])
            if (sc->count("--" + key) > 0) cfg.params[key] = value;
    }
    return cli::dispatch(cfg, std::cout, std::cerr);
}
