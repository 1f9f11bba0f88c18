#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "escatter/error.hpp"
#include "escatter/run.hpp"

namespace {

// Flags accepted on the command line and in --config files, in apply order.
char const* const kSettingNames[] = {
    "energy-ev", "energy-list", "packet-nm", "k-scale", "grid-cap",
    "grid-points", "channel", "geometry", "theta-r", "delta-theta-mrad",
    "out", "format", "threads", "dump-density",
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entanglement entropies of electron-electron Coulomb scattering"};
    app.footer(escatter::describe_columns());

    std::string command;
    app.add_option("command", command,
                   "spinless-sweep | sphere-sweep | vn-compare | spin-sweep | "
                   "postselect-range | equator")
        ->required();

    std::string config_path;
    app.add_option("--config", config_path, "key = value file; flags override it");

    std::map<std::string, std::optional<std::string>> flags;
    for (char const* name : kSettingNames)
        flags[name];
    auto add = [&](char const* name, char const* help) {
        app.add_option_function<std::string>(
            std::string("--") + name,
            [&flags, name](std::string const& v) { flags[name] = v; }, help);
    };
    add("energy-ev", "single kinetic energy [eV]");
    add("energy-list", "energies: 'a,b,c' or 'log:first:last:count' [eV]");
    add("packet-nm", "wave-packet extension L [nm] (default 100)");
    add("k-scale", "K = k_scale * sqrt(E) in atomic units (default 1)");
    add("grid-cap", "largest density-matrix dimension (default 4096)");
    add("grid-points", "density-matrix grid points (default 512)");
    add("channel", "spinless | parallel | antiparallel | distinguishable");
    add("geometry", "rings | sphere | meridian | equator");
    add("theta-r", "post-selection ranges [rad], list syntax as energy-list");
    add("delta-theta-mrad", "equator pixel width [mrad]; default 2/(K L)");
    add("out", "output file (written atomically); stdout if omitted");
    add("format", "csv | json");
    add("threads", "worker threads; 0 = all cores");
    add("dump-density", "write rho and its spectrum to this CSV (vn-compare)");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const rc = app.exit(e);
        return rc == 0 ? escatter::kExitOk : escatter::kExitConfig;
    }

    escatter::RunConfig config;
    try
    {
        config.command = escatter::parse_command(command);
        if (char const* env = std::getenv("ESCATTER_THREADS"))
            escatter::apply_setting(config, "threads", env);
        if (!config_path.empty())
        {
            for (auto const& [key, value] : escatter::read_config_file(config_path))
                escatter::apply_setting(config, key, value);
        }
        for (char const* name : kSettingNames)
        {
            if (auto const& v = flags[name])
                escatter::apply_setting(config, name, *v);
        }
    }
    catch (escatter::ConfigError const& e)
    {
        std::cerr << "escatter: invalid configuration: " << e.what() << '\n';
        return escatter::kExitConfig;
    }
    return escatter::run(config, std::cout, std::cerr);
}
