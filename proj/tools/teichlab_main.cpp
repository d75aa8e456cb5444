#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "teichlab/commands.hpp"
#include "teichlab/errors.hpp"

using namespace teichlab;

namespace {

int fail(const std::exception& e, const std::string& cmd) {
    std::cerr << errorJson(e, cmd).dump() << "\n";
    return exitCodeFor(e);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"teichlab: hyperbolic length spectra, densities and orbit counts"};
    app.require_subcommand(1);
    std::string configPath, outPath;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    for (const auto& name : commandNames()) {
        CLI::App* sub = app.add_subcommand(name, commandSummary(name));
        sub->add_option("--config", configPath, "JSON config file")->required();
        sub->add_option("--out", outPath, "output file (written atomically); standard output if omitted");
        sub->add_option("--seed", seed, "overrides the config seed");
        sub->add_option("--samples", samples, "overrides the config sample count");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::string cmd = argc > 1 ? argv[1] : "";
        return fail(ConfigurationError(std::string("command line: ") + e.what()), cmd);
    }
    std::string cmd = app.get_subcommands().front()->get_name();

    try {
        CommandOptions opt;
        if (!outPath.empty()) opt.out = outPath;
        opt.seed = seed;
        opt.samples = samples;
        std::filesystem::path cp(configPath);
        opt.baseDir = cp.has_parent_path() ? cp.parent_path().string() : ".";
        Json config = readJsonFile(configPath);
        CommandResult r = runCommand(cmd, config, opt);
        if (r.outputPath.empty()) {
            std::cout << r.content << std::flush;
        } else {
            writeFileAtomic(r.outputPath, r.content);
        }
        if (r.failedCheck) return fail(AssumptionViolated(*r.failedCheck), cmd);
        return 0;
    } catch (const std::exception& e) {
        return fail(e, cmd);
    }
}
