#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "mtcavity/config.hpp"
#include "mtcavity/errors.hpp"
#include "mtcavity/io.hpp"
#include "mtcavity/runner.hpp"
#include "mtcavity/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"kink transport and polariton spectra for damped dimer chains"};
    app.set_version_flag("--version", std::string(mtcavity::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = 1;

    struct SubDesc {
        const char* name;
        const char* help;
    };
    const SubDesc subs[] = {
        {"simulate", "evolve the damped chain from a traveling-kink initial condition"},
        {"travelwave", "solve the co-moving kink profile (exact family or shooting)"},
        {"correct", "kink of the locally smeared potential"},
        {"spectrum", "polariton doublet and absorption curve of the emitter ensemble"},
        {"estimate", "order-of-magnitude coupling and feasibility report"},
        {"sweep", "re-run a command over a list of values for one config key"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory (beats MTCAVITY_OUT and the config)");
        sub->add_option("--workers", workers, "worker threads for sweep rows")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints the message / help text
        return rc == 0 ? 0 : 2;
    }
    const std::string sub_name = app.get_subcommands().front()->get_name();

    try {
        const std::string text = mtcavity::read_text_file(config_path);
        const mtcavity::RunConfig config = mtcavity::parse_config(text);
        if (mtcavity::command_name(config.command) != sub_name)
            throw mtcavity::ValidationError("config sets command '" +
                                            mtcavity::command_name(config.command) +
                                            "' but the CLI asked for '" + sub_name + "'");
        mtcavity::RunnerOptions options;
        options.output_dir_override = out_dir;
        options.workers = workers;
        const mtcavity::RunSummary summary = mtcavity::run(config, options);
        std::printf("%s: wrote %zu artifact(s) to %s (%s = %s)\n", sub_name.c_str(),
                    summary.artifacts.size(), summary.output_dir.c_str(),
                    summary.summary_name.c_str(),
                    mtcavity::format_double(summary.summary_value).c_str());
        return 0;
    } catch (const mtcavity::ParseError& e) {
        std::fprintf(stderr, "config parse error at line %d, column %d: %s\n", e.line(),
                     e.column(), e.what());
        return 2;
    } catch (const mtcavity::Error& e) {
        std::fprintf(stderr, "%s: %s\n", e.kind().c_str(), e.what());
        return mtcavity::exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
