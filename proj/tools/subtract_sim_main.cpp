#include "subsim/commands.hpp"
#include "subsim/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace subsim;

int main(int argc, char** argv) {
    CLI::App app{"Photon-subtraction entanglement simulator and optimizer"};
    app.require_subcommand(1);

    std::string config_path, out_path, format;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        cmd->add_option("--out", out_path, "Output file (default: stdout)");
        cmd->add_option("--format", format, "Output format: json|csv");
    };

    CLI::App* evaluate = app.add_subcommand("evaluate", "Metrics of one configuration");
    CLI::App* sweep = app.add_subcommand("sweep", "Metrics over a 1D/2D parameter grid");
    CLI::App* optimize = app.add_subcommand("optimize", "Maximise the entanglement gain rate");
    CLI::App* compare = app.add_subcommand("compare", "Optimised strategy comparison");
    for (CLI::App* cmd : {evaluate, sweep, optimize, compare}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig rc = load_run_config(config_path);

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw config_error("cannot open output file: " + out_path);
            out = &file;
        }

        int code = 0;
        if (app.got_subcommand(evaluate)) {
            OutputFormat fmt = format.empty() ? OutputFormat::json : parse_format(format);
            code = cmd_evaluate(rc, fmt, *out);
        } else if (app.got_subcommand(sweep)) {
            OutputFormat fmt = format.empty() ? OutputFormat::csv : parse_format(format);
            code = cmd_sweep(rc, fmt, *out);
        } else if (app.got_subcommand(optimize)) {
            OutputFormat fmt = format.empty() ? OutputFormat::json : parse_format(format);
            code = cmd_optimize(rc, fmt, *out);
        } else if (app.got_subcommand(compare)) {
            OutputFormat fmt = format.empty() ? OutputFormat::csv : parse_format(format);
            code = cmd_compare(rc, fmt, *out);
        }
        return code;
    } catch (const impossible_event& e) {
        std::cerr << "impossible event: " << e.what() << "\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
