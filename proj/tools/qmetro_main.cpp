#include <string>

#include "CLI11.hpp"

#include "qmetro/cli.hpp"
#include "qmetro/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qmetro: quantum Fisher information, SLD measurements, and "
                 "entropy-based erasure bounds; emits plot-ready CSV/JSON"};
    app.set_version_flag("--version", qmetro::kVersion);

    std::string command;
    std::string format = "csv";
    qmetro::cli::RunConfig cfg;
    double grid_start = 0.0, grid_stop = 0.0;
    int grid_points = 0;

    app.add_option("--command", command,
                   "one of fig2, fig3, qubit-example, nonsld-sweep, cycle, fuzz")
        ->required();
    app.add_option("--t", cfg.t, "interrogation time")->capture_default_str();
    app.add_option("--temperature", cfg.temperature, "bath temperature [K]")
        ->capture_default_str();
    app.add_option("--p", cfg.p, "initial-state weight for qubit commands")
        ->capture_default_str();
    auto* gstart = app.add_option("--grid-start", grid_start, "grid start");
    auto* gstop = app.add_option("--grid-stop", grid_stop, "grid stop");
    auto* gpoints = app.add_option("--grid-points", grid_points, "grid size");
    app.add_option("--seed", cfg.seed, "fuzz seed")->capture_default_str();
    app.add_option("--out", cfg.out, "output path (default <command>.<format>)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--tol", cfg.tol, "tolerance override (0: per-command default)")
        ->capture_default_str();
    app.add_flag("--bits", cfg.bits, "emit entropies in bits instead of nats");
    app.add_option("--trials-scale", cfg.trials_scale,
                   "multiplier on fuzz trial counts")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.command = qmetro::cli::parse_command(command);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    cfg.format = format == "json" ? qmetro::cli::OutputFormat::json
                                  : qmetro::cli::OutputFormat::csv;
    if (*gstart || *gstop || *gpoints) {
        if (!(*gstart && *gstop && *gpoints)) {
            std::cerr << "error: --grid-start/stop/points must be given together\n";
            return 1;
        }
        cfg.grid_start = grid_start;
        cfg.grid_stop = grid_stop;
        cfg.grid_points = grid_points;
        cfg.grid_set = true;
    }
    return qmetro::cli::run_command(cfg);
}
