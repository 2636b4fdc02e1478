#pragma once

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "qmetro/bounds.hpp"
#include "qmetro/random.hpp"

namespace qmetro::cli {

enum class Command { fig2, fig3, qubit_example, nonsld_sweep, cycle, fuzz };
enum class OutputFormat { csv, json };

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// One CLI invocation. The seed fully determines fuzz randomness;
/// identical configs produce byte-identical output files.
struct RunConfig {
    Command command = Command::fig2;
    double t = 1.0;
    double temperature = 300.0;  // kelvin
    double p = 0.5;              // initial-state weight for qubit commands
    double grid_start = 0.0;
    double grid_stop = 0.0;
    int grid_points = 0;
    bool grid_set = false;  // false: use the per-command default grid
    std::uint64_t seed = 42;
    std::string out;  // empty: <command>.<format>, under QMETRO_OUT_DIR if set
    OutputFormat format = OutputFormat::csv;
    double tol = 0.0;  // 0: per-command default
    bool bits = false;  // display entropies in bits instead of nats
    double trials_scale = 1.0;  // multiplier on fuzz suite trial counts
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> entropy_columns;  // rescaled by the bits toggle
};

/// Averaged-chain sweep over the initial-state weight p:
/// (p, S, S_rho_s, log2_FQ). Throws if any row breaks the chain order.
Table run_fig2(const RunConfig& cfg);

/// SLD-entropy bound sweep of the bundled mixed-qubit family over lambda:
/// (lambda, S_sld, bound, flags). Throws if any row dips below the bound.
Table run_fig3(const RunConfig& cfg);

/// Numeric columns of the single-qubit example against their closed
/// forms, with the worst discrepancy per row.
Table run_qubit_example(const RunConfig& cfg);

/// Calibrated-basis sweep (q, S_lambda, classical_fisher).
Table run_nonsld_sweep(const RunConfig& cfg);

/// Per-lambda memory-cycle accounting (lambda, p_+, p_-, S_lambda,
/// heat_kbt, heat_joules).
Table run_cycle(const RunConfig& cfg);

struct FuzzResult {
    Table summary;               // (suite, trials, failures, status)
    std::string witnesses_json;  // serialized witness report, always written
    int failures = 0;
};

/// Runs every randomized property suite with the config's seed.
FuzzResult run_fuzz(const RunConfig& cfg);

void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, const RunConfig& cfg, std::ostream& os);

/// Resolved output path: explicit --out, else the per-command default
/// name, prefixed by QMETRO_OUT_DIR when that is set.
std::string output_path(const RunConfig& cfg);

/// Dispatch, write output files, report. Returns a process exit code.
int run_command(const RunConfig& cfg);

}  // namespace qmetro::cli
