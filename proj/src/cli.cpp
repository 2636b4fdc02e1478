#include "qmetro/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "qmetro/version.hpp"

namespace qmetro::cli {

namespace {

const double kLog2 = std::log(2.0);

std::vector<double> linspace(double start, double stop, int points) {
    if (points < 2 || !(stop > start)) {
        throw std::invalid_argument("grid needs stop > start and >= 2 points");
    }
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) {
        g[k] = start + (stop - start) * k / (points - 1);
    }
    return g;
}

std::vector<double> grid_or(const RunConfig& cfg, double start, double stop,
                            int points) {
    if (cfg.grid_set) {
        return linspace(cfg.grid_start, cfg.grid_stop, cfg.grid_points);
    }
    return linspace(start, stop, points);
}

double effective_tol(const RunConfig& cfg, double fallback) {
    return cfg.tol > 0.0 ? cfg.tol : fallback;
}

void append_provenance_columns(Table& table) {
    for (const char* name : {"t", "T", "seed", "tol", "version"}) {
        table.columns.emplace_back(name);
    }
}

void append_provenance(std::vector<Cell>& row, const RunConfig& cfg,
                       double tol) {
    row.emplace_back(cfg.t);
    row.emplace_back(cfg.temperature);
    row.emplace_back(static_cast<std::int64_t>(cfg.seed));
    row.emplace_back(tol);
    row.emplace_back(std::string(kVersion));
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "fig2") return Command::fig2;
    if (name == "fig3") return Command::fig3;
    if (name == "qubit-example") return Command::qubit_example;
    if (name == "nonsld-sweep") return Command::nonsld_sweep;
    if (name == "cycle") return Command::cycle;
    if (name == "fuzz") return Command::fuzz;
    throw std::invalid_argument("unknown command: " + name);
}

std::string command_name(Command c) {
    switch (c) {
        case Command::fig2: return "fig2";
        case Command::fig3: return "fig3";
        case Command::qubit_example: return "qubit-example";
        case Command::nonsld_sweep: return "nonsld-sweep";
        case Command::cycle: return "cycle";
        case Command::fuzz: return "fuzz";
    }
    throw std::logic_error("unreachable");
}

Table run_fig2(const RunConfig& cfg) {
    const double tol = effective_tol(cfg, 1e-9);
    Table table;
    table.columns = {"p", "S", "S_rho_s", "log2_FQ"};
    table.entropy_columns = {"S", "S_rho_s", "log2_FQ"};
    append_provenance_columns(table);
    for (const double p : grid_or(cfg, 0.0, 1.0, 101)) {
        const StateFamily f = single_qubit_family(p, cfg.t);
        const auto spec = AveragingSpec::full_period(f);
        const HermitianOperator rho_s = average_state(f, spec);
        const double outcome =
            measurement_probs(rho_s, plus_minus_p_basis(p)).entropy();
        const double state = von_neumann_entropy(rho_s);
        const double qfi_term =
            kLog2 * qfi_pure(f.pure().initial, f.pure().generator, cfg.t) /
            (cfg.t * cfg.t);
        if (outcome < state - tol || state < qfi_term - tol) {
            throw std::runtime_error("fig2: entropy chain broken at p = " +
                                     std::to_string(p));
        }
        std::vector<Cell> row{p, outcome, state, qfi_term};
        append_provenance(row, cfg, tol);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table run_fig3(const RunConfig& cfg) {
    const double tol = effective_tol(cfg, 1e-8);
    Table table;
    table.columns = {"lambda", "S_sld", "bound", "flags"};
    table.entropy_columns = {"S_sld", "bound"};
    append_provenance_columns(table);
    const StateFamily f = example_mixed_qubit_family();
    for (const double lam : grid_or(cfg, 0.05, 0.95, 91)) {
        const InequalityCase c = sld_entropy_bound(f, lam, 0.0, tol);
        if (!c.report.holds) {
            throw std::runtime_error(
                "fig3: entropy fell below the bound at lambda = " +
                std::to_string(lam));
        }
        std::vector<Cell> row{lam, c.shannon, c.report.rhs,
                              std::string(c.purity > 0.999 ? "near-pure" : "")};
        append_provenance(row, cfg, tol);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table run_qubit_example(const RunConfig& cfg) {
    const double tol = effective_tol(cfg, 1e-9);
    Table table;
    table.columns = {"p",
                     "ptilde_plus",
                     "ptilde_plus_closed",
                     "ptilde_minus",
                     "ptilde_minus_closed",
                     "S_rho_s",
                     "S_rho_s_closed",
                     "FQ",
                     "FQ_closed",
                     "max_discrepancy"};
    table.entropy_columns = {"S_rho_s", "S_rho_s_closed"};
    append_provenance_columns(table);
    for (const double p : grid_or(cfg, 0.0, 1.0, 101)) {
        const StateFamily f = single_qubit_family(p, cfg.t);
        const auto spec = AveragingSpec::full_period(f);
        const ProbDist probs = averaged_probs(f, plus_minus_p_basis(p), spec);
        const double state = von_neumann_entropy(average_state(f, spec));
        const double fq = qfi_pure(f.pure().initial, f.pure().generator, cfg.t);

        const double plus_closed = 2.0 * p * p - 2.0 * p + 1.0;
        const double minus_closed = 2.0 * p * (1.0 - p);
        double state_closed = 0.0;
        for (const double x : {p, 1.0 - p}) {
            if (x > 0.0) state_closed -= x * std::log(x);
        }
        const double fq_closed = 4.0 * p * (1.0 - p) * cfg.t * cfg.t;

        const double disc = std::max(
            {std::abs(probs[0] - plus_closed), std::abs(probs[1] - minus_closed),
             std::abs(state - state_closed), std::abs(fq - fq_closed)});
        std::vector<Cell> row{p,     probs[0],     plus_closed, probs[1],
                              minus_closed, state, state_closed, fq,
                              fq_closed,    disc};
        append_provenance(row, cfg, tol);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table run_nonsld_sweep(const RunConfig& cfg) {
    const double tol = effective_tol(cfg, 1e-9);
    std::vector<double> qs;
    if (cfg.grid_set) {
        qs = linspace(cfg.grid_start, cfg.grid_stop, cfg.grid_points);
    } else {
        qs = {0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999};
    }
    Table table;
    table.columns = {"q", "S_lambda", "classical_fisher"};
    table.entropy_columns = {"S_lambda"};
    append_provenance_columns(table);
    const StateFamily f = single_qubit_family(cfg.p, cfg.t);
    const auto cases = violation_search(f, 0.4, qs);
    for (std::size_t k = 0; k < qs.size(); ++k) {
        std::vector<Cell> row{qs[k], cases[k].shannon,
                              cases[k].classical_fisher.value_or(0.0)};
        append_provenance(row, cfg, tol);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table run_cycle(const RunConfig& cfg) {
    const double tol = effective_tol(cfg, 1e-9);
    Table table;
    table.columns = {"lambda", "p_plus", "p_minus", "S_lambda", "heat_kbt",
                     "heat_joules"};
    table.entropy_columns = {"S_lambda", "heat_kbt"};
    append_provenance_columns(table);
    const StateFamily f = single_qubit_family(cfg.p, cfg.t);
    const MeasurementBasis basis = plus_minus_p_basis(cfg.p);
    for (const double lam : grid_or(cfg, 0.0, 2.0 * M_PI, 101)) {
        const CycleRecord rec = memory_cycle(f, basis, lam);
        std::vector<Cell> row{lam,
                              rec.outcome_probs[0],
                              rec.outcome_probs[1],
                              rec.shannon_nats,
                              rec.heat_kbt,
                              landauer_bound(rec.shannon_nats,
                                             cfg.temperature)};
        append_provenance(row, cfg, tol);
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

Table apply_bits_toggle(Table table, bool bits) {
    if (!bits) return table;
    for (const std::string& name : table.entropy_columns) {
        const auto it =
            std::find(table.columns.begin(), table.columns.end(), name);
        if (it == table.columns.end()) continue;
        const auto col = static_cast<std::size_t>(it - table.columns.begin());
        *it += "_bits";
        for (auto& row : table.rows) {
            row[col] = std::get<double>(row[col]) / kLog2;
        }
    }
    return table;
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << table.columns[c];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            std::visit(
                [&os](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        os << format_double(v);
                    } else {
                        os << v;
                    }
                },
                row[c]);
        }
        os << "\n";
    }
}

void write_json(const Table& table, const RunConfig& cfg, std::ostream& os) {
    nlohmann::ordered_json j;
    j["config"] = {{"command", command_name(cfg.command)},
                   {"t", cfg.t},
                   {"temperature", cfg.temperature},
                   {"p", cfg.p},
                   {"grid_set", cfg.grid_set},
                   {"grid_start", cfg.grid_start},
                   {"grid_stop", cfg.grid_stop},
                   {"grid_points", cfg.grid_points},
                   {"seed", cfg.seed},
                   {"tol", cfg.tol},
                   {"bits", cfg.bits},
                   {"version", kVersion}};
    auto& cols = j["columns"] = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            std::visit([&arr](const auto& v) { arr.push_back(v); }, row[c]);
        }
        cols[table.columns[c]] = std::move(arr);
    }
    os << j.dump(2) << "\n";
}

std::string output_path(const RunConfig& cfg) {
    if (!cfg.out.empty()) return cfg.out;
    const std::string name =
        command_name(cfg.command) +
        (cfg.format == OutputFormat::csv ? ".csv" : ".json");
    if (const char* dir = std::getenv("QMETRO_OUT_DIR")) {
        return std::string(dir) + "/" + name;
    }
    return name;
}

int run_command(const RunConfig& cfg) {
    try {
        if (cfg.tol < 0.0) {
            throw std::invalid_argument("tolerance must be positive, got " +
                                        format_double(cfg.tol));
        }
        if (cfg.trials_scale <= 0.0) {
            throw std::invalid_argument("trials scale must be positive");
        }
        const std::string path = output_path(cfg);
        Table table;
        int exit_code = 0;
        if (cfg.command == Command::fuzz) {
            FuzzResult result = run_fuzz(cfg);
            table = std::move(result.summary);
            std::ofstream wf(path + ".witnesses.json", std::ios::binary);
            if (!wf) {
                throw std::runtime_error("cannot open witness file " + path +
                                         ".witnesses.json");
            }
            wf << result.witnesses_json;
            exit_code = result.failures == 0 ? 0 : 2;
            std::cout << "fuzz: " << result.failures << " failing suites ("
                      << path << ")\n";
        } else {
            switch (cfg.command) {
                case Command::fig2: table = run_fig2(cfg); break;
                case Command::fig3: table = run_fig3(cfg); break;
                case Command::qubit_example:
                    table = run_qubit_example(cfg);
                    break;
                case Command::nonsld_sweep:
                    table = run_nonsld_sweep(cfg);
                    break;
                case Command::cycle: table = run_cycle(cfg); break;
                case Command::fuzz: break;
            }
            if (cfg.command == Command::qubit_example) {
                double worst = 0.0;
                const auto col = table.columns.size() - 6;  // max_discrepancy
                for (const auto& row : table.rows) {
                    worst = std::max(worst, std::get<double>(row[col]));
                }
                std::cout << "qubit-example: max discrepancy "
                          << format_double(worst) << "\n";
            }
        }
        table = apply_bits_toggle(std::move(table), cfg.bits);
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file " + path);
        if (cfg.format == OutputFormat::csv) {
            write_csv(table, os);
        } else {
            write_json(table, cfg, os);
        }
        return exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qmetro::cli
