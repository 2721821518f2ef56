// cdd — command-line front end for the continuous decoupling library.
//
// Subcommands:
//   tables <su2|su3|su4>          reconciliation of rotation-plane tables (JSON, stdout)
//   run <scenario.json>           trajectories + decoupling report (+ sweep, + bath)
//   euler <group.json> <pulses.json>   Eulerian cycle + flattened schedule (JSON, stdout)
//   simulate <scenario.json>      joint bath simulation only (requires a bath block)
//
// Exit codes: 0 success (and decoupled, for run), 1 ran but not decoupled,
// 2 usage or validation failure. Output directory: --out flag, else the
// CDD_OUT_DIR environment variable, else the working directory.

#include "cdd/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotDecoupled = 1;
constexpr int kExitError = 2;

std::string resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CDD_OUT_DIR"); env && *env) return env;
    return ".";
}

cdd::io::json load_json(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return cdd::io::json::parse(stream);   // parse errors carry byte positions
}

int run_tables(const std::string& which) {
    cdd::BasisKind kind;
    if (which == "su2") {
        kind = cdd::BasisKind::pauli;
    } else if (which == "su3") {
        kind = cdd::BasisKind::gell_mann;
    } else if (which == "su4") {
        kind = cdd::BasisKind::pauli_product;
    } else {
        std::cerr << "cdd tables: unknown basis '" << which << "' (su2, su3, su4)\n";
        return kExitError;
    }
    const cdd::GeneratorBasis basis = cdd::build_basis(kind, kind == cdd::BasisKind::pauli ? 2
                                                             : kind == cdd::BasisKind::gell_mann
                                                                 ? 3
                                                                 : 4);
    const auto report = cdd::reconcile_reference_tables(basis);
    std::cout << cdd::io::reconciliation_to_json(report).dump(2) << "\n";
    return kExitOk;
}

cdd::SweepSpec parse_sweep(const std::vector<std::string>& args) {
    // --sweep <parameter> <start:stop:count>
    cdd::SweepSpec spec;
    spec.parameter = args.at(0);
    const std::string& range = args.at(1);
    const auto first = range.find(':');
    const auto second = range.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw std::invalid_argument("sweep range must be start:stop:count, got '" + range + "'");
    }
    spec.start = std::stod(range.substr(0, first));
    spec.stop = std::stod(range.substr(first + 1, second - first - 1));
    spec.count = std::stoi(range.substr(second + 1));
    return spec;
}

int run_scenario_command(const std::string& path, const std::string& out_flag,
                         const std::vector<std::string>& sweep_args, int steps_override,
                         double tol_override, bool no_check, bool simulate_only) {
    cdd::Scenario scenario = cdd::scenario_from_json(load_json(path));
    if (steps_override > 0) scenario.steps = steps_override;
    if (tol_override > 0.0) scenario.tolerance = tol_override;
    const std::string out_dir = resolve_out_dir(out_flag);

    if (simulate_only && !scenario.bath) {
        std::cerr << "cdd simulate: scenario '" << scenario.name << "' has no bath block\n";
        return kExitError;
    }

    if (!sweep_args.empty()) {
        scenario.sweep = parse_sweep(sweep_args);
    }
    if (scenario.sweep && !simulate_only) {
        const auto result = cdd::run_sweep(scenario, *scenario.sweep, out_dir);
        for (const auto& file : result.files) std::cout << file << "\n";
        return kExitOk;
    }

    const auto result = cdd::run_scenario(scenario, out_dir);
    for (const auto& file : result.files) std::cout << file << "\n";

    bool watch_ok = true;
    for (const auto& w : result.watch) watch_ok = watch_ok && w.invariant;
    if (no_check || simulate_only) return kExitOk;
    return (result.report.decoupled && watch_ok) ? kExitOk : kExitNotDecoupled;
}

int run_euler(const std::string& group_path, const std::string& pulses_path) {
    const cdd::io::json group_json = load_json(group_path);
    const cdd::io::json pulses_json = load_json(pulses_path);

    const cdd::DecouplingGroup group = cdd::io::group_from_json(group_json);
    const auto generating_set =
        group_json.at("generating_set").get<std::vector<std::string>>();
    const std::string start = group_json.value(
        "start", group.elements()[static_cast<std::size_t>(group.identity_index())]);

    // basis inferred from the representation dimension
    const int n = group.dimension();
    const cdd::BasisKind kind = n == 2   ? cdd::BasisKind::pauli
                                : n == 3 ? cdd::BasisKind::gell_mann
                                         : cdd::BasisKind::pauli_product;
    const cdd::GeneratorBasis basis = cdd::build_basis(kind, n);

    std::map<std::string, std::vector<cdd::ControlSegment>> designs;
    for (const auto& [color, segments] : pulses_json.at("designs").items()) {
        std::vector<cdd::ControlSegment> pulse;
        for (const auto& seg : segments) {
            pulse.push_back({cdd::io::direction_from_json(seg.at("direction"), basis.N),
                             cdd::io::envelope_from_json(seg.at("envelope"))});
        }
        designs[color] = std::move(pulse);
    }

    const cdd::CayleyGraph graph = cdd::build_cayley_graph(group, generating_set);
    const auto cycle = cdd::eulerian_cycle(graph, start);
    const auto validation = cdd::validate_eulerian_cycle(graph, start, cycle);
    const cdd::EulerianSchedule flattened =
        cdd::eulerian_schedule(group, cycle, designs, basis);

    // how closely the propagated boundaries track the walked group elements
    double max_deviation = 0.0;
    double t = 0.0;
    const double delta_t = flattened.schedule.total_duration() / cycle.size();
    for (std::size_t l = 0; l < cycle.size(); ++l) {
        t += delta_t;
        const cdd::Matrix u = cdd::control_unitary_at(flattened.schedule, basis, t);
        const cdd::Matrix& target = flattened.boundary_targets[l];
        const cdd::Complex overlap =
            (target.adjoint() * u).trace() / static_cast<double>(basis.n);
        max_deviation = std::max(max_deviation, (u - overlap * target).norm());
    }

    cdd::io::ordered_json out;
    out["cycle"] = cycle;
    out["length"] = cycle.size();
    out["cycle_valid"] = validation.valid;
    out["boundary_max_deviation"] = max_deviation;
    out["schedule"] = cdd::io::schedule_to_json(flattened.schedule);
    std::cout << out.dump(2) << "\n";
    return validation.valid ? kExitOk : kExitNotDecoupled;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous dynamical decoupling toolkit"};
    app.require_subcommand(1);

    std::string tables_basis;
    auto* tables = app.add_subcommand("tables", "emit rotation-plane reconciliation tables");
    tables->add_option("basis", tables_basis, "su2, su3 or su4")->required();

    std::string run_path, run_out;
    std::vector<std::string> sweep_args;
    int steps_override = 0;
    double tol_override = 0.0;
    bool no_check = false;
    auto* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario", run_path, "scenario JSON file")->required();
    run->add_option("--sweep", sweep_args, "robustness sweep: <parameter> <start:stop:count>")
        ->expected(2);
    run->add_option("--steps", steps_override, "integration steps per segment");
    run->add_option("--tol", tol_override, "decoupling tolerance (relative)");
    run->add_option("--out", run_out, "output directory");
    run->add_flag("--no-check", no_check, "exit 0 even when not decoupled");

    std::string euler_group, euler_pulses;
    auto* euler = app.add_subcommand("euler", "build and validate an Eulerian schedule");
    euler->add_option("group", euler_group, "group JSON file")->required();
    euler->add_option("pulses", euler_pulses, "pulse designs JSON file")->required();

    std::string sim_path, sim_out;
    auto* simulate = app.add_subcommand("simulate", "joint bath simulation of a scenario");
    simulate->add_option("scenario", sim_path, "scenario JSON file (with bath block)")
        ->required();
    simulate->add_option("--out", sim_out, "output directory");

    try {
        app.parse(argc, argv);
        if (tables->parsed()) return run_tables(tables_basis);
        if (run->parsed()) {
            return run_scenario_command(run_path, run_out, sweep_args, steps_override,
                                        tol_override, no_check, false);
        }
        if (euler->parsed()) return run_euler(euler_group, euler_pulses);
        if (simulate->parsed()) {
            return run_scenario_command(sim_path, sim_out, {}, 0, 0.0, false, true);
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);   // --help
        app.exit(e);
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "cdd: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
