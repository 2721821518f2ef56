// scenarios.hpp — named example scenarios, the scenario JSON format, and the
// drivers behind the command-line tool (run / sweep / simulate / tables).

#pragma once

#include "cdd/bath_sim.hpp"
#include "cdd/decoupling_engine.hpp"
#include "cdd/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cdd {

struct SweepSpec {
    std::string parameter;   // only "amplitude" (multiplicative scale) is supported
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

struct Scenario {
    std::string name;
    BasisKind kind = BasisKind::pauli;
    int n = 2;
    Matrix H_S;                          // optional system Hamiltonian (zero by default)
    std::vector<CouplingTerm> errors;    // traceless system operators
    ControlSchedule schedule;
    double tolerance = 1e-6;
    int steps = 256;
    std::vector<int> watch;              // 1-based generator indices kept invariant
    std::optional<BathModel> bath;
    std::optional<SweepSpec> sweep;
    int cycles = 20;                     // bath simulation window, in cycles
    double dt = 0.0;                     // joint-evolution step; <= 0 selects automatically
};

// Built-in scenarios: example_a, example_b, example_c, example_d.
// example_c options: control index (7, 11 or 15) and coupling scales g1, g2.
Scenario preset(const std::string& name);
std::vector<std::string> preset_names();

// Either a full scenario or {"preset": "...", ...overrides}.
Scenario scenario_from_json(const io::json& j);

struct WatchResult {
    int index = 0;            // 1-based generator index
    double max_deviation = 0.0;
    bool invariant = false;
};

struct RunResult {
    AverageReport report;
    std::vector<WatchResult> watch;
    std::vector<std::string> files;   // artifacts written, in order
};

// Writes <name>.<gamma>.traj.csv per error channel, <name>.report.json, and
// (with a bath block) <name>.coherence.csv; returns the verdict.
RunResult run_scenario(const Scenario& scenario, const std::string& out_dir);

// Writes <name>.sweep.csv with one distance column per error channel.
RunResult run_sweep(const Scenario& scenario, const SweepSpec& sweep,
                    const std::string& out_dir);

// Watch-vector constancy per trajectory, used by run_scenario and tests.
std::vector<WatchResult> evaluate_watch(const Scenario& scenario, const GeneratorBasis& basis,
                                        double tol = 1e-9);

}  // namespace cdd
