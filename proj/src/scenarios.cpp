#include "cdd/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cdd {

namespace {

constexpr double kPi = std::numbers::pi;

RVector unit_direction(int n_adjoint, int index_1based) {
    RVector dir = RVector::Zero(n_adjoint);
    dir[index_1based - 1] = 1.0;
    return dir;
}

// |F_μν| of the plane containing `component` (1-based); this is the rotation
// speed of a vector sitting on that axis under the direction's control.
double plane_speed_for(const AdjointGenerator& gen, int component_1based) {
    for (const auto& plane : gen.planes) {
        if (plane.mu == component_1based || plane.nu == component_1based) {
            return std::abs(plane.coef);
        }
    }
    throw std::invalid_argument("plane_speed_for: component " + std::to_string(component_1based) +
                                " is fixed by this control direction");
}

Matrix named_operator(const std::string& name, const GeneratorBasis& basis) {
    // generic generator axis "e<k>"
    if (name.size() >= 2 && name.front() == 'e' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(c); })) {
        const int k = std::stoi(name.substr(1));
        if (k < 1 || k > basis.N) {
            throw std::invalid_argument("named_operator: '" + name + "' outside 1.." +
                                        std::to_string(basis.N));
        }
        return basis.generators[static_cast<std::size_t>(k - 1)];
    }

    const int n = basis.n;
    auto ket_sym = [&](int a, int b) {   // |a⟩⟨b| + |b⟩⟨a|, 1-based levels
        Matrix m = Matrix::Zero(n, n);
        m(a - 1, b - 1) = 1.0;
        m(b - 1, a - 1) = 1.0;
        return m;
    };

    if (n == 2) {
        if (name == "sigma_x") return basis.generators[0];
        if (name == "sigma_y") return basis.generators[1];
        if (name == "sigma_z") return basis.generators[2];
    }
    if (n == 3) {
        if (name == "diag12") return named_operator("e3", basis);   // |1⟩⟨1| − |2⟩⟨2|
        if (name == "ket13_sym") return ket_sym(1, 3);
        if (name == "ket23_sym") return ket_sym(2, 3);
    }
    if (n == 4) {
        if (name == "sigma_z_tensor_id") return named_operator("e3", basis);
        if (name == "id_tensor_sigma_z") return named_operator("e6", basis);
    }
    throw std::invalid_argument("named_operator: unknown preset '" + name + "' for " +
                                basis.id());
}

}  // namespace

// -------------------------------- presets -----------------------------------

std::vector<std::string> preset_names() {
    return {"example_a", "example_b", "example_c", "example_d"};
}

namespace {

Scenario preset_example_a() {
    Scenario s;
    s.name = "example_a";
    s.kind = BasisKind::pauli;
    s.n = 2;
    const GeneratorBasis basis = build_basis(s.kind, s.n);
    s.H_S = Matrix::Zero(2, 2);
    s.errors.push_back({"z", basis.generators[2], "b1"});

    // e2 control rotates the e3 error in its plane at speed 2; two identical
    // halves, each an exact half-turn of the vector
    const RVector dir = unit_direction(basis.N, 2);
    const double speed = plane_speed_for(adjoint_generator(basis, dir), 3);
    const auto halves = design_half_cycle_profile(kPi, 1.0, EnvelopeKind::constant, speed);
    s.schedule.segments = {{dir, halves.first}, {dir, halves.second}};
    return s;
}

Scenario preset_example_b() {
    Scenario s;
    s.name = "example_b";
    s.kind = BasisKind::pauli;
    s.n = 2;
    const GeneratorBasis basis = build_basis(s.kind, s.n);
    s.H_S = Matrix::Zero(2, 2);
    s.errors.push_back({"x", basis.generators[0], "b1"});
    s.errors.push_back({"y", basis.generators[1], "b2"});
    s.errors.push_back({"z", basis.generators[2], "b3"});

    // eight half-turn pulses alternating between the e1 and e3 axes; one
    // shared envelope shape makes the residuals cancel pairwise
    const std::vector<int> sequence = {1, 3, 1, 3, 3, 1, 3, 1};
    const double speed = 2.0;   // every plane of e1/e3 rotates at |f| = 2
    const Envelope pulse = Envelope::constant(1.0, kPi / speed, 1.0);
    for (int axis : sequence) {
        s.schedule.segments.push_back({unit_direction(basis.N, axis), pulse});
    }
    return s;
}

Scenario preset_example_c(int control_index, double g1, double g2) {
    if (control_index != 7 && control_index != 11 && control_index != 15) {
        throw std::invalid_argument("example_c: control must be one of e7, e11, e15");
    }
    Scenario s;
    s.name = "example_c";
    s.kind = BasisKind::pauli_product;
    s.n = 4;
    const GeneratorBasis basis = build_basis(s.kind, s.n);
    s.H_S = Matrix::Zero(4, 4);
    s.errors.push_back({"z1", g1 * basis.generators[2], "b1"});   // σz⊗1 dephasing
    s.errors.push_back({"z2", g2 * basis.generators[5], "b2"});   // 1⊗σz dephasing
    s.watch = {7, 11, 15};   // exchange-interaction axes, must stay put

    // one full vector turn in every active plane of the chosen control
    const RVector dir = unit_direction(basis.N, control_index);
    const AdjointGenerator gen = adjoint_generator(basis, dir);
    double speed = 0.0;
    for (const auto& plane : gen.planes) speed = std::max(speed, std::abs(plane.coef));
    const double angle = 2.0 * kPi / speed;   // A-space area for a 2π rotation
    s.schedule.segments = {{dir, Envelope::constant(1.0, angle, 1.0)}};
    return s;
}

Scenario preset_example_d() {
    Scenario s;
    s.name = "example_d";
    s.kind = BasisKind::gell_mann;
    s.n = 3;
    const GeneratorBasis basis = build_basis(s.kind, s.n);
    s.H_S = Matrix::Zero(3, 3);
    s.errors.push_back({"g1", basis.generators[2], "b1"});   // |1⟩⟨1| − |2⟩⟨2|
    s.errors.push_back({"g2", basis.generators[3], "b2"});   // |1⟩⟨3| + |3⟩⟨1|
    s.errors.push_back({"g3", basis.generators[5], "b3"});   // |2⟩⟨3| + |3⟩⟨2|

    // e2 drives planes of speed 2 (containing e3) and speed 1 (containing e4
    // and e6); a full 2π turn of the slow planes closes the fast one twice
    const RVector dir = unit_direction(basis.N, 2);
    const AdjointGenerator gen = adjoint_generator(basis, dir);
    double slow = std::numeric_limits<double>::max();
    for (const auto& plane : gen.planes) slow = std::min(slow, std::abs(plane.coef));
    s.schedule.segments = {{dir, Envelope::constant(1.0, 2.0 * kPi / slow, 1.0)}};
    return s;
}

}  // namespace

Scenario preset(const std::string& name) {
    if (name == "example_a") return preset_example_a();
    if (name == "example_b") return preset_example_b();
    if (name == "example_c") return preset_example_c(7, 1.0, 1.0);
    if (name == "example_d") return preset_example_d();
    std::string known;
    for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
    throw std::invalid_argument("preset: unknown scenario '" + name + "'; presets: " + known);
}

// ------------------------------ JSON scenarios ------------------------------

namespace {

BasisKind basis_kind_from_string(const std::string& text) {
    if (text == "pauli") return BasisKind::pauli;
    if (text == "gell_mann") return BasisKind::gell_mann;
    if (text == "pauli_product") return BasisKind::pauli_product;
    throw std::invalid_argument("scenario: unknown basis '" + text + "'");
}

int basis_dimension(BasisKind kind) {
    switch (kind) {
        case BasisKind::pauli: return 2;
        case BasisKind::gell_mann: return 3;
        case BasisKind::pauli_product: return 4;
    }
    return 0;
}

}  // namespace

Scenario scenario_from_json(const io::json& j) {
    Scenario s;
    if (j.contains("preset")) {
        const std::string name = j.at("preset").get<std::string>();
        if (name == "example_c") {
            int control = 7;
            if (j.contains("control")) {
                const std::string text = j.at("control").get<std::string>();
                control = std::stoi(text.substr(1));
            }
            s = preset_example_c(control, j.value("g1", 1.0), j.value("g2", 1.0));
        } else {
            s = preset(name);
        }
    }

    if (j.contains("basis")) {
        s.kind = basis_kind_from_string(j.at("basis").get<std::string>());
        s.n = basis_dimension(s.kind);
    }
    const GeneratorBasis basis = build_basis(s.kind, s.n);

    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    if (s.name.empty()) s.name = "scenario";

    if (j.contains("H_S")) {
        s.H_S = io::matrix_from_json(j.at("H_S"), "scenario H_S");
    } else if (s.H_S.rows() != s.n) {
        s.H_S = Matrix::Zero(s.n, s.n);
    }

    if (j.contains("errors")) {
        s.errors.clear();
        int counter = 0;
        for (const auto& e : j.at("errors")) {
            CouplingTerm term;
            term.gamma = e.value("gamma", "g" + std::to_string(++counter));
            term.bath_label = e.value("bath_label", "b" + std::to_string(counter));
            Matrix op;
            if (e.contains("op")) {
                op = named_operator(e.at("op").get<std::string>(), basis);
            } else if (e.contains("matrix")) {
                op = io::matrix_from_json(e.at("matrix"), "error '" + term.gamma + "'");
            } else {
                throw std::invalid_argument("scenario: error entry needs 'op' or 'matrix'");
            }
            term.S = e.value("scale", 1.0) * op;
            s.errors.push_back(std::move(term));
        }
    }
    if (s.errors.empty()) {
        throw std::invalid_argument("scenario: no error operators given");
    }

    if (j.contains("schedule")) {
        s.schedule = io::schedule_from_json(j.at("schedule"), basis);
    }
    if (s.schedule.segments.empty()) {
        throw std::invalid_argument("scenario: no schedule given");
    }

    s.tolerance = j.value("tolerance", s.tolerance);
    s.steps = j.value("steps", s.steps);
    if (j.contains("watch")) s.watch = j.at("watch").get<std::vector<int>>();
    if (j.contains("bath")) s.bath = io::bath_from_json(j.at("bath"));
    if (j.contains("sweep")) {
        const auto& sw = j.at("sweep");
        s.sweep = SweepSpec{sw.at("parameter").get<std::string>(), sw.at("start").get<double>(),
                            sw.at("stop").get<double>(), sw.at("count").get<int>()};
    }
    s.cycles = j.value("cycles", s.cycles);
    s.dt = j.value("dt", s.dt);
    return s;
}

// --------------------------------- running ----------------------------------

namespace {

std::vector<ErrorVector> scenario_vectors(const Scenario& scenario,
                                          const GeneratorBasis& basis) {
    const DecomposedHamiltonian decomposed = decompose(scenario.H_S, scenario.errors);
    std::vector<ErrorVector> vectors;
    for (const auto& term : decomposed.couplings) {
        vectors.push_back(to_error_vector(term, basis));
    }
    return vectors;
}

double automatic_dt(const JointModel& joint, const ControlSchedule& schedule) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(joint.H0);
    const double drift = solver.eigenvalues().cwiseAbs().maxCoeff();
    double peak = 0.0;
    for (const auto& seg : schedule.segments) {
        peak = std::max(peak, seg.envelope.bound() * seg.direction.norm() * 2.0);
    }
    return 0.09 / std::max(drift + peak, 1e-12);
}

}  // namespace

std::vector<WatchResult> evaluate_watch(const Scenario& scenario, const GeneratorBasis& basis,
                                        double tol) {
    std::vector<WatchResult> results;
    for (int index : scenario.watch) {
        ErrorVector vec;
        vec.gamma = "watch_e" + std::to_string(index);
        vec.basis_kind = basis.kind;
        vec.basis_n = basis.n;
        vec.s = unit_direction(basis.N, index);
        const Trajectory traj = trajectory(vec, scenario.schedule, basis, scenario.steps);
        double deviation = 0.0;
        for (const auto& v : traj.vectors) {
            deviation = std::max(deviation, (v - traj.vectors.front()).norm());
        }
        results.push_back({index, deviation, deviation <= tol});
    }
    return results;
}

RunResult run_scenario(const Scenario& scenario, const std::string& out_dir) {
    const GeneratorBasis basis = build_basis(scenario.kind, scenario.n);
    const std::vector<ErrorVector> vectors = scenario_vectors(scenario, basis);

    RunResult result;
    const std::string prefix = out_dir.empty() ? scenario.name : out_dir + "/" + scenario.name;

    for (const auto& vec : vectors) {
        const Trajectory traj = trajectory(vec, scenario.schedule, basis, scenario.steps);
        const std::string path = prefix + "." + vec.gamma + ".traj.csv";
        io::write_file(path, io::trajectory_csv(traj));
        result.files.push_back(path);
    }

    result.report = check_decoupling(vectors, scenario.schedule, basis, scenario.tolerance,
                                     scenario.steps);
    result.watch = evaluate_watch(scenario, basis);

    io::ordered_json report_json = io::report_to_json(result.report);
    report_json["name"] = scenario.name;
    report_json["basis"] = to_string(scenario.kind);
    if (!result.watch.empty()) {
        io::ordered_json watch = io::ordered_json::array();
        for (const auto& w : result.watch) {
            watch.push_back({{"index", w.index},
                             {"max_deviation", w.max_deviation},
                             {"invariant", w.invariant}});
        }
        report_json["watch"] = std::move(watch);
    }
    const std::string report_path = prefix + ".report.json";
    io::write_file(report_path, report_json.dump(2) + "\n");
    result.files.push_back(report_path);

    if (scenario.bath) {
        const DecomposedHamiltonian decomposed = decompose(scenario.H_S, scenario.errors);
        const JointModel joint = assemble_joint(decomposed, *scenario.bath);
        const double dt = scenario.dt > 0.0 ? scenario.dt
                                            : automatic_dt(joint, scenario.schedule);
        const CoherenceCurve controlled = coherence_curve(joint, basis, scenario.schedule,
                                                          scenario.cycles, dt);
        const CoherenceCurve free_evolution =
            coherence_curve(joint, basis, std::nullopt, scenario.cycles, dt, {},
                            scenario.schedule.total_duration());
        const std::string path = prefix + ".coherence.csv";
        io::write_file(path, io::coherence_csv(controlled, free_evolution));
        result.files.push_back(path);
    }
    return result;
}

RunResult run_sweep(const Scenario& scenario, const SweepSpec& sweep,
                    const std::string& out_dir) {
    if (sweep.parameter != "amplitude") {
        throw std::invalid_argument("run_sweep: unsupported sweep parameter '" +
                                    sweep.parameter + "' (only 'amplitude')");
    }
    if (sweep.count < 1) {
        throw std::invalid_argument("run_sweep: count must be >= 1");
    }

    const GeneratorBasis basis = build_basis(scenario.kind, scenario.n);
    const std::vector<ErrorVector> vectors = scenario_vectors(scenario, basis);
    const AverageReport ideal = check_decoupling(vectors, scenario.schedule, basis,
                                                 scenario.tolerance, scenario.steps);

    std::vector<double> epsilons;
    std::vector<std::vector<double>> distances;
    for (int k = 0; k < sweep.count; ++k) {
        const double value =
            sweep.count == 1
                ? sweep.start
                : sweep.start + (sweep.stop - sweep.start) * k / (sweep.count - 1);
        const ControlSchedule scaled = scenario.schedule.scaled_amplitudes(value);
        const AverageReport actual =
            check_decoupling(vectors, scaled, basis, scenario.tolerance, scenario.steps);
        const auto per_gamma = robustness_distance(ideal, actual);
        std::vector<double> row;
        for (const auto& vec : vectors) row.push_back(per_gamma.at(vec.gamma));
        epsilons.push_back(value);
        distances.push_back(std::move(row));
    }

    std::vector<std::string> gammas;
    for (const auto& vec : vectors) gammas.push_back(vec.gamma);

    RunResult result;
    result.report = ideal;
    const std::string prefix = out_dir.empty() ? scenario.name : out_dir + "/" + scenario.name;
    const std::string path = prefix + ".sweep.csv";
    io::write_file(path, io::sweep_csv(epsilons, gammas, distances));
    result.files.push_back(path);
    return result;
}

}  // namespace cdd
