// Acceptance suite: every numbered criterion prints one PASS/FAIL line with
// its pinned tolerances; the process exits with the number of failures.

#include "cdd/scenarios.hpp"
#include "test_helpers.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include <sys/wait.h>

using namespace cdd;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    int id;
    std::string description;
    std::function<void()> body;   // throws with a reason on failure
};

void expect(bool condition, const std::string& what) {
    if (!condition) throw std::runtime_error(what);
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(3);
    out << x;
    return out.str();
}

RVector axis(int n_adjoint, int index_1based) {
    RVector dir = RVector::Zero(n_adjoint);
    dir[index_1based - 1] = 1.0;
    return dir;
}

GeneratorBasis basis_of(BasisKind kind) {
    return build_basis(kind, kind == BasisKind::pauli ? 2
                             : kind == BasisKind::gell_mann ? 3
                                                            : 4);
}

const std::vector<BasisKind> kAllKinds = {BasisKind::pauli, BasisKind::gell_mann,
                                          BasisKind::pauli_product};

AverageReport preset_report(const std::string& name, int control = 0) {
    io::json j;
    j["preset"] = name;
    if (control > 0) j["control"] = "e" + std::to_string(control);
    const Scenario scenario = scenario_from_json(j);
    const GeneratorBasis basis = build_basis(scenario.kind, scenario.n);
    std::vector<ErrorVector> vectors;
    for (const auto& term : decompose(scenario.H_S, scenario.errors).couplings) {
        vectors.push_back(to_error_vector(term, basis));
    }
    return check_decoupling(vectors, scenario.schedule, basis, scenario.tolerance,
                            scenario.steps);
}

// ------------------------------- criteria ------------------------------------

void criterion_1_bases() {
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        for (const auto& lambda : basis.generators) {
            expect(hermiticity_deviation(lambda) <= 1e-12, basis.id() + ": not Hermitian");
            expect(std::abs(lambda.trace()) <= 1e-12, basis.id() + ": not traceless");
        }
        const double expected_m = kind == BasisKind::pauli_product ? 4.0 : 2.0;
        for (int i = 0; i < basis.N; ++i) {
            for (int j = 0; j < basis.N; ++j) {
                const Complex gram = (basis.generators[i] * basis.generators[j]).trace();
                const double target = i == j ? expected_m : 0.0;
                expect(std::abs(gram - target) <= 1e-12,
                       basis.id() + ": trace-orthogonality violated");
            }
        }

        const StructureTensor f = structure_constants(basis);
        for (int i = 0; i < basis.N; ++i) {
            for (int j = 0; j < basis.N; ++j) {
                for (int k = 0; k < basis.N; ++k) {
                    expect(std::abs(f(i, j, k) + f(j, i, k)) <= 1e-12, "antisymmetry (ij)");
                    expect(std::abs(f(i, j, k) + f(i, k, j)) <= 1e-12, "antisymmetry (jk)");
                }
            }
        }
        for (int i = 0; i < basis.N; ++i) {
            for (int j = 0; j < basis.N; ++j) {
                Matrix rebuilt = Matrix::Zero(basis.n, basis.n);
                for (int k = 0; k < basis.N; ++k) {
                    if (f(i, j, k) != 0.0) rebuilt += kImag * f(i, j, k) * basis.generators[k];
                }
                const Matrix comm = commutator(basis.generators[i], basis.generators[j]);
                expect((rebuilt - comm).cwiseAbs().maxCoeff() <= 1e-12,
                       basis.id() + ": commutator reconstruction");
            }
        }
    }
}

void criterion_2_reference_tables() {
    int generators_checked = 0;
    for (BasisKind kind : kAllKinds) {
        const ReconciliationReport report = reconcile_reference_tables(basis_of(kind));
        expect(report.all_membership_match, to_string(kind) + ": membership mismatch");
        generators_checked += static_cast<int>(report.entries.size());
    }
    expect(generators_checked == 3 + 8 + 15, "expected 26 reconciled generators");

    const ReconciliationReport su3 = reconcile_reference_tables(basis_of(BasisKind::gell_mann));
    const auto& entry = su3.entries[2];
    expect(entry.printed_sign_conflicts.size() == 1 &&
               entry.printed_sign_conflicts[0] == std::make_pair(6, 7),
           "generator-3 printed sign conflict on plane (6,7) not detected");
}

void criterion_3_homomorphism() {
    std::mt19937 rng(2024);
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        for (int trial = 0; trial < 100; ++trial) {
            const Matrix u = testing::random_unitary(basis.n, rng);
            const Matrix v = testing::random_unitary(basis.n, rng);
            const RMatrix ru = adjoint_rotation(basis, u);
            const RMatrix rv = adjoint_rotation(basis, v);
            expect((ru.transpose() * ru - RMatrix::Identity(basis.N, basis.N)).norm() <= 1e-10,
                   basis.id() + ": orthogonality beyond 1e-10");
            expect((adjoint_rotation(basis, u * v) - ru * rv).norm() <= 1e-10,
                   basis.id() + ": homomorphism beyond 1e-10");
        }
    }

    int schedules = 0;
    for (BasisKind kind : kAllKinds) {
        const GeneratorBasis basis = basis_of(kind);
        const int per_basis = kind == BasisKind::pauli_product ? 6 : 7;
        for (int trial = 0; trial < per_basis; ++trial, ++schedules) {
            const ControlSchedule schedule = testing::random_schedule(basis, rng);
            const ErrorVector vec =
                testing::make_error_vector(basis, testing::random_direction(basis.N, rng));
            const Trajectory traj = trajectory(vec, schedule, basis, 64);
            const Matrix u_final =
                control_unitary_at(schedule, basis, schedule.total_duration());
            const RVector transported = adjoint_rotation(basis, u_final).transpose() * vec.s;
            expect((traj.vectors.back() - transported).norm() <= 1e-8,
                   basis.id() + ": trajectory endpoint disagrees with the transport");
        }
    }
    expect(schedules >= 20, "fewer than 20 random schedules exercised");
}

void criterion_4_example_a() {
    const GeneratorBasis basis = basis_of(BasisKind::pauli);
    const ErrorVector vec = testing::unit_error_vector(basis, 3, "z");

    for (EnvelopeKind kind : {EnvelopeKind::constant, EnvelopeKind::raised_cosine}) {
        const auto halves = design_half_cycle_profile(kPi, 1.0, kind, 2.0);
        ControlSchedule schedule;
        schedule.segments = {{axis(3, 2), halves.first}, {axis(3, 2), halves.second}};
        const AverageReport report = check_decoupling({vec}, schedule, basis, 1e-6, 256);
        expect(report.decoupled,
               to_string(kind) + " half-cycle residual " + fmt(report.per_gamma[0].residual) +
                   " above 1e-6");
    }

    // asymmetric halves: same total angle, different speed profile
    ControlSchedule broken;
    broken.segments = {{axis(3, 2), Envelope::constant(1.0, kPi / 2.0)},
                       {axis(3, 2), Envelope::constant(2.0, kPi / 4.0)}};
    const AverageReport report = check_decoupling({vec}, broken, basis, 1e-6, 256);
    expect(report.per_gamma[0].residual >= 0.1,
           "asymmetric halves residual " + fmt(report.per_gamma[0].residual) + " below 0.1");
}

void criterion_5_example_b() {
    const AverageReport report = preset_report("example_b");
    expect(report.cyclic, "eight-pulse schedule not cyclic");
    for (const auto& entry : report.per_gamma) {
        expect(entry.residual <= 1e-6,
               "average of " + entry.gamma + " is " + fmt(entry.residual));
    }

    const DecouplingGroup group = testing::klein_group();
    const CayleyGraph graph = build_cayley_graph(group, {"x", "z"});
    expect(graph.edges.size() == 8, "Cayley graph of the four-group must have 8 edges");
    const std::vector<std::string> sequence = {"x", "z", "x", "z", "z", "x", "z", "x"};
    expect(sequence.size() == graph.vertices.size() * graph.generating_set.size(),
           "L must equal |G|*|F|");
    expect(validate_eulerian_cycle(graph, "e", sequence).valid,
           "the eight-color sequence is not an Eulerian cycle");
}

void criterion_6_example_c() {
    std::string failures;
    for (int control : {7, 11, 15}) {
        io::json j;
        j["preset"] = "example_c";
        j["control"] = "e" + std::to_string(control);
        const Scenario scenario = scenario_from_json(j);
        const GeneratorBasis basis = build_basis(scenario.kind, scenario.n);

        for (const auto& w : evaluate_watch(scenario, basis)) {
            if (w.max_deviation > 1e-9) {
                failures += " e" + std::to_string(control) + ": watch e" +
                            std::to_string(w.index) + " moved " + fmt(w.max_deviation) + ";";
            }
        }
        const AverageReport report = preset_report("example_c", control);
        for (const auto& entry : report.per_gamma) {
            if (entry.residual > 1e-6) {
                failures += " e" + std::to_string(control) + ": " + entry.gamma +
                            " residual " + fmt(entry.residual) + ";";
            }
        }
    }
    expect(failures.empty(), "[" + failures + " ] (the sigma_z x sigma_z control commutes "
                             "with both dephasing operators, so no envelope moves them)");
}

void criterion_7_example_d() {
    const AverageReport report = preset_report("example_d");
    expect(report.cyclic, "slow-plane 2-pi cycle not cyclic");
    for (const auto& entry : report.per_gamma) {
        expect(entry.residual <= 1e-6,
               "average of " + entry.gamma + " is " + fmt(entry.residual));
    }
}

void criterion_8_bang_bang() {
    const GeneratorBasis basis = basis_of(BasisKind::pauli);
    const Matrix sz = basis.generators[2];
    RVector e3 = RVector::Zero(3);
    e3[2] = 1.0;

    for (const DecouplingGroup& group : {testing::z2_group(), testing::c4_group()}) {
        const ErrorVector vec_route = to_error_vector({"z", symmetrize(group, sz), "b"}, basis);
        RVector rotation_route = RVector::Zero(3);
        for (int k = 0; k < group.size(); ++k) {
            rotation_route += adjoint_rotation(basis, group.rep(k)).transpose() * e3;
        }
        rotation_route /= group.size();
        expect((vec_route.s - rotation_route).norm() <= 1e-10,
               "group and rotation averages disagree");
    }
    expect(symmetrize(testing::z2_group(), sz).norm() == 0.0,
           "parity-kick average of sigma_z must vanish exactly");
}

void criterion_9_magnus() {
    const GeneratorBasis basis = basis_of(BasisKind::pauli);
    Matrix sx(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;

    BathModel bath;
    bath.d_B = 2;
    bath.H_B = 0.6 * sx;
    bath.operators["b"] = sz;
    const JointModel joint =
        assemble_joint(decompose(Matrix::Zero(2, 2), {{"z", sz, "b"}}), bath);

    // undriven cycle
    ControlSchedule idle;
    idle.segments = {{axis(3, 2), Envelope::constant(0.0, 1.0)}};
    const MagnusTerms at_rest = magnus_terms(joint, basis, idle, 256);
    expect((at_rest.h0bar - joint.H0).norm() <= 1e-10, "idle first term is not H0");
    expect(at_rest.h1bar.norm() <= 1e-10, "idle second term is not zero");

    // matched grids: the coupling sector must reproduce the averaged vector
    ControlSchedule sweep;
    sweep.segments = {{axis(3, 2), Envelope::constant(1.0, kPi / 2.0)},
                      {axis(3, 2), Envelope::constant(-1.0, kPi / 2.0)}};
    const MagnusTerms swept = magnus_terms(joint, basis, sweep, 512);
    const ErrorVector vec = to_error_vector({"z", sz, "b"}, basis);
    const RVector averaged = average_error_vector(trajectory(vec, sweep, basis, 256));
    const Matrix expected =
        kron(from_error_vector(testing::make_error_vector(basis, averaged), basis), sz);
    Matrix reduced = Matrix::Zero(2, 2);
    for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < 2; ++i) reduced(b, c) += swept.h0bar(i * 2 + b, i * 2 + c);
    const Matrix sector = swept.h0bar - kron(Matrix::Identity(2, 2), reduced / 2.0);
    expect((sector - expected).norm() <= 1e-8, "coupling sector mismatch above 1e-8");

    // third-order remainder under cycle halving
    auto residual = [&](double t_cycle) {
        const double amp = kPi / t_cycle;
        const Envelope half = Envelope::constant(amp, t_cycle / 2.0, amp);
        ControlSchedule schedule;
        schedule.segments = {{axis(3, 2), half}, {axis(3, 2), half}};
        const MagnusTerms terms = magnus_terms(joint, basis, schedule, 2048);
        const JointTrace trace =
            evolve_joint(joint, basis, schedule, t_cycle, t_cycle / 4096);
        const Matrix u_c = control_unitary_at(schedule, basis, t_cycle);
        const Matrix frame =
            kron(u_c, Matrix::Identity(2, 2)).adjoint() * trace.unitaries.back();
        return (expm_hermitian(terms.h0bar + terms.h1bar, t_cycle) - frame).norm();
    };
    const double ratio = residual(0.4) / residual(0.2);
    expect(ratio >= 8.0, "halving ratio " + fmt(ratio) + " below 8");
}

void criterion_10_efficacy() {
    const GeneratorBasis basis = basis_of(BasisKind::pauli);
    Matrix sx(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    BathModel bath;
    bath.d_B = 2;
    bath.H_B = Matrix::Zero(2, 2);
    bath.operators["b"] = sx;
    const JointModel joint =
        assemble_joint(decompose(Matrix::Zero(2, 2), {{"z", sz, "b"}}), bath);

    // |H0| = 1, so any T_c <= 0.1 qualifies
    const double t_cycle = 0.05;
    const double amplitude = kPi / t_cycle;
    const Envelope half = Envelope::constant(amplitude, t_cycle / 2.0, amplitude);
    ControlSchedule schedule;
    schedule.segments = {{axis(3, 2), half}, {axis(3, 2), half}};

    const int cycles = 20;
    const double dt = 6.5e-4;
    const CoherenceCurve controlled = coherence_curve(joint, basis, schedule, cycles, dt);
    const CoherenceCurve free_evolution =
        coherence_curve(joint, basis, std::nullopt, cycles, dt, {}, t_cycle);
    for (int k = 1; k <= cycles; ++k) {
        const double with_control = controlled.values[static_cast<std::size_t>(k)];
        const double without = free_evolution.values[static_cast<std::size_t>(k)];
        expect(with_control >= without, "cycle " + std::to_string(k) + ": " +
                                            fmt(with_control) + " < " + fmt(without));
    }
}

void criterion_11_robustness() {
    const Scenario scenario = preset("example_a");
    const GeneratorBasis basis = build_basis(scenario.kind, scenario.n);
    std::vector<ErrorVector> vectors;
    for (const auto& term : decompose(scenario.H_S, scenario.errors).couplings) {
        vectors.push_back(to_error_vector(term, basis));
    }
    const AverageReport ideal =
        check_decoupling(vectors, scenario.schedule, basis, 1e-6, 256);

    auto distance_at = [&](double epsilon) {
        const AverageReport actual = check_decoupling(
            vectors, scenario.schedule.scaled_amplitudes(1.0 + epsilon), basis, 1e-6, 256);
        return robustness_distance(ideal, actual).at("z");
    };
    const double ratio = distance_at(0.02) / distance_at(0.01);
    expect(std::abs(ratio - 2.0) <= 0.1,
           "distance ratio " + fmt(ratio) + " not within 5% of 2");
}

void criterion_12_cli() {
    namespace fs = std::filesystem;
    const fs::path scratch = "acceptance_cli_scratch";
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    const std::string cli = CDD_CLI_PATH;
    auto shell = [](const std::string& command) {
        const int status = std::system((command + " > /dev/null 2>&1").c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    auto slurp = [](const fs::path& path) {
        std::ifstream stream(path, std::ios::binary);
        return std::string{std::istreambuf_iterator<char>(stream),
                           std::istreambuf_iterator<char>()};
    };

    std::ofstream(scratch / "example_b.json") << "{\"preset\": \"example_b\"}\n";
    const std::string scenario = (scratch / "example_b.json").string();
    expect(shell(cli + " run --out " + (scratch / "a").string() + " " + scenario) == 0,
           "decoupled run must exit 0");
    expect(shell(cli + " run --out " + (scratch / "b").string() + " " + scenario) == 0,
           "second run must exit 0");

    int compared = 0;
    for (const auto& entry : fs::directory_iterator(scratch / "a")) {
        const fs::path other = scratch / "b" / entry.path().filename();
        expect(fs::exists(other), "artifact sets differ");
        expect(slurp(entry.path()) == slurp(other), "artifacts are not byte-identical");
        ++compared;
    }
    expect(compared == 4, "expected 4 artifacts per run");

    std::ofstream(scratch / "stuck.json")
        << "{\"basis\": \"pauli\", "
           "\"errors\": [{\"gamma\": \"x\", \"op\": \"sigma_x\"}], "
           "\"schedule\": {\"segments\": [{\"direction\": \"e1\", \"envelope\": "
           "{\"kind\": \"constant\", \"amplitude\": 1.0, \"duration\": 3.14159265358979}}]}}\n";
    expect(shell(cli + " run --out " + (scratch / "c").string() + " " +
                 (scratch / "stuck.json").string()) == 1,
           "undecoupled run must exit 1");

    std::ofstream(scratch / "broken.json") << "{\"preset\": }\n";
    expect(shell(cli + " run " + (scratch / "broken.json").string()) == 2,
           "malformed scenario must exit 2");
    expect(shell(cli + " tables su9") == 2, "unknown tables basis must exit 2");

    fs::remove_all(scratch);
}

}  // namespace

// With no arguments every criterion runs; an integer argument selects one.
int main(int argc, char** argv) {
    const std::vector<Check> checks = {
        {1, "generator bases and structure tensors (tolerance 1e-12)", criterion_1_bases},
        {2, "reference-table plane membership for all 26 generators + printed sign conflict",
         criterion_2_reference_tables},
        {3, "adjoint homomorphism (100 pairs/basis, 1e-10) and transport endpoints "
            "(20 schedules, 1e-8)",
         criterion_3_homomorphism},
        {4, "half-cycle profiles average the single error below 1e-6; broken halves >= 0.1",
         criterion_4_example_a},
        {5, "eight-pulse train decouples x, y, z below 1e-6 and is an Eulerian cycle (L = 8)",
         criterion_5_example_b},
        {6, "two-qubit dephasing: exchange-compatible controls decouple below 1e-6 with "
            "watch vectors frozen to 1e-9",
         criterion_6_example_c},
        {7, "qutrit errors e3, e4, e6 average below 1e-6 under the e2 drive",
         criterion_7_example_d},
        {8, "group symmetrization equals rotation averaging (1e-10); parity kick exact zero",
         criterion_8_bang_bang},
        {9, "magnus terms: idle limits (1e-10), coupling sector identity (1e-8), "
            "third-order remainder (>= 8x)",
         criterion_9_magnus},
        {10, "stroboscopic coherence under drive dominates free decay for 20 cycles",
         criterion_10_efficacy},
        {11, "robustness distance halves with the amplitude error (within 5%)",
         criterion_11_robustness},
        {12, "CLI determinism (byte-identical artifacts) and exit-code contract",
         criterion_12_cli},
    };

    const int selected = argc > 1 ? std::atoi(argv[1]) : 0;

    int failures = 0;
    int ran = 0;
    for (const auto& check : checks) {
        if (selected != 0 && check.id != selected) continue;
        ++ran;
        std::string verdict = "PASS";
        std::string detail;
        try {
            check.body();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        std::printf("[%2d] %s  %s%s%s\n", check.id, verdict.c_str(),
                    check.description.c_str(), detail.empty() ? "" : " -- ",
                    detail.c_str());
    }
    if (selected == 0) {
        std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failures,
                    checks.size());
    } else if (ran == 0) {
        std::fprintf(stderr, "no criterion %d\n", selected);
        return 2;
    }
    return failures;
}
