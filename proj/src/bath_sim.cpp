#include "cdd/bath_sim.hpp"

#include <algorithm>
#include <cmath>

namespace cdd {

namespace {

double spectral_norm(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix control_operator(const JointModel& joint, const GeneratorBasis& basis,
                        const ControlSchedule& schedule, double t_mod) {
    double start = 0.0;
    for (const auto& seg : schedule.segments) {
        const double end = start + seg.envelope.duration();
        if (t_mod <= end || &seg == &schedule.segments.back()) {
            Matrix h_dir = Matrix::Zero(basis.n, basis.n);
            for (int l = 0; l < basis.N; ++l) {
                if (seg.direction[l] != 0.0) h_dir += seg.direction[l] * basis.generators[l];
            }
            const double a = seg.envelope.value(std::clamp(t_mod - start, 0.0, seg.envelope.duration()));
            return a * kron(h_dir, Matrix::Identity(joint.bath.d_B, joint.bath.d_B));
        }
        start = end;
    }
    return Matrix::Zero(joint.H0.rows(), joint.H0.cols());
}

}  // namespace

JointModel assemble_joint(const DecomposedHamiltonian& decomposed, const BathModel& bath) {
    if (bath.d_B < 2 || bath.d_B > 8) {
        throw std::invalid_argument("assemble_joint: bath dimension must be in [2, 8], got " +
                                    std::to_string(bath.d_B));
    }
    require_hermitian(bath.H_B, "assemble_joint(H_B)", 1e-12);
    if (bath.H_B.rows() != bath.d_B) {
        throw std::invalid_argument("assemble_joint: H_B dimension does not match d_B");
    }

    JointModel joint;
    joint.decomposed = decomposed;
    joint.bath = bath;
    joint.n = static_cast<int>(decomposed.HS_traceless.rows());

    const Matrix id_s = Matrix::Identity(joint.n, joint.n);
    const Matrix id_b = Matrix::Identity(bath.d_B, bath.d_B);

    // original system Hamiltonian, identity part restored
    const Matrix h_system = decomposed.HS_traceless + decomposed.E0 * id_s;
    joint.H0 = kron(h_system, id_b) + kron(id_s, bath.H_B);

    for (std::size_t i = 0; i < decomposed.couplings.size(); ++i) {
        const auto& term = decomposed.couplings[i];
        const auto it = bath.operators.find(term.bath_label);
        if (it == bath.operators.end()) {
            throw std::invalid_argument("assemble_joint: bath label '" + term.bath_label +
                                        "' of coupling " + term.gamma + " is not defined");
        }
        require_hermitian(it->second, "assemble_joint(B_" + term.bath_label + ")", 1e-12);
        if (it->second.rows() != bath.d_B) {
            throw std::invalid_argument("assemble_joint: bath operator '" + term.bath_label +
                                        "' dimension does not match d_B");
        }
        // restore the trace part recorded at decomposition time
        Matrix s_full = term.S;
        if (i < decomposed.bath_shifts.size() &&
            decomposed.bath_shifts[i].bath_label == term.bath_label) {
            s_full += decomposed.bath_shifts[i].shift * id_s;
        }
        joint.H0 += kron(s_full, it->second);
    }
    return joint;
}

JointTrace evolve_joint(const JointModel& joint, const GeneratorBasis& basis,
                        const std::optional<ControlSchedule>& schedule, double t_final,
                        double dt) {
    if (t_final <= 0.0 || dt <= 0.0) {
        throw std::invalid_argument("evolve_joint: t_final and dt must be positive");
    }
    double norm_bound = spectral_norm(joint.H0);
    if (schedule) {
        double peak = 0.0;
        for (const auto& seg : schedule->segments) {
            peak = std::max(peak, seg.envelope.bound() * seg.direction.norm() * 2.0);
        }
        norm_bound += peak;
    }
    if (dt * norm_bound > 0.1 + 1e-12) {
        throw std::invalid_argument("evolve_joint: dt too coarse, dt*|H| = " +
                                    std::to_string(dt * norm_bound) + " > 0.1");
    }

    const double period = schedule ? schedule->total_duration() : 0.0;
    const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));

    JointTrace trace;
    trace.times.push_back(0.0);
    trace.unitaries.push_back(Matrix::Identity(joint.H0.rows(), joint.H0.cols()));

    Matrix u = trace.unitaries.back();
    double t = 0.0;
    for (long k = 0; k < steps; ++k) {
        const double h = std::min(dt, t_final - t);
        double t_mid = t + 0.5 * h;
        Matrix hamiltonian = joint.H0;
        if (schedule) {
            const double t_mod = std::fmod(t_mid, period);
            hamiltonian += control_operator(joint, basis, *schedule, t_mod);
        }
        u = HermitianPropagator(hamiltonian)(h) * u;
        t += h;
        trace.times.push_back(t);
        trace.unitaries.push_back(u);
    }
    return trace;
}

Matrix interaction_picture_hamiltonian(const JointModel& joint, const GeneratorBasis& basis,
                                       const ControlSchedule& schedule, double t) {
    const Matrix u_c = control_unitary_at(schedule, basis, t);
    const Matrix u_joint = kron(u_c, Matrix::Identity(joint.bath.d_B, joint.bath.d_B));
    return u_joint.adjoint() * joint.H0 * u_joint;
}

InteractionSamples interaction_samples(const JointModel& joint, const GeneratorBasis& basis,
                                       const ControlSchedule& schedule, int steps) {
    if (steps < 2) {
        throw std::invalid_argument("interaction_samples: need at least 2 quadrature steps");
    }
    const double period = schedule.total_duration();
    InteractionSamples samples;
    for (int k = 0; k <= steps; ++k) {
        const double t = period * static_cast<double>(k) / steps;
        samples.times.push_back(t);
        samples.values.push_back(interaction_picture_hamiltonian(joint, basis, schedule, t));
    }
    return samples;
}

MagnusTerms magnus_from_samples(const InteractionSamples& samples) {
    const std::size_t m = samples.times.size();
    if (m < 2) {
        throw std::invalid_argument("magnus_from_samples: need at least two samples");
    }
    const double period = samples.times.back() - samples.times.front();
    const double dt = period / static_cast<double>(m - 1);

    MagnusTerms out;
    out.h0bar = Matrix::Zero(samples.values.front().rows(), samples.values.front().cols());
    for (std::size_t k = 0; k + 1 < m; ++k) {
        out.h0bar += 0.5 * dt * (samples.values[k] + samples.values[k + 1]);
    }
    out.h0bar /= period;

    // cumulative inner integral G(v) = ∫_0^v Ĥ0(u) du, then one outer pass
    // over [Ĥ0(v), G(v)] on the same grid
    Matrix cumulative = Matrix::Zero(out.h0bar.rows(), out.h0bar.cols());
    Matrix outer = Matrix::Zero(out.h0bar.rows(), out.h0bar.cols());
    std::vector<Matrix> commutators;
    commutators.reserve(m);
    commutators.push_back(Matrix::Zero(out.h0bar.rows(), out.h0bar.cols()));
    for (std::size_t k = 1; k < m; ++k) {
        cumulative += 0.5 * dt * (samples.values[k - 1] + samples.values[k]);
        commutators.push_back(commutator(samples.values[k], cumulative));
    }
    for (std::size_t k = 0; k + 1 < m; ++k) {
        outer += 0.5 * dt * (commutators[k] + commutators[k + 1]);
    }
    // second Magnus term, -i/(2 T_c) ∫∫_{u<v} [Ĥ0(v), Ĥ0(u)]; the 1/2 is what
    // makes exp(-i(H̄0+H̄1)T_c) track the cycle propagator to third order
    out.h1bar = -0.5 * kImag / period * outer;
    return out;
}

MagnusTerms magnus_terms(const JointModel& joint, const GeneratorBasis& basis,
                         const ControlSchedule& schedule, int quadrature_steps) {
    const CyclicityCheck cyc = check_cyclic(schedule, basis);
    if (!cyc.cyclic) {
        throw std::invalid_argument("magnus_terms: schedule is not cyclic (deviation " +
                                    std::to_string(cyc.deviation) + ")");
    }
    return magnus_from_samples(interaction_samples(joint, basis, schedule, quadrature_steps));
}

ProductState default_initial_state(int n, int d_B) {
    ProductState state;
    state.system = CVector::Zero(n);
    state.system[0] = 1.0 / std::sqrt(2.0);
    state.system[1] = 1.0 / std::sqrt(2.0);
    state.bath = CVector::Zero(d_B);
    state.bath[0] = 1.0;
    return state;
}

CoherenceCurve coherence_curve(const JointModel& joint, const GeneratorBasis& basis,
                               const std::optional<ControlSchedule>& schedule, int n_cycles,
                               double dt, const std::optional<ProductState>& initial,
                               double period) {
    const double cycle_time = schedule ? schedule->total_duration() : period;
    if (cycle_time <= 0.0) {
        throw std::invalid_argument("coherence_curve: need a schedule or a positive period");
    }
    if (n_cycles < 1) {
        throw std::invalid_argument("coherence_curve: n_cycles must be >= 1");
    }

    const ProductState state =
        initial ? *initial : default_initial_state(joint.n, joint.bath.d_B);
    if (state.system.size() != joint.n || state.bath.size() != joint.bath.d_B) {
        throw std::invalid_argument("coherence_curve: initial state dimensions do not match");
    }

    CVector psi0(joint.n * joint.bath.d_B);
    for (int i = 0; i < joint.n; ++i)
        for (int b = 0; b < joint.bath.d_B; ++b)
            psi0[i * joint.bath.d_B + b] = state.system[i] * state.bath[b];

    // one trace for the whole window; stroboscopic samples read off the grid
    const auto steps_per_cycle = static_cast<int>(std::ceil(cycle_time / dt - 1e-9));
    const double step = cycle_time / steps_per_cycle;
    const JointTrace trace =
        evolve_joint(joint, basis, schedule, cycle_time * n_cycles, step);

    CoherenceCurve curve;
    for (int cycle = 0; cycle <= n_cycles; ++cycle) {
        const std::size_t index = static_cast<std::size_t>(cycle) * steps_per_cycle;
        const CVector psi = trace.unitaries[index] * psi0;
        // ρ_S(0,1) from the partial trace over the bath
        Complex rho01 = 0.0;
        for (int b = 0; b < joint.bath.d_B; ++b) {
            rho01 += psi[0 * joint.bath.d_B + b] * std::conj(psi[1 * joint.bath.d_B + b]);
        }
        curve.cycles.push_back(cycle);
        curve.times.push_back(trace.times[index]);
        curve.values.push_back(2.0 * std::abs(rho01));
    }
    return curve;
}

}  // namespace cdd
