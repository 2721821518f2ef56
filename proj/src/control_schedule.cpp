#include "cdd/control_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cdd {

namespace {

constexpr double kDomainSlack = 1e-9;

void require_in_domain(double t, double duration, const std::string& who) {
    if (t < -kDomainSlack || t > duration + kDomainSlack) {
        throw std::invalid_argument(who + ": t = " + std::to_string(t) +
                                    " outside [0, " + std::to_string(duration) + "]");
    }
}

void require_schedule(const ControlSchedule& schedule, const GeneratorBasis& basis,
                      const std::string& who) {
    if (schedule.segments.empty() || schedule.total_duration() <= 0.0) {
        throw std::invalid_argument(who + ": schedule must have positive total duration");
    }
    for (const auto& seg : schedule.segments) {
        if (seg.direction.size() != basis.N) {
            throw std::invalid_argument(who + ": segment direction length " +
                                        std::to_string(seg.direction.size()) +
                                        " does not match " + basis.id());
        }
        if (seg.direction.norm() == 0.0) {
            throw std::invalid_argument(who + ": zero segment direction");
        }
    }
}

void require_steps(int steps, const std::string& who) {
    if (steps < 16) {
        throw std::invalid_argument(who + ": steps_per_segment must be >= 16, got " +
                                    std::to_string(steps));
    }
}

Matrix direction_operator(const ControlSegment& seg, const GeneratorBasis& basis) {
    Matrix h = Matrix::Zero(basis.n, basis.n);
    for (int l = 0; l < basis.N; ++l) {
        if (seg.direction[l] != 0.0) h += seg.direction[l] * basis.generators[l];
    }
    return h;
}

}  // namespace

std::string to_string(EnvelopeKind kind) {
    switch (kind) {
        case EnvelopeKind::constant: return "constant";
        case EnvelopeKind::piecewise_constant: return "piecewise_constant";
        case EnvelopeKind::raised_cosine: return "raised_cosine";
        case EnvelopeKind::sampled: return "sampled";
    }
    return "unknown";
}

// ------------------------------- Envelope -----------------------------------

namespace {

Envelope finish(Envelope env, double peak, double bound) {
    if (env.duration() <= 0.0) {
        throw std::invalid_argument("Envelope: duration must be positive");
    }
    const double declared = bound > 0.0 ? bound : peak;
    if (peak > declared + 1e-12) {
        throw std::invalid_argument("Envelope: peak amplitude " + std::to_string(peak) +
                                    " exceeds declared bound " + std::to_string(declared));
    }
    return env;
}

}  // namespace

Envelope Envelope::constant(double amplitude, double duration, double bound) {
    Envelope env;
    env.kind_ = EnvelopeKind::constant;
    env.duration_ = duration;
    env.amplitude_ = amplitude;
    env.peak_ = std::abs(amplitude);
    env.bound_ = bound > 0.0 ? bound : env.peak_;
    return finish(env, env.peak_, bound);
}

Envelope Envelope::piecewise_constant(std::vector<double> amplitudes, double duration,
                                      double bound) {
    if (amplitudes.empty()) {
        throw std::invalid_argument("Envelope: piecewise_constant needs at least one piece");
    }
    Envelope env;
    env.kind_ = EnvelopeKind::piecewise_constant;
    env.duration_ = duration;
    env.values_ = std::move(amplitudes);
    env.peak_ = 0.0;
    for (double v : env.values_) env.peak_ = std::max(env.peak_, std::abs(v));
    env.bound_ = bound > 0.0 ? bound : env.peak_;
    return finish(env, env.peak_, bound);
}

Envelope Envelope::raised_cosine(double peak, double duration, double bound) {
    Envelope env;
    env.kind_ = EnvelopeKind::raised_cosine;
    env.duration_ = duration;
    env.amplitude_ = peak;
    env.peak_ = std::abs(peak);
    env.bound_ = bound > 0.0 ? bound : env.peak_;
    return finish(env, env.peak_, bound);
}

Envelope Envelope::sampled(std::vector<double> samples, double duration, double bound) {
    if (samples.size() < 2) {
        throw std::invalid_argument("Envelope: sampled needs at least two samples");
    }
    Envelope env;
    env.kind_ = EnvelopeKind::sampled;
    env.duration_ = duration;
    env.values_ = std::move(samples);
    env.peak_ = 0.0;
    for (double v : env.values_) env.peak_ = std::max(env.peak_, std::abs(v));
    env.bound_ = bound > 0.0 ? bound : env.peak_;
    return finish(env, env.peak_, bound);
}

double Envelope::value(double t) const {
    require_in_domain(t, duration_, "Envelope::value");
    t = std::clamp(t, 0.0, duration_);
    switch (kind_) {
        case EnvelopeKind::constant:
            return amplitude_;
        case EnvelopeKind::piecewise_constant: {
            const double width = duration_ / static_cast<double>(values_.size());
            auto idx = static_cast<std::size_t>(t / width);
            idx = std::min(idx, values_.size() - 1);
            return values_[idx];
        }
        case EnvelopeKind::raised_cosine: {
            const double s = std::sin(std::numbers::pi * t / duration_);
            return amplitude_ * s * s;
        }
        case EnvelopeKind::sampled: {
            const double width = duration_ / static_cast<double>(values_.size() - 1);
            auto idx = static_cast<std::size_t>(t / width);
            idx = std::min(idx, values_.size() - 2);
            const double frac = (t - static_cast<double>(idx) * width) / width;
            return values_[idx] + frac * (values_[idx + 1] - values_[idx]);
        }
    }
    return 0.0;
}

double Envelope::cumulative_angle(double t) const {
    require_in_domain(t, duration_, "Envelope::cumulative_angle");
    t = std::clamp(t, 0.0, duration_);
    switch (kind_) {
        case EnvelopeKind::constant:
            return amplitude_ * t;
        case EnvelopeKind::piecewise_constant: {
            const double width = duration_ / static_cast<double>(values_.size());
            auto idx = static_cast<std::size_t>(t / width);
            idx = std::min(idx, values_.size() - 1);
            double angle = 0.0;
            for (std::size_t k = 0; k < idx; ++k) angle += values_[k] * width;
            angle += values_[idx] * (t - static_cast<double>(idx) * width);
            return angle;
        }
        case EnvelopeKind::raised_cosine: {
            // ∫ peak sin²(πu/τ) du = peak/2 (t − τ/(2π) sin(2πt/τ))
            const double tau = duration_;
            const double two_pi = 2.0 * std::numbers::pi;
            return 0.5 * amplitude_ * (t - tau / two_pi * std::sin(two_pi * t / tau));
        }
        case EnvelopeKind::sampled: {
            // exact integral of the linear interpolant
            const double width = duration_ / static_cast<double>(values_.size() - 1);
            auto idx = static_cast<std::size_t>(t / width);
            idx = std::min(idx, values_.size() - 2);
            double angle = 0.0;
            for (std::size_t k = 0; k < idx; ++k) {
                angle += 0.5 * (values_[k] + values_[k + 1]) * width;
            }
            const double t0 = static_cast<double>(idx) * width;
            const double a0 = values_[idx];
            const double a1 = value(t);
            angle += 0.5 * (a0 + a1) * (t - t0);
            return angle;
        }
    }
    return 0.0;
}

Envelope Envelope::scaled(double factor) const {
    Envelope env = *this;
    env.amplitude_ *= factor;
    for (double& v : env.values_) v *= factor;
    env.peak_ *= std::abs(factor);
    env.bound_ *= std::abs(factor);
    return env;
}

double cumulative_angle(const Envelope& envelope, double t) {
    return envelope.cumulative_angle(t);
}

// ---------------------------- ControlSchedule -------------------------------

double ControlSchedule::total_duration() const {
    double total = 0.0;
    for (const auto& seg : segments) total += seg.envelope.duration();
    return total;
}

ControlSchedule ControlSchedule::scaled_amplitudes(double factor) const {
    ControlSchedule out = *this;
    for (auto& seg : out.segments) seg.envelope = seg.envelope.scaled(factor);
    return out;
}

Matrix control_unitary_at(const ControlSchedule& schedule, const GeneratorBasis& basis,
                          double t) {
    require_schedule(schedule, basis, "control_unitary_at");
    require_in_domain(t, schedule.total_duration(), "control_unitary_at");

    Matrix u = Matrix::Identity(basis.n, basis.n);
    double start = 0.0;
    for (const auto& seg : schedule.segments) {
        const double end = start + seg.envelope.duration();
        const double local = std::clamp(t, start, end) - start;
        if (local > 0.0) {
            const double angle = seg.envelope.cumulative_angle(local);
            u = HermitianPropagator(direction_operator(seg, basis))(angle) * u;
        }
        if (t <= end) break;
        start = end;
    }
    return u;
}

CyclicityCheck check_cyclic(const ControlSchedule& schedule, const GeneratorBasis& basis,
                            double tol) {
    const Matrix u = control_unitary_at(schedule, basis, schedule.total_duration());
    CyclicityCheck out;
    const Complex trace = u.trace();
    out.phase = std::abs(trace) > 0.0 ? trace / std::abs(trace) : Complex{1.0, 0.0};
    out.deviation = (u - out.phase * Matrix::Identity(basis.n, basis.n)).norm();
    out.cyclic = out.deviation <= tol;
    return out;
}

UnitarySeries propagate_unitary(const ControlSchedule& schedule, const GeneratorBasis& basis,
                                int steps_per_segment) {
    require_schedule(schedule, basis, "propagate_unitary");
    require_steps(steps_per_segment, "propagate_unitary");

    UnitarySeries series;
    series.times.push_back(0.0);
    series.unitaries.push_back(Matrix::Identity(basis.n, basis.n));

    Matrix u_start = Matrix::Identity(basis.n, basis.n);
    double t_start = 0.0;
    for (const auto& seg : schedule.segments) {
        const HermitianPropagator prop(direction_operator(seg, basis));
        const double tau = seg.envelope.duration();
        const double dt = tau / steps_per_segment;
        for (int k = 1; k <= steps_per_segment; ++k) {
            const double local = k == steps_per_segment ? tau : k * dt;
            const double angle = seg.envelope.cumulative_angle(local);
            series.times.push_back(t_start + local);
            series.unitaries.push_back(prop(angle) * u_start);
        }
        u_start = series.unitaries.back();
        t_start += tau;
    }
    return series;
}

// ------------------------------ trajectories --------------------------------

namespace {

void require_vector(const ErrorVector& vec, const GeneratorBasis& basis,
                    const std::string& who) {
    if (vec.basis_kind != basis.kind || vec.basis_n != basis.n ||
        vec.s.size() != basis.N) {
        throw std::invalid_argument(who + ": error vector belongs to a different basis than " +
                                    basis.id());
    }
}

}  // namespace

Trajectory trajectory(const ErrorVector& vec, const ControlSchedule& schedule,
                      const GeneratorBasis& basis, int steps_per_segment) {
    require_schedule(schedule, basis, "trajectory");
    require_steps(steps_per_segment, "trajectory");
    require_vector(vec, basis, "trajectory");

    const StructureTensor f = structure_constants(basis);

    Trajectory traj;
    traj.gamma = vec.gamma;
    traj.times.push_back(0.0);
    traj.vectors.push_back(vec.s);

    RMatrix transport = RMatrix::Identity(basis.N, basis.N);
    double t_start = 0.0;
    for (const auto& seg : schedule.segments) {
        const AdjointGenerator gen = adjoint_generator(basis, f, seg.direction);
        const RotationFamily rotate(gen.F);
        const double tau = seg.envelope.duration();
        const double dt = tau / steps_per_segment;
        for (int k = 1; k <= steps_per_segment; ++k) {
            const double local = k == steps_per_segment ? tau : k * dt;
            const double angle = seg.envelope.cumulative_angle(local);
            // new rotations act next to s(0): R[U V] = R[U] R[V] with the later
            // factor U on the left means Rᵀ picks up later rotations on the right
            traj.times.push_back(t_start + local);
            traj.vectors.push_back(transport * rotate(angle) * vec.s);
        }
        transport = transport * rotate(seg.envelope.cumulative_angle(tau));
        t_start += tau;
    }
    return traj;
}

Trajectory trajectory_rk4(const ErrorVector& vec, const ControlSchedule& schedule,
                          const GeneratorBasis& basis, int steps_per_segment) {
    require_schedule(schedule, basis, "trajectory_rk4");
    require_steps(steps_per_segment, "trajectory_rk4");
    require_vector(vec, basis, "trajectory_rk4");

    const StructureTensor f = structure_constants(basis);

    Trajectory traj;
    traj.gamma = vec.gamma;
    traj.times.push_back(0.0);
    traj.vectors.push_back(vec.s);

    RMatrix transport = RMatrix::Identity(basis.N, basis.N);
    double t_start = 0.0;
    for (const auto& seg : schedule.segments) {
        const RMatrix F = adjoint_generator(basis, f, seg.direction).F;
        const double tau = seg.envelope.duration();
        const double dt = tau / steps_per_segment;
        for (int k = 0; k < steps_per_segment; ++k) {
            const double t0 = k * dt;
            const double h = (k == steps_per_segment - 1) ? tau - t0 : dt;
            // dP/dt = a(t) P F, new rotation composing on the right
            const auto deriv = [&](const RMatrix& p, double t_local) -> RMatrix {
                return seg.envelope.value(t_local) * (p * F);
            };
            const RMatrix k1 = deriv(transport, t0);
            const RMatrix k2 = deriv(transport + 0.5 * h * k1, t0 + 0.5 * h);
            const RMatrix k3 = deriv(transport + 0.5 * h * k2, t0 + 0.5 * h);
            const RMatrix k4 = deriv(transport + h * k3, t0 + h);
            transport += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            traj.times.push_back(t_start + std::min(t0 + h, tau));
            traj.vectors.push_back(transport * vec.s);
        }
        t_start += tau;
    }
    return traj;
}

// --------------------------- half-cycle design ------------------------------

std::pair<Envelope, Envelope> design_half_cycle_profile(double vector_angle, double bound,
                                                        EnvelopeKind kind, double plane_speed,
                                                        double max_duration) {
    if (bound <= 0.0) {
        throw std::invalid_argument("design_half_cycle_profile: bound must be positive");
    }
    if (vector_angle <= 0.0 || plane_speed <= 0.0) {
        throw std::invalid_argument(
            "design_half_cycle_profile: vector_angle and plane_speed must be positive");
    }

    // A-space target per half; the plane speed converts vector rotation angle
    // into accumulated envelope area.
    const double angle = vector_angle / plane_speed;

    double duration = 0.0;
    switch (kind) {
        case EnvelopeKind::constant:
            duration = angle / bound;
            break;
        case EnvelopeKind::raised_cosine:
            duration = 2.0 * angle / bound;   // mean amplitude is peak/2
            break;
        default:
            throw std::invalid_argument("design_half_cycle_profile: no closed-form design for " +
                                        to_string(kind) + " envelopes");
    }

    if (max_duration > 0.0 && duration > max_duration + 1e-12) {
        throw std::invalid_argument(
            "design_half_cycle_profile: target unreachable under bound " + std::to_string(bound) +
            " within " + std::to_string(max_duration) + "; minimal half duration is " +
            std::to_string(duration));
    }

    Envelope half = kind == EnvelopeKind::constant
                        ? Envelope::constant(bound, duration, bound)
                        : Envelope::raised_cosine(bound, duration, bound);
    return {half, half};
}

}  // namespace cdd
