// control_schedule.hpp — bounded control envelopes, piecewise-direction
// schedules, control-unitary propagation, and error-vector trajectories.
//
// Time is dimensionless (ħ = 1); amplitudes are energies in the same units.
// Within a segment the control direction is fixed, so the segment propagator
// is exp(-i A(t) H_dir) with the cumulative angle A(t) = ∫ a(u) du evaluated
// in closed form (trapezoid for sampled envelopes). Grid values are therefore
// exact for constant and piecewise envelopes and quadrature-limited only by
// the envelope smoothness otherwise.
//
// Coefficient-vector trajectories are transported by s(t) = R[U_c(t)]ᵀ s(0).
// Because R[UV] = R[U] R[V] and later control factors multiply U_c on the
// left, each segment's rotation exp(ΔA·F) composes on the RIGHT of the
// accumulated transport matrix. trajectory() does exactly that with exact
// per-segment rotations; trajectory_rk4() integrates the same flow with a
// classical RK4 stepper and serves as an independent cross-check.

#pragma once

#include "cdd/error_model.hpp"
#include "cdd/lie_algebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cdd {

enum class EnvelopeKind { constant, piecewise_constant, raised_cosine, sampled };

std::string to_string(EnvelopeKind kind);

class Envelope {
public:
    // bound <= 0 means "use the peak amplitude as the declared bound".
    static Envelope constant(double amplitude, double duration, double bound = 0.0);
    // equal-width pieces spanning [0, duration]
    static Envelope piecewise_constant(std::vector<double> amplitudes, double duration,
                                       double bound = 0.0);
    // a(t) = peak · sin²(π t / duration): smooth, zero at both ends
    static Envelope raised_cosine(double peak, double duration, double bound = 0.0);
    // uniform samples over [0, duration], linearly interpolated
    static Envelope sampled(std::vector<double> samples, double duration, double bound = 0.0);

    EnvelopeKind kind() const { return kind_; }
    double duration() const { return duration_; }
    double bound() const { return bound_; }
    double peak_amplitude() const { return peak_; }
    double amplitude() const { return amplitude_; }              // constant / raised_cosine
    const std::vector<double>& values() const { return values_; } // piecewise / sampled

    // a(t) for t in [0, duration]
    double value(double t) const;
    // A(t) = ∫_0^t a(u) du for t in [0, duration]
    double cumulative_angle(double t) const;

    // same envelope with all amplitudes multiplied by `factor` (bound rescaled
    // alongside; used by robustness sweeps to model amplitude errors)
    Envelope scaled(double factor) const;

private:
    Envelope() = default;

    EnvelopeKind kind_ = EnvelopeKind::constant;
    double duration_ = 0.0;
    double bound_ = 0.0;
    double peak_ = 0.0;
    double amplitude_ = 0.0;
    std::vector<double> values_;
};

double cumulative_angle(const Envelope& envelope, double t);

struct ControlSegment {
    RVector direction;   // length-N generator combination, non-zero
    Envelope envelope;
};

struct ControlSchedule {
    std::vector<ControlSegment> segments;

    double total_duration() const;
    ControlSchedule scaled_amplitudes(double factor) const;
};

struct CyclicityCheck {
    bool cyclic = false;
    double deviation = 0.0;   // ‖U_c(T_c) − phase·1‖_F at the best global phase
    Complex phase{1.0, 0.0};
};

// U_c(T_c) compared against the identity up to a global phase.
CyclicityCheck check_cyclic(const ControlSchedule& schedule, const GeneratorBasis& basis,
                            double tol = 1e-8);

// Control unitary at one instant, composed from exact segment exponentials.
Matrix control_unitary_at(const ControlSchedule& schedule, const GeneratorBasis& basis,
                          double t);

struct UnitarySeries {
    std::vector<double> times;
    std::vector<Matrix> unitaries;
};

// U_c on the segment-aligned grid (steps_per_segment >= 16).
UnitarySeries propagate_unitary(const ControlSchedule& schedule, const GeneratorBasis& basis,
                                int steps_per_segment);

struct Trajectory {
    std::string gamma;
    std::vector<double> times;
    std::vector<RVector> vectors;
};

Trajectory trajectory(const ErrorVector& vec, const ControlSchedule& schedule,
                      const GeneratorBasis& basis, int steps_per_segment = 256);

// RK4 on the transport matrix; lower accuracy, independent of the exact path.
Trajectory trajectory_rk4(const ErrorVector& vec, const ControlSchedule& schedule,
                          const GeneratorBasis& basis, int steps_per_segment = 256);

// Two identical envelopes whose concatenation rotates a vector sitting in a
// plane of speed `plane_speed` by `vector_angle` per half, peaking at `bound`.
// The repeated shape makes the second half retrace the first half's speed
// profile, which is the cancellation condition for the cycle average.
// max_duration <= 0 disables the duration constraint (per half).
std::pair<Envelope, Envelope> design_half_cycle_profile(double vector_angle, double bound,
                                                        EnvelopeKind kind, double plane_speed,
                                                        double max_duration = 0.0);

}  // namespace cdd
