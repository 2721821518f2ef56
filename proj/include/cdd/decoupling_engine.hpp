// decoupling_engine.hpp — cycle-averaged error vectors and the decoupling
// verdict, plus the group-theoretic reference constructions: bang-bang
// symmetrization, Cayley graphs, and Eulerian-cycle schedules.
//
// The verdict is geometric: a schedule decouples a set of error vectors when
// every cycle-averaged transported vector vanishes. Group machinery is never
// required of a schedule — it is one systematic way to produce decoupling
// sequences, kept here so the continuous averages can be validated against
// the exact group averages.

#pragma once

#include "cdd/control_schedule.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cdd {

// ------------------------------ cycle averages ------------------------------

// Trapezoid time-average of a trajectory over its full grid.
RVector average_error_vector(const Trajectory& traj);

struct GammaAverage {
    std::string gamma;
    RVector average;          // raw cycle-averaged vector
    double residual = 0.0;    // |average| / |s(0)| (0 for a zero initial vector)
    bool decoupled = false;
};

struct AverageReport {
    std::vector<GammaAverage> per_gamma;
    double tolerance = 0.0;   // relative to each |s(0)|
    bool decoupled = false;   // all residuals within tolerance
    bool cyclic = false;
    std::string note;         // e.g. "non-cyclic" annotation
};

AverageReport check_decoupling(const std::vector<ErrorVector>& vectors,
                               const ControlSchedule& schedule, const GeneratorBasis& basis,
                               double tolerance = 1e-6, int steps_per_segment = 256);

// Euclidean distance between the averaged vectors of two reports, per label.
std::map<std::string, double> robustness_distance(const AverageReport& ideal,
                                                  const AverageReport& actual);

// ------------------------------ group machinery -----------------------------

class DecouplingGroup {
public:
    // table(i, j) = index of elements[i] * elements[j]; rep may be projective
    // (products match up to a unimodular phase).
    DecouplingGroup(std::vector<std::string> elements, std::vector<Matrix> rep,
                    Eigen::MatrixXi table, double tol = 1e-10);

    int size() const { return static_cast<int>(elements_.size()); }
    int dimension() const { return static_cast<int>(rep_.front().rows()); }
    const std::vector<std::string>& elements() const { return elements_; }
    const Matrix& rep(int i) const { return rep_[static_cast<std::size_t>(i)]; }
    const Matrix& rep(const std::string& label) const { return rep_[index_of(label)]; }
    int product(int i, int j) const { return table_(i, j); }
    int identity_index() const { return identity_; }
    std::size_t index_of(const std::string& label) const;

private:
    std::vector<std::string> elements_;
    std::vector<Matrix> rep_;
    Eigen::MatrixXi table_;
    int identity_ = -1;
};

// Group average (1/|G|) Σ_g μ(g)† S μ(g); idempotent and linear.
Matrix symmetrize(const DecouplingGroup& group, const Matrix& s);

struct CayleyEdge {
    int from = 0;
    int to = 0;
    int color = 0;   // index into generating_set
};

struct CayleyGraph {
    std::vector<std::string> vertices;          // group element labels
    std::vector<std::string> generating_set;
    std::vector<CayleyEdge> edges;              // |G|·|F| colored edges, to = f·from
};

// Left-multiplication Cayley graph; rejects non-generating sets naming an
// unreached element.
CayleyGraph build_cayley_graph(const DecouplingGroup& group,
                               const std::vector<std::string>& generating_set);

// Hierholzer construction; deterministic via generating-set order then vertex
// order. Returns the edge-color sequence of length |G|·|F|.
std::vector<std::string> eulerian_cycle(const CayleyGraph& graph, const std::string& start);

// Walks the color sequence from `start`; reports why a sequence is not an
// Eulerian cycle (edge reused, edge skipped, not closed).
struct CycleValidation {
    bool valid = false;
    std::string reason;
};
CycleValidation validate_eulerian_cycle(const CayleyGraph& graph, const std::string& start,
                                        const std::vector<std::string>& colors);

struct EulerianSchedule {
    std::vector<std::string> cycle;   // edge colors, length L = |G|·|F|
    std::map<std::string, std::vector<ControlSegment>> pulse_designs;
    ControlSchedule schedule;         // flattened, duration L·Δt
    std::vector<Matrix> boundary_targets;  // group element reached after each pulse
};

// Flattens per-color pulse designs along a cycle. Every design must realize
// its generator's representation up to phase (tol 1e-8) in the same Δt.
EulerianSchedule eulerian_schedule(const DecouplingGroup& group,
                                   const std::vector<std::string>& cycle,
                                   const std::map<std::string, std::vector<ControlSegment>>& pulse_designs,
                                   const GeneratorBasis& basis);

}  // namespace cdd
