#include "cdd/decoupling_engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cdd {

// ------------------------------ cycle averages ------------------------------

RVector average_error_vector(const Trajectory& traj) {
    if (traj.times.size() < 2) {
        throw std::invalid_argument("average_error_vector: trajectory needs at least two points");
    }
    RVector integral = RVector::Zero(traj.vectors.front().size());
    for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
        const double dt = traj.times[k + 1] - traj.times[k];
        integral += 0.5 * dt * (traj.vectors[k] + traj.vectors[k + 1]);
    }
    const double total = traj.times.back() - traj.times.front();
    return integral / total;
}

AverageReport check_decoupling(const std::vector<ErrorVector>& vectors,
                               const ControlSchedule& schedule, const GeneratorBasis& basis,
                               double tolerance, int steps_per_segment) {
    AverageReport report;
    report.tolerance = tolerance;

    const CyclicityCheck cyc = check_cyclic(schedule, basis);
    report.cyclic = cyc.cyclic;
    if (!cyc.cyclic) {
        report.note = "non-cyclic";   // leading-order average analysis presumes cyclicity
    }

    report.decoupled = true;
    for (const auto& vec : vectors) {
        GammaAverage entry;
        entry.gamma = vec.gamma;
        entry.average = average_error_vector(trajectory(vec, schedule, basis, steps_per_segment));
        const double initial = vec.s.norm();
        entry.residual = initial > 0.0 ? entry.average.norm() / initial : 0.0;
        entry.decoupled = entry.residual <= tolerance;
        if (!entry.decoupled) report.decoupled = false;
        report.per_gamma.push_back(std::move(entry));
    }
    return report;
}

std::map<std::string, double> robustness_distance(const AverageReport& ideal,
                                                  const AverageReport& actual) {
    if (ideal.per_gamma.size() != actual.per_gamma.size()) {
        throw std::invalid_argument("robustness_distance: reports cover different channels");
    }
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < ideal.per_gamma.size(); ++i) {
        const auto& a = ideal.per_gamma[i];
        const auto& b = actual.per_gamma[i];
        if (a.gamma != b.gamma) {
            throw std::invalid_argument("robustness_distance: label mismatch '" + a.gamma +
                                        "' vs '" + b.gamma + "'");
        }
        out[a.gamma] = (a.average - b.average).norm();
    }
    return out;
}

// ------------------------------ group machinery -----------------------------

DecouplingGroup::DecouplingGroup(std::vector<std::string> elements, std::vector<Matrix> rep,
                                 Eigen::MatrixXi table, double tol)
    : elements_(std::move(elements)), rep_(std::move(rep)), table_(std::move(table)) {
    const int g = static_cast<int>(elements_.size());
    if (g == 0 || rep_.size() != elements_.size() || table_.rows() != g || table_.cols() != g) {
        throw std::invalid_argument("DecouplingGroup: inconsistent element/rep/table sizes");
    }
    const auto dim = rep_.front().rows();
    for (const auto& mu : rep_) {
        if (mu.rows() != dim || mu.cols() != dim) {
            throw std::invalid_argument("DecouplingGroup: representation dimensions disagree");
        }
        if (unitarity_deviation(mu) > tol) {
            throw std::invalid_argument("DecouplingGroup: representation matrix not unitary");
        }
    }

    // closure + identity + inverses straight from the table
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            if (table_(i, j) < 0 || table_(i, j) >= g) {
                throw std::invalid_argument("DecouplingGroup: table entry out of range");
            }
        }
    }
    for (int i = 0; i < g && identity_ < 0; ++i) {
        bool is_identity = true;
        for (int j = 0; j < g; ++j) {
            if (table_(i, j) != j || table_(j, i) != j) is_identity = false;
        }
        if (is_identity) identity_ = i;
    }
    if (identity_ < 0) {
        throw std::invalid_argument("DecouplingGroup: table has no identity element");
    }
    for (int i = 0; i < g; ++i) {
        bool has_inverse = false;
        for (int j = 0; j < g; ++j) {
            if (table_(i, j) == identity_) has_inverse = true;
        }
        if (!has_inverse) {
            throw std::invalid_argument("DecouplingGroup: element '" + elements_[i] +
                                        "' has no inverse in the table");
        }
    }

    // projective homomorphism: μ(g)μ(h) = phase · μ(gh), |phase| = 1
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const Matrix product = rep_[i] * rep_[j];
            const Matrix& target = rep_[static_cast<std::size_t>(table_(i, j))];
            const Complex overlap = (target.adjoint() * product).trace() /
                                    static_cast<double>(dim);
            if (std::abs(std::abs(overlap) - 1.0) > tol ||
                (product - overlap * target).norm() > tol) {
                throw std::invalid_argument("DecouplingGroup: representation is not projective on (" +
                                            elements_[i] + ", " + elements_[j] + ")");
            }
        }
    }
}

std::size_t DecouplingGroup::index_of(const std::string& label) const {
    const auto it = std::find(elements_.begin(), elements_.end(), label);
    if (it == elements_.end()) {
        throw std::invalid_argument("DecouplingGroup: unknown element '" + label + "'");
    }
    return static_cast<std::size_t>(it - elements_.begin());
}

Matrix symmetrize(const DecouplingGroup& group, const Matrix& s) {
    if (s.rows() != group.dimension() || s.cols() != group.dimension()) {
        throw std::invalid_argument("symmetrize: operator dimension does not match representation");
    }
    Matrix avg = Matrix::Zero(s.rows(), s.cols());
    for (int i = 0; i < group.size(); ++i) {
        avg += group.rep(i).adjoint() * s * group.rep(i);
    }
    return avg / static_cast<double>(group.size());
}

CayleyGraph build_cayley_graph(const DecouplingGroup& group,
                               const std::vector<std::string>& generating_set) {
    if (generating_set.empty()) {
        throw std::invalid_argument("build_cayley_graph: empty generating set");
    }
    std::vector<int> gen_indices;
    for (const auto& label : generating_set) {
        gen_indices.push_back(static_cast<int>(group.index_of(label)));
    }

    // closure of the generating set from the identity, by left multiplication
    std::set<int> reached = {group.identity_index()};
    bool grew = true;
    while (grew) {
        grew = false;
        for (int v : std::vector<int>(reached.begin(), reached.end())) {
            for (int f : gen_indices) {
                if (reached.insert(group.product(f, v)).second) grew = true;
            }
        }
    }
    if (static_cast<int>(reached.size()) != group.size()) {
        for (int i = 0; i < group.size(); ++i) {
            if (!reached.count(i)) {
                throw std::invalid_argument("build_cayley_graph: set does not generate the group; '" +
                                            group.elements()[i] + "' is unreached");
            }
        }
    }

    CayleyGraph graph;
    graph.vertices = group.elements();
    graph.generating_set = generating_set;
    for (std::size_t c = 0; c < gen_indices.size(); ++c) {
        for (int v = 0; v < group.size(); ++v) {
            graph.edges.push_back({v, group.product(gen_indices[c], v), static_cast<int>(c)});
        }
    }
    return graph;
}

namespace {

int vertex_index(const CayleyGraph& graph, const std::string& label) {
    const auto it = std::find(graph.vertices.begin(), graph.vertices.end(), label);
    if (it == graph.vertices.end()) {
        throw std::invalid_argument("eulerian_cycle: unknown start vertex '" + label + "'");
    }
    return static_cast<int>(it - graph.vertices.begin());
}

}  // namespace

std::vector<std::string> eulerian_cycle(const CayleyGraph& graph, const std::string& start) {
    const int n_vertices = static_cast<int>(graph.vertices.size());

    // adjacency: per vertex, outgoing edge ids ordered by color (generating-set
    // order), which fixes the deterministic tie-break
    std::vector<std::vector<std::size_t>> outgoing(static_cast<std::size_t>(n_vertices));
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        outgoing[static_cast<std::size_t>(graph.edges[e].from)].push_back(e);
    }
    for (auto& edges : outgoing) {
        std::sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
            return std::tie(graph.edges[a].color, graph.edges[a].to) <
                   std::tie(graph.edges[b].color, graph.edges[b].to);
        });
    }

    // Hierholzer with an explicit stack; every vertex has equal in/out degree
    // |F|, so a single pass closes the full cycle.
    std::vector<std::size_t> next_edge(static_cast<std::size_t>(n_vertices), 0);
    std::vector<std::size_t> path_edges;
    std::vector<int> stack = {vertex_index(graph, start)};
    std::vector<std::size_t> edge_stack;
    while (!stack.empty()) {
        const int v = stack.back();
        auto& cursor = next_edge[static_cast<std::size_t>(v)];
        if (cursor < outgoing[static_cast<std::size_t>(v)].size()) {
            const std::size_t e = outgoing[static_cast<std::size_t>(v)][cursor++];
            stack.push_back(graph.edges[e].to);
            edge_stack.push_back(e);
        } else {
            stack.pop_back();
            if (!edge_stack.empty() && !stack.empty()) {
                path_edges.push_back(edge_stack.back());
                edge_stack.pop_back();
            }
        }
    }
    std::reverse(path_edges.begin(), path_edges.end());

    std::vector<std::string> colors;
    for (std::size_t e : path_edges) {
        colors.push_back(graph.generating_set[static_cast<std::size_t>(graph.edges[e].color)]);
    }
    if (colors.size() != graph.edges.size()) {
        throw std::runtime_error("eulerian_cycle: construction did not use every edge");
    }
    return colors;
}

CycleValidation validate_eulerian_cycle(const CayleyGraph& graph, const std::string& start,
                                        const std::vector<std::string>& colors) {
    if (colors.size() != graph.edges.size()) {
        return {false, "cycle length " + std::to_string(colors.size()) + " != edge count " +
                           std::to_string(graph.edges.size())};
    }
    std::vector<bool> used(graph.edges.size(), false);
    int position = vertex_index(graph, start);
    for (const auto& color : colors) {
        const auto cit = std::find(graph.generating_set.begin(), graph.generating_set.end(), color);
        if (cit == graph.generating_set.end()) {
            return {false, "unknown color '" + color + "'"};
        }
        const int c = static_cast<int>(cit - graph.generating_set.begin());
        bool stepped = false;
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
            if (graph.edges[e].from == position && graph.edges[e].color == c) {
                if (used[e]) {
                    return {false, "edge (" + graph.vertices[static_cast<std::size_t>(position)] +
                                       ", " + color + ") used twice"};
                }
                used[e] = true;
                position = graph.edges[e].to;
                stepped = true;
                break;
            }
        }
        if (!stepped) {
            return {false, "no edge of color '" + color + "' leaves vertex '" +
                               graph.vertices[static_cast<std::size_t>(position)] + "'"};
        }
    }
    if (position != vertex_index(graph, start)) {
        return {false, "cycle does not return to '" + start + "'"};
    }
    if (!std::all_of(used.begin(), used.end(), [](bool u) { return u; })) {
        return {false, "cycle skips at least one edge"};
    }
    return {true, ""};
}

EulerianSchedule eulerian_schedule(const DecouplingGroup& group,
                                   const std::vector<std::string>& cycle,
                                   const std::map<std::string, std::vector<ControlSegment>>& pulse_designs,
                                   const GeneratorBasis& basis) {
    if (cycle.empty()) {
        throw std::invalid_argument("eulerian_schedule: empty cycle");
    }

    // all designs must exist, share one duration, and realize their generator
    double delta_t = -1.0;
    std::set<std::string> colors(cycle.begin(), cycle.end());
    for (const auto& color : colors) {
        const auto it = pulse_designs.find(color);
        if (it == pulse_designs.end()) {
            throw std::invalid_argument("eulerian_schedule: no pulse design for color '" + color +
                                        "'");
        }
        ControlSchedule pulse{it->second};
        const double tau = pulse.total_duration();
        if (delta_t < 0.0) {
            delta_t = tau;
        } else if (std::abs(tau - delta_t) > 1e-12) {
            throw std::invalid_argument("eulerian_schedule: pulse durations disagree across colors");
        }

        const Matrix realized = control_unitary_at(pulse, basis, tau);
        const Matrix& target = group.rep(color);
        const Complex overlap =
            (target.adjoint() * realized).trace() / static_cast<double>(basis.n);
        const double deviation = (realized - overlap * target).norm();
        if (std::abs(std::abs(overlap) - 1.0) > 1e-8 || deviation > 1e-8) {
            throw std::invalid_argument("eulerian_schedule: pulse for '" + color +
                                        "' realizes its target only to " +
                                        std::to_string(deviation));
        }
    }

    EulerianSchedule out;
    out.cycle = cycle;
    out.pulse_designs = pulse_designs;
    for (const auto& color : cycle) {
        const auto& segments = pulse_designs.at(color);
        out.schedule.segments.insert(out.schedule.segments.end(), segments.begin(),
                                     segments.end());
    }

    // walk the cycle to record the group element expected at each boundary
    int position = group.identity_index();
    for (const auto& color : cycle) {
        position = group.product(static_cast<int>(group.index_of(color)), position);
        out.boundary_targets.push_back(group.rep(position));
    }
    return out;
}

}  // namespace cdd
