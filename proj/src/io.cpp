#include "cdd/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace cdd::io {

std::string format_double(double value) {
    if (value == 0.0) value = 0.0;   // collapse signed zero
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

// ------------------------------- JSON parsing -------------------------------

Matrix matrix_from_json(const json& j, const std::string& who) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument(who + ": matrix must be a non-empty array of rows");
    }
    const auto rows = j.size();
    const auto cols = j.front().size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = j.at(r);
        if (!row.is_array() || row.size() != cols) {
            throw std::invalid_argument(who + ": ragged matrix rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& entry = row.at(c);
            if (entry.is_number()) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    entry.get<double>();
            } else if (entry.is_array() && entry.size() == 2) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
            } else {
                throw std::invalid_argument(who + ": matrix entries must be numbers or [re, im]");
            }
        }
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Envelope envelope_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double duration = j.at("duration").get<double>();
    const double bound = j.value("bound", 0.0);
    if (kind == "constant") {
        return Envelope::constant(j.at("amplitude").get<double>(), duration, bound);
    }
    if (kind == "raised_cosine") {
        const double peak = j.contains("peak") ? j.at("peak").get<double>()
                                               : j.at("amplitude").get<double>();
        return Envelope::raised_cosine(peak, duration, bound);
    }
    if (kind == "piecewise_constant") {
        return Envelope::piecewise_constant(j.at("amplitudes").get<std::vector<double>>(),
                                            duration, bound);
    }
    if (kind == "sampled") {
        return Envelope::sampled(j.at("samples").get<std::vector<double>>(), duration, bound);
    }
    throw std::invalid_argument("envelope_from_json: unknown kind '" + kind + "'");
}

json envelope_to_json(const Envelope& envelope) {
    json j;
    j["kind"] = to_string(envelope.kind());
    j["duration"] = envelope.duration();
    j["bound"] = envelope.bound();
    switch (envelope.kind()) {
        case EnvelopeKind::constant:
            j["amplitude"] = envelope.amplitude();
            break;
        case EnvelopeKind::raised_cosine:
            j["peak"] = envelope.amplitude();
            break;
        case EnvelopeKind::piecewise_constant:
            j["amplitudes"] = envelope.values();
            break;
        case EnvelopeKind::sampled:
            j["samples"] = envelope.values();
            break;
    }
    return j;
}

RVector direction_from_json(const json& j, int n_adjoint) {
    if (j.is_string()) {
        const std::string text = j.get<std::string>();
        if (text.size() < 2 || text.front() != 'e') {
            throw std::invalid_argument("direction_from_json: expected \"e<k>\", got '" + text +
                                        "'");
        }
        const int index = std::stoi(text.substr(1));
        if (index < 1 || index > n_adjoint) {
            throw std::invalid_argument("direction_from_json: index " + std::to_string(index) +
                                        " outside 1.." + std::to_string(n_adjoint));
        }
        RVector dir = RVector::Zero(n_adjoint);
        dir[index - 1] = 1.0;
        return dir;
    }
    const auto values = j.get<std::vector<double>>();
    if (static_cast<int>(values.size()) != n_adjoint) {
        throw std::invalid_argument("direction_from_json: length " +
                                    std::to_string(values.size()) + " != " +
                                    std::to_string(n_adjoint));
    }
    return Eigen::Map<const RVector>(values.data(), n_adjoint);
}

ControlSchedule schedule_from_json(const json& j, const GeneratorBasis& basis) {
    ControlSchedule schedule;
    for (const auto& seg : j.at("segments")) {
        schedule.segments.push_back({direction_from_json(seg.at("direction"), basis.N),
                                     envelope_from_json(seg.at("envelope"))});
    }
    return schedule;
}

json schedule_to_json(const ControlSchedule& schedule) {
    json segments = json::array();
    for (const auto& seg : schedule.segments) {
        json s;
        s["direction"] = std::vector<double>(seg.direction.data(),
                                             seg.direction.data() + seg.direction.size());
        s["envelope"] = envelope_to_json(seg.envelope);
        segments.push_back(std::move(s));
    }
    return json{{"segments", std::move(segments)}};
}

BathModel bath_from_json(const json& j) {
    BathModel bath;
    bath.d_B = j.at("d_B").get<int>();
    bath.H_B = matrix_from_json(j.at("H_B"), "bath H_B");
    for (const auto& [label, op] : j.at("operators").items()) {
        bath.operators[label] = matrix_from_json(op, "bath operator '" + label + "'");
    }
    return bath;
}

DecouplingGroup group_from_json(const json& j) {
    const auto elements = j.at("elements").get<std::vector<std::string>>();
    const int g = static_cast<int>(elements.size());

    Eigen::MatrixXi table(g, g);
    const auto& rows = j.at("table");
    if (static_cast<int>(rows.size()) != g) {
        throw std::invalid_argument("group_from_json: table must have one row per element");
    }
    for (int i = 0; i < g; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.size()) != g) {
            throw std::invalid_argument("group_from_json: ragged table row");
        }
        for (int k = 0; k < g; ++k) table(i, k) = row.at(static_cast<std::size_t>(k)).get<int>();
    }

    std::vector<Matrix> rep;
    for (const auto& label : elements) {
        rep.push_back(matrix_from_json(j.at("rep").at(label), "rep['" + label + "']"));
    }
    return DecouplingGroup(elements, rep, table);
}

// ------------------------------ JSON emission -------------------------------

ordered_json report_to_json(const AverageReport& report) {
    ordered_json j;
    j["tolerance"] = report.tolerance;
    j["cyclic"] = report.cyclic;
    j["note"] = report.note;
    j["decoupled"] = report.decoupled;
    ordered_json gammas = ordered_json::array();
    for (const auto& entry : report.per_gamma) {
        ordered_json g;
        g["gamma"] = entry.gamma;
        g["average"] = std::vector<double>(entry.average.data(),
                                           entry.average.data() + entry.average.size());
        g["norm"] = entry.residual;
        g["decoupled"] = entry.decoupled;
        gammas.push_back(std::move(g));
    }
    j["gammas"] = std::move(gammas);
    return j;
}

namespace {

ordered_json planes_to_json(const std::vector<PlaneTerm>& planes) {
    ordered_json out = ordered_json::array();
    for (const auto& p : planes) out.push_back({p.mu, p.nu, p.coef});
    return out;
}

}  // namespace

ordered_json reconciliation_to_json(const ReconciliationReport& report) {
    ordered_json j;
    j["basis"] = to_string(report.kind);
    j["all_membership_match"] = report.all_membership_match;
    ordered_json entries = ordered_json::array();
    for (const auto& entry : report.entries) {
        ordered_json e;
        e["generator_index"] = entry.generator_index;
        e["paper_planes"] = planes_to_json(entry.printed_planes);
        e["oracle_planes"] = planes_to_json(entry.oracle_planes);
        e["membership_match"] = entry.membership_match;
        if (!entry.alt_printed_planes.empty()) {
            e["alt_printed_planes"] = planes_to_json(entry.alt_printed_planes);
            ordered_json conflicts = ordered_json::array();
            for (const auto& [mu, nu] : entry.printed_sign_conflicts) {
                conflicts.push_back({mu, nu});
            }
            e["printed_sign_conflicts"] = std::move(conflicts);
        }
        if (!entry.notes.empty()) e["notes"] = entry.notes;
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

// ------------------------------- CSV writers --------------------------------

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t";
    const auto n = traj.vectors.front().size();
    for (Eigen::Index i = 1; i <= n; ++i) out += ",s" + std::to_string(i);
    out += ",gamma\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out += format_double(traj.times[k]);
        for (Eigen::Index i = 0; i < n; ++i) out += "," + format_double(traj.vectors[k][i]);
        out += "," + traj.gamma + "\n";
    }
    return out;
}

std::string coherence_csv(const CoherenceCurve& control, const CoherenceCurve& free_evolution) {
    if (control.cycles.size() != free_evolution.cycles.size()) {
        throw std::invalid_argument("coherence_csv: curves cover different windows");
    }
    std::string out = "cycle,t,coherence_control,coherence_free\n";
    for (std::size_t k = 0; k < control.cycles.size(); ++k) {
        out += std::to_string(control.cycles[k]) + "," + format_double(control.times[k]) + "," +
               format_double(control.values[k]) + "," + format_double(free_evolution.values[k]) +
               "\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<double>& epsilons,
                      const std::vector<std::string>& gammas,
                      const std::vector<std::vector<double>>& distances) {
    std::string out = "epsilon";
    if (gammas.size() == 1) {
        out += ",distance";
    } else {
        for (const auto& gamma : gammas) out += ",distance_" + gamma;
    }
    out += "\n";
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        out += format_double(epsilons[k]);
        for (double d : distances[k]) out += "," + format_double(d);
        out += "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream stream(p, std::ios::binary | std::ios::trunc);
    if (!stream) {
        throw std::runtime_error("write_file: cannot open '" + path + "'");
    }
    stream << contents;
    if (!stream.good()) {
        throw std::runtime_error("write_file: write failed for '" + path + "'");
    }
}

}  // namespace cdd::io
