// io.hpp — deterministic artifact formatting (CSV/JSON) and JSON parsing of
// matrices, envelopes, schedules, groups, and bath models.
//
// All floating-point output goes through format_double (12 significant
// digits, C locale, no timestamps) so repeated runs produce byte-identical
// files. Complex matrices are serialized row-major as [re, im] pairs.

#pragma once

#include "cdd/bath_sim.hpp"
#include "cdd/decoupling_engine.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cdd::io {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double value);

// ------------------------------- JSON parsing -------------------------------

Matrix matrix_from_json(const json& j, const std::string& who);
json matrix_to_json(const Matrix& m);

Envelope envelope_from_json(const json& j);
json envelope_to_json(const Envelope& envelope);

// direction accepts "e<k>" (1-based) or an explicit array of length N
RVector direction_from_json(const json& j, int n_adjoint);

ControlSchedule schedule_from_json(const json& j, const GeneratorBasis& basis);
json schedule_to_json(const ControlSchedule& schedule);

BathModel bath_from_json(const json& j);

DecouplingGroup group_from_json(const json& j);

// ------------------------------ JSON emission -------------------------------

ordered_json report_to_json(const AverageReport& report);
ordered_json reconciliation_to_json(const ReconciliationReport& report);

// ------------------------------- CSV writers --------------------------------

// header: t,s1,...,sN,gamma — one row per grid point
std::string trajectory_csv(const Trajectory& traj);

// header: cycle,t,coherence_control,coherence_free
std::string coherence_csv(const CoherenceCurve& control, const CoherenceCurve& free_evolution);

// header: epsilon,distance_<gamma>... — one row per sweep point
std::string sweep_csv(const std::vector<double>& epsilons,
                      const std::vector<std::string>& gammas,
                      const std::vector<std::vector<double>>& distances);

void write_file(const std::string& path, const std::string& contents);

}  // namespace cdd::io
