#pragma once

#include "mvhp/decoupling.hpp"
#include "mvhp/meta_estimator.hpp"
#include "mvhp/panel.hpp"
#include "mvhp/simulation.hpp"

#include <json.hpp>

#include <string>

namespace mvhp {

using Json = nlohmann::ordered_json;

/// Serializes with fixed key order and every real printed with 17
/// significant digits (non-finite reals become null). Rows of matrices and
/// other arrays of scalars stay on one line.
std::string dump_json(const Json& j);

Json matrix_json(const Matrix& m);
Json vector_json(const Vector& v);

/// Parses an array of equal-length numeric arrays. Throws InvalidArgument.
Matrix parse_matrix(const nlohmann::json& j, const std::string& name);
Vector parse_vector(const nlohmann::json& j, const std::string& name);

struct Estimate {
  MetaResult meta;
  Decoupling decoupling;
  ReducedForm reduced;
  double target_min_snr = kMonthlySnr;
};

/// META estimate followed by the decoupling and the reduced form.
Estimate run_estimate(const TimeSeriesPanel& panel, const MetaOptions& options);

Json estimate_report(const TimeSeriesPanel& panel, const Estimate& est);

/// Decoupling stored in an estimation report (keys "P" and "delta").
Decoupling decoupling_from_report(const nlohmann::json& report);

/// Input of the factorize command: {"sigma_eps": [[...]], "sigma_xi": [[...]]}.
StructuralParams parse_covariances(const nlohmann::json& j);
Json factorize_report(const StructuralParams& p);

/// Simulation config: {"N", "sigma_eps", "sigma_xi", "seed", "noise"
/// ("gaussian" | "t"), "df", "init_mu", "init_beta"}; "d" optional.
SimConfig parse_sim_config(const nlohmann::json& j);

nlohmann::json parse_json_text(const std::string& text);

}  // namespace mvhp
