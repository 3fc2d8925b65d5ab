#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "absmin/analysis.hpp"
#include "absmin/certificate.hpp"
#include "absmin/hurwitz.hpp"
#include "absmin/nsopt.hpp"
#include "absmin/placement.hpp"

namespace absmin::io {

using nlohmann::json;

/// Embedded in every document the tool writes.
inline constexpr const char* kSchema = "absmin/1";

/// Ascending [re, im] pairs.
json to_json(const Poly& p);
/// Accepts an array whose entries are numbers, decimal strings, or
/// [re, im] pairs of either.
Poly poly_from_json(const json& j);
/// Parses JSON text such as "[1, 1]".
Poly parse_poly(const std::string& text);

json to_json(const Plant& plant);
/// Object {num, den} or the string "benchmark".
Plant plant_from_json(const json& j);

/// {order, x, y}; x holds all m+1 coefficients ascending (monic last).
json to_json(const Controller& k);
/// x may omit the monic leading one (length m instead of m+1).
Controller controller_from_json(const json& j);

json to_json(const Eigen::MatrixXd& m);
json to_json(const Eigen::MatrixXcd& m);
json to_json(const Eigen::VectorXcd& v);

json to_json(const RootSet& rs);
json to_json(const HurwitzReport& report);
json to_json(const PlacementResult& result);
json to_json(const ClusterSearch& search);
json to_json(const OptResult& result);
json to_json(const CertificateReport& report);
json to_json(const FragilityReport& report);
/// Summary only (final value, settling time, sample count).
json summary_json(const StepResponse& response);
json summary_json(const PseudozeroGrid& grid);

void write_step_csv(std::ostream& out, const StepResponse& response);
void write_trace_csv(std::ostream& out, const OptResult& result);
void write_pseudozero_csv(std::ostream& out, const PseudozeroGrid& grid);
/// Plain (P2) PGM, black = member; top row is the largest imaginary part.
void write_membership_pgm(std::ostream& out, const PseudozeroGrid& grid);

/// Load {"plant": ..., "controller": ...} style configuration.
json load_json_file(const std::string& path);

}  // namespace absmin::io
