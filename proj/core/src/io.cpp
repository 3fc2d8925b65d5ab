#include "absmin/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "absmin/error.hpp"

namespace absmin::io {

namespace {

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw DomainError("not a decimal number: \"" + s + "\"");
    }
    if (used != s.size()) throw DomainError("not a decimal number: \"" + s + "\"");
    return v;
  }
  throw DomainError("expected a number, got " + j.dump());
}

std::vector<Complex> complex_array(const json& j) {
  if (!j.is_array()) throw DomainError("expected a coefficient array, got " + j.dump());
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const json& e : j) {
    if (e.is_array()) {
      if (e.size() != 2) throw DomainError("complex coefficient must be [re, im]");
      out.emplace_back(number_from_json(e[0]), number_from_json(e[1]));
    } else {
      out.emplace_back(number_from_json(e), 0.0);
    }
  }
  return out;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

}  // namespace

json to_json(const Poly& p) {
  json out = json::array();
  for (const Complex c : p.coeffs()) out.push_back(complex_json(c));
  return out;
}

Poly poly_from_json(const json& j) { return Poly(complex_array(j)); }

Poly parse_poly(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("invalid polynomial JSON: ") + e.what());
  }
  return poly_from_json(j);
}

json to_json(const Plant& plant) { return {{"num", to_json(plant.num())}, {"den", to_json(plant.den())}}; }

Plant plant_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "benchmark") return Plant::two_mass_spring();
    throw DomainError("unknown named plant \"" + j.get<std::string>() + "\"");
  }
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw DomainError("plant must be \"benchmark\" or an object with num and den");
  return Plant(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

json to_json(const Controller& k) {
  return {{"order", k.order()}, {"x", to_json(k.x())}, {"y", to_json(k.y())}};
}

Controller controller_from_json(const json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw DomainError("controller must be an object with x and y");
  std::vector<Complex> x = complex_array(j.at("x"));
  const std::vector<Complex> y = complex_array(j.at("y"));
  if (j.contains("order")) {
    const int m = j.at("order").get<int>();
    if (static_cast<int>(x.size()) == m) x.emplace_back(1.0);
    if (static_cast<int>(x.size()) != m + 1)
      throw DomainError("controller.x must have order or order+1 entries");
  }
  return Controller(Poly(std::move(x)), Poly(y));
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json to_json(const RootSet& rs) {
  json roots = json::array();
  for (const Complex r : rs.roots) roots.push_back(complex_json(r));
  json clusters = json::array();
  for (const RootCluster& c : rs.clusters)
    clusters.push_back({{"center", complex_json(c.center)}, {"multiplicity", c.multiplicity}, {"spread", c.spread}});
  return {{"roots", roots}, {"residual", rs.residual}, {"clusters", clusters}};
}

json to_json(const HurwitzReport& report) {
  return {{"matrix", to_json(report.matrix)}, {"minors", report.minors}, {"stable", report.stable}};
}

json to_json(const PlacementResult& result) {
  return {{"controller", to_json(result.controller)},
          {"achieved", to_json(result.achieved)},
          {"residual", result.residual}};
}

json to_json(const ClusterSearch& search) {
  json sols = json::array();
  for (const ClusterSolution& s : search.solutions) {
    sols.push_back({{"z", s.z},
                    {"kind", to_string(s.kind)},
                    {"consistency_residual", s.consistency_residual},
                    {"controller", to_json(s.controller)}});
  }
  json out = {{"solutions", sols}};
  if (!search.diagnostic.empty()) out["diagnostic"] = search.diagnostic;
  return out;
}

json to_json(const OptResult& result) {
  return {{"controller", to_json(result.controller)},
          {"objective", result.objective},
          {"status", to_string(result.status)},
          {"iterations", result.trace.empty() ? 0 : result.trace.back().iteration}};
}

json to_json(const CertificateReport& report) {
  return {{"verdict", to_string(report.verdict)},
          {"explanation", report.explanation},
          {"z_star", report.map.z_star},
          {"degree", report.map.degree},
          {"cq_passed", report.cq_passed},
          {"cq_kernel_dim", report.cq_kernel_dim},
          {"interiority_passed", report.interiority_passed},
          {"c_solution", to_json(report.c_solution)},
          {"strictness_margin", report.strictness_margin},
          {"tau_estimate", report.tau_estimate},
          {"A", to_json(report.map.matrix)},
          {"A_adjoint", to_json(report.adjoint)}};
}

json to_json(const FragilityReport& report) {
  json nominal = json::array();
  for (const Complex r : report.nominal_roots) nominal.push_back(complex_json(r));
  json rounded = json::array();
  for (const Complex r : report.rounded_roots) rounded.push_back(complex_json(r));
  return {{"digits", report.digits},
          {"nominal_controller", to_json(report.nominal)},
          {"rounded_controller", to_json(report.rounded)},
          {"nominal_roots", nominal},
          {"rounded_roots", rounded},
          {"max_displacement", report.max_displacement}};
}

json summary_json(const StepResponse& response) {
  return {{"final_value", response.final_value},
          {"settling_time", response.settling_time},
          {"settled", response.settled},
          {"samples", response.times.size()},
          {"horizon", response.times.empty() ? 0.0 : response.times.back()}};
}

json summary_json(const PseudozeroGrid& grid) {
  int members = 0;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) members += grid.member(ix, iy) ? 1 : 0;
  return {{"region", {grid.region.re_min, grid.region.re_max, grid.region.im_min, grid.region.im_max}},
          {"resolution", {grid.nx, grid.ny}},
          {"epsilon", grid.epsilon},
          {"member_count", members},
          {"min_distance", grid.distances.minCoeff()},
          {"max_distance", grid.distances.maxCoeff()}};
}

void write_step_csv(std::ostream& out, const StepResponse& response) {
  out << "time,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < response.times.size(); ++i)
    out << response.times[i] << ',' << response.values[i] << '\n';
}

void write_trace_csv(std::ostream& out, const OptResult& result) {
  out << "iteration,objective,radius\n" << std::setprecision(17);
  for (const TraceEntry& e : result.trace) out << e.iteration << ',' << e.objective << ',' << e.radius << '\n';
}

void write_pseudozero_csv(std::ostream& out, const PseudozeroGrid& grid) {
  out << "re,im,distance\n" << std::setprecision(17);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Complex z = grid.point(ix, iy);
      out << z.real() << ',' << z.imag() << ',' << grid.distances(iy, ix) << '\n';
    }
  }
}

void write_membership_pgm(std::ostream& out, const PseudozeroGrid& grid) {
  out << "P2\n" << grid.nx << ' ' << grid.ny << "\n255\n";
  for (int iy = grid.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.nx; ++ix) out << (grid.member(ix, iy) ? 0 : 255) << (ix + 1 < grid.nx ? ' ' : '\n');
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace absmin::io
