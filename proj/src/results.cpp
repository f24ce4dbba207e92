// Copyright 2026 The lprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lprec/results.hpp"

#include <sstream>

#include "lprec/errors.hpp"
#include "lprec/io.hpp"

namespace lprec {

namespace {

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector vector_field(const Json& j, const char* key) {
  const auto& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("instance: field '") + key + "' must be an array");
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) {
      std::ostringstream msg;
      msg << "instance: field '" << key << "' entry " << i << " is not a number";
      throw ParseError(msg.str());
    }
    v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  }
  return v;
}

}  // namespace

Json to_json(const LimitThreshold& t) {
  return Json{{"p", t.p},
              {"z_star", t.z_star},
              {"rho_star", t.rho_star},
              {"derivative", t.derivative},
              {"solver_iterations", t.solver_iters},
              {"residual", t.residual}};
}

Json to_json(const BoundResult& b) {
  Json j{{"kind", b.kind},
         {"alpha", b.alpha},
         {"p", b.p},
         {"rho_bound", b.rho_bound},
         {"lambda_max", b.lambda_max},
         {"lambda_min", b.lambda_min},
         {"winning_gamma", b.winning_gamma},
         {"winning_epsilon", b.winning_epsilon},
         {"exponent_margin", b.exponent_margin}};
  if (b.kind == "weak") {
    j["lambda_tilde_max"] = b.lambda_tilde_max;
    j["shifted_alpha"] = b.shifted_alpha;
    j["lambda_tilde_monotone"] = b.lambda_tilde_monotone;
    Json probes = Json::array();
    for (const auto& pr : b.probes)
      probes.push_back(Json{{"rho", pr.rho}, {"lhs", pr.lhs}, {"rhs", pr.rhs},
                            {"holds", pr.holds}});
    j["probes"] = std::move(probes);
  }
  j["config"] = Json{{"gamma_grid", b.gamma_grid},
                     {"epsilon_grid", b.epsilon_grid},
                     {"a_tol", b.a_tol},
                     {"t_tol", b.t_tol}};
  return j;
}

Json to_json(const SolverResult& r) {
  Json j{{"method", r.method},
         {"objective", r.objective},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"residual", r.residual}};
  if (r.recovered) j["recovered"] = *r.recovered;
  if (r.method == "l1") j["duality_gap"] = r.duality_gap;
  if (r.method == "lp-irls") {
    j["max_objective_increase"] = r.max_objective_increase;
    j["final_epsilon"] = r.final_epsilon;
  }
  if (!r.note.empty()) j["note"] = r.note;
  j["x_hat"] = vector_json(r.x_hat);
  return j;
}

Json to_json(const ConditionVerdict& v, const ConditionQuery& q) {
  Json j{{"mode", std::string(to_string(v.mode))},
         {"p", q.p},
         {"holds", v.holds},
         {"certificate_exact", v.certificate_exact},
         {"best_margin", v.best_margin},
         {"evaluations", v.evaluations}};
  if (q.mode == ConditionMode::kStrong) j["rho_n"] = q.rho_n;
  if (v.witness) {
    Json support = Json::array();
    for (int i : v.witness->support) support.push_back(i + 1);
    j["witness"] = Json{{"z", vector_json(v.witness->z)},
                        {"support", std::move(support)},
                        {"lhs", v.witness->lhs},
                        {"rhs", v.witness->rhs}};
  }
  return j;
}

std::string scalar_fields_csv(const Json& j) {
  std::ostringstream out;
  out << "field,value\n";
  for (const auto& [key, val] : j.items()) {
    if (val.is_number_float())
      out << key << ',' << format_double(val.get<double>()) << '\n';
    else if (val.is_primitive() && !val.is_null())
      out << key << ',' << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
  }
  return out.str();
}

RecoveryInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  for (const auto& [key, val] : j.items())
    if (key != "A" && key != "y" && key != "p" && key != "x_true")
      throw ParseError("instance: unknown field '" + key + "'");
  if (!j.contains("A")) throw ParseError("instance: missing field 'A'");
  if (!j.contains("y")) throw ParseError("instance: missing field 'y'");
  const auto& rows = j["A"];
  if (!rows.is_array() || rows.empty() || !rows[0].is_array())
    throw ParseError("instance: field 'A' must be a non-empty array of rows");
  const std::size_t cols = rows[0].size();
  RecoveryInstance inst;
  inst.A.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != cols) {
      std::ostringstream msg;
      msg << "instance: field 'A' row " << r << " has the wrong length";
      throw ParseError(msg.str());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!rows[r][c].is_number()) {
        std::ostringstream msg;
        msg << "instance: field 'A' entry (" << r << ", " << c << ") is not a number";
        throw ParseError(msg.str());
      }
      inst.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c].get<double>();
    }
  }
  inst.y = vector_field(j, "y");
  if (j.contains("p")) {
    if (!j["p"].is_number()) throw ParseError("instance: field 'p' must be a number");
    inst.p = j["p"].get<double>();
  }
  if (j.contains("x_true")) inst.x_true = vector_field(j, "x_true");
  return inst;
}

}  // namespace lprec
