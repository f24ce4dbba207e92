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

// JSON and CSV renderings of library results, and JSON input parsing for
// recovery instances. Used by the C API and the command-line tool.

#ifndef LPREC_RESULTS_HPP
#define LPREC_RESULTS_HPP

#include <string>

#include "lprec/conditions.hpp"
#include "lprec/experiments.hpp"
#include "lprec/finite.hpp"
#include "lprec/limit.hpp"
#include "lprec/solvers.hpp"

namespace lprec {

Json to_json(const LimitThreshold& t);
Json to_json(const BoundResult& b);
Json to_json(const SolverResult& r);
Json to_json(const ConditionVerdict& v, const ConditionQuery& q);

// Two-column field,value CSV of the scalar members of a JSON object.
std::string scalar_fields_csv(const Json& j);

// {"A": [[...], ...], "y": [...], "p": 0.5, "x_true": [...]}. "p" and
// "x_true" are optional. Errors are ParseError naming the field.
RecoveryInstance instance_from_json(const Json& j);

}  // namespace lprec

#endif  // LPREC_RESULTS_HPP
