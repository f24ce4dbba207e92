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

#include "lprec/c_api.h"

#include <chrono>
#include <cstring>
#include <map>
#include <memory>
#include <new>
#include <string>

#include "lprec/errors.hpp"
#include "lprec/io.hpp"
#include "lprec/results.hpp"

struct lpr_context {
  std::string last_error;
};

struct lpr_matrix {
  lprec::Matrix value;
};

struct lpr_report {
  std::string json;
  std::string csv;
  std::map<std::string, std::string> attachments;
  double wall_time = 0.0;
};

namespace {

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using lprec::Json;

lpr_status status_of_current_exception(std::string& message) {
  try {
    throw;
  } catch (const lprec::DomainError& e) {
    message = e.what();
    return LPR_ERR_DOMAIN;
  } catch (const lprec::QuadratureError& e) {
    message = e.what();
    return LPR_ERR_QUADRATURE;
  } catch (const lprec::RankError& e) {
    message = e.what();
    return LPR_ERR_RANK;
  } catch (const lprec::ConditioningError& e) {
    message = e.what();
    return LPR_ERR_CONDITIONING;
  } catch (const lprec::InfeasibleError& e) {
    message = e.what();
    return LPR_ERR_INFEASIBLE;
  } catch (const lprec::BudgetError& e) {
    message = e.what();
    return LPR_ERR_BUDGET;
  } catch (const lprec::NonConvergenceError& e) {
    message = e.what();
    return LPR_ERR_NONCONVERGENCE;
  } catch (const lprec::ParseError& e) {
    message = e.what();
    return LPR_ERR_PARSE;
  } catch (const lprec::IoError& e) {
    message = e.what();
    return LPR_ERR_IO;
  } catch (const nlohmann::json::exception& e) {
    message = std::string("JSON: ") + e.what();
    return LPR_ERR_PARSE;
  } catch (const NullArgument& e) {
    message = e.what();
    return LPR_ERR_NULL_ARGUMENT;
  } catch (const std::bad_alloc&) {
    message = "out of memory";
    return LPR_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    message = std::string("internal error: ") + e.what();
    return LPR_ERR_INTERNAL;
  } catch (...) {
    message = "internal error: unknown exception";
    return LPR_ERR_INTERNAL;
  }
}

// Runs body, translating exceptions into a status and the context message.
template <class F>
lpr_status guarded(lpr_context* ctx, F&& body) {
  if (!ctx) return LPR_ERR_NULL_ARGUMENT;
  ctx->last_error.clear();
  try {
    body();
    return LPR_OK;
  } catch (...) {
    return status_of_current_exception(ctx->last_error);
  }
}

void require_arg(const void* ptr, const char* name) {
  if (!ptr) throw NullArgument(std::string("argument '") + name + "' is null");
}

lpr_report* make_report(const Json& j, std::string csv) {
  auto* r = new lpr_report;
  r->json = j.dump(2) + "\n";
  r->csv = std::move(csv);
  return r;
}

Json parse_spec(const char* text) {
  if (!text || !*text) return Json::object();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw lprec::ParseError(std::string("spec JSON: ") + e.what());
  }
}

}  // namespace

extern "C" {

const char* lpr_version(void) { return "0.1.0"; }

const char* lpr_status_name(lpr_status status) {
  switch (status) {
    case LPR_OK: return "ok";
    case LPR_ERR_DOMAIN: return "domain_error";
    case LPR_ERR_QUADRATURE: return "quadrature_error";
    case LPR_ERR_RANK: return "rank_error";
    case LPR_ERR_CONDITIONING: return "conditioning_error";
    case LPR_ERR_INFEASIBLE: return "infeasible";
    case LPR_ERR_BUDGET: return "budget_exceeded";
    case LPR_ERR_NONCONVERGENCE: return "non_convergence";
    case LPR_ERR_PARSE: return "parse_error";
    case LPR_ERR_IO: return "io_error";
    case LPR_ERR_NULL_ARGUMENT: return "null_argument";
    case LPR_ERR_OUT_OF_MEMORY: return "out_of_memory";
    case LPR_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

lpr_status lpr_context_create(lpr_context** out) {
  if (!out) return LPR_ERR_NULL_ARGUMENT;
  *out = new (std::nothrow) lpr_context;
  return *out ? LPR_OK : LPR_ERR_OUT_OF_MEMORY;
}

void lpr_context_destroy(lpr_context* ctx) { delete ctx; }

const char* lpr_last_error(const lpr_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "";
}

lpr_status lpr_matrix_create(lpr_context* ctx, int rows, int cols,
                             const double* row_major, lpr_matrix** out) {
  return guarded(ctx, [&] {
    require_arg(out, "out");
    require_arg(row_major, "row_major");
    if (rows < 1 || cols < 1) throw lprec::DomainError("matrix dimensions must be positive");
    auto m = std::make_unique<lpr_matrix>();
    m->value = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                              Eigen::RowMajor>>(row_major, rows, cols);
    *out = m.release();
  });
}

lpr_status lpr_matrix_read_csv(lpr_context* ctx, const char* path, lpr_matrix** out) {
  return guarded(ctx, [&] {
    require_arg(out, "out");
    require_arg(path, "path");
    auto m = std::make_unique<lpr_matrix>();
    m->value = lprec::read_matrix_csv(path);
    *out = m.release();
  });
}

lpr_status lpr_matrix_gaussian(lpr_context* ctx, int rows, int cols, uint64_t seed,
                               lpr_matrix** out) {
  return guarded(ctx, [&] {
    require_arg(out, "out");
    if (rows < 1 || cols < 1) throw lprec::DomainError("matrix dimensions must be positive");
    auto m = std::make_unique<lpr_matrix>();
    m->value = lprec::sample_gaussian_matrix(rows, cols, lprec::RngSeed{seed});
    *out = m.release();
  });
}

lpr_status lpr_matrix_null_space(lpr_context* ctx, const lpr_matrix* a, lpr_matrix** out) {
  return guarded(ctx, [&] {
    require_arg(a, "a");
    require_arg(out, "out");
    auto m = std::make_unique<lpr_matrix>();
    m->value = lprec::null_space_basis(a->value);
    *out = m.release();
  });
}

lpr_status lpr_matrix_transpose(lpr_context* ctx, lpr_matrix* m) {
  return guarded(ctx, [&] {
    require_arg(m, "m");
    m->value.transposeInPlace();
  });
}

int lpr_matrix_rows(const lpr_matrix* m) { return m ? static_cast<int>(m->value.rows()) : 0; }
int lpr_matrix_cols(const lpr_matrix* m) { return m ? static_cast<int>(m->value.cols()) : 0; }

lpr_status lpr_matrix_copy_data(lpr_context* ctx, const lpr_matrix* m, double* out,
                                size_t capacity) {
  return guarded(ctx, [&] {
    require_arg(m, "m");
    require_arg(out, "out");
    const auto rows = m->value.rows();
    const auto cols = m->value.cols();
    if (capacity < static_cast<size_t>(rows * cols))
      throw lprec::DomainError("output buffer is too small");
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) out[i * cols + j] = m->value(i, j);
  });
}

void lpr_matrix_destroy(lpr_matrix* m) { delete m; }

lpr_status lpr_threshold(lpr_context* ctx, const char* kind, double p, double alpha,
                         lpr_report** out) {
  return guarded(ctx, [&] {
    require_arg(kind, "kind");
    require_arg(out, "out");
    const auto start = std::chrono::steady_clock::now();
    const std::string k = kind;
    Json j;
    if (k == "strong-limit") {
      j = lprec::to_json(lprec::strong_limit_threshold(p));
    } else if (k == "weak-limit") {
      j = Json{{"p", p}, {"rho", lprec::weak_limit_threshold(p)}};
    } else if (k == "sectional-limit") {
      j = Json{{"p", p}, {"rho", lprec::sectional_limit_threshold(p)}};
    } else if (k == "strong-bound") {
      j = lprec::to_json(lprec::strong_bound(alpha, p, lprec::ExponentSearchConfig::defaults()));
    } else if (k == "weak-bound") {
      j = lprec::to_json(lprec::weak_bound(alpha, p, lprec::ExponentSearchConfig::defaults()));
    } else {
      throw lprec::DomainError(
          "unknown threshold kind '" + k +
          "' (expected strong-limit, weak-limit, sectional-limit, strong-bound or weak-bound)");
    }
    Json doc{{"threshold", k}};
    doc.update(j);
    auto* r = make_report(doc, lprec::scalar_fields_csv(doc));
    r->wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *out = r;
  });
}

lpr_status lpr_strong_limit_threshold(lpr_context* ctx, double p, double* rho_star) {
  return guarded(ctx, [&] {
    require_arg(rho_star, "rho_star");
    *rho_star = lprec::strong_limit_threshold(p).rho_star;
  });
}

lpr_status lpr_solve_json(lpr_context* ctx, const char* instance_json, const char* method,
                          lpr_report** out) {
  return guarded(ctx, [&] {
    require_arg(instance_json, "instance_json");
    require_arg(method, "method");
    require_arg(out, "out");
    const auto start = std::chrono::steady_clock::now();
    lprec::RecoveryInstance inst = lprec::instance_from_json(parse_spec(instance_json));
    const std::string m = method;
    lprec::SolverResult res;
    if (m == "l1") {
      res = lprec::solve_l1(inst);
    } else if (m == "lp") {
      res = lprec::solve_lp_irls(inst);
    } else if (m == "l0") {
      res = lprec::solve_l0_exhaustive(inst);
    } else {
      throw lprec::DomainError("unknown method '" + m + "' (expected l0, l1 or lp)");
    }
    Json doc = lprec::to_json(res);
    doc["p"] = inst.p;
    auto* r = make_report(doc, lprec::format_vector_csv(res.x_hat));
    r->wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *out = r;
  });
}

void lpr_certify_options_init(lpr_certify_options* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
  const lprec::SearchBudget budget;
  opts->mode = "strong";
  opts->p = 1.0;
  opts->sphere_samples = budget.sphere_samples;
  opts->refine_steps = budget.refine_steps;
  opts->step_shrink = budget.step_shrink;
  opts->seed = budget.seed.seed;
}

lpr_status lpr_certify(lpr_context* ctx, const lpr_matrix* b, const lpr_certify_options* opts,
                       lpr_report** out) {
  return guarded(ctx, [&] {
    require_arg(b, "b");
    require_arg(opts, "opts");
    require_arg(opts->mode, "opts->mode");
    require_arg(out, "out");
    if (opts->support_len < 0) throw lprec::DomainError("support_len must be >= 0");
    if (opts->support_len > 0) require_arg(opts->support, "opts->support");
    const auto start = std::chrono::steady_clock::now();
    lprec::ConditionQuery q;
    q.mode = lprec::parse_condition_mode(opts->mode);
    q.p = opts->p;
    q.rho_n = opts->rho_n;
    q.pattern.support.assign(opts->support, opts->support + opts->support_len);
    if (opts->signs)
      q.pattern.signs.assign(opts->signs, opts->signs + opts->support_len);
    else
      q.pattern.signs.assign(opts->support_len, 1);
    lprec::SearchBudget budget;
    budget.sphere_samples = opts->sphere_samples;
    budget.refine_steps = opts->refine_steps;
    budget.step_shrink = opts->step_shrink;
    budget.seed = lprec::RngSeed{opts->seed};
    const auto verdict = lprec::certify(b->value, q, budget);
    Json doc = lprec::to_json(verdict, q);
    doc["budget"] = Json{{"sphere_samples", budget.sphere_samples},
                         {"refine_steps", budget.refine_steps},
                         {"step_shrink", budget.step_shrink},
                         {"seed", budget.seed.seed}};
    auto* r = make_report(doc, lprec::scalar_fields_csv(doc));
    if (verdict.witness) r->attachments["witness"] = lprec::format_vector_csv(verdict.witness->z);
    r->wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *out = r;
  });
}

lpr_status lpr_experiment(lpr_context* ctx, const char* name, const char* spec_json,
                          lpr_report** out) {
  return guarded(ctx, [&] {
    require_arg(name, "name");
    require_arg(out, "out");
    const std::string n = name;
    const Json spec = parse_spec(spec_json);
    const auto start = std::chrono::steady_clock::now();
    lprec::ExperimentReport rep;
    if (n == "example1") {
      int k = 2;
      double p = 0.5;
      if (!spec.is_object()) throw lprec::ParseError("example1 spec: expected a JSON object");
      for (const auto& [key, val] : spec.items()) {
        if (key == "k" && val.is_number_integer()) {
          k = val.get<int>();
        } else if (key == "p" && val.is_number()) {
          p = val.get<double>();
        } else {
          throw lprec::ParseError("example1 spec: bad or unknown field '" + key + "'");
        }
      }
      rep = lprec::run_example1(k, p);
    } else if (n == "phase") {
      rep = lprec::run_phase_transition(lprec::phase_spec_from_json(spec));
    } else if (n == "strong-vs-weak") {
      rep = lprec::run_strong_vs_weak(lprec::strong_vs_weak_spec_from_json(spec));
    } else if (n == "weak-probe") {
      rep = lprec::run_weak_threshold_probe(lprec::weak_probe_spec_from_json(spec));
    } else if (n == "concentration") {
      rep = lprec::run_concentration_check(lprec::concentration_spec_from_json(spec));
    } else {
      throw lprec::DomainError(
          "unknown experiment '" + n +
          "' (expected example1, phase, strong-vs-weak, weak-probe or concentration)");
    }
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto* r = make_report(lprec::report_to_json(rep), lprec::report_to_csv(rep));
    r->wall_time = rep.wall_time_s;
    *out = r;
  });
}

const char* lpr_report_json(const lpr_report* r) { return r ? r->json.c_str() : nullptr; }
const char* lpr_report_csv(const lpr_report* r) { return r ? r->csv.c_str() : nullptr; }

const char* lpr_report_attachment(const lpr_report* r, const char* name) {
  if (!r || !name) return nullptr;
  auto it = r->attachments.find(name);
  return it == r->attachments.end() ? nullptr : it->second.c_str();
}

double lpr_report_wall_time(const lpr_report* r) { return r ? r->wall_time : 0.0; }

void lpr_report_destroy(lpr_report* r) { delete r; }

}  // extern "C"
