/*
 * Copyright 2026 The quantale-kit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "qkit/qkit.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qkit/error.hpp"
#include "qkit/verify.hpp"

struct qkit_instance {
  qkit::io::Instance inst;
};

struct qkit_report {
  qkit::Report report;
};

namespace {

thread_local std::string last_error;

qkit_status status_of(qkit::ErrorCode code) {
  using qkit::ErrorCode;
  switch (code) {
    case ErrorCode::Parse: return QKIT_ERR_PARSE;
    case ErrorCode::InvalidInstance: return QKIT_ERR_INVALID_INSTANCE;
    case ErrorCode::OpennessViolation: return QKIT_ERR_OPENNESS;
    case ErrorCode::NotDistributive: return QKIT_ERR_NOT_DISTRIBUTIVE;
    case ErrorCode::NotJoinPreserving: return QKIT_ERR_NOT_JOIN_PRESERVING;
    case ErrorCode::OracleBound: return QKIT_ERR_ORACLE_BOUND;
    case ErrorCode::NotEtale: return QKIT_ERR_NOT_ETALE;
    case ErrorCode::NotAFrameHom: return QKIT_ERR_NOT_A_FRAME_HOM;
    case ErrorCode::NoPointRealization: return QKIT_ERR_NO_POINT_REALIZATION;
    case ErrorCode::Bound: return QKIT_ERR_BOUND;
    case ErrorCode::Internal: return QKIT_ERR_INTERNAL;
  }
  return QKIT_ERR_INTERNAL;
}

template <class F>
qkit_status guard(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const qkit::Error& e) {
    last_error = std::string(qkit::to_string(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QKIT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QKIT_ERR_INTERNAL;
  }
}

qkit_status argument_error(const char* what) {
  last_error = what;
  return QKIT_ERR_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

qkit_status finish_report(qkit::Report r, qkit_report** out) {
  const bool ok = r.passed();
  *out = new qkit_report{std::move(r)};
  return ok ? QKIT_OK : QKIT_LAW_FAILURE;
}

std::string instance_id(const qkit::io::Instance& inst) {
  return inst.meta.name.empty() ? qkit::io::to_string(inst.kind) : inst.meta.name;
}

const qkit::FiniteGroupoid& etale_groupoid(const qkit::io::Instance& inst) {
  if (inst.kind != qkit::io::Kind::Groupoid)
    qkit::fail(qkit::ErrorCode::Parse, "expected a groupoid file");
  const qkit::Verdict v = qkit::is_etale(*inst.groupoid);
  if (!v.passed())
    qkit::fail(qkit::ErrorCode::NotEtale, "groupoid is not etale: " + v.first_failure()->law +
                                              " (" + v.first_failure()->witness + ")");
  return *inst.groupoid;
}

}  // namespace

extern "C" {

const char* qkit_last_error(void) { return last_error.c_str(); }

const char* qkit_status_name(qkit_status status) {
  switch (status) {
    case QKIT_OK: return "ok";
    case QKIT_LAW_FAILURE: return "law-failure";
    case QKIT_ERR_PARSE: return "parse";
    case QKIT_ERR_INVALID_INSTANCE: return "invalid-instance";
    case QKIT_ERR_OPENNESS: return "openness-violation";
    case QKIT_ERR_NOT_DISTRIBUTIVE: return "not-distributive";
    case QKIT_ERR_NOT_JOIN_PRESERVING: return "not-join-preserving";
    case QKIT_ERR_ORACLE_BOUND: return "oracle-bound";
    case QKIT_ERR_NOT_ETALE: return "not-etale";
    case QKIT_ERR_NOT_A_FRAME_HOM: return "not-a-frame-hom";
    case QKIT_ERR_NO_POINT_REALIZATION: return "no-point-realization";
    case QKIT_ERR_BOUND: return "bound";
    case QKIT_ERR_INTERNAL: return "internal";
    case QKIT_ERR_ARGUMENT: return "argument";
  }
  return "unknown";
}

const char* qkit_version(void) { return "1.0.0"; }

void qkit_string_free(char* s) { std::free(s); }

qkit_status qkit_instance_load(const char* path, int allow_invalid, qkit_instance** out) {
  if (!path || !out) return argument_error("path and out are required");
  return guard([&] {
    *out = new qkit_instance{qkit::io::load(path, allow_invalid != 0)};
    return QKIT_OK;
  });
}

qkit_status qkit_instance_parse(const char* text, int allow_invalid, qkit_instance** out) {
  if (!text || !out) return argument_error("text and out are required");
  return guard([&] {
    qkit::io::LoadOptions opts;
    opts.allow_invalid = allow_invalid != 0;
    *out = new qkit_instance{qkit::io::parse(text, opts)};
    return QKIT_OK;
  });
}

qkit_status qkit_instance_named(const char* ref, qkit_instance** out) {
  if (!ref || !out) return argument_error("ref and out are required");
  return guard([&] {
    *out = new qkit_instance{qkit::io::of_groupoid(qkit::kit::resolve_groupoid(ref), ref)};
    return QKIT_OK;
  });
}

void qkit_instance_free(qkit_instance* inst) { delete inst; }

const char* qkit_instance_kind(const qkit_instance* inst) {
  return inst ? qkit::io::to_string(inst->inst.kind) : "";
}

qkit_status qkit_instance_save(const qkit_instance* inst, char** text) {
  if (!inst || !text) return argument_error("instance and text are required");
  return guard([&] {
    *text = copy_string(qkit::io::save(inst->inst));
    return QKIT_OK;
  });
}

qkit_status qkit_check(const qkit_instance* inst, qkit_report** out) {
  if (!inst || !out) return argument_error("instance and out are required");
  return guard([&] {
    return finish_report(qkit::kit::check_instance(inst->inst, instance_id(inst->inst)), out);
  });
}

qkit_status qkit_quantale_show(const qkit_instance* inst, qkit_show what, char** text) {
  if (!inst || !text) return argument_error("instance and text are required");
  return guard([&] {
    etale_groupoid(inst->inst);
    const qkit::QuantalePtr q = qkit::io::quantale_of(inst->inst.groupoid);
    switch (what) {
      case QKIT_SHOW_TABLES: *text = copy_string(qkit::kit::quantale_tables(*q)); break;
      case QKIT_SHOW_PARTIAL_UNITS: *text = copy_string(qkit::kit::show_partial_units(*q)); break;
      case QKIT_SHOW_SUPPORT: *text = copy_string(qkit::kit::show_support(*q)); break;
      default: return argument_error("unknown dump");
    }
    return QKIT_OK;
  });
}

qkit_status qkit_quantale_verify(const qkit_instance* inst, qkit_report** out) {
  if (!inst || !out) return argument_error("instance and out are required");
  return guard([&] {
    etale_groupoid(inst->inst);
    const qkit::QuantalePtr q = qkit::io::quantale_of(inst->inst.groupoid);
    return finish_report(qkit::kit::verify_quantale(q, instance_id(inst->inst)), out);
  });
}

qkit_status qkit_convert(const qkit_instance* inst, qkit_instance** out) {
  if (!inst || !out) return argument_error("instance and out are required");
  return guard([&] {
    *out = new qkit_instance{qkit::kit::convert(inst->inst)};
    return QKIT_OK;
  });
}

qkit_status qkit_roundtrip(const qkit_instance* inst, qkit_report** out) {
  if (!inst || !out) return argument_error("instance and out are required");
  return guard([&] {
    return finish_report(qkit::kit::roundtrip(inst->inst, instance_id(inst->inst)), out);
  });
}

void qkit_verify_bounds_default(qkit_verify_bounds* b) {
  if (!b) return;
  const qkit::kit::VerifyBounds d;
  b->max_arrows = d.max_arrows;
  b->discrete_arrows = d.discrete_arrows;
  b->identity_points = d.identity_points;
  b->max_points = d.max_points;
  b->named = d.named ? 1 : 0;
  b->only = nullptr;
  b->only_count = 0;
}

qkit_status qkit_verify(const char* scope, const qkit_verify_bounds* b, qkit_report** out) {
  if (!scope || !out) return argument_error("scope and out are required");
  return guard([&] {
    auto s = qkit::kit::scope_from_string(scope);
    if (!s) return argument_error("unknown verify scope");
    qkit::kit::VerifyBounds bounds;
    if (b) {
      bounds.max_arrows = b->max_arrows;
      bounds.discrete_arrows = b->discrete_arrows;
      bounds.identity_points = b->identity_points;
      bounds.max_points = b->max_points;
      bounds.named = b->named != 0;
      for (std::size_t i = 0; i < b->only_count; ++i) bounds.only.emplace_back(b->only[i]);
    }
    return finish_report(qkit::kit::verify(*s, bounds), out);
  });
}

void qkit_enumerate_options_default(qkit_enumerate_options* o) {
  if (!o) return;
  o->kind = "groupoid";
  o->max_arrows = 3;
  o->objects = -1;
  o->max_points = 3;
  o->points = -1;
  o->discrete = 0;
  o->over = nullptr;
  o->has_seed = 0;
  o->seed = 0;
  o->samples = 16;
}

qkit_status qkit_enumerate(const qkit_enumerate_options* o, char** lines, size_t* count) {
  if (!o || !o->kind || !lines) return argument_error("options and lines are required");
  return guard([&] {
    auto kind = qkit::io::kind_from_string(o->kind);
    if (!kind || *kind == qkit::io::Kind::Hom)
      return argument_error("kind must be groupoid, glocale or qlocale");
    qkit::kit::EnumerateOptions opts;
    opts.kind = *kind;
    opts.groupoids.max_arrows = o->max_arrows;
    if (o->objects >= 0) opts.groupoids.objects = static_cast<std::size_t>(o->objects);
    opts.groupoids.discrete_only = o->discrete != 0;
    opts.modules.max_points = o->max_points;
    if (o->points >= 0) {
      opts.modules.points = static_cast<std::size_t>(o->points);
      opts.modules.max_points = std::max(o->max_points, static_cast<std::size_t>(o->points));
    }
    opts.modules.discrete_only = o->discrete != 0;
    if (o->over) opts.over = qkit::kit::resolve_groupoid(o->over);
    if (o->has_seed) opts.seed = o->seed;
    opts.samples = o->samples;
    std::string text;
    const auto all = qkit::kit::enumerate(opts);
    for (const auto& inst : all) text += qkit::io::save(inst, true);
    *lines = copy_string(text);
    if (count) *count = all.size();
    return QKIT_OK;
  });
}

qkit_status qkit_report_render(const qkit_report* r, int json, int with_time, char** text) {
  if (!r || !text) return argument_error("report and text are required");
  return guard([&] {
    *text = copy_string(json ? r->report.json_lines(with_time != 0)
                             : r->report.text(with_time != 0));
    return QKIT_OK;
  });
}

int qkit_report_passed(const qkit_report* r) { return r && r->report.passed() ? 1 : 0; }

size_t qkit_report_rows(const qkit_report* r) { return r ? r->report.rows().size() : 0; }

size_t qkit_report_count(const qkit_report* r, qkit_row_status status) {
  if (!r) return 0;
  switch (status) {
    case QKIT_ROW_PASS: return r->report.count(qkit::Status::Pass);
    case QKIT_ROW_FAIL: return r->report.count(qkit::Status::Fail);
    case QKIT_ROW_INCONCLUSIVE: return r->report.count(qkit::Status::Inconclusive);
  }
  return 0;
}

const char* qkit_report_law(const qkit_report* r, size_t i) {
  return r && i < r->report.rows().size() ? r->report.rows()[i].law.c_str() : nullptr;
}

const char* qkit_report_instance(const qkit_report* r, size_t i) {
  return r && i < r->report.rows().size() ? r->report.rows()[i].instance.c_str() : nullptr;
}

const char* qkit_report_anchor(const qkit_report* r, size_t i) {
  return r && i < r->report.rows().size() ? r->report.rows()[i].anchor.c_str() : nullptr;
}

const char* qkit_report_witness(const qkit_report* r, size_t i) {
  return r && i < r->report.rows().size() ? r->report.rows()[i].witness.c_str() : nullptr;
}

qkit_row_status qkit_report_status(const qkit_report* r, size_t i) {
  if (!r || i >= r->report.rows().size()) return QKIT_ROW_FAIL;
  switch (r->report.rows()[i].status) {
    case qkit::Status::Pass: return QKIT_ROW_PASS;
    case qkit::Status::Fail: return QKIT_ROW_FAIL;
    case qkit::Status::Inconclusive: return QKIT_ROW_INCONCLUSIVE;
  }
  return QKIT_ROW_FAIL;
}

size_t qkit_report_notes(const qkit_report* r) { return r ? r->report.notes().size() : 0; }

const char* qkit_report_note(const qkit_report* r, size_t i) {
  return r && i < r->report.notes().size() ? r->report.notes()[i].c_str() : nullptr;
}

double qkit_report_seconds(const qkit_report* r) { return r ? r->report.seconds() : 0.0; }

void qkit_report_free(qkit_report* r) { delete r; }

}  // extern "C"
