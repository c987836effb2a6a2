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
#ifndef QKIT_QKIT_H
#define QKIT_QKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(QKIT_BUILDING_LIBRARY)
#define QKIT_API __attribute__((visibility("default")))
#else
#define QKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qkit_instance qkit_instance;
typedef struct qkit_report qkit_report;

/* Exit codes of the command-line tool are 0, 1, and 2 for anything else. */
typedef enum qkit_status {
  QKIT_OK = 0,
  QKIT_LAW_FAILURE = 1,
  QKIT_ERR_PARSE = 2,
  QKIT_ERR_INVALID_INSTANCE = 3,
  QKIT_ERR_OPENNESS = 4,
  QKIT_ERR_NOT_DISTRIBUTIVE = 5,
  QKIT_ERR_NOT_JOIN_PRESERVING = 6,
  QKIT_ERR_ORACLE_BOUND = 7,
  QKIT_ERR_NOT_ETALE = 8,
  QKIT_ERR_NOT_A_FRAME_HOM = 9,
  QKIT_ERR_NO_POINT_REALIZATION = 10,
  QKIT_ERR_BOUND = 11,
  QKIT_ERR_INTERNAL = 12,
  QKIT_ERR_ARGUMENT = 13
} qkit_status;

typedef enum qkit_show {
  QKIT_SHOW_TABLES = 0,
  QKIT_SHOW_PARTIAL_UNITS = 1,
  QKIT_SHOW_SUPPORT = 2
} qkit_show;

typedef enum qkit_row_status {
  QKIT_ROW_PASS = 0,
  QKIT_ROW_FAIL = 1,
  QKIT_ROW_INCONCLUSIVE = 2
} qkit_row_status;

/* Message of the last failing call on this thread; never NULL. */
QKIT_API const char* qkit_last_error(void);
QKIT_API const char* qkit_status_name(qkit_status status);
QKIT_API const char* qkit_version(void);

/* Strings returned through char** are owned by the caller. */
QKIT_API void qkit_string_free(char* s);

QKIT_API qkit_status qkit_instance_load(const char* path, int allow_invalid, qkit_instance** out);
QKIT_API qkit_status qkit_instance_parse(const char* text, int allow_invalid, qkit_instance** out);
/* A groupoid by name: z2, pair(3), discrete-group:Z3, identity-on-space:chain:2, ... */
QKIT_API qkit_status qkit_instance_named(const char* ref, qkit_instance** out);
QKIT_API void qkit_instance_free(qkit_instance* inst);
/* "groupoid", "glocale", "qlocale" or "hom". */
QKIT_API const char* qkit_instance_kind(const qkit_instance* inst);
QKIT_API qkit_status qkit_instance_save(const qkit_instance* inst, char** text);

/* Full checker stack for the instance kind; QKIT_LAW_FAILURE when a law fails. */
QKIT_API qkit_status qkit_check(const qkit_instance* inst, qkit_report** out);

/* The instance must be an etale groupoid. */
QKIT_API qkit_status qkit_quantale_show(const qkit_instance* inst, qkit_show what, char** text);
QKIT_API qkit_status qkit_quantale_verify(const qkit_instance* inst, qkit_report** out);

/* G-locale to Q-locale or back. */
QKIT_API qkit_status qkit_convert(const qkit_instance* inst, qkit_instance** out);
/* Converts there and back and compares canonical texts byte for byte. */
QKIT_API qkit_status qkit_roundtrip(const qkit_instance* inst, qkit_report** out);

typedef struct qkit_verify_bounds {
  size_t max_arrows;
  size_t discrete_arrows;
  size_t identity_points;
  size_t max_points;
  int named;
  const char* const* only; /* groupoid names or files; overrides the corpus */
  size_t only_count;
} qkit_verify_bounds;

QKIT_API void qkit_verify_bounds_default(qkit_verify_bounds* b);
/* Scope names: projection-factorization (alias lemma-2.1), functor-faithful,
 * lax, actions-coincide, alpha-star, mu-star, bijection, cat-iso,
 * support-laws, sections, sheaf-cat-iso, iqf, tensor-oracle, all. */
QKIT_API qkit_status qkit_verify(const char* scope, const qkit_verify_bounds* b, qkit_report** out);

typedef struct qkit_enumerate_options {
  const char* kind; /* groupoid, glocale or qlocale */
  size_t max_arrows;
  long objects; /* exact |G0|, or -1 */
  size_t max_points;
  long points; /* exact |X|, or -1 */
  int discrete;
  const char* over; /* groupoid for glocale and qlocale */
  int has_seed;
  uint64_t seed;
  size_t samples;
} qkit_enumerate_options;

QKIT_API void qkit_enumerate_options_default(qkit_enumerate_options* o);
/* One canonical instance per line. */
QKIT_API qkit_status qkit_enumerate(const qkit_enumerate_options* o, char** lines, size_t* count);

QKIT_API qkit_status qkit_report_render(const qkit_report* r, int json, int with_time, char** text);
QKIT_API int qkit_report_passed(const qkit_report* r);
QKIT_API size_t qkit_report_rows(const qkit_report* r);
QKIT_API size_t qkit_report_count(const qkit_report* r, qkit_row_status status);
/* Row accessors; pointers live as long as the report. */
QKIT_API const char* qkit_report_law(const qkit_report* r, size_t i);
QKIT_API const char* qkit_report_instance(const qkit_report* r, size_t i);
QKIT_API const char* qkit_report_anchor(const qkit_report* r, size_t i);
QKIT_API const char* qkit_report_witness(const qkit_report* r, size_t i);
QKIT_API qkit_row_status qkit_report_status(const qkit_report* r, size_t i);
QKIT_API size_t qkit_report_notes(const qkit_report* r);
QKIT_API const char* qkit_report_note(const qkit_report* r, size_t i);
QKIT_API double qkit_report_seconds(const qkit_report* r);
QKIT_API void qkit_report_free(qkit_report* r);

#ifdef __cplusplus
}
#endif

#endif /* QKIT_QKIT_H */
