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
/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "qkit/qkit.h"

#ifndef QKIT_DATA_DIR
#error "QKIT_DATA_DIR must point at the fixture directory"
#endif

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static const char* fixture(const char* name) {
  static char path[1024];
  snprintf(path, sizeof path, "%s/%s", QKIT_DATA_DIR, name);
  return path;
}

static void test_load_and_check(void) {
  qkit_instance* g = NULL;
  qkit_report* r = NULL;
  char* text = NULL;
  qkit_instance* again = NULL;

  EXPECT(qkit_instance_load(fixture("z2.groupoid"), 0, &g) == QKIT_OK);
  EXPECT(strcmp(qkit_instance_kind(g), "groupoid") == 0);
  EXPECT(qkit_check(g, &r) == QKIT_OK);
  EXPECT(qkit_report_passed(r));
  EXPECT(qkit_report_rows(r) > 0);
  EXPECT(qkit_report_count(r, QKIT_ROW_FAIL) == 0);
  EXPECT(strcmp(qkit_report_anchor(r, 0), "definition:groupoid-axioms") == 0);
  EXPECT(qkit_report_law(r, qkit_report_rows(r)) == NULL);
  qkit_report_free(r);

  EXPECT(qkit_instance_save(g, &text) == QKIT_OK);
  EXPECT(qkit_instance_parse(text, 0, &again) == QKIT_OK);
  {
    char* text2 = NULL;
    EXPECT(qkit_instance_save(again, &text2) == QKIT_OK);
    EXPECT(strcmp(text, text2) == 0);
    qkit_string_free(text2);
  }
  qkit_string_free(text);
  qkit_instance_free(again);
  qkit_instance_free(g);
}

static void test_law_failure(void) {
  qkit_instance* g = NULL;
  qkit_report* r = NULL;
  size_t i, found = 0;

  EXPECT(qkit_instance_load(fixture("pair2-corrupted.groupoid"), 0, &g) ==
         QKIT_ERR_INVALID_INSTANCE);
  EXPECT(strstr(qkit_last_error(), "d-compatibility") != NULL);
  EXPECT(g == NULL);

  EXPECT(qkit_instance_load(fixture("pair2-corrupted.groupoid"), 1, &g) == QKIT_OK);
  EXPECT(qkit_check(g, &r) == QKIT_LAW_FAILURE);
  EXPECT(!qkit_report_passed(r));
  for (i = 0; i < qkit_report_rows(r); ++i)
    if (qkit_report_status(r, i) == QKIT_ROW_FAIL &&
        strcmp(qkit_report_law(r, i), "d-compatibility") == 0)
      found = 1;
  EXPECT(found);
  qkit_report_free(r);
  qkit_instance_free(g);
}

static void test_errors(void) {
  qkit_instance* g = NULL;
  EXPECT(qkit_instance_parse("{\n  \"kind\": ", 0, &g) == QKIT_ERR_PARSE);
  EXPECT(strstr(qkit_last_error(), "line") != NULL);
  EXPECT(qkit_instance_load(fixture("does-not-exist.groupoid"), 0, &g) == QKIT_ERR_PARSE);
  EXPECT(qkit_instance_load(NULL, 0, &g) == QKIT_ERR_ARGUMENT);
  EXPECT(qkit_instance_named("no-such-groupoid", &g) != QKIT_OK);
  EXPECT(qkit_verify("everything", NULL, NULL) == QKIT_ERR_ARGUMENT);

  EXPECT(qkit_instance_load(fixture("z2-indiscrete.groupoid"), 0, &g) == QKIT_OK);
  {
    char* text = NULL;
    EXPECT(qkit_quantale_show(g, QKIT_SHOW_TABLES, &text) == QKIT_ERR_NOT_ETALE);
    EXPECT(text == NULL);
  }
  qkit_instance_free(g);
  EXPECT(strcmp(qkit_status_name(QKIT_ERR_BOUND), "bound") == 0);
}

static void test_quantale(void) {
  qkit_instance* g = NULL;
  char* text = NULL;
  qkit_report* r = NULL;

  EXPECT(qkit_instance_named("pair(2)", &g) == QKIT_OK);
  EXPECT(qkit_quantale_show(g, QKIT_SHOW_PARTIAL_UNITS, &text) == QKIT_OK);
  EXPECT(strncmp(text, "partial units: 7\n", 17) == 0);
  qkit_string_free(text);
  EXPECT(qkit_quantale_verify(g, &r) == QKIT_OK);
  qkit_report_free(r);
  qkit_instance_free(g);

  EXPECT(qkit_instance_load(fixture("z2.groupoid"), 0, &g) == QKIT_OK);
  EXPECT(qkit_quantale_show(g, QKIT_SHOW_SUPPORT, &text) == QKIT_OK);
  EXPECT(strstr(text, "sp({g}) = {1}") != NULL);
  qkit_string_free(text);
  qkit_instance_free(g);
}

static void test_convert(void) {
  qkit_instance* a = NULL;
  qkit_instance* m = NULL;
  qkit_instance* back = NULL;
  qkit_report* r = NULL;
  char* t1 = NULL;
  char* t2 = NULL;

  EXPECT(qkit_instance_load(fixture("z2-swap.glocale"), 0, &a) == QKIT_OK);
  EXPECT(qkit_convert(a, &m) == QKIT_OK);
  EXPECT(strcmp(qkit_instance_kind(m), "qlocale") == 0);
  EXPECT(qkit_convert(m, &back) == QKIT_OK);
  EXPECT(qkit_instance_save(a, &t1) == QKIT_OK);
  EXPECT(qkit_instance_save(back, &t2) == QKIT_OK);
  EXPECT(strcmp(t1, t2) == 0);
  EXPECT(qkit_roundtrip(m, &r) == QKIT_OK);
  EXPECT(qkit_report_rows(r) == 1);
  EXPECT(strcmp(qkit_report_anchor(r, 0), "lemma:strict-bijection") == 0);
  qkit_report_free(r);
  qkit_string_free(t1);
  qkit_string_free(t2);
  qkit_instance_free(back);
  qkit_instance_free(m);
  qkit_instance_free(a);
}

static void test_verify_and_enumerate(void) {
  qkit_verify_bounds b;
  qkit_enumerate_options o;
  qkit_report* r = NULL;
  char* text = NULL;
  size_t n = 0;
  const char* only[] = {"z2"};

  qkit_verify_bounds_default(&b);
  EXPECT(b.max_arrows == 3 && b.max_points == 3 && b.named == 1);
  b.only = only;
  b.only_count = 1;
  EXPECT(qkit_verify("alpha-star", &b, &r) == QKIT_OK);
  EXPECT(qkit_report_count(r, QKIT_ROW_PASS) > 0);
  EXPECT(strcmp(qkit_report_instance(r, 0), "z2") == 0);
  EXPECT(qkit_report_seconds(r) >= 0.0);
  EXPECT(qkit_report_render(r, 1, 0, &text) == QKIT_OK);
  EXPECT(strstr(text, "\"summary\"") != NULL);
  qkit_string_free(text);
  qkit_report_free(r);

  EXPECT(qkit_verify("lemma-2.1", &b, &r) == QKIT_OK);
  EXPECT(qkit_report_notes(r) > 0);
  qkit_report_free(r);

  qkit_enumerate_options_default(&o);
  o.max_arrows = 2;
  o.objects = 1;
  o.discrete = 1;
  EXPECT(qkit_enumerate(&o, &text, &n) == QKIT_OK);
  EXPECT(n == 2);
  qkit_string_free(text);

  qkit_enumerate_options_default(&o);
  o.kind = "glocale";
  o.over = "z2";
  o.points = 2;
  o.discrete = 1;
  EXPECT(qkit_enumerate(&o, &text, &n) == QKIT_OK);
  EXPECT(n == 2);
  qkit_string_free(text);

  o.kind = "qlocale";
  o.over = "identity-on-space:discrete:1";
  o.points = -1;
  o.max_points = 2;
  o.discrete = 0;
  EXPECT(qkit_enumerate(&o, &text, &n) == QKIT_OK);
  EXPECT(n == 3);
  qkit_string_free(text);

  o.kind = "hom";
  EXPECT(qkit_enumerate(&o, &text, &n) == QKIT_ERR_ARGUMENT);
}

int main(void) {
  test_load_and_check();
  test_law_failure();
  test_errors();
  test_quantale();
  test_convert();
  test_verify_and_enumerate();
  if (failures) {
    fprintf(stderr, "%d C API expectation(s) failed\n", failures);
    return 1;
  }
  printf("C API: all expectations met\n");
  return 0;
}
