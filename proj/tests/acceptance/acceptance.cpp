// Copyright 2026 The quantale-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion, default corpus bounds.

#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qkit/qkit.h"

namespace {

struct Row {
  std::string instance, anchor, law, witness;
  qkit_row_status status;
};

struct Run {
  bool ok = false;  // the call itself succeeded (pass or law failure)
  std::string error;
  std::vector<Row> rows;
  std::vector<std::string> notes;
  double seconds = 0;

  std::size_t count(qkit_row_status s) const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.status == s;
    return n;
  }
  std::string first_failure() const {
    for (const auto& r : rows)
      if (r.status == QKIT_ROW_FAIL) return r.instance + " " + r.law + " (" + r.witness + ")";
    return {};
  }
  // Every row of `law` passed conclusively, and there is at least one.
  bool all_pass(const std::string& law, std::size_t* n = nullptr) const {
    std::size_t seen = 0;
    for (const auto& r : rows)
      if (r.law == law) {
        if (r.status != QKIT_ROW_PASS) return false;
        ++seen;
      }
    if (n) *n = seen;
    return seen > 0;
  }
};

Run verify(const char* scope) {
  qkit_verify_bounds b;
  qkit_verify_bounds_default(&b);
  Run run;
  qkit_report* raw = nullptr;
  const auto start = std::chrono::steady_clock::now();
  const qkit_status st = qkit_verify(scope, &b, &raw);
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::unique_ptr<qkit_report, void (*)(qkit_report*)> r(raw, qkit_report_free);
  if (st != QKIT_OK && st != QKIT_LAW_FAILURE) {
    run.error = std::string(qkit_status_name(st)) + ": " + qkit_last_error();
    return run;
  }
  run.ok = true;
  for (std::size_t i = 0; i < qkit_report_rows(r.get()); ++i)
    run.rows.push_back({qkit_report_instance(r.get(), i), qkit_report_anchor(r.get(), i),
                        qkit_report_law(r.get(), i), qkit_report_witness(r.get(), i),
                        qkit_report_status(r.get(), i)});
  for (std::size_t i = 0; i < qkit_report_notes(r.get()); ++i)
    run.notes.emplace_back(qkit_report_note(r.get(), i));
  return run;
}

Run merge(const Run& a, const Run& b) {
  Run out = a;
  out.ok = a.ok && b.ok;
  out.error = a.error.empty() ? b.error : a.error;
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  out.notes.insert(out.notes.end(), b.notes.begin(), b.notes.end());
  out.seconds += b.seconds;
  return out;
}

std::size_t groupoids(const Run& r) {
  std::set<std::string> ids;
  for (const auto& row : r.rows) ids.insert(row.instance);
  return ids.size();
}

int failed_criteria = 0;

void report(int n, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d  %s: %s\n", pass ? "PASS" : "FAIL", n, title.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failed_criteria;
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

// Checks run.ok, zero failed rows, the required laws, and the time limit.
void judge(int n, const std::string& title, const Run& run, const std::vector<std::string>& laws,
           double limit, std::string extra = {}, bool extra_ok = true) {
  std::ostringstream d;
  bool pass = run.ok && extra_ok;
  if (!run.ok) {
    d << "refused: " << run.error;
    report(n, title, false, d.str());
    return;
  }
  const std::size_t failed = run.count(QKIT_ROW_FAIL);
  pass = pass && failed == 0;
  std::string missing;
  for (const auto& law : laws)
    if (!run.all_pass(law) && missing.empty()) missing = law;
  pass = pass && missing.empty();
  pass = pass && run.seconds < limit;
  d << run.rows.size() << " laws over " << groupoids(run) << " groupoids, " << failed
    << " failed, " << run.count(QKIT_ROW_INCONCLUSIVE) << " inconclusive";
  if (!missing.empty()) d << "; " << missing << " did not pass everywhere";
  if (failed) d << "; first failure " << run.first_failure();
  if (!extra.empty()) d << "; " << extra;
  d << " (" << fmt(run.seconds) << ", limit " << fmt(limit) << ")";
  report(n, title, pass, d.str());
}

// |I(Q)| for pair(n): partial bijections of an n-set, sum_k C(n,k)^2 k!.
std::size_t partial_bijections(std::size_t n) {
  std::size_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    std::size_t c = 1, f = 1;
    for (std::size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    total += c * c * f;
  }
  return total;
}

// |Gamma_Q| for pair(n): opens of arrows meeting each d-fibre at most once.
std::size_t pair_sections(std::size_t n) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= n + 1;
  return total;
}

bool note_counts(const Run& r, const std::string& id, std::size_t units, std::size_t sections,
                 std::string& seen) {
  const std::regex re("^" + std::regex_replace(id, std::regex(R"([()])"), R"(\$&)") +
                      R"(: \|I\(Q\)\| = (\d+), \|Gamma_Q\| = (\d+)$)");
  for (const auto& n : r.notes) {
    std::smatch m;
    if (std::regex_match(n, m, re)) {
      seen += (seen.empty() ? "" : ", ") + n;
      return std::stoul(m[1]) == units && std::stoul(m[2]) == sections;
    }
  }
  seen += (seen.empty() ? "" : ", ") + id + " missing";
  return false;
}

std::size_t sum_notes(const Run& r, const std::string& pattern) {
  const std::regex re(pattern);
  std::size_t total = 0;
  for (const auto& n : r.notes) {
    std::smatch m;
    if (std::regex_search(n, m, re)) total += std::stoul(m[1]);
  }
  return total;
}

}  // namespace

int main() {
  std::printf("quantale-kit %s acceptance, default corpus bounds\n", qkit_version());

  {
    const Run r = verify("iqf");
    judge(1, "inverse quantal frame suite", r,
          {"frame-distributive", "associativity", "unit", "involution-reverses-products",
           "partial-units-join-dense", "support-absorbs"},
          60.0);
  }
  {
    const Run r = merge(verify("alpha-star"), verify("mu-star"));
    judge(2, "adjoint formula suite", r,
          {"alpha-star-equals-adjoint", "alpha-star-join-preserving", "alpha-star-meet-preserving",
           "mu-star-equals-adjoint", "mu-star-join-preserving", "mu-star-meet-preserving",
           "mu-star-galois-generators"},
          60.0);
  }
  {
    const Run r = verify("bijection");
    const std::size_t g = sum_notes(r, R"(: (\d+) G-locales, \d+ Q-locales)");
    const std::size_t q = sum_notes(r, R"(: \d+ G-locales, (\d+) Q-locales)");
    judge(3, "strict bijection suite", r,
          {"bijection-glocale-roundtrip", "bijection-qlocale-roundtrip",
           "bijection-enumerated-qlocale", "qlocale-count-matches"},
          600.0, std::to_string(g) + " G-locales, " + std::to_string(q) + " Q-locales",
          g == q && g > 0);
  }
  {
    const Run r = merge(verify("cat-iso"), verify("lax"));
    const std::size_t maps = sum_notes(r, R"(: (\d+) module-hom-inducing maps)");
    judge(4, "category isomorphism suite", r,
          {"functor-faithful", "functor-full", "functor-preserves-homs", "lax-inequality"}, 600.0,
          std::to_string(maps) + " module-hom-inducing maps", maps > 0);
  }
  {
    const Run r = verify("support-laws");
    const std::size_t open = sum_notes(r, R"(: (\d+) of \d+ modules are open)");
    judge(5, "support law suite", r,
          {"support-of-action", "support-decreasing", "support-conjugation", "support-absorbs",
           "support-below-aastar"},
          600.0, std::to_string(open) + " open modules", open > 0);
  }
  {
    const Run r = merge(verify("sections"), verify("sheaf-cat-iso"));
    std::string seen;
    bool counts = note_counts(r, "pair(2)", partial_bijections(2), pair_sections(2), seen);
    counts = note_counts(r, "Z2", 3, 3, seen) && counts;
    counts = note_counts(r, "pair3", partial_bijections(3), pair_sections(3), seen) && counts;
    judge(6, "sheaf suite", r,
          {"etale-criteria-agree", "partial-units-are-sections", "objects-etale"}, 600.0, seen,
          counts);
  }
  {
    const Run r = verify("tensor-oracle");
    const std::size_t checked = sum_notes(r, R"(: (\d+) tensor products checked)");
    judge(7, "tensor oracle cross-check", r,
          {"tensor-isomorphic-to-pairs", "tensor-factor-isomorphism",
           "tensor-intertwines-bimorphism"},
          600.0, std::to_string(checked) + " tensor products checked", checked > 0);
  }

  std::printf("%s: %d of 7 criteria failed\n", failed_criteria ? "FAIL" : "PASS", failed_criteria);
  return failed_criteria ? 1 : 0;
}
