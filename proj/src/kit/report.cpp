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
#include "qkit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace qkit {

namespace {

constexpr const char* kAnchors[] = {
    "definition:groupoid-axioms",
    "definition:etale-groupoid",
    "construction:groupoid-quantale",
    "characterization:inverse-quantal-frame",
    "definition:g-locale",
    "lemma:projection-factorization",
    "construction:induced-module",
    "lemma:faithful-functor",
    "lemma:lax-inequality",
    "lemma:actions-coincide",
    "definition:q-locale",
    "example:quantale-as-q-locale",
    "example:tensor-as-pullback",
    "lemma:alpha-star",
    "remark:multiplicativity",
    "lemma:strict-bijection",
    "theorem:g-loc-q-loc",
    "lemma:open-q-locale",
    "theorem:support-laws",
    "definition:local-sections",
    "definition:etale-q-locale",
    "definition:sheaf-homomorphism",
    "theorem:sheaves",
};

const std::map<std::string, std::string>& law_anchors() {
  static const std::map<std::string, std::string> m = {
      {"functor-faithful", "lemma:faithful-functor"},
      {"functor-preserves-homs", "lemma:faithful-functor"},
      {"lax-inequality", "lemma:lax-inequality"},
      {"fullness-inequality", "lemma:lax-inequality"},
      {"bijection-glocale-roundtrip", "lemma:strict-bijection"},
      {"bijection-qlocale-roundtrip", "lemma:strict-bijection"},
      {"actions-coincide", "lemma:actions-coincide"},
      {"modules-are-qlocales", "definition:q-locale"},
  };
  return m;
}

std::string tail(const std::string& law) {
  const auto pos = law.rfind(':');
  return pos == std::string::npos ? law : law.substr(pos + 1);
}

std::string status_word(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

}  // namespace

std::span<const char* const> known_anchors() { return kAnchors; }

bool is_known_anchor(const std::string& anchor) {
  return std::any_of(std::begin(kAnchors), std::end(kAnchors),
                     [&](const char* a) { return anchor == a; });
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

void Report::add(const std::string& instance, const std::string& anchor, const Verdict& v) {
  for (const auto& o : v.outcomes()) {
    ReportRow row;
    row.instance = instance;
    row.law = o.law;
    auto it = law_anchors().find(tail(o.law));
    row.anchor = it == law_anchors().end() ? anchor : it->second;
    row.status = !o.passed ? Status::Fail : o.inconclusive ? Status::Inconclusive : Status::Pass;
    row.witness = o.witness;
    rows_.push_back(std::move(row));
  }
}

void Report::add_row(ReportRow row) { rows_.push_back(std::move(row)); }

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [&](const ReportRow& r) { return r.status == s; }));
}

std::string Report::text(bool with_time) const {
  std::ostringstream os;
  for (const auto& r : rows_) {
    os << status_word(r.status) << "  " << r.anchor << "  " << r.law << "  " << r.instance;
    if (!r.witness.empty()) os << "  -- " << r.witness;
    os << "\n";
  }
  for (const auto& n : notes_) os << "note: " << n << "\n";
  os << "summary: " << rows_.size() << " laws, " << count(Status::Pass) << " passed, "
     << count(Status::Fail) << " failed, " << count(Status::Inconclusive) << " inconclusive\n";
  if (with_time) os << "wall-time: " << format_seconds(seconds_) << " s\n";
  return os.str();
}

std::string Report::json_lines(bool with_time) const {
  using nlohmann::json;
  std::ostringstream os;
  for (const auto& r : rows_)
    os << json{{"anchor", r.anchor},
               {"instance", r.instance},
               {"law", r.law},
               {"status", to_string(r.status)},
               {"witness", r.witness}}
              .dump()
       << "\n";
  for (const auto& n : notes_) os << json{{"note", n}}.dump() << "\n";
  os << json{{"summary",
              {{"laws", rows_.size()},
               {"passed", count(Status::Pass)},
               {"failed", count(Status::Fail)},
               {"inconclusive", count(Status::Inconclusive)}}}}
            .dump()
     << "\n";
  if (with_time) os << json{{"wall_time_s", format_seconds(seconds_)}}.dump() << "\n";
  return os.str();
}

}  // namespace qkit
