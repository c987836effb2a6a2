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
#pragma once

#include <span>
#include <string>
#include <vector>

#include "qkit/verdict.hpp"

namespace qkit {

enum class Status { Pass, Fail, Inconclusive };

struct ReportRow {
  std::string instance;
  std::string law;
  std::string anchor;
  Status status = Status::Pass;
  std::string witness;
};

/// The anchors a report row may carry, one per checked statement.
std::span<const char* const> known_anchors();
bool is_known_anchor(const std::string& anchor);

/// Ordered, single-writer collection of law results. Rendering is
/// deterministic; wall time is kept apart and printed on its own last line.
class Report {
 public:
  /// Appends every outcome of `v` under `anchor`, unless the law name has a
  /// more specific anchor of its own.
  void add(const std::string& instance, const std::string& anchor, const Verdict& v);
  void add_row(ReportRow row);
  void note(std::string line) { notes_.push_back(std::move(line)); }
  void set_seconds(double s) { seconds_ = s; }

  const std::vector<ReportRow>& rows() const { return rows_; }
  const std::vector<std::string>& notes() const { return notes_; }
  std::size_t count(Status s) const;
  bool passed() const { return count(Status::Fail) == 0; }
  double seconds() const { return seconds_; }

  std::string text(bool with_time = true) const;
  std::string json_lines(bool with_time = true) const;

 private:
  std::vector<ReportRow> rows_;
  std::vector<std::string> notes_;
  double seconds_ = 0;
};

const char* to_string(Status s);

}  // namespace qkit
