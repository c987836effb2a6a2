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

#include <string>
#include <vector>

namespace qkit {

/// Outcome of a single named law on a single instance. A failing outcome
/// carries the first violating tuple as its witness.
struct LawOutcome {
  std::string law;
  bool passed = true;
  std::string witness;
  bool inconclusive = false;  // passed stays true; witness holds the reason
};

/// Ordered list of law outcomes produced by a checker.
class Verdict {
 public:
  void pass(std::string law) { outcomes_.push_back({std::move(law), true, {}}); }
  void fail(std::string law, std::string witness) {
    outcomes_.push_back({std::move(law), false, std::move(witness)});
  }
  void record(std::string law, bool ok, std::string witness = {}) {
    outcomes_.push_back({std::move(law), ok, ok ? std::string{} : std::move(witness)});
  }
  void inconclusive(std::string law, std::string reason) {
    outcomes_.push_back({std::move(law), true, std::move(reason), true});
  }
  void merge(const Verdict& other, const std::string& prefix = {}) {
    for (const auto& o : other.outcomes_)
      outcomes_.push_back({prefix + o.law, o.passed, o.witness, o.inconclusive});
  }

  bool passed() const {
    for (const auto& o : outcomes_)
      if (!o.passed) return false;
    return true;
  }
  explicit operator bool() const { return passed(); }

  const LawOutcome* first_failure() const {
    for (const auto& o : outcomes_)
      if (!o.passed) return &o;
    return nullptr;
  }
  const LawOutcome* find(const std::string& law) const {
    for (const auto& o : outcomes_)
      if (o.law == law) return &o;
    return nullptr;
  }
  const std::vector<LawOutcome>& outcomes() const { return outcomes_; }

 private:
  std::vector<LawOutcome> outcomes_;
};

}  // namespace qkit
