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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkit/corpus.hpp"
#include "qkit/io.hpp"
#include "qkit/report.hpp"

namespace qkit::kit {

/// Every checker that applies to the instance's kind.
Report check_instance(const io::Instance& inst, const std::string& id);

/// O(G) as text: elements, unit, base, involution, multiplication indices.
std::string quantale_tables(const InvQuantale& q);
std::string show_partial_units(const InvQuantale& q);
std::string show_support(const InvQuantale& q);
/// Inverse-quantal-frame laws, mu_* formulas, local bisections.
Report verify_quantale(const QuantalePtr& q, const std::string& id);

/// glocale -> qlocale or qlocale -> glocale.
io::Instance convert(const io::Instance& inst);
/// Converts there and back; one row comparing the canonical texts.
Report roundtrip(const io::Instance& inst, const std::string& id);

enum class Scope {
  ProjectionFactorization,
  FunctorFaithful,
  Lax,
  ActionsCoincide,
  AlphaStar,
  MuStar,
  Bijection,
  CatIso,
  SupportLaws,
  Sections,
  SheafCatIso,
  Iqf,
  TensorOracle,
  All,
};

/// Accepts the alias "lemma-2.1" for projection-factorization.
std::optional<Scope> scope_from_string(const std::string& s);
const char* to_string(Scope s);
std::vector<std::string> scope_names();

struct VerifyBounds {
  std::size_t max_arrows = 3;       // all etale groupoids
  std::size_t discrete_arrows = 4;  // discrete etale groupoids
  std::size_t identity_points = 3;  // identity groupoids on every topology
  std::size_t max_points = 3;       // G-locales over each groupoid
  bool named = true;                // z2, pair(2), pair(3)
  /// When non-empty, the corpus is exactly these named groupoids or files.
  std::vector<std::string> only;
};

Report verify(Scope scope, const VerifyBounds& bounds);

struct EnumerateOptions {
  io::Kind kind = io::Kind::Groupoid;
  corpus::GroupoidBounds groupoids;
  corpus::ModuleBounds modules;
  GroupoidPtr over;  // for glocale and qlocale
  std::optional<std::uint64_t> seed;
  std::size_t samples = 16;
};

std::vector<io::Instance> enumerate(const EnumerateOptions& opts);

/// A groupoid by short name, "pair(N)", or kind:param (e.g.
/// discrete-group:Z3, identity-on-space:chain:3), or a groupoid file path.
GroupoidPtr resolve_groupoid(const std::string& ref);

}  // namespace qkit::kit
