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

#include "qkit/groupoid.hpp"
#include "qkit/qmodule.hpp"

namespace qkit::io {

enum class Kind { Groupoid, GLocale, QLocale, Hom };

const char* to_string(Kind kind);
std::optional<Kind> kind_from_string(const std::string& s);

struct Metadata {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::string bounds;
};

/// An equivariant map between two G-locales over the same groupoid.
struct Hom {
  GLocale source;
  GLocale target;
  std::vector<Point> map;
};

/// One instance file. `groupoid` is always set; exactly one of the optional
/// payloads matches `kind` (none for Kind::Groupoid).
struct Instance {
  Kind kind = Kind::Groupoid;
  Metadata meta;
  GroupoidPtr groupoid;
  std::optional<GLocale> glocale;
  std::optional<QLocale> qlocale;
  std::optional<Hom> hom;
};

struct LoadOptions {
  bool allow_invalid = false;
  std::string base_dir;  // resolves "groupoid": "<file>" references
};

/// Parses JSON text. Errors are ErrorCode::Parse with a line number or field
/// path. Unless allow_invalid, runs validate() and throws InvalidInstance
/// naming the first failing law.
Instance parse(const std::string& text, const LoadOptions& opts = {});
Instance load(const std::string& path, bool allow_invalid = false);

/// Canonical form: object keys and every set sorted, tables keyed by names,
/// two-space indentation and a trailing newline; `compact` puts the whole
/// instance on one line.
std::string save(const Instance& inst, bool compact = false);
void write_file(const std::string& path, const std::string& text);

/// Axioms the file must satisfy to load: groupoid axioms, G-locale axioms,
/// Q-locale laws, or G-locale axioms plus equivariance.
Verdict validate(const Instance& inst);

Instance of_groupoid(GroupoidPtr g, std::string name = {});
Instance of_glocale(GLocale a, std::string name = {});
Instance of_qlocale(QLocale m, std::string name = {});

/// O(G) behind a shared pointer.
QuantalePtr quantale_of(const GroupoidPtr& g);

}  // namespace qkit::io
