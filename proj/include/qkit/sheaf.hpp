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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qkit/qmodule.hpp"

namespace qkit {

/// A Q-locale whose recovered projection is open, with its support u_! . p_!.
struct OpenQLocale {
  QLocale module;
  std::vector<Point> proj;
  std::vector<Elem> supp;  // X -> elements of B in Q
  Verdict laws;            // support invariants and uniqueness

  std::size_t size() const { return module.size(); }
};

/// Either an open Q-locale or the open set whose image under p is not open.
struct OpenCheck {
  std::optional<OpenQLocale> open;
  std::string not_open_witness;
};

/// Uniqueness of the support is searched exhaustively when |X| <= 32 and
/// reported inconclusive otherwise.
OpenCheck open_qlocale(const QLocale& m);

/// sp(ax) = sp(a sp(x)), sp(ax) <= sp(a), and sp(sx) = s sp(x) s* for partial
/// units s, with sp on Q the quantale support.
Verdict check_support_laws(const OpenQLocale& x);

/// Elements s with x = sp(x) s for every x <= s, ascending.
std::vector<Elem> local_sections(const OpenQLocale& x);

/// Sections join to the top; p is a local homeomorphism; the two agree.
Verdict is_etale_qlocale(const OpenQLocale& x);

/// Q-module homomorphism h: X -> Y preserving supports and local sections.
Verdict check_sheaf_hom(const OpenQLocale& x, const OpenQLocale& y, std::span<const Elem> h);

/// On the quantale itself: I(Q) is contained in the sections of Q, and s is a
/// partial unit iff both s and s* are sections.
Verdict check_local_bisections(const QuantalePtr& q);

struct SheafCounts {
  std::size_t objects = 0;
  std::size_t sheaf_maps = 0;
  std::size_t sheaf_homs = 0;
};

/// Over a corpus of G-sheaves for one groupoid: every object is an etale
/// Q-locale, every equivariant map is a local homeomorphism whose direct image
/// is a sheaf homomorphism intertwining the actions, f -> f_! is injective,
/// and every sheaf homomorphism is f_! for exactly one equivariant f.
Verdict check_sheaf_category_isomorphisms(const QuantalePtr& q, std::span<const GLocale> corpus,
                                          SheafCounts* counts = nullptr);

}  // namespace qkit
