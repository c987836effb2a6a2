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

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qkit/groupoid.hpp"
#include "qkit/order.hpp"
#include "qkit/verdict.hpp"

namespace qkit {

constexpr std::size_t kMaxQuantaleSize = 1024;

/// A finite unital involutive quantale whose carrier is a frame. Tables are
/// public so that tests can plant violations; `base` is the down-set of the
/// unit and is refreshed by `refresh_base()` after editing `unit`.
struct InvQuantale {
  FramePtr carrier;
  std::vector<Elem> mult;   // a * size + b -> a.b
  std::vector<Elem> invol;  // a -> a*
  Elem unit = 0;
  std::vector<Elem> base;   // elements below unit, ascending
  GroupoidPtr groupoid;     // set when built from a groupoid

  /// O(G): opens of G1, products by composition, involution by inversion.
  /// Throws NotEtale or InvalidInstance when G is not an etale groupoid.
  static InvQuantale of_groupoid(GroupoidPtr g);
  static InvQuantale from_tables(FramePtr carrier, std::vector<Elem> mult,
                                 std::vector<Elem> invol, Elem unit);

  const Frame& frame() const { return *carrier; }
  std::size_t size() const { return carrier->size(); }
  Elem mul(Elem a, Elem b) const { return mult[std::size_t{a} * size() + b]; }
  Elem star(Elem a) const { return invol[a]; }
  Elem top() const { return carrier->top(); }
  Elem bottom() const { return carrier->bottom(); }
  bool in_base(Elem a) const { return carrier->leq(a, unit); }
  std::string label(Elem a) const { return carrier->label(a); }
  void refresh_base();

  /// Open sets of arrows / objects; only valid with a groupoid attached.
  PointSet arrows_of(Elem a) const { return carrier->mask(a); }
  Elem of_arrows(PointSet s) const;
  /// u_! and its inverse on B; B is isomorphic to the frame of objects.
  Elem base_of_objects(PointSet objects) const;
  PointSet objects_of_base(Elem b) const;
};

using QuantalePtr = std::shared_ptr<const InvQuantale>;

/// Frame law, associativity, joins in each variable, unit, involution laws,
/// base laws, partial units join-dense and regular, and a support map: the
/// groupoid one when a groupoid is attached, otherwise searched for when
/// |Q| <= 16 and reported inconclusive beyond that.
Verdict check_inverse_quantal_frame(const InvQuantale& q);

/// All s with ss* <= e and s*s <= e, ascending.
std::vector<Elem> partial_units(const InvQuantale& q);
/// Down-closure, join-density, cover of the top, ss*s = s and s1 ^ e = ss*.
Verdict check_partial_units(const InvQuantale& q, std::span<const Elem> units);

/// u_! . d_!; requires a groupoid.
std::vector<Elem> support(const InvQuantale& q);
/// Every join-preserving B-valued map satisfying the support axioms, by
/// backtracking over join-irreducibles. `exhausted` is false when |Q| exceeds
/// `max_size` or the step budget runs out.
struct SupportSearch {
  std::vector<std::vector<Elem>> found;
  bool exhausted = false;
};
SupportSearch search_support(const InvQuantale& q, std::size_t max_size = 16);
/// Support axioms and the laws derived from them.
Verdict check_support(const InvQuantale& q, std::span<const Elem> sp);

/// Q (x)_B Q realized as the opens of the space of composable pairs; elements
/// are masks over `q.groupoid->composable.space`.
PointSet tensor_pair(const InvQuantale& q, Elem a, Elem b);
/// m_! on opens of composable pairs.
Elem multiply_open(const InvQuantale& q, PointSet w);
/// Join of s (x) s*a over s in `generators`.
PointSet mu_star(const InvQuantale& q, Elem a, std::span<const Elem> generators);
/// Join of s (x) s*a over the partial units.
PointSet mu_star(const InvQuantale& q, Elem a);
/// Join of a (x) b over all a, b with ab <= c (over join-irreducibles once
/// |Q| > 64, which has the same join).
PointSet mu_star_adjoint(const InvQuantale& q, Elem c);
/// For every element: formula = brute-force adjoint = m^-1, joins and meets
/// preserved, Galois against m_! over generators of the pair frame and over
/// all of its opens when there are at most 16 composable pairs.
Verdict check_mu_star(const InvQuantale& q);

}  // namespace qkit
