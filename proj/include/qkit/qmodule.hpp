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
#include <vector>

#include "qkit/groupoid.hpp"
#include "qkit/quantale.hpp"

namespace qkit {

/// The opens of a finite space with a left action of a quantale.
struct QLocale {
  QuantalePtr quantale;
  FiniteSpace space;
  FramePtr carrier;
  std::vector<Elem> action;  // a * size + x -> a.x

  /// Validates table shapes; the laws are left to check_qlocale.
  static QLocale make(QuantalePtr q, FiniteSpace space, std::vector<Elem> action);

  std::size_t size() const { return carrier->size(); }
  const Frame& frame() const { return *carrier; }
  Elem act(Elem a, Elem x) const { return action[std::size_t{a} * size() + x]; }
  std::string label(Elem x) const { return carrier->label(x); }
};

/// Frame law; action associative, unital, joins in each variable; bx = b1 ^ x.
Verdict check_qlocale(const QLocale& x);

/// A.S = image under the action of the pairs in A x S.
QLocale module_of_glocale(QuantalePtr q, const GLocale& a);
/// G acting on its arrows by composition, fibred along d.
GLocale regular_glocale(GroupoidPtr g);

/// pi1 = m . (1 x (u . p)) on pairs, and the projection square holds iff its
/// reformulation p . act = d . m . (1 x (u . p)) does.
Verdict check_projection_factorization(const GLocale& a);
/// u_!(b) x = p*(b) ^ x for b in B, x in O(X).
Verdict check_actions_coincide(const GLocale& a, const QLocale& x);

/// p with p*(V) = u_!(V) 1. Throws NoPointRealization when V -> u_!(V) 1 is
/// not a frame homomorphism or does not single out one object per point.
std::vector<Point> recover_projection(const QLocale& x);

/// Q (x)_B X realized as the opens of the pullback of cod and p.
struct ModuleTensor {
  std::vector<Point> proj;
  Pullback pairs;
  PointSet tensor(const QLocale& x, Elem a, Elem y) const {
    return pairs.rectangle(x.quantale->arrows_of(a), x.frame().mask(y));
  }
};
ModuleTensor module_tensor(const QLocale& x);

/// Join of s (x) s*x over the partial units (or over `generators`).
PointSet alpha_star(const QLocale& m, const ModuleTensor& t, Elem x);
PointSet alpha_star(const QLocale& m, const ModuleTensor& t, Elem x,
                    std::span<const Elem> generators);
/// Join of a (x) y over all a, y with ay <= x; restricted to join-irreducible
/// a and y once |Q| |X| > 4096, which has the same join.
PointSet alpha_star_adjoint(const QLocale& m, const ModuleTensor& t, Elem x);
/// Formula equals the brute-force adjoint, preserves joins and meets, and is
/// right adjoint to the action over generators of the pair frame.
Verdict check_alpha_star(const QLocale& m);

/// The G-locale with p recovered from the action and act* = alpha_*. Throws
/// NotAFrameHom when a pair has no unique image point.
GLocale glocale_of_qlocale(const QLocale& m);

/// Join-preserving and Q-equivariant h: O(Y) -> O(X) (source is `from`).
Verdict check_module_hom(const QLocale& from, const QLocale& to, std::span<const Elem> h);
/// For f: X -> Y whose inverse image is a module homomorphism, checks both
/// act*(f*(y)) >= (1 (x) f*)(act_Y*(y)) and act*(f*(y)) <= (1 (x) f*)(act_Y*(y)).
Verdict check_lax_inequality(const QuantalePtr& q, const GLocale& x, const GLocale& y,
                             std::span<const Point> f);

struct CategoryCounts {
  std::size_t objects = 0;
  std::size_t continuous_maps = 0;
  std::size_t equivariant_maps = 0;
  std::size_t module_homs = 0;
  std::size_t spatial_module_homs = 0;
  std::size_t non_spatial_module_homs = 0;
};

/// Over a corpus of G-locales for one groupoid: strict bijection both ways,
/// faithfulness and fullness by exhaustive map enumeration, the lax and
/// fullness inequalities for every module-hom-inducing map, and counts of
/// module homomorphisms that are not inverse images of continuous maps.
Verdict check_category_isomorphism(QuantalePtr q, std::span<const GLocale> corpus,
                                   CategoryCounts* counts = nullptr);

/// Exact equality of projection and action tables.
bool same_glocale(const GLocale& a, const GLocale& b);

}  // namespace qkit
