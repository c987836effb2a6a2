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
#include <string>
#include <vector>

#include "qkit/order.hpp"
#include "qkit/verdict.hpp"

namespace qkit {

/// A finite topological groupoid. Arrows compose as g.h when cod(g) = dom(h),
/// and then dom(gh) = dom(g), cod(gh) = cod(h). The composition table is
/// indexed by the points of the pullback of cod and dom, so an undefined
/// composite cannot be stored.
struct FiniteGroupoid {
  FiniteSpace objects;
  FiniteSpace arrows;
  std::vector<Point> dom;
  std::vector<Point> cod;
  std::vector<Point> unit;
  std::vector<Point> inv;
  Pullback composable;
  std::vector<Point> comp;

  /// Validates table shapes only; the axioms are left to check_groupoid.
  /// `comp` is indexed like `composable` (see composable_pairs()).
  static FiniteGroupoid make(FiniteSpace objects, FiniteSpace arrows, std::vector<Point> dom,
                             std::vector<Point> cod, std::vector<Point> unit,
                             std::vector<Point> inv, std::vector<Point> comp);
  /// Builds the composition table from a function on composable pairs.
  template <class F>
  static FiniteGroupoid make_with(FiniteSpace objects, FiniteSpace arrows, std::vector<Point> dom,
                                  std::vector<Point> cod, std::vector<Point> unit,
                                  std::vector<Point> inv, F&& compose) {
    Pullback pb = pullback_space(arrows, cod, arrows, dom);
    std::vector<Point> comp(pb.first.size());
    for (Point z = 0; z < comp.size(); ++z) comp[z] = compose(pb.first[z], pb.second[z]);
    return make(std::move(objects), std::move(arrows), std::move(dom), std::move(cod),
                std::move(unit), std::move(inv), std::move(comp));
  }

  bool composable_pair(Point g, Point h) const { return composable.index(g, h).has_value(); }
  Point compose(Point g, Point h) const { return comp[*composable.index(g, h)]; }
  std::size_t object_count() const { return objects.size(); }
  std::size_t arrow_count() const { return arrows.size(); }
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// Structure maps continuous, d.u = r.u = 1, domain/codomain of composites,
/// unit laws, inverse laws, associativity. Stops each law at its first witness.
Verdict check_groupoid(const FiniteGroupoid& g);

Verdict is_open_map(const FiniteSpace& source, const FiniteSpace& target,
                    std::span<const Point> map);
/// Every point has an open neighbourhood on which `map` is a homeomorphism
/// onto an open set.
Verdict is_local_homeomorphism(const FiniteSpace& source, const FiniteSpace& target,
                               std::span<const Point> map);

/// d is a local homeomorphism; cross-checked against "d and u are open".
/// A disagreement between the two criteria is recorded as its own failure.
Verdict is_etale(const FiniteGroupoid& g);

/// A space over the objects with a left action along cod: act(g, x) is
/// defined when cod(g) = proj(x) and lies over dom(g).
struct GLocale {
  GroupoidPtr groupoid;
  FiniteSpace total;
  std::vector<Point> proj;
  Pullback pairs;  // (g, x) with cod(g) = proj(x)
  std::vector<Point> act;

  static GLocale make(GroupoidPtr g, FiniteSpace total, std::vector<Point> proj,
                      std::vector<Point> act);
  template <class F>
  static GLocale make_with(GroupoidPtr g, FiniteSpace total, std::vector<Point> proj, F&& action) {
    Pullback pb = pullback_space(g->arrows, g->cod, total, proj);
    std::vector<Point> act(pb.first.size());
    for (Point z = 0; z < act.size(); ++z) act[z] = action(pb.first[z], pb.second[z]);
    return make(std::move(g), std::move(total), std::move(proj), std::move(act));
  }

  Point apply(Point g, Point x) const { return act[*pairs.index(g, x)]; }
};

/// Continuity of proj and act, the projection square, associativity and
/// unitarity, plus the redundant reformulation of the projection square
/// through units and the pullback property of that square.
Verdict check_glocale(const GLocale& a);

/// proj_Y . f = proj_X and f(act(g, x)) = act(g, f(x)); continuity of f.
Verdict check_equivariant(const GLocale& source, const GLocale& target,
                          std::span<const Point> map);

/// Small finite groups by multiplication table.
struct FiniteGroup {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::uint32_t> table;  // a * n + b -> ab
  std::uint32_t identity = 0;

  std::size_t order() const { return elements.size(); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * order() + b]; }
  std::uint32_t inverse(std::uint32_t a) const;
};

namespace groups {
FiniteGroup trivial();
FiniteGroup cyclic(std::size_t n);
FiniteGroup dihedral(std::size_t n);  // order 2n; dihedral(3) is S3
FiniteGroup quaternion();
FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
/// All groups of order n up to isomorphism, n <= 8.
std::vector<FiniteGroup> of_order(std::size_t n);
/// "Z2", "Z4", "Z2xZ2", "S3", "D4", "Q8", "1".
FiniteGroup by_name(const std::string& name);
}  // namespace groups

namespace named {
FiniteGroupoid identity_on(const FiniteSpace& space);
FiniteGroupoid discrete_group(const FiniteGroup& k);
FiniteGroupoid pair(std::size_t n);
FiniteGroupoid disjoint_sum(const FiniteGroupoid& a, const FiniteGroupoid& b);
FiniteGroupoid product_with_group(const FiniteGroupoid& g, const FiniteGroup& k);
/// Action groupoid of `k` acting on m points; arrows (x, k) : x -> k.x.
FiniteGroupoid action_groupoid(const FiniteGroup& k, std::size_t m,
                               const std::vector<std::uint32_t>& action);
FiniteSpace sierpinski();
}  // namespace named

/// Dispatches on kind in {identity-on-space, discrete-group, pair,
/// disjoint-sum, product-with-group, action-groupoid} with string params,
/// e.g. ("pair", {"3"}), ("discrete-group", {"Z2"}),
/// ("identity-on-space", {"sierpinski"}), ("action-groupoid", {"Z3"}).
/// Also accepts the short names z2, pair2, pair3, sierpinski, sierpinski-z2.
FiniteGroupoid make_named(const std::string& kind, const std::vector<std::string>& params = {});

}  // namespace qkit
