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
#include "qkit/error.hpp"
#include "qkit/groupoid.hpp"

namespace qkit {

namespace {

void check_range(std::span<const Point> map, std::size_t expect_size, std::size_t target_size,
                 const char* what) {
  if (map.size() != expect_size)
    fail(ErrorCode::InvalidInstance, std::string(what) + " has " + std::to_string(map.size()) +
                                         " entries, expected " + std::to_string(expect_size));
  for (Point p : map)
    if (p >= target_size)
      fail(ErrorCode::InvalidInstance, std::string(what) + " maps outside its codomain");
}

}  // namespace

FiniteGroupoid FiniteGroupoid::make(FiniteSpace objects, FiniteSpace arrows,
                                    std::vector<Point> dom, std::vector<Point> cod,
                                    std::vector<Point> unit, std::vector<Point> inv,
                                    std::vector<Point> comp) {
  check_range(dom, arrows.size(), objects.size(), "d");
  check_range(cod, arrows.size(), objects.size(), "r");
  check_range(unit, objects.size(), arrows.size(), "u");
  check_range(inv, arrows.size(), arrows.size(), "i");
  FiniteGroupoid g;
  g.composable = pullback_space(arrows, cod, arrows, dom);
  check_range(comp, g.composable.first.size(), arrows.size(), "m");
  g.objects = std::move(objects);
  g.arrows = std::move(arrows);
  g.dom = std::move(dom);
  g.cod = std::move(cod);
  g.unit = std::move(unit);
  g.inv = std::move(inv);
  g.comp = std::move(comp);
  return g;
}

Verdict check_groupoid(const FiniteGroupoid& g) {
  Verdict v;
  const auto& A = g.arrows;
  auto nm = [&](Point a) { return A.name(a); };

  {
    std::string w;
    for (Point o = 0; o < g.objects.size() && w.empty(); ++o)
      if (g.dom[g.unit[o]] != o || g.cod[g.unit[o]] != o) w = g.objects.name(o);
    v.record("unit-objects", w.empty(), "u(" + w + ") does not lie over " + w);
  }
  {
    std::string w;
    for (Point z = 0; z < g.comp.size() && w.empty(); ++z) {
      Point a = g.composable.first[z], b = g.composable.second[z];
      if (g.dom[g.comp[z]] != g.dom[a])
        w = "d(" + nm(a) + "*" + nm(b) + ") = d(" + nm(g.comp[z]) + ") = " +
            g.objects.name(g.dom[g.comp[z]]) + " != " + g.objects.name(g.dom[a]);
    }
    v.record("d-compatibility", w.empty(), w);
  }
  {
    std::string w;
    for (Point z = 0; z < g.comp.size() && w.empty(); ++z) {
      Point a = g.composable.first[z], b = g.composable.second[z];
      if (g.cod[g.comp[z]] != g.cod[b])
        w = "r(" + nm(a) + "*" + nm(b) + ") = " + g.objects.name(g.cod[g.comp[z]]) +
            " != " + g.objects.name(g.cod[b]);
    }
    v.record("r-compatibility", w.empty(), w);
  }
  {
    std::string left, right;
    for (Point a = 0; a < A.size(); ++a) {
      Point ul = g.unit[g.dom[a]], ur = g.unit[g.cod[a]];
      if (left.empty() && (!g.composable_pair(ul, a) || g.compose(ul, a) != a))
        left = "u(d(" + nm(a) + "))*" + nm(a);
      if (right.empty() && (!g.composable_pair(a, ur) || g.compose(a, ur) != a))
        right = nm(a) + "*u(r(" + nm(a) + "))";
    }
    v.record("left-unit", left.empty(), left);
    v.record("right-unit", right.empty(), right);
  }
  {
    std::string w;
    for (Point a = 0; a < A.size() && w.empty(); ++a) {
      Point b = g.inv[a];
      if (!g.composable_pair(a, b) || g.compose(a, b) != g.unit[g.dom[a]])
        w = nm(a) + "*i(" + nm(a) + ")";
      else if (!g.composable_pair(b, a) || g.compose(b, a) != g.unit[g.cod[a]])
        w = "i(" + nm(a) + ")*" + nm(a);
    }
    v.record("inverse", w.empty(), w);
  }
  {
    std::string w;
    for (Point z = 0; z < g.comp.size() && w.empty(); ++z) {
      Point a = g.composable.first[z], b = g.composable.second[z], ab = g.comp[z];
      for (Point c = 0; c < A.size() && w.empty(); ++c) {
        if (!g.composable_pair(b, c)) continue;
        Point bc = g.compose(b, c);
        auto l = g.composable.index(ab, c);
        auto r = g.composable.index(a, bc);
        if (!l || !r || g.comp[*l] != g.comp[*r])
          w = "(" + nm(a) + "," + nm(b) + "," + nm(c) + ")";
      }
    }
    v.record("associativity", w.empty(), w);
  }
  v.record("continuous-d", is_continuous(A, g.objects, g.dom), "d");
  v.record("continuous-r", is_continuous(A, g.objects, g.cod), "r");
  v.record("continuous-u", is_continuous(g.objects, A, g.unit), "u");
  v.record("continuous-i", is_continuous(A, A, g.inv), "i");
  v.record("continuous-m", is_continuous(g.composable.space, A, g.comp), "m");
  return v;
}

Verdict is_open_map(const FiniteSpace& source, const FiniteSpace& target,
                    std::span<const Point> map) {
  Verdict v;
  auto w = openness_witness(source, target, map);
  v.record("open-map", !w, w ? "image of " + source.format(*w) + " is " +
                                   target.format(image_of(map, *w)) + ", not open"
                             : std::string{});
  return v;
}

Verdict is_local_homeomorphism(const FiniteSpace& source, const FiniteSpace& target,
                               std::span<const Point> map) {
  Verdict v;
  for (Point x = 0; x < source.size(); ++x) {
    // The minimal neighbourhood is contained in every open neighbourhood, so
    // it is the only candidate that needs testing.
    PointSet n = source.neighborhood(x);
    if (popcount(image_of(map, n)) != popcount(n)) {
      v.fail("local-homeomorphism", "not injective on the neighbourhood " + source.format(n) +
                                        " of " + source.name(x));
      return v;
    }
    for (Point y : members(n))
      if (!target.is_open(image_of(map, source.neighborhood(y)))) {
        v.fail("local-homeomorphism", "image of " + source.format(source.neighborhood(y)) +
                                          " is not open");
        return v;
      }
  }
  v.pass("local-homeomorphism");
  return v;
}

Verdict is_etale(const FiniteGroupoid& g) {
  Verdict v;
  Verdict lh = is_local_homeomorphism(g.arrows, g.objects, g.dom);
  Verdict d_open = is_open_map(g.arrows, g.objects, g.dom);
  Verdict u_open = is_open_map(g.objects, g.arrows, g.unit);
  const bool geometric = lh.passed();
  const bool algebraic = d_open.passed() && u_open.passed();
  v.record("d-local-homeomorphism", geometric,
           geometric ? "" : lh.first_failure()->witness);
  std::string w;
  if (!d_open) w = "d: " + d_open.first_failure()->witness;
  else if (!u_open) w = "u: " + u_open.first_failure()->witness;
  v.record("d-and-u-open", algebraic, w);
  v.record("etale-criteria-agree", geometric == algebraic,
           geometric ? "d is a local homeomorphism but d or u is not open"
                     : "d and u are open but d is not a local homeomorphism");
  return v;
}

GLocale GLocale::make(GroupoidPtr g, FiniteSpace total, std::vector<Point> proj,
                      std::vector<Point> act) {
  check_range(proj, total.size(), g->objects.size(), "p");
  GLocale a;
  a.pairs = pullback_space(g->arrows, g->cod, total, proj);
  check_range(act, a.pairs.first.size(), total.size(), "action");
  a.groupoid = std::move(g);
  a.total = std::move(total);
  a.proj = std::move(proj);
  a.act = std::move(act);
  return a;
}

Verdict check_glocale(const GLocale& a) {
  Verdict v;
  const FiniteGroupoid& g = *a.groupoid;
  const auto& P = a.pairs;
  auto pt = [&](Point z) {
    return "(" + g.arrows.name(P.first[z]) + "," + a.total.name(P.second[z]) + ")";
  };
  v.record("continuous-p", is_continuous(a.total, g.objects, a.proj), "p");
  v.record("continuous-action", is_continuous(P.space, a.total, a.act), "action");
  {
    std::string w;
    for (Point z = 0; z < a.act.size() && w.empty(); ++z)
      if (a.proj[a.act[z]] != g.dom[P.first[z]]) w = "p(a" + pt(z) + ") != d(" + g.arrows.name(P.first[z]) + ")";
    v.record("projection-square", w.empty(), w);
  }
  {
    std::string w;
    for (Point z = 0; z < a.act.size() && w.empty(); ++z) {
      const Point h = P.first[z], x = P.second[z], hx = a.act[z];
      for (Point k = 0; k < g.comp.size() && w.empty(); ++k) {
        if (g.composable.second[k] != h) continue;
        const Point f = g.composable.first[k], fh = g.comp[k];
        auto lhs = P.index(fh, x);
        auto rhs = P.index(f, hx);
        if (!lhs || !rhs || a.act[*lhs] != a.act[*rhs])
          w = "a(" + g.arrows.name(f) + "*" + g.arrows.name(h) + ", " + a.total.name(x) + ")";
      }
    }
    v.record("associativity", w.empty(), w);
  }
  {
    std::string w;
    for (Point x = 0; x < a.total.size() && w.empty(); ++x) {
      auto z = P.index(g.unit[a.proj[x]], x);
      if (!z || a.act[*z] != x) w = "a(u(p(" + a.total.name(x) + "))," + a.total.name(x) + ")";
    }
    v.record("unitarity", w.empty(), w);
  }
  {
    // pi1(g, x) = m(g, u(p(x))) and p.a = d.m.(1 x u.p), pointwise.
    std::string w;
    for (Point z = 0; z < a.act.size() && w.empty(); ++z) {
      const Point f = P.first[z], x = P.second[z];
      const Point ux = g.unit[a.proj[x]];
      auto k = g.composable.index(f, ux);
      if (!k || g.comp[*k] != f || a.proj[a.act[z]] != g.dom[g.comp[*k]]) w = pt(z);
    }
    v.record("unit-factorization", w.empty(), w);
  }
  {
    // <pi1, a> : G1 x_{G0} X -> G1 x_{G0} X (pullback of d and p) is a homeomorphism.
    Pullback target = pullback_space(g.arrows, g.dom, a.total, a.proj);
    std::vector<Point> pairing(a.act.size());
    std::string w;
    for (Point z = 0; z < a.act.size() && w.empty(); ++z) {
      auto t = target.index(P.first[z], a.act[z]);
      if (!t) w = "no point over " + pt(z);
      else pairing[z] = *t;
    }
    if (w.empty()) {
      if (pairing.size() != target.first.size() ||
          image_of(pairing, P.space.full()) != target.space.full())
        w = "pairing is not a bijection";
      else if (!is_continuous(P.space, target.space, pairing))
        w = "pairing is not continuous";
      else if (auto o = openness_witness(P.space, target.space, pairing))
        w = "pairing is not open at " + P.space.format(*o);
    }
    v.record("pullback-square", w.empty(), w);
  }
  return v;
}

Verdict check_equivariant(const GLocale& source, const GLocale& target,
                          std::span<const Point> map) {
  Verdict v;
  if (map.size() != source.total.size()) {
    v.fail("map-shape", "map size does not match source");
    return v;
  }
  for (Point p : map)
    if (p >= target.total.size()) {
      v.fail("map-shape", "map leaves the target");
      return v;
    }
  v.record("continuous", is_continuous(source.total, target.total, map), "f");
  {
    std::string w;
    for (Point x = 0; x < map.size() && w.empty(); ++x)
      if (target.proj[map[x]] != source.proj[x]) w = "p(f(" + source.total.name(x) + "))";
    v.record("over-objects", w.empty(), w);
  }
  {
    std::string w;
    const auto& P = source.pairs;
    for (Point z = 0; z < source.act.size() && w.empty(); ++z) {
      auto t = target.pairs.index(P.first[z], map[P.second[z]]);
      if (!t || target.act[*t] != map[source.act[z]])
        w = "f(a(" + source.groupoid->arrows.name(P.first[z]) + "," +
            source.total.name(P.second[z]) + "))";
    }
    v.record("commutes-with-action", w.empty(), w);
  }
  return v;
}

}  // namespace qkit
