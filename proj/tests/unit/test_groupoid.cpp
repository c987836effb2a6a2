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
#include <set>

#include "doctest.h"
#include "qkit/error.hpp"
#include "qkit/groupoid.hpp"

using namespace qkit;

namespace {

bool is_group(const FiniteGroup& k) {
  const auto n = static_cast<std::uint32_t>(k.order());
  for (std::uint32_t a = 0; a < n; ++a) {
    if (k.mul(k.identity, a) != a || k.mul(a, k.identity) != a) return false;
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (k.mul(k.mul(a, b), c) != k.mul(a, k.mul(b, c))) return false;
  }
  return true;
}

std::size_t abelian(const FiniteGroup& k) {
  const auto n = static_cast<std::uint32_t>(k.order());
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (k.mul(a, b) != k.mul(b, a)) return 0;
  return 1;
}

std::size_t involutions(const FiniteGroup& k) {
  std::size_t c = 0;
  for (std::uint32_t a = 0; a < k.order(); ++a)
    if (a != k.identity && k.mul(a, a) == k.identity) ++c;
  return c;
}

}  // namespace

TEST_CASE("group catalogue") {
  const std::size_t counts[] = {0, 1, 1, 1, 2, 1, 2, 1, 5};
  for (std::size_t n = 1; n <= 8; ++n) {
    auto gs = groups::of_order(n);
    CHECK(gs.size() == counts[n]);
    for (const auto& k : gs) {
      CHECK(k.order() == n);
      CHECK(is_group(k));
      for (std::uint32_t a = 0; a < n; ++a) CHECK(k.mul(a, k.inverse(a)) == k.identity);
    }
  }
  // Order 8 groups are pairwise distinguished by (abelian, involutions).
  std::set<std::pair<std::size_t, std::size_t>> sig;
  for (const auto& k : groups::of_order(8)) sig.insert({abelian(k), involutions(k)});
  CHECK(sig.size() == 5);
  CHECK(groups::by_name("Z2xZ2").order() == 4);
  CHECK(groups::by_name("S3").order() == 6);
  CHECK_FALSE(abelian(groups::by_name("S3")));
  CHECK_THROWS_AS(groups::by_name("Z9"), Error);
  CHECK_THROWS_AS(groups::of_order(9), Error);
}

TEST_CASE("named groupoids satisfy the axioms and are etale") {
  for (auto [kind, params] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"z2", {}},
           {"pair2", {}},
           {"pair3", {}},
           {"sierpinski", {}},
           {"sierpinski-z2", {}},
           {"discrete-group", {"Q8"}},
           {"pair", {"4"}},
           {"identity-on-space", {"chain:3"}},
           {"disjoint-sum", {"pair2", "z2"}},
           {"product-with-group", {"pair2", "Z2"}},
           {"action-groupoid", {"Z3"}},
           {"action-groupoid", {"Z4"}},
       }) {
    CAPTURE(kind);
    auto g = make_named(kind, params);
    CHECK(check_groupoid(g));
    CHECK(is_etale(g));
  }
  CHECK(make_named("pair3").arrow_count() == 9);
  CHECK(make_named("product-with-group", {"pair2", "Z2"}).arrow_count() == 8);
  CHECK_THROWS_AS(make_named("product-with-group", {"pair2", "Z3"}), Error);
  CHECK(make_named("action-groupoid", {"Z4"}).arrow_count() == 16);
  CHECK(make_named("disjoint-sum", {"z2", "z2"}).object_count() == 2);
  CHECK_THROWS_AS(make_named("nope"), Error);
}

TEST_CASE("indiscrete arrows over one object are a groupoid but not etale") {
  auto k = groups::cyclic(2);
  auto g = FiniteGroupoid::make_with(FiniteSpace::discrete({"*"}), FiniteSpace::indiscrete(k.elements),
                                     {0, 0}, {0, 0}, {0}, {0, 1},
                                     [&](Point a, Point b) { return k.mul(a, b); });
  CHECK(check_groupoid(g));
  auto v = is_etale(g);
  CHECK_FALSE(v);
  CHECK(v.find("etale-criteria-agree")->passed);
}

TEST_CASE("broken composition is reported by law") {
  auto g = make_named("z2");
  // g.g = g instead of 1.
  g.comp[*g.composable.index(1, 1)] = 1;
  auto v = check_groupoid(g);
  CHECK_FALSE(v);
  CHECK_FALSE(v.find("inverse")->passed);
}

TEST_CASE("glocales and equivariant maps") {
  auto g = std::make_shared<const FiniteGroupoid>(make_named("pair2"));
  // pair(2) acting on its objects.
  auto objs = GLocale::make_with(g, g->objects, {0, 1},
                                 [&](Point a, Point) { return g->dom[a]; });
  CHECK(check_glocale(objs));
  // pair(2) acting on its arrows by composition, fibred along dom.
  auto arrows = GLocale::make_with(g, g->arrows, g->dom,
                                   [&](Point a, Point x) { return g->compose(a, x); });
  CHECK(check_glocale(arrows));
  auto z = std::make_shared<const FiniteGroupoid>(make_named("z2"));
  auto flip = GLocale::make_with(z, FiniteSpace::discrete({"p", "q"}), {0, 0},
                                 [&](Point a, Point x) { return a == 0 ? x : 1 - x; });
  CHECK(check_glocale(flip));
  auto fixed = GLocale::make_with(z, FiniteSpace::discrete({"*"}), {0},
                                  [](Point, Point x) { return x; });
  CHECK(check_glocale(fixed));
  std::vector<Point> collapse{0, 0};
  CHECK(check_equivariant(flip, fixed, collapse));
  std::vector<Point> section{0};
  CHECK_FALSE(check_equivariant(fixed, flip, section));

  auto broken = flip;
  broken.act[*broken.pairs.index(1, 0)] = 0;
  CHECK_FALSE(check_glocale(broken));
}
