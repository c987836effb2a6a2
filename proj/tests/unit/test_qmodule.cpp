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
#include "doctest.h"
#include "qkit/error.hpp"
#include "qkit/qmodule.hpp"

using namespace qkit;

namespace {

struct Z2 {
  GroupoidPtr g = std::make_shared<const FiniteGroupoid>(make_named("z2"));
  QuantalePtr q = std::make_shared<const InvQuantale>(InvQuantale::of_groupoid(g));

  GLocale swap() const {
    return GLocale::make_with(g, FiniteSpace::discrete({"x1", "x2"}), {0, 0},
                              [](Point a, Point x) { return a == 0 ? x : 1 - x; });
  }
  GLocale fixed(std::size_t n) const {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
    return GLocale::make_with(g, FiniteSpace::discrete(names), std::vector<Point>(n, 0),
                              [](Point, Point x) { return x; });
  }
  GLocale swap_plus_fixed() const {
    return GLocale::make_with(g, FiniteSpace::discrete({"x1", "x2", "y"}), {0, 0, 0},
                              [](Point a, Point x) { return a == 0 || x == 2 ? x : 1 - x; });
  }
  Elem arrows(std::initializer_list<Point> pts) const {
    PointSet s = 0;
    for (Point p : pts) s |= singleton(p);
    return q->of_arrows(s);
  }
};

}  // namespace

TEST_CASE("module of the Z2 swap action") {
  Z2 z;
  auto a = z.swap();
  REQUIRE(check_glocale(a));
  auto m = module_of_glocale(z.q, a);
  const Frame& f = m.frame();
  const Elem x1 = f.at(0b01), x2 = f.at(0b10);
  CHECK(m.act(z.arrows({1}), x1) == x2);
  CHECK(m.act(z.arrows({1}), x2) == x1);
  for (Elem x = 0; x < m.size(); ++x) {
    CHECK(m.act(z.q->unit, x) == x);
    CHECK(m.act(z.q->bottom(), x) == f.bottom());
  }
  CHECK(check_qlocale(m));
  CHECK(check_actions_coincide(a, m));
  CHECK(check_projection_factorization(a));

  auto t = module_tensor(m);
  CHECK(t.proj == a.proj);
  // alpha_*({x1}) = {(1,x1), (g,x2)}.
  const PointSet expected = singleton(*t.pairs.index(0, 0)) | singleton(*t.pairs.index(1, 1));
  CHECK(alpha_star(m, t, x1) == expected);
  CHECK(alpha_star_adjoint(m, t, x1) == expected);
  CHECK(check_alpha_star(m));
  CHECK(same_glocale(glocale_of_qlocale(m), a));
}

TEST_CASE("the quantale acting on itself") {
  Z2 z;
  auto reg = regular_glocale(z.g);
  REQUIRE(check_glocale(reg));
  auto m = module_of_glocale(z.q, reg);
  for (Elem a = 0; a < z.q->size(); ++a)
    for (Elem b = 0; b < z.q->size(); ++b) CHECK(m.act(a, b) == z.q->mul(a, b));
  auto t = module_tensor(m);
  CHECK(t.proj == z.g->dom);
  CHECK(alpha_star(m, t, z.q->unit) == mu_star(*z.q, z.q->unit));
  auto back = glocale_of_qlocale(m);
  CHECK(back.proj == z.g->dom);
  CHECK(same_glocale(back, reg));

  for (const char* kind : {"pair2", "sierpinski-z2", "pair3"}) {
    CAPTURE(kind);
    auto g = std::make_shared<const FiniteGroupoid>(make_named(kind));
    auto q = std::make_shared<const InvQuantale>(InvQuantale::of_groupoid(g));
    auto r = regular_glocale(g);
    auto mr = module_of_glocale(q, r);
    CHECK(check_qlocale(mr));
    CHECK(check_alpha_star(mr));
    CHECK(same_glocale(glocale_of_qlocale(mr), r));
  }
}

TEST_CASE("terminal action over a one-object groupoid") {
  Z2 z;
  auto m = module_of_glocale(z.q, z.fixed(1));
  CHECK(m.size() == 2);
  auto back = glocale_of_qlocale(m);
  CHECK(back.proj == std::vector<Point>{0});
  CHECK(same_glocale(back, z.fixed(1)));
}

TEST_CASE("planted module violations") {
  Z2 z;
  auto m = module_of_glocale(z.q, z.swap());
  const Frame& f = m.frame();
  {
    auto bad = m;
    bad.action[z.q->unit * m.size() + f.at(0b01)] = f.at(0b10);
    auto v = check_qlocale(bad);
    CHECK_FALSE(v.find("action-unital")->passed);
  }
  {
    // bx = b1 ^ x broken at b = e, x = {x1} only: e.{x1} = bottom.
    auto bad = m;
    bad.action[z.q->unit * m.size() + f.at(0b01)] = f.bottom();
    auto v = check_qlocale(bad);
    CHECK_FALSE(v.find("base-action-meet")->passed);
    CHECK(v.find("base-action-meet")->witness.find("x={x1}") != std::string::npos);
  }
}

TEST_CASE("reconstruction failures carry their error codes") {
  Z2 z;
  auto m = module_of_glocale(z.q, z.swap());
  // Everything acts as zero: p* sends the object space to bottom.
  auto zero = m;
  std::fill(zero.action.begin(), zero.action.end(), m.frame().bottom());
  try {
    glocale_of_qlocale(zero);
    FAIL("expected NoPointRealization");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPointRealization);
  }
  // g sends each point to the whole space, so alpha_* singles out no point.
  auto smeared = m;
  const Frame& f = m.frame();
  smeared.action[z.arrows({1}) * m.size() + f.at(0b01)] = f.top();
  smeared.action[z.arrows({1}) * m.size() + f.at(0b10)] = f.top();
  try {
    glocale_of_qlocale(smeared);
    FAIL("expected NotAFrameHom");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAFrameHom);
  }
}

TEST_CASE("lax inequality for a module-hom inducing map") {
  Z2 z;
  std::vector<Point> collapse{0, 0};
  auto v = check_lax_inequality(z.q, z.swap(), z.fixed(1), collapse);
  CHECK(v);
  CHECK(v.find("lax-inequality")->passed);
  CHECK(v.find("fullness-inequality")->passed);
  std::vector<Point> id{0, 1};
  CHECK(check_lax_inequality(z.q, z.swap(), z.swap(), id));
}

TEST_CASE("Z2-Loc and Q-Loc agree on a small corpus") {
  Z2 z;
  std::vector<GLocale> corpus{z.fixed(1), z.fixed(2), z.swap(), z.swap_plus_fixed()};
  CategoryCounts counts;
  auto v = check_category_isomorphism(z.q, corpus, &counts);
  CHECK(v);
  CHECK(counts.objects == 4);
  // A free orbit maps anywhere and a fixed point maps to a fixed point, so
  // |Hom(A, B)| = |B|^free(A) * fix(B)^fixed(A).
  const std::size_t size[] = {1, 2, 2, 3}, fix[] = {1, 2, 0, 1};
  const std::size_t free_orbits[] = {0, 0, 1, 1}, fixed_orbits[] = {1, 2, 0, 1};
  std::size_t expected = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::size_t h = 1;
      for (std::size_t k = 0; k < free_orbits[a]; ++k) h *= size[b];
      for (std::size_t k = 0; k < fixed_orbits[a]; ++k) h *= fix[b];
      expected += h;
    }
  CHECK(counts.equivariant_maps == expected);
  CHECK(counts.spatial_module_homs == counts.equivariant_maps);
}
