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
#include "qkit/sheaf.hpp"

using namespace qkit;

namespace {

struct Setup {
  GroupoidPtr g;
  QuantalePtr q;
  explicit Setup(const std::string& kind, std::vector<std::string> params = {})
      : g(std::make_shared<const FiniteGroupoid>(make_named(kind, params))),
        q(std::make_shared<const InvQuantale>(InvQuantale::of_groupoid(g))) {}
  OpenQLocale regular() const {
    auto oc = open_qlocale(module_of_glocale(q, regular_glocale(g)));
    REQUIRE(oc.open);
    return *oc.open;
  }
  GLocale trivial(const FiniteSpace& x, std::vector<Point> proj) const {
    return GLocale::make_with(g, x, std::move(proj), [](Point, Point x) { return x; });
  }
};

// Subsets of arrows of a discrete groupoid on which d is injective.
std::size_t d_injective_subsets(const FiniteGroupoid& g) {
  std::size_t count = 0;
  for (PointSet s = 0; s < (PointSet{1} << g.arrow_count()); ++s) {
    PointSet seen = 0;
    bool ok = true;
    for (Point a : members(s)) {
      ok = ok && !contains(seen, g.dom[a]);
      seen |= singleton(g.dom[a]);
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("Q over itself is open with the quantale support") {
  for (const char* kind : {"z2", "pair2", "sierpinski-z2"}) {
    CAPTURE(kind);
    Setup s(kind);
    auto x = s.regular();
    CHECK(x.supp == support(*s.q));
    CHECK(x.laws);
    CHECK(check_support_laws(x));
    CHECK(is_etale_qlocale(x));
    CHECK(check_local_bisections(s.q));
  }
}

TEST_CASE("section counts") {
  Setup z("z2");
  auto sz = local_sections(z.regular());
  CHECK(sz == partial_units(*z.q));
  CHECK(sz.size() == 3);

  Setup p("pair2");
  auto sp = local_sections(p.regular());
  CHECK(partial_units(*p.q).size() == 7);
  CHECK(sp.size() == d_injective_subsets(*p.g));
  CHECK(sp.size() == 9);
}

TEST_CASE("Z2 swap module support and support laws") {
  Setup z("z2");
  auto swap = GLocale::make_with(z.g, FiniteSpace::discrete({"x1", "x2"}), {0, 0},
                                 [](Point a, Point x) { return a == 0 ? x : 1 - x; });
  auto oc = open_qlocale(module_of_glocale(z.q, swap));
  REQUIRE(oc.open);
  const Elem x1 = oc.open->module.frame().at(0b01);
  CHECK(oc.open->supp[x1] == z.q->unit);
  CHECK(oc.open->laws);
  CHECK(check_support_laws(*oc.open));
  CHECK(is_etale_qlocale(*oc.open));
}

TEST_CASE("pair(2) acting on itself: sp(ax) <= sp(a)") {
  Setup p("pair2");
  auto x = p.regular();
  auto arrow = [&](const char* n) { return p.q->of_arrows(singleton(*p.g->arrows.find(n))); };
  const Elem a = arrow("(1,2)"), e = arrow("(2,1)");
  CHECK(p.q->mul(a, e) == arrow("(1,1)"));
  CHECK(x.supp[x.module.act(a, e)] == arrow("(1,1)"));
  CHECK(support(*p.q)[a] == arrow("(1,1)"));
}

TEST_CASE("closed point of the Sierpinski space is not open over it") {
  Setup s("sierpinski");
  auto closed = s.trivial(FiniteSpace::discrete({"c"}), {1});
  REQUIRE(check_glocale(closed));
  auto oc = open_qlocale(module_of_glocale(s.q, closed));
  CHECK_FALSE(oc.open);
  CHECK(oc.not_open_witness.find("not open") != std::string::npos);
}

TEST_CASE("Sierpinski space over a point is open but not etale") {
  Setup s("identity-on-space", {"point"});
  auto x = s.trivial(named::sierpinski(), {0, 0});
  REQUIRE(check_glocale(x));
  auto oc = open_qlocale(module_of_glocale(s.q, x));
  REQUIRE(oc.open);
  auto sections = local_sections(*oc.open);
  CHECK(sections.size() == 2);
  auto v = is_etale_qlocale(*oc.open);
  CHECK_FALSE(v.find("sections-cover")->passed);
  CHECK_FALSE(v.find("projection-local-homeomorphism")->passed);
  CHECK(v.find("etale-criteria-agree")->passed);
}

TEST_CASE("sheaf homs") {
  Setup z("z2");
  auto two = z.trivial(FiniteSpace::discrete({"y1", "y2"}), {0, 0});
  auto oc = open_qlocale(module_of_glocale(z.q, two));
  REQUIRE(oc.open);
  const auto& x = *oc.open;
  std::vector<Elem> id(x.size());
  for (Elem e = 0; e < x.size(); ++e) id[e] = e;
  CHECK(check_sheaf_hom(x, x, id));
  // Send {y1} to bottom: supports differ.
  auto bad = id;
  const Frame& f = x.module.frame();
  bad[f.at(0b01)] = f.bottom();
  bad[f.top()] = f.at(0b10);
  auto v = check_sheaf_hom(x, x, bad);
  CHECK_FALSE(v.find("preserves-supports")->passed);
  CHECK(v.find("preserves-supports")->witness == "{y1}");
}

TEST_CASE("BG, Q-Etale and Q-Sh agree on small corpora") {
  Setup z("z2");
  std::vector<GLocale> corpus{
      z.trivial(FiniteSpace::discrete({"y"}), {0}),
      z.trivial(FiniteSpace::discrete({"y1", "y2"}), {0, 0}),
      GLocale::make_with(z.g, FiniteSpace::discrete({"x1", "x2"}), {0, 0},
                         [](Point a, Point x) { return a == 0 ? x : 1 - x; }),
  };
  SheafCounts counts;
  auto v = check_sheaf_category_isomorphisms(z.q, corpus, &counts);
  CHECK(v);
  CHECK(counts.sheaf_maps == counts.sheaf_homs);
  CHECK(counts.objects == 3);

  Setup id("identity-on-space", {"discrete:2"});
  std::vector<GLocale> over{
      id.trivial(FiniteSpace::discrete({"a"}), {0}),
      id.trivial(FiniteSpace::discrete({"a", "b"}), {0, 1}),
      id.trivial(FiniteSpace::discrete({"a", "b", "c"}), {0, 0, 1}),
  };
  CHECK(check_sheaf_category_isomorphisms(id.q, over, &counts));
  CHECK(counts.sheaf_maps == counts.sheaf_homs);
}
