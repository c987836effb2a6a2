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
#include "qkit/quantale.hpp"

using namespace qkit;

namespace {

QuantalePtr quantale(const std::string& kind, std::vector<std::string> params = {}) {
  auto g = std::make_shared<const FiniteGroupoid>(make_named(kind, params));
  return std::make_shared<const InvQuantale>(InvQuantale::of_groupoid(g));
}

Elem elem(const InvQuantale& q, std::initializer_list<const char*> arrows) {
  PointSet s = 0;
  for (const char* a : arrows) s |= singleton(*q.groupoid->arrows.find(a));
  return q.of_arrows(s);
}

// Number of partial bijections of an n-set: sum over k of C(n,k)^2 k!.
std::size_t partial_bijections(std::size_t n) {
  std::size_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    std::size_t c = 1, fact = 1;
    for (std::size_t i = 0; i < k; ++i) {
      c = c * (n - i) / (i + 1);
      fact *= i + 1;
    }
    total += c * c * fact;
  }
  return total;
}

}  // namespace

TEST_CASE("Z2 quantale tables") {
  auto q = quantale("z2");
  CHECK(q->size() == 4);
  const Elem one = elem(*q, {"1"}), g = elem(*q, {"g"}), all = elem(*q, {"1", "g"});
  CHECK(q->mul(g, g) == one);
  CHECK(q->mul(one, g) == g);
  CHECK(q->mul(all, g) == all);
  CHECK(q->star(g) == g);
  CHECK(q->unit == one);
  CHECK(q->base.size() == 2);
  CHECK(partial_units(*q).size() == 3);
  CHECK(support(*q)[g] == one);
  CHECK(check_inverse_quantal_frame(*q));
  CHECK(check_mu_star(*q));
  // mu_*({1}) = {(1,1), (g,g)}.
  const auto& g2 = q->groupoid->composable;
  CHECK(mu_star(*q, one) == (singleton(*g2.index(0, 0)) | singleton(*g2.index(1, 1))));
  CHECK(mu_star(*q, q->bottom()) == 0);
}

TEST_CASE("pair groupoid quantales") {
  auto q = quantale("pair2");
  CHECK(q->size() == 16);
  CHECK(q->mul(elem(*q, {"(1,2)"}), elem(*q, {"(2,1)"})) == elem(*q, {"(1,1)"}));
  CHECK(q->unit == elem(*q, {"(1,1)", "(2,2)"}));
  CHECK(partial_units(*q).size() == partial_bijections(2));
  const Elem a = elem(*q, {"(1,2)"});
  CHECK(support(*q)[a] == elem(*q, {"(1,1)"}));
  CHECK(q->mul(support(*q)[a], a) == a);
  CHECK(check_inverse_quantal_frame(*q));
  CHECK(check_mu_star(*q));
  // mu_*(e) = {(g,h) | gh is a unit} = pairs (g, g^-1).
  const auto& g = *q->groupoid;
  PointSet inverse_pairs = 0;
  for (Point x = 0; x < g.arrow_count(); ++x) inverse_pairs |= singleton(*g.composable.index(x, g.inv[x]));
  CHECK(mu_star(*q, q->unit) == inverse_pairs);

  auto q3 = quantale("pair3");
  CHECK(q3->size() == 512);
  CHECK(partial_units(*q3).size() == partial_bijections(3));
  CHECK(check_inverse_quantal_frame(*q3));
  CHECK(check_mu_star(*q3));
}

TEST_CASE("identity groupoid quantale is its frame with meet") {
  auto q = quantale("identity-on-space", {"chain:3"});
  for (Elem a = 0; a < q->size(); ++a)
    for (Elem b = 0; b < q->size(); ++b) CHECK(q->mul(a, b) == q->frame().meet(a, b));
  CHECK(q->unit == q->top());
  CHECK(partial_units(*q).size() == q->size());
  CHECK(check_inverse_quantal_frame(*q));
}

TEST_CASE("groupoid-free quantale: Boolean frame with meet") {
  auto frame = std::make_shared<const Frame>(Frame::of_space(FiniteSpace::discrete({"a", "b"})));
  std::vector<Elem> mult, invol;
  for (Elem a = 0; a < 4; ++a) {
    invol.push_back(a);
    for (Elem b = 0; b < 4; ++b) mult.push_back(frame->meet(a, b));
  }
  auto q = InvQuantale::from_tables(frame, mult, invol, frame->top());
  auto v = check_inverse_quantal_frame(q);
  CHECK(v);
  CHECK(v.find("support-exists")->passed);
  CHECK_FALSE(v.find("support-exists")->inconclusive);
  auto s = search_support(q);
  CHECK(s.exhausted);
  CHECK(s.found.size() == 1);
}

TEST_CASE("support search on a groupoid quantale finds exactly the groupoid support") {
  auto q = quantale("pair2");
  auto bare = InvQuantale::from_tables(q->carrier, q->mult, q->invol, q->unit);
  auto s = search_support(bare);
  REQUIRE(s.exhausted);
  REQUIRE(s.found.size() == 1);
  CHECK(s.found[0] == support(*q));
  auto big = quantale("pair3");
  auto bare3 = InvQuantale::from_tables(big->carrier, big->mult, big->invol, big->unit);
  auto v = check_inverse_quantal_frame(bare3);
  CHECK(v.find("support-exists")->inconclusive);
}

TEST_CASE("planted Z2 product violation is caught") {
  auto q = *quantale("z2");
  const Elem g = elem(q, {"g"});
  q.mult[g * q.size() + g] = g;
  auto v = check_inverse_quantal_frame(q);
  CHECK_FALSE(v);
  CHECK_FALSE(v.find("join-preserving-left")->passed);
  CHECK(v.find("involution-reverses-products")->passed);
}

TEST_CASE("non-etale groupoid is refused") {
  auto k = groups::cyclic(2);
  auto g = std::make_shared<const FiniteGroupoid>(FiniteGroupoid::make_with(
      FiniteSpace::discrete({"*"}), FiniteSpace::indiscrete(k.elements), {0, 0}, {0, 0}, {0},
      {0, 1}, [&](Point a, Point b) { return k.mul(a, b); }));
  try {
    InvQuantale::of_groupoid(g);
    FAIL("expected NotEtale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEtale);
  }
}
