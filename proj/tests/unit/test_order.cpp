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
#include "qkit/order.hpp"

using namespace qkit;

namespace {

// Families of subsets of an n-set closed under union and intersection,
// containing the empty set and the whole set. Brute force over all families.
std::vector<std::vector<PointSet>> all_topologies(std::size_t n) {
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<PointSet>> out;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    if (!(fam & 1) || !((fam >> (subsets - 1)) & 1)) continue;
    bool ok = true;
    for (std::size_t a = 0; a < subsets && ok; ++a)
      for (std::size_t b = 0; b < subsets && ok; ++b)
        if (((fam >> a) & 1) && ((fam >> b) & 1))
          ok = ((fam >> (a | b)) & 1) && ((fam >> (a & b)) & 1);
    if (!ok) continue;
    std::vector<PointSet> opens;
    for (std::size_t a = 0; a < subsets; ++a)
      if ((fam >> a) & 1) opens.push_back(a);
    out.push_back(opens);
  }
  return out;
}

std::vector<std::string> pts(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

}  // namespace

TEST_CASE("topology counts on small sets") {
  const std::size_t expected_all[] = {1, 1, 4, 29};
  const std::size_t expected_t0[] = {1, 1, 3, 19};
  for (std::size_t n = 0; n <= 3; ++n) {
    auto tops = all_topologies(n);
    CHECK(tops.size() == expected_all[n]);
    std::size_t t0 = 0;
    for (const auto& o : tops) {
      auto s = FiniteSpace::from_opens(pts(n), o);
      CHECK(s.opens().size() == o.size());
      CHECK(Frame::of_space(s).check_distributive());
      if (s.is_t0()) ++t0;
    }
    CHECK(t0 == expected_t0[n]);
  }
}

TEST_CASE("from_opens rejects families not closed under union") {
  CHECK_THROWS_AS(FiniteSpace::from_opens(pts(2), {0, 1, 2, 3 & 0}), Error);
  try {
    FiniteSpace::from_opens(pts(2), {0, 1, 2});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInstance);
  }
}

TEST_CASE("continuity is monotonicity of neighbourhoods") {
  auto s = FiniteSpace::from_opens({"a", "b"}, {0, 1, 3});
  auto d = FiniteSpace::discrete({"p", "q"});
  std::vector<Point> swap{1, 0}, id{0, 1};
  CHECK(is_continuous(s, s, id));
  CHECK_FALSE(is_continuous(s, s, swap));
  CHECK(is_continuous(d, s, swap));
  CHECK_FALSE(is_continuous(s, d, id));
  CHECK_THROWS_AS(ContinuousMap(s, d, id), Error);
}

TEST_CASE("direct image is left adjoint to inverse image for open maps") {
  auto x = FiniteSpace::discrete(pts(3));
  auto y = FiniteSpace::discrete({"a", "b"});
  ContinuousMap f(x, y, {0, 0, 1});
  auto lower = direct_image(f);
  auto upper = inverse_image(f);
  CHECK(check_join_preserving(lower));
  CHECK(check_meet_preserving(upper));
  CHECK(check_galois(lower, upper));
  auto ra = right_adjoint(lower);
  CHECK(ra.table == upper.table);

  auto s = FiniteSpace::from_opens({"a", "b"}, {0, 1, 3});
  ContinuousMap g(s, s, {1, 1});
  CHECK_THROWS_AS(direct_image(g), Error);
}

TEST_CASE("points of a spatial frame recover a T0 space") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& o : all_topologies(n)) {
      auto s = FiniteSpace::from_opens(pts(n), o);
      auto real = points_of_frame(Frame::of_space(s));
      if (s.is_t0()) {
        CHECK(real.space.size() == n);
      } else {
        CHECK(real.space.size() < n);
      }
      CHECK(real.space.opens().size() == o.size());
    }
}

TEST_CASE("from_order detects non-distributive lattices") {
  // M3: bottom 0, atoms 1,2,3, top 4.
  std::vector<std::uint8_t> leq(25, 0);
  for (Elem a = 0; a < 5; ++a) {
    leq[a * 5 + a] = 1;
    leq[0 * 5 + a] = 1;
    leq[a * 5 + 4] = 1;
  }
  auto m3 = Frame::from_order(5, leq, {"0", "a", "b", "c", "1"});
  CHECK_FALSE(m3.check_distributive());
  CHECK_THROWS_AS(points_of_frame(m3), Error);
}

TEST_CASE("isomorphism search") {
  auto a = Frame::of_space(FiniteSpace::from_opens({"a", "b", "c"}, {0, 1, 3, 7}));
  auto b = Frame::of_space(FiniteSpace::from_opens({"a", "b", "c"}, {0, 4, 6, 7}));
  auto c = Frame::of_space(FiniteSpace::from_opens({"a", "b", "c"}, {0, 1, 2, 3, 7}));
  auto iso = find_isomorphism(a, b);
  REQUIRE(iso);
  CHECK(is_order_isomorphism(a, b, *iso));
  CHECK_FALSE(find_isomorphism(a, c));
}

TEST_CASE("pullback of two maps into a point is the product") {
  auto s = FiniteSpace::from_opens({"a", "b"}, {0, 1, 3});
  std::vector<Point> z{0, 0};
  auto pb = pullback_space(s, z, s, z);
  CHECK(pb.space.size() == 4);
  // Product of two Sierpinski spaces has 6 opens.
  CHECK(pb.space.opens().size() == 6);
  CHECK(pb.space.name(*pb.index(0, 1)) == "(a,b)");
}

TEST_CASE("tensoring with the base itself is the identity") {
  auto two = std::make_shared<const Frame>(Frame::of_space(FiniteSpace::discrete({"*"})));
  auto three = std::make_shared<const Frame>(
      Frame::of_space(FiniteSpace::from_opens({"a", "b"}, {0, 1, 3})));
  BaseModule r{three, 2, {}};
  BaseModule l{two, 2, {}};
  for (Elem a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      r.action.push_back(b == 0 ? three->bottom() : a);
  for (std::size_t b = 0; b < 2; ++b)
    for (Elem x = 0; x < 2; ++x) l.action.push_back(b == 0 ? two->bottom() : x);
  auto t = tensor_oracle(r, l);
  CHECK(t.lattice().size() == 3);
  // The identity bimorphism L x 2 -> L factors.
  std::vector<Elem> phi;
  for (Elem a = 0; a < 3; ++a)
    for (Elem x = 0; x < 2; ++x) phi.push_back(x == two->bottom() ? three->bottom() : a);
  CHECK(check_balanced_bimorphism(r, l, *three, phi));
  auto h = t.factor(three, phi);
  CHECK(h.has_value());
}

TEST_CASE("tensor oracle refuses large factors") {
  auto big = std::make_shared<const Frame>(Frame::of_space(FiniteSpace::discrete(pts(4))));
  BaseModule m{big, 1, std::vector<Elem>(16)};
  for (Elem a = 0; a < 16; ++a) m.action[a] = a;
  try {
    tensor_oracle(m, m);
    FAIL("expected bound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OracleBound);
  }
}
