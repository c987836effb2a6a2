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
#include <cstdlib>
#include <set>

#include "doctest.h"
#include "qkit/error.hpp"
#include "qkit/verify.hpp"

using namespace qkit;

namespace {

GroupoidPtr groupoid_ref(const std::string& ref) { return kit::resolve_groupoid(ref); }

// Multisets of parts with the given weights summing to n.
std::size_t weighted_partitions(std::size_t n, const std::vector<std::size_t>& weights) {
  std::vector<std::size_t> ways(n + 1, 0);
  ways[0] = 1;
  for (std::size_t w : weights)
    for (std::size_t s = w; s <= n; ++s) ways[s] += ways[s - w];
  return ways[n];
}

std::string roundtrip_text(const io::Instance& inst) {
  const std::string text = io::save(inst);
  return io::save(io::parse(text));
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { setenv("QUANTALE_KIT_MAX_INSTANCES", value, 1); }
  ~EnvGuard() { unsetenv("QUANTALE_KIT_MAX_INSTANCES"); }
};

constexpr const char* kSwap = R"({
  "kind": "glocale",
  "name": "swap",
  "groupoid": "z2",
  "space": {"points": ["x1", "x2"], "neighborhoods": {"x1": ["x1"], "x2": ["x2"]}},
  "p": {"x1": "*", "x2": "*"},
  "act": [["1", "x1", "x1"], ["1", "x2", "x2"], ["g", "x1", "x2"], ["g", "x2", "x1"]]
})";

}  // namespace

TEST_CASE("discrete groupoids match connected-component partitions") {
  // Connected discrete groupoids are pair(k) x H with k^2 |H| arrows:
  // weights 1 (trivial), 2 (Z2), 3 (Z3), 4 (Z4, Z2xZ2, pair(2)).
  const std::vector<std::size_t> weights = {1, 2, 3, 4, 4, 4};
  std::size_t expected = 0;
  for (std::size_t m = 0; m <= 4; ++m) expected += weighted_partitions(m, weights);
  CHECK(expected == 14);
  const auto found = corpus::etale_groupoids({4, std::nullopt, true});
  CHECK(found.size() == expected);
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = i + 1; j < found.size(); ++j)
      CHECK_FALSE(corpus::isomorphic(*found[i].groupoid, *found[j].groupoid));
}

TEST_CASE("one object, at most two arrows, discrete: trivial group and Z2") {
  kit::EnumerateOptions o;
  o.groupoids = {2, 1, true};
  const auto all = kit::enumerate(o);
  REQUIRE(all.size() == 2);
  std::multiset<std::size_t> orders;
  for (const auto& inst : all) orders.insert(inst.groupoid->arrow_count());
  CHECK(orders == std::multiset<std::size_t>{1, 2});
  CHECK(corpus::isomorphic(*all[1].groupoid, *groupoid_ref("z2")));
}

TEST_CASE("discrete G-locales over a group count its G-sets") {
  // G-sets of size k: multisets of orbits; Z2 orbits have sizes 1, 2 and
  // Z3 orbits 1, 3.
  for (std::size_t k = 1; k <= 3; ++k) {
    corpus::ModuleBounds b{3, k, true};
    CHECK(corpus::glocales(groupoid_ref("z2"), b).size() == weighted_partitions(k, {1, 2}));
    CHECK(corpus::glocales(groupoid_ref("discrete-group:Z3"), b).size() == weighted_partitions(k, {1, 3}));
  }
  kit::EnumerateOptions o;
  o.kind = io::Kind::GLocale;
  o.over = groupoid_ref("z2");
  o.modules = {2, 2, true};
  const auto two = kit::enumerate(o);
  REQUIRE(two.size() == 2);
  // One is the trivial action, the other the swap.
  std::set<bool> moves;
  for (const auto& inst : two) moves.insert(inst.glocale->apply(1, 0) != 0);
  CHECK(moves == std::set<bool>{false, true});
}

TEST_CASE("Q-locales over the one-point identity groupoid are the T0 spaces") {
  // T0 spaces up to homeomorphism are posets: 1, 2, 5 on 1, 2, 3 points.
  const auto g = groupoid_ref("identity-on-space:discrete:1");
  const auto q = io::quantale_of(g);
  CHECK(corpus::qlocales(q, {2, std::nullopt, false}).size() == 3);
  CHECK(corpus::qlocales(q, {3, std::nullopt, false}).size() == 8);
  CHECK(corpus::glocales(g, {3, std::nullopt, false}).size() == 8);

  kit::EnumerateOptions o;
  o.kind = io::Kind::QLocale;
  o.over = g;
  o.modules = {2, std::nullopt, false};
  CHECK(kit::enumerate(o).size() == 3);
}

TEST_CASE("direct Q-locale enumeration agrees with G-locales") {
  for (const char* ref : {"z2", "pair(2)", "discrete-group:Z3", "identity-on-space:chain:2"}) {
    CAPTURE(ref);
    const auto g = groupoid_ref(ref);
    const auto q = io::quantale_of(g);
    const corpus::ModuleBounds b{3, std::nullopt, false};
    const auto gs = corpus::glocales(g, b);
    const auto qs = corpus::qlocales(q, b);
    CHECK(gs.size() == qs.size());
    std::set<std::vector<std::uint64_t>> from_g, direct;
    for (const auto& a : gs) from_g.insert(corpus::canonical_key(module_of_glocale(q, a)));
    for (const auto& m : qs) direct.insert(corpus::canonical_key(m));
    CHECK(from_g == direct);
  }
}

TEST_CASE("save and parse are inverse for every kind") {
  const auto g = groupoid_ref("z2");
  const io::Instance gi = io::of_groupoid(g, "z2");
  CHECK(roundtrip_text(gi) == io::save(gi));

  const io::Instance swap = io::parse(kSwap);
  CHECK(swap.kind == io::Kind::GLocale);
  CHECK(roundtrip_text(swap) == io::save(swap));

  const io::Instance ql = kit::convert(swap);
  CHECK(ql.kind == io::Kind::QLocale);
  CHECK(ql.qlocale->quantale->size() == 4);
  CHECK(ql.qlocale->size() == 4);
  CHECK(roundtrip_text(ql) == io::save(ql));

  io::Instance hom;
  hom.kind = io::Kind::Hom;
  hom.groupoid = g;
  hom.meta.name = "swap-to-point";
  const auto point = corpus::glocales(g, {1, 1, false});
  REQUIRE(point.size() == 1);
  hom.hom = io::Hom{*swap.glocale, point[0], {0, 0}};
  CHECK(io::validate(hom).passed());
  CHECK(roundtrip_text(hom) == io::save(hom));
  CHECK(kit::check_instance(hom, "hom").passed());

  const std::string compact = io::save(swap, true);
  CHECK(compact.find('\n') == compact.size() - 1);
  CHECK(io::save(io::parse(compact)) == io::save(swap));
}

TEST_CASE("conversion roundtrips are byte-identical") {
  const io::Instance swap = io::parse(kSwap);
  CHECK(kit::roundtrip(swap, "swap").passed());
  CHECK(kit::roundtrip(kit::convert(swap), "swap").passed());
  CHECK(io::save(kit::convert(kit::convert(swap))) == io::save(swap));
}

TEST_CASE("parse errors carry a line or a field") {
  try {
    io::parse("{\n  \"kind\": \"groupoid\",\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    io::parse(R"({"kind": "glocale", "groupoid": "z2", "p": {}, "act": []})");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("missing key \"space\"") != std::string::npos);
  }
  try {
    io::parse(R"({"kind": "glocale", "groupoid": "z2",
      "space": {"points": ["x"], "neighborhoods": {"x": ["x"]}},
      "p": {"x": "*"}, "act": [["1", "x", "x"], ["g", "x", "y"]]})");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("act[1][2]") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse(R"({"kind": "frobnicator"})"), Error);
}

TEST_CASE("invalid instances load only on request") {
  std::string text = kSwap;
  // g sends both points to x2, so g g is not the identity.
  text.replace(text.find(R"(["g", "x2", "x1"])"), 17, R"(["g", "x2", "x2"])");
  try {
    io::parse(text);
    FAIL("expected InvalidInstance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInstance);
    CHECK(std::string(e.what()).find("--allow-invalid") != std::string::npos);
  }
  io::LoadOptions lax;
  lax.allow_invalid = true;
  const io::Instance bad = io::parse(text, lax);
  const Report r = kit::check_instance(bad, "bad");
  CHECK_FALSE(r.passed());
  CHECK(r.count(Status::Fail) > 0);
}

TEST_CASE("every report row carries a known anchor") {
  kit::VerifyBounds b;
  b.only = {"z2", "pair(2)", "identity-on-space:chain:2"};
  const Report r = kit::verify(kit::Scope::All, b);
  CHECK(r.passed());
  CHECK(r.rows().size() > 100);
  for (const auto& row : r.rows()) {
    CAPTURE(row.law);
    CHECK(is_known_anchor(row.anchor));
  }
  for (const auto& a : known_anchors()) CHECK(std::string(a).find('.') == std::string::npos);
}

TEST_CASE("reports are deterministic and the JSON lines mirror the text") {
  kit::VerifyBounds b;
  b.only = {"z2", "discrete-group:Z3"};
  const Report one = kit::verify(kit::Scope::Bijection, b);
  const Report two = kit::verify(kit::Scope::Bijection, b);
  CHECK(one.text(false) == two.text(false));
  CHECK(one.json_lines(false) == two.json_lines(false));
  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  CHECK(lines(one.text(true)) == lines(one.json_lines(true)));
  CHECK(one.json_lines(false).find("\"anchor\":\"lemma:strict-bijection\"") != std::string::npos);
}

TEST_CASE("single-groupoid verify runs") {
  kit::VerifyBounds b;
  b.only = {"z2"};
  const Report alpha = kit::verify(kit::Scope::AlphaStar, b);
  CHECK(alpha.passed());
  CHECK(alpha.count(Status::Pass) > 0);

  b.only = {"identity-on-space:discrete:1"};
  b.max_points = 1;
  const Report cat = kit::verify(kit::Scope::CatIso, b);
  CHECK(cat.passed());
  CHECK(cat.count(Status::Pass) > 0);

  CHECK(kit::scope_from_string("lemma-2.1") == kit::Scope::ProjectionFactorization);
  CHECK_FALSE(kit::scope_from_string("everything"));
}

TEST_CASE("the instance cap refuses with an estimate") {
  EnvGuard cap("10");
  CHECK(corpus::max_instances() == 10);
  try {
    corpus::glocales(groupoid_ref("z2"), {3, std::nullopt, false});
    FAIL("expected Bound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Bound);
    CHECK(std::string(e.what()).find("about") != std::string::npos);
  }
}

TEST_CASE("seeded sampling is reproducible") {
  const auto a = corpus::sample_glocales(groupoid_ref("z2"), 3, 5, 7);
  const auto b = corpus::sample_glocales(groupoid_ref("z2"), 3, 5, 7);
  REQUIRE(a.size() == b.size());
  CHECK_FALSE(a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(corpus::canonical_key(a[i]) == corpus::canonical_key(b[i]));
    CHECK(check_glocale(a[i]).passed());
  }
  const auto gs = corpus::sample_groupoids(4, 6, 11);
  for (const auto& n : gs) CHECK(is_etale(*n.groupoid).passed());
}

TEST_CASE("quantale dumps") {
  const auto q = io::quantale_of(groupoid_ref("pair(2)"));
  CHECK(kit::show_partial_units(*q).rfind("partial units: 7\n", 0) == 0);
  const std::string sp = kit::show_support(*io::quantale_of(groupoid_ref("z2")));
  CHECK(sp.find("sp({g}) = {1}") != std::string::npos);
  const auto id = io::quantale_of(groupoid_ref("identity-on-space:chain:2"));
  CHECK(partial_units(*id).size() == id->size());
}
