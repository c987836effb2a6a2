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
#include "qkit/quantale.hpp"

#include "qkit/error.hpp"

namespace qkit {

namespace {

std::string triple(const InvQuantale& q, Elem a, Elem b, Elem c) {
  return "(" + q.label(a) + ", " + q.label(b) + ", " + q.label(c) + ")";
}

std::string pair(const InvQuantale& q, Elem a, Elem b) {
  return "(" + q.label(a) + ", " + q.label(b) + ")";
}

}  // namespace

void InvQuantale::refresh_base() {
  base.clear();
  for (Elem a = 0; a < size(); ++a)
    if (carrier->leq(a, unit)) base.push_back(a);
}

Elem InvQuantale::of_arrows(PointSet s) const {
  if (auto e = carrier->find(s)) return *e;
  fail(ErrorCode::OpennessViolation,
       "arrow set " + groupoid->arrows.format(s) + " is not open");
}

Elem InvQuantale::base_of_objects(PointSet objects) const {
  if (!groupoid) fail(ErrorCode::Internal, "quantale has no groupoid");
  return of_arrows(image_of(groupoid->unit, objects));
}

PointSet InvQuantale::objects_of_base(Elem b) const {
  if (!groupoid) fail(ErrorCode::Internal, "quantale has no groupoid");
  return image_of(groupoid->dom, carrier->mask(b));
}

InvQuantale InvQuantale::of_groupoid(GroupoidPtr g) {
  if (auto v = check_groupoid(*g); !v)
    fail(ErrorCode::InvalidInstance, "not a groupoid: " + v.first_failure()->law + " at " +
                                         v.first_failure()->witness);
  if (auto v = is_etale(*g); !v)
    fail(ErrorCode::NotEtale, "groupoid is not etale: " + v.first_failure()->witness);
  if (g->arrows.count_opens(kMaxQuantaleSize + 1) > kMaxQuantaleSize)
    fail(ErrorCode::Bound, "quantale would exceed " + std::to_string(kMaxQuantaleSize) +
                               " elements");
  InvQuantale q;
  q.groupoid = g;
  q.carrier = std::make_shared<const Frame>(Frame::of_space(g->arrows));
  const std::size_t n = q.size();
  const Pullback& g2 = g->composable;
  q.mult.resize(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const PointSet pairs = g2.rectangle(q.carrier->mask(a), q.carrier->mask(b));
      q.mult[std::size_t{a} * n + b] = q.of_arrows(image_of(g->comp, pairs));
    }
  q.invol.resize(n);
  for (Elem a = 0; a < n; ++a) q.invol[a] = q.of_arrows(image_of(g->inv, q.carrier->mask(a)));
  q.unit = q.of_arrows(image_of(g->unit, g->objects.full()));
  q.refresh_base();
  return q;
}

InvQuantale InvQuantale::from_tables(FramePtr carrier, std::vector<Elem> mult,
                                     std::vector<Elem> invol, Elem unit) {
  const std::size_t n = carrier->size();
  if (n > kMaxQuantaleSize)
    fail(ErrorCode::Bound, "quantale exceeds " + std::to_string(kMaxQuantaleSize) + " elements");
  if (mult.size() != n * n || invol.size() != n || unit >= n)
    fail(ErrorCode::InvalidInstance, "quantale table shapes do not match the carrier");
  for (Elem x : mult)
    if (x >= n) fail(ErrorCode::InvalidInstance, "multiplication entry out of range");
  for (Elem x : invol)
    if (x >= n) fail(ErrorCode::InvalidInstance, "involution entry out of range");
  InvQuantale q;
  q.carrier = std::move(carrier);
  q.mult = std::move(mult);
  q.invol = std::move(invol);
  q.unit = unit;
  q.refresh_base();
  return q;
}

std::vector<Elem> partial_units(const InvQuantale& q) {
  std::vector<Elem> out;
  for (Elem s = 0; s < q.size(); ++s)
    if (q.in_base(q.mul(s, q.star(s))) && q.in_base(q.mul(q.star(s), s))) out.push_back(s);
  return out;
}

Verdict check_partial_units(const InvQuantale& q, std::span<const Elem> units) {
  const Frame& f = q.frame();
  std::vector<bool> is_unit(q.size(), false);
  for (Elem s : units) is_unit[s] = true;
  Verdict v;

  std::string witness;
  for (Elem s : units) {
    for (Elem t = 0; t < q.size() && witness.empty(); ++t)
      if (f.leq(t, s) && !is_unit[t]) witness = q.label(t) + " <= " + q.label(s);
    if (!witness.empty()) break;
  }
  v.record("partial-units-downward-closed", witness.empty(), witness);

  witness.clear();
  Elem cover = f.bottom();
  for (Elem a = 0; a < q.size() && witness.empty(); ++a) {
    Elem acc = f.bottom();
    for (Elem s : units)
      if (f.leq(s, a)) acc = f.join(acc, s);
    if (acc != a) witness = q.label(a);
  }
  for (Elem s : units) cover = f.join(cover, s);
  v.record("partial-units-join-dense", witness.empty(), witness);
  v.record("partial-units-cover", cover == f.top(), "join is " + q.label(cover));

  witness.clear();
  for (Elem s : units)
    if (q.mul(q.mul(s, q.star(s)), s) != s) {
      witness = q.label(s);
      break;
    }
  v.record("partial-unit-regular", witness.empty(), witness);

  witness.clear();
  for (Elem s : units)
    if (f.meet(q.mul(s, q.top()), q.unit) != q.mul(s, q.star(s))) {
      witness = q.label(s);
      break;
    }
  v.record("partial-unit-range", witness.empty(), witness);
  return v;
}

Verdict check_inverse_quantal_frame(const InvQuantale& q) {
  const Frame& f = q.frame();
  const Elem n = static_cast<Elem>(q.size());
  Verdict v;
  v.merge(f.check_distributive());

  auto law = [&](const char* name, auto&& body) {
    std::string w;
    body(w);
    v.record(name, w.empty(), w);
  };

  law("associativity", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Elem ab = q.mul(a, b);
        for (Elem c = 0; c < n; ++c)
          if (q.mul(ab, c) != q.mul(a, q.mul(b, c))) {
            w = triple(q, a, b, c);
            return;
          }
      }
  });
  law("join-preserving-left", [&](std::string& w) {
    for (Elem c = 0; c < n; ++c)
      if (q.mul(f.bottom(), c) != f.bottom()) {
        w = "bottom . " + q.label(c);
        return;
      }
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (q.mul(f.join(a, b), c) != f.join(q.mul(a, c), q.mul(b, c))) {
            w = triple(q, a, b, c);
            return;
          }
  });
  law("join-preserving-right", [&](std::string& w) {
    for (Elem c = 0; c < n; ++c)
      if (q.mul(c, f.bottom()) != f.bottom()) {
        w = q.label(c) + " . bottom";
        return;
      }
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (q.mul(c, f.join(a, b)) != f.join(q.mul(c, a), q.mul(c, b))) {
            w = triple(q, c, a, b);
            return;
          }
  });
  law("unit", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      if (q.mul(q.unit, a) != a || q.mul(a, q.unit) != a) {
        w = q.label(a);
        return;
      }
  });
  law("involution-involutive", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      if (q.star(q.star(a)) != a) {
        w = q.label(a);
        return;
      }
  });
  law("involution-join", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b)
        if (q.star(f.join(a, b)) != f.join(q.star(a), q.star(b))) {
          w = pair(q, a, b);
          return;
        }
  });
  law("involution-reverses-products", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (q.star(q.mul(a, b)) != q.mul(q.star(b), q.star(a))) {
          w = pair(q, a, b);
          return;
        }
  });
  law("base-self-adjoint", [&](std::string& w) {
    for (Elem b : q.base)
      if (q.star(b) != b) {
        w = q.label(b);
        return;
      }
  });
  law("base-idempotent", [&](std::string& w) {
    for (Elem b : q.base)
      if (q.mul(b, b) != b) {
        w = q.label(b);
        return;
      }
  });
  law("base-left-meet", [&](std::string& w) {
    for (Elem b : q.base) {
      const Elem b1 = q.mul(b, q.top());
      for (Elem a = 0; a < n; ++a)
        if (q.mul(b, a) != f.meet(b1, a)) {
          w = pair(q, b, a);
          return;
        }
    }
  });
  law("base-right-meet", [&](std::string& w) {
    for (Elem b : q.base) {
      const Elem b1 = q.mul(q.top(), b);
      for (Elem a = 0; a < n; ++a)
        if (q.mul(a, b) != f.meet(b1, a)) {
          w = pair(q, a, b);
          return;
        }
    }
  });

  const auto units = partial_units(q);
  v.merge(check_partial_units(q, units));

  if (q.groupoid) {
    const auto sp = support(q);
    v.merge(check_support(q, sp));
  } else {
    const auto search = search_support(q);
    if (!search.found.empty()) {
      v.pass("support-exists");
    } else if (search.exhausted) {
      v.fail("support-exists", "no join-preserving B-valued map satisfies the support axioms");
    } else {
      v.inconclusive("support-exists", "support search skipped for |Q| = " +
                                           std::to_string(n) + " > 16");
    }
  }
  return v;
}

}  // namespace qkit
