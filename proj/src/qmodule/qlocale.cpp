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
#include "qkit/qmodule.hpp"

namespace qkit {

namespace {

bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  return &a == &b || (a.objects == b.objects && a.arrows == b.arrows && a.dom == b.dom &&
                      a.cod == b.cod && a.unit == b.unit && a.inv == b.inv && a.comp == b.comp);
}

}  // namespace

QLocale QLocale::make(QuantalePtr q, FiniteSpace space, std::vector<Elem> action) {
  QLocale m;
  m.carrier = std::make_shared<const Frame>(Frame::of_space(space));
  m.space = std::move(space);
  if (action.size() != q->size() * m.size())
    fail(ErrorCode::InvalidInstance, "action table has " + std::to_string(action.size()) +
                                         " entries, expected " +
                                         std::to_string(q->size() * m.size()));
  for (Elem x : action)
    if (x >= m.size()) fail(ErrorCode::InvalidInstance, "action entry out of range");
  m.quantale = std::move(q);
  m.action = std::move(action);
  return m;
}

Verdict check_qlocale(const QLocale& m) {
  const InvQuantale& q = *m.quantale;
  const Frame& f = m.frame();
  const Elem nq = static_cast<Elem>(q.size());
  const Elem nx = static_cast<Elem>(m.size());
  auto triple = [&](Elem a, Elem b, Elem x) {
    return "(" + q.label(a) + ", " + q.label(b) + ", " + m.label(x) + ")";
  };
  Verdict v;
  v.merge(f.check_distributive());
  auto law = [&](const char* name, auto&& body) {
    std::string w;
    body(w);
    v.record(name, w.empty(), w);
  };
  law("action-associative", [&](std::string& w) {
    for (Elem a = 0; a < nq; ++a)
      for (Elem b = 0; b < nq; ++b)
        for (Elem x = 0; x < nx; ++x)
          if (m.act(q.mul(a, b), x) != m.act(a, m.act(b, x))) {
            w = triple(a, b, x);
            return;
          }
  });
  law("action-unital", [&](std::string& w) {
    for (Elem x = 0; x < nx; ++x)
      if (m.act(q.unit, x) != x) {
        w = "e." + m.label(x) + " = " + m.label(m.act(q.unit, x));
        return;
      }
  });
  law("action-join-left", [&](std::string& w) {
    for (Elem x = 0; x < nx; ++x)
      if (m.act(q.bottom(), x) != f.bottom()) {
        w = "bottom." + m.label(x);
        return;
      }
    for (Elem a = 0; a < nq; ++a)
      for (Elem b = a + 1; b < nq; ++b)
        for (Elem x = 0; x < nx; ++x)
          if (m.act(q.frame().join(a, b), x) != f.join(m.act(a, x), m.act(b, x))) {
            w = triple(a, b, x);
            return;
          }
  });
  law("action-join-right", [&](std::string& w) {
    for (Elem a = 0; a < nq; ++a) {
      if (m.act(a, f.bottom()) != f.bottom()) {
        w = q.label(a) + ".bottom";
        return;
      }
      for (Elem x = 0; x < nx; ++x)
        for (Elem y = x + 1; y < nx; ++y)
          if (m.act(a, f.join(x, y)) != f.join(m.act(a, x), m.act(a, y))) {
            w = "(" + q.label(a) + ", " + m.label(x) + ", " + m.label(y) + ")";
            return;
          }
    }
  });
  law("base-action-meet", [&](std::string& w) {
    for (Elem b : q.base) {
      const Elem b1 = m.act(b, f.top());
      for (Elem x = 0; x < nx; ++x)
        if (m.act(b, x) != f.meet(b1, x)) {
          w = "b=" + q.label(b) + " x=" + m.label(x);
          return;
        }
    }
  });
  return v;
}

QLocale module_of_glocale(QuantalePtr q, const GLocale& a) {
  if (!q->groupoid || !same_groupoid(*q->groupoid, *a.groupoid))
    fail(ErrorCode::InvalidInstance, "quantale and action are over different groupoids");
  const Frame x = Frame::of_space(a.total);
  const std::size_t nq = q->size(), nx = x.size();
  std::vector<Elem> action(nq * nx);
  for (Elem u = 0; u < nq; ++u)
    for (Elem s = 0; s < nx; ++s) {
      const PointSet image = image_of(a.act, a.pairs.rectangle(q->arrows_of(u), x.mask(s)));
      auto e = x.find(image);
      if (!e)
        fail(ErrorCode::OpennessViolation,
             "action image " + a.total.format(image) + " of " + q->label(u) + " x " +
                 x.label(s) + " is not open");
      action[u * nx + s] = *e;
    }
  return QLocale::make(std::move(q), a.total, std::move(action));
}

GLocale regular_glocale(GroupoidPtr g) {
  const FiniteGroupoid& ref = *g;
  return GLocale::make_with(g, ref.arrows, ref.dom,
                            [&](Point a, Point x) { return ref.compose(a, x); });
}

Verdict check_projection_factorization(const GLocale& a) {
  const FiniteGroupoid& g = *a.groupoid;
  Verdict v;
  std::string w;
  bool square = true, reformulated = true;
  for (Point z = 0; z < a.pairs.first.size(); ++z) {
    const Point arrow = a.pairs.first[z], x = a.pairs.second[z];
    const Point through_unit = g.compose(arrow, g.unit[a.proj[x]]);
    if (through_unit != arrow && w.empty())
      w = "(" + g.arrows.name(arrow) + ", " + a.total.name(x) + ")";
    const Point px = a.proj[a.act[z]];
    square = square && px == g.dom[arrow];
    reformulated = reformulated && px == g.dom[through_unit];
  }
  v.record("pi1-factorization", w.empty(), w);
  v.record("projection-square-equivalence", square == reformulated,
           square ? "square holds, reformulation fails" : "reformulation holds, square fails");
  return v;
}

Verdict check_actions_coincide(const GLocale& a, const QLocale& m) {
  const InvQuantale& q = *m.quantale;
  const Frame& f = m.frame();
  Verdict v;
  std::string w;
  for (Elem b : q.base) {
    const PointSet objects = q.objects_of_base(b);
    const Elem pb = f.at(preimage_of(a.proj, a.total.size(), objects));
    for (Elem x = 0; x < m.size() && w.empty(); ++x)
      if (m.act(b, x) != f.meet(pb, x)) w = "b=" + q.label(b) + " x=" + m.label(x);
    if (!w.empty()) break;
  }
  v.record("actions-coincide", w.empty(), w);
  return v;
}

bool same_glocale(const GLocale& a, const GLocale& b) {
  return a.total == b.total && a.proj == b.proj && a.act == b.act &&
         same_groupoid(*a.groupoid, *b.groupoid);
}

}  // namespace qkit
