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
#include "qkit/sheaf.hpp"

#include <algorithm>
#include <map>

#include "qkit/error.hpp"

namespace qkit {

namespace {

constexpr std::size_t kMaxUniquenessSearch = 32;

bool is_support_candidate(const QLocale& m, std::span<const Elem> sp, std::string* witness) {
  const InvQuantale& q = *m.quantale;
  for (Elem x = 0; x < m.size(); ++x) {
    if (m.act(sp[x], x) != x) {
      if (witness) *witness = "sp(" + m.label(x) + ")" + m.label(x) + " != " + m.label(x);
      return false;
    }
    for (Elem b : q.base)
      if (sp[m.act(b, x)] != q.mul(b, sp[x])) {
        if (witness) *witness = "b=" + q.label(b) + " x=" + m.label(x);
        return false;
      }
  }
  return true;
}

}  // namespace

OpenCheck open_qlocale(const QLocale& m) {
  const InvQuantale& q = *m.quantale;
  if (!q.groupoid) fail(ErrorCode::InvalidInstance, "open_qlocale needs a groupoid quantale");
  const FiniteSpace& objects = q.groupoid->objects;
  OpenCheck out;
  auto proj = recover_projection(m);
  if (auto w = openness_witness(m.space, objects, proj)) {
    out.not_open_witness = "p(" + m.space.format(*w) + ") = " +
                           objects.format(image_of(proj, *w)) + " is not open";
    return out;
  }
  OpenQLocale o{m, proj, std::vector<Elem>(m.size()), {}};
  const Frame& f = m.frame();
  for (Elem x = 0; x < m.size(); ++x) o.supp[x] = q.base_of_objects(image_of(proj, f.mask(x)));

  std::string w;
  if (o.supp[f.bottom()] != q.bottom()) w = "bottom";
  for (Elem a = 0; a < m.size() && w.empty(); ++a)
    for (Elem b = a + 1; b < m.size(); ++b)
      if (o.supp[f.join(a, b)] != q.frame().join(o.supp[a], o.supp[b])) {
        w = m.label(a) + ", " + m.label(b);
        break;
      }
  o.laws.record("support-join-preserving", w.empty(), w);
  w.clear();
  o.laws.record("support-axioms", is_support_candidate(m, o.supp, &w), w);

  if (m.size() <= kMaxUniquenessSearch) {
    const Frame base = Frame::of_space(objects);
    std::size_t found = 0;
    bool matches = true;
    for_each_sup_map(f, base, [&](std::span<const Elem> h) {
      std::vector<Elem> sp(h.size());
      for (Elem x = 0; x < h.size(); ++x) sp[x] = q.base_of_objects(base.mask(h[x]));
      if (is_support_candidate(m, sp, nullptr)) {
        ++found;
        matches = matches && sp == o.supp;
      }
      return true;
    });
    o.laws.record("support-unique", found == 1 && matches,
                  std::to_string(found) + " candidate supports");
  } else {
    o.laws.inconclusive("support-unique", "uniqueness search skipped for |X| = " +
                                              std::to_string(m.size()) + " > 32");
  }
  out.open = std::move(o);
  return out;
}

Verdict check_support_laws(const OpenQLocale& x) {
  const QLocale& m = x.module;
  const InvQuantale& q = *m.quantale;
  const auto sp = support(q);
  Verdict v;
  std::string w1, w2, w3;
  for (Elem a = 0; a < q.size(); ++a)
    for (Elem e = 0; e < m.size(); ++e) {
      const Elem ax = m.act(a, e);
      if (w1.empty() && x.supp[ax] != sp[q.mul(a, x.supp[e])])
        w1 = "a=" + q.label(a) + " x=" + m.label(e);
      if (w2.empty() && !q.frame().leq(x.supp[ax], sp[a]))
        w2 = "a=" + q.label(a) + " x=" + m.label(e);
    }
  for (Elem s : partial_units(q))
    for (Elem e = 0; e < m.size() && w3.empty(); ++e)
      if (x.supp[m.act(s, e)] != q.mul(q.mul(s, x.supp[e]), q.star(s)))
        w3 = "s=" + q.label(s) + " x=" + m.label(e);
  v.record("support-of-action", w1.empty(), w1);
  v.record("support-decreasing", w2.empty(), w2);
  v.record("support-conjugation", w3.empty(), w3);
  return v;
}

std::vector<Elem> local_sections(const OpenQLocale& x) {
  const QLocale& m = x.module;
  const Frame& f = m.frame();
  std::vector<Elem> out;
  for (Elem s = 0; s < m.size(); ++s) {
    bool section = true;
    for (Elem e = 0; e < m.size() && section; ++e)
      if (f.leq(e, s)) section = m.act(x.supp[e], s) == e;
    if (section) out.push_back(s);
  }
  return out;
}

Verdict is_etale_qlocale(const OpenQLocale& x) {
  const QLocale& m = x.module;
  const Frame& f = m.frame();
  Elem cover = f.bottom();
  for (Elem s : local_sections(x)) cover = f.join(cover, s);
  const bool algebraic = cover == f.top();
  const Verdict geometric =
      is_local_homeomorphism(m.space, m.quantale->groupoid->objects, x.proj);
  Verdict v;
  v.record("sections-cover", algebraic, "join of sections is " + m.label(cover));
  v.record("projection-local-homeomorphism", geometric.passed(),
           geometric.passed() ? std::string{} : geometric.first_failure()->witness);
  v.record("etale-criteria-agree", algebraic == geometric.passed(),
           algebraic ? "sections cover but p is not a local homeomorphism"
                     : "p is a local homeomorphism but sections do not cover");
  return v;
}

Verdict check_sheaf_hom(const OpenQLocale& x, const OpenQLocale& y, std::span<const Elem> h) {
  Verdict v = check_module_hom(x.module, y.module, h);
  std::string w;
  for (Elem e = 0; e < x.size() && w.empty(); ++e)
    if (y.supp[h[e]] != x.supp[e]) w = x.module.label(e);
  v.record("preserves-supports", w.empty(), w);
  w.clear();
  const auto ty = local_sections(y);
  for (Elem s : local_sections(x))
    if (!std::binary_search(ty.begin(), ty.end(), h[s])) {
      w = x.module.label(s) + " -> " + y.module.label(h[s]);
      break;
    }
  v.record("preserves-sections", w.empty(), w);
  return v;
}

Verdict check_local_bisections(const QuantalePtr& q) {
  Verdict v;
  const QLocale regular = module_of_glocale(q, regular_glocale(q->groupoid));
  const OpenCheck oc = open_qlocale(regular);
  if (!oc.open) {
    v.fail("regular-module-open", oc.not_open_witness);
    return v;
  }
  const OpenQLocale& x = *oc.open;
  v.record("regular-support", x.supp == support(*q), "u_!p_! differs from u_!d_!");
  const auto sections = local_sections(x);
  std::vector<bool> is_section(q->size(), false), is_unit(q->size(), false);
  for (Elem s : sections) is_section[s] = true;
  for (Elem s : partial_units(*q)) is_unit[s] = true;
  std::string sub_w, bis_w;
  for (Elem s = 0; s < q->size(); ++s) {
    if (is_unit[s] && !is_section[s] && sub_w.empty()) sub_w = q->label(s);
    if (is_unit[s] != (is_section[s] && is_section[q->star(s)]) && bis_w.empty())
      bis_w = q->label(s);
  }
  v.record("partial-units-are-sections", sub_w.empty(), sub_w);
  v.record("partial-units-are-bisections", bis_w.empty(), bis_w);
  return v;
}

Verdict check_sheaf_category_isomorphisms(const QuantalePtr& q, std::span<const GLocale> corpus,
                                          SheafCounts* counts) {
  SheafCounts local;
  SheafCounts& c = counts ? *counts : local;
  c = {};
  Verdict v;
  std::vector<OpenQLocale> objects;
  std::string object_w;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const QLocale m = module_of_glocale(q, corpus[i]);
    OpenCheck oc = open_qlocale(m);
    if (!oc.open) {
      v.fail("objects-etale", "#" + std::to_string(i) + " " + oc.not_open_witness);
      return v;
    }
    if (!is_etale_qlocale(*oc.open) && object_w.empty()) object_w = "#" + std::to_string(i);
    if (!same_glocale(glocale_of_qlocale(m), corpus[i]) && object_w.empty())
      object_w = "#" + std::to_string(i) + " roundtrip";
    objects.push_back(std::move(*oc.open));
  }
  c.objects = objects.size();
  v.record("objects-etale", object_w.empty(), object_w);

  std::string local_w, hom_w, intertwine_w, faithful_w, direct_w, unique_w, adjoint_w;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      const GLocale& a = corpus[i];
      const GLocale& b = corpus[j];
      const OpenQLocale& x = objects[i];
      const OpenQLocale& y = objects[j];
      const Frame& fx = x.module.frame();
      const Frame& fy = y.module.frame();
      const std::string tag = "#" + std::to_string(i) + "->#" + std::to_string(j);
      std::map<std::vector<Elem>, std::size_t> direct_images;

      for_each_continuous_map(a.total, b.total, [&](std::span<const Point> f) {
        if (!check_equivariant(a, b, f)) return true;
        ++c.sheaf_maps;
        if (!is_local_homeomorphism(a.total, b.total, f) && local_w.empty()) local_w = tag;
        std::vector<Elem> fl(fx.size());
        for (Elem e = 0; e < fx.size(); ++e) {
          auto img = fy.find(image_of(f, fx.mask(e)));
          if (!img) {
            if (local_w.empty()) local_w = tag + " image not open";
            return true;
          }
          fl[e] = *img;
        }
        if (!check_sheaf_hom(x, y, fl) && hom_w.empty()) hom_w = tag;
        // f_! . act_! = act_! . (1 x f)_! on the minimal neighbourhoods of pairs.
        for (Point z = 0; z < a.pairs.first.size() && intertwine_w.empty(); ++z) {
          const PointSet w = a.pairs.space.neighborhood(z);
          const PointSet left = image_of(f, image_of(a.act, w));
          PointSet moved = 0;
          for (Point u : members(w))
            moved |= singleton(*b.pairs.index(a.pairs.first[u], f[a.pairs.second[u]]));
          if (left != image_of(b.act, moved)) intertwine_w = tag + " " + a.pairs.space.name(z);
        }
        if (++direct_images[fl] > 1 && faithful_w.empty()) faithful_w = tag;
        return true;
      });

      for_each_sup_map(fx, fy, [&](std::span<const Elem> h) {
        if (!check_sheaf_hom(x, y, h)) return true;
        ++c.sheaf_homs;
        const std::vector<Elem> table(h.begin(), h.end());
        auto it = direct_images.find(table);
        if (it == direct_images.end() || it->second != 1) {
          if (unique_w.empty()) unique_w = tag;
          return true;
        }
        // Pointwise recovery: f(p) is the point whose neighbourhood is h(N(p)).
        std::vector<Point> f(a.total.size());
        for (Point p = 0; p < f.size(); ++p) {
          const PointSet image = fy.mask(h[fx.at(a.total.neighborhood(p))]);
          std::optional<Point> hit;
          for (Point t = 0; t < b.total.size(); ++t)
            if (b.total.neighborhood(t) == image) hit = t;
          if (!hit) {
            if (direct_w.empty()) direct_w = tag + " at " + a.total.name(p);
            return true;
          }
          f[p] = *hit;
        }
        if (!check_equivariant(a, b, f) && direct_w.empty()) direct_w = tag + " not equivariant";
        // The right adjoint of h is the inverse image of f.
        LatticeMap lower{x.module.carrier, y.module.carrier, table};
        const LatticeMap upper = right_adjoint(lower);
        for (Elem e = 0; e < fy.size() && adjoint_w.empty(); ++e)
          if (fx.mask(upper(e)) != preimage_of(f, a.total.size(), fy.mask(e)))
            adjoint_w = tag + " at " + y.module.label(e);
        return true;
      });
    }
  v.record("maps-are-local-homeomorphisms", local_w.empty(), local_w);
  v.record("direct-images-are-sheaf-homs", hom_w.empty(), hom_w);
  v.record("direct-image-intertwines-actions", intertwine_w.empty(), intertwine_w);
  v.record("direct-image-faithful", faithful_w.empty(), faithful_w);
  v.record("sheaf-homs-are-direct-images", unique_w.empty(), unique_w);
  v.record("pointwise-recovery", direct_w.empty(), direct_w);
  v.record("recovered-by-adjoint", adjoint_w.empty(), adjoint_w);
  return v;
}

}  // namespace qkit
