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

#include "qkit/error.hpp"
#include "qkit/qmodule.hpp"

namespace qkit {

namespace {

std::vector<Elem> inverse_image_table(const FiniteSpace& source, const Frame& source_frame,
                                      const Frame& target_frame, std::span<const Point> f) {
  std::vector<Elem> out(target_frame.size());
  for (Elem y = 0; y < target_frame.size(); ++y)
    out[y] = source_frame.at(preimage_of(f, source.size(), target_frame.mask(y)));
  return out;
}

std::string map_name(const GLocale& x, const GLocale& y, std::span<const Point> f) {
  std::string s = "{";
  for (Point p = 0; p < f.size(); ++p) {
    if (p) s += ", ";
    s += x.total.name(p) + "->" + y.total.name(f[p]);
  }
  return s + "}";
}

}  // namespace

Verdict check_module_hom(const QLocale& from, const QLocale& to, std::span<const Elem> h) {
  const InvQuantale& q = *from.quantale;
  const Frame& s = from.frame();
  const Frame& t = to.frame();
  Verdict v;
  std::string w;
  if (h[s.bottom()] != t.bottom()) w = "bottom";
  for (Elem a = 0; a < s.size() && w.empty(); ++a)
    for (Elem b = a + 1; b < s.size(); ++b)
      if (h[s.join(a, b)] != t.join(h[a], h[b])) {
        w = from.label(a) + ", " + from.label(b);
        break;
      }
  v.record("module-hom-join-preserving", w.empty(), w);
  w.clear();
  for (Elem a = 0; a < q.size() && w.empty(); ++a)
    for (Elem y = 0; y < s.size(); ++y)
      if (h[from.act(a, y)] != to.act(a, h[y])) {
        w = "a=" + q.label(a) + " y=" + from.label(y);
        break;
      }
  v.record("module-hom-equivariant", w.empty(), w);
  return v;
}

Verdict check_lax_inequality(const QuantalePtr& q, const GLocale& x, const GLocale& y,
                             std::span<const Point> f) {
  Verdict v;
  if (!is_continuous(x.total, y.total, f)) {
    v.fail("continuous", map_name(x, y, f));
    return v;
  }
  const QLocale mx = module_of_glocale(q, x);
  const QLocale my = module_of_glocale(q, y);
  const auto fstar = inverse_image_table(x.total, mx.frame(), my.frame(), f);
  const Verdict hom = check_module_hom(my, mx, fstar);
  v.record("inverse-image-module-hom", hom.passed(),
           hom.passed() ? std::string{} : hom.first_failure()->witness);
  if (!hom) return v;

  std::string over;
  for (Point p = 0; p < f.size() && over.empty(); ++p)
    if (y.proj[f[p]] != x.proj[p]) over = x.total.name(p);
  v.record("over-objects", over.empty(), over);
  if (!over.empty()) return v;

  const ModuleTensor tx{x.proj, x.pairs};
  const ModuleTensor ty{y.proj, y.pairs};
  const auto units = partial_units(*q);
  std::string lax_w, full_w;
  for (Elem e = 0; e < my.size(); ++e) {
    const PointSet left = alpha_star(mx, tx, fstar[e], units);
    const PointSet right_y = alpha_star(my, ty, e, units);
    // (1 (x) f*) is the preimage along (g, p) -> (g, f(p)).
    PointSet right = 0;
    for (Point z = 0; z < x.pairs.first.size(); ++z) {
      const auto w = y.pairs.index(x.pairs.first[z], f[x.pairs.second[z]]);
      if (w && contains(right_y, *w)) right |= singleton(z);
    }
    if (lax_w.empty() && !subset(right, left)) lax_w = "y=" + my.label(e);
    if (full_w.empty() && !subset(left, right)) full_w = "y=" + my.label(e);
  }
  v.record("lax-inequality", lax_w.empty(), lax_w);
  v.record("fullness-inequality", full_w.empty(), full_w);
  return v;
}

Verdict check_category_isomorphism(QuantalePtr q, std::span<const GLocale> corpus,
                                   CategoryCounts* counts) {
  CategoryCounts local;
  CategoryCounts& c = counts ? *counts : local;
  c = {};
  Verdict v;
  std::vector<QLocale> modules;
  std::string glocale_w, qlocale_w, laws_w;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const GLocale& a = corpus[i];
    modules.push_back(module_of_glocale(q, a));
    const QLocale& m = modules.back();
    if (auto lv = check_qlocale(m); !lv && laws_w.empty())
      laws_w = "#" + std::to_string(i) + " " + lv.first_failure()->law;
    const GLocale back = glocale_of_qlocale(m);
    if (!same_glocale(a, back) && glocale_w.empty()) glocale_w = "#" + std::to_string(i);
    if (module_of_glocale(q, back).action != m.action && qlocale_w.empty())
      qlocale_w = "#" + std::to_string(i);
  }
  c.objects = corpus.size();
  v.record("modules-are-qlocales", laws_w.empty(), laws_w);
  v.record("bijection-glocale-roundtrip", glocale_w.empty(), glocale_w);
  v.record("bijection-qlocale-roundtrip", qlocale_w.empty(), qlocale_w);

  std::string faithful_w, full_w, functor_w, lax_w, spatial_w;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      const GLocale& x = corpus[i];
      const GLocale& y = corpus[j];
      const QLocale& mx = modules[i];
      const QLocale& my = modules[j];
      const std::string tag = "#" + std::to_string(i) + "->#" + std::to_string(j) + " ";
      std::set<std::vector<Elem>> equivariant_images, inverse_images;
      for_each_continuous_map(x.total, y.total, [&](std::span<const Point> f) {
        ++c.continuous_maps;
        const auto fstar = inverse_image_table(x.total, mx.frame(), my.frame(), f);
        inverse_images.insert(fstar);
        const bool equivariant = check_equivariant(x, y, f).passed();
        const bool hom = check_module_hom(my, mx, fstar).passed();
        if (equivariant) {
          ++c.equivariant_maps;
          if (!equivariant_images.insert(fstar).second && faithful_w.empty())
            faithful_w = tag + map_name(x, y, f);
        }
        if (equivariant && !hom && functor_w.empty()) functor_w = tag + map_name(x, y, f);
        if (hom && !equivariant && full_w.empty()) full_w = tag + map_name(x, y, f);
        if (hom) {
          auto lv = check_lax_inequality(q, x, y, f);
          if (!lv && lax_w.empty())
            lax_w = tag + map_name(x, y, f) + " " + lv.first_failure()->law;
        }
        return true;
      });
      for_each_sup_map(my.frame(), mx.frame(), [&](std::span<const Elem> h) {
        if (!check_module_hom(my, mx, h)) return true;
        ++c.module_homs;
        const std::vector<Elem> table(h.begin(), h.end());
        if (inverse_images.count(table)) {
          ++c.spatial_module_homs;
        } else {
          ++c.non_spatial_module_homs;
          LatticeMap lm{my.carrier, mx.carrier, table};
          if (check_meet_preserving(lm) && spatial_w.empty()) spatial_w = tag + "frame map";
        }
        return true;
      });
    }
  v.record("functor-preserves-homs", functor_w.empty(), functor_w);
  v.record("functor-faithful", faithful_w.empty(), faithful_w);
  v.record("functor-full", full_w.empty(), full_w);
  v.record("lax-inequality", lax_w.empty(), lax_w);
  v.record("frame-homs-are-inverse-images", spatial_w.empty(), spatial_w);
  return v;
}

}  // namespace qkit
