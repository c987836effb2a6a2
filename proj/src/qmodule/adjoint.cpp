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

const FiniteGroupoid& need_groupoid(const QLocale& m) {
  if (!m.quantale->groupoid)
    fail(ErrorCode::InvalidInstance, "module reconstruction needs a groupoid quantale");
  return *m.quantale->groupoid;
}

}  // namespace

std::vector<Point> recover_projection(const QLocale& m) {
  const FiniteGroupoid& g = need_groupoid(m);
  const InvQuantale& q = *m.quantale;
  const Frame& x = m.frame();
  const Frame objects = Frame::of_space(g.objects);

  // p*(V) = u_!(V) 1 for every open V of objects.
  std::vector<Elem> pstar(objects.size());
  for (Elem v = 0; v < objects.size(); ++v)
    pstar[v] = m.act(q.base_of_objects(objects.mask(v)), x.top());
  auto fail_with = [&](const std::string& what) {
    fail(ErrorCode::NoPointRealization, "V -> u_!(V)1 " + what);
  };
  if (pstar[objects.bottom()] != x.bottom()) fail_with("does not send the empty set to bottom");
  if (pstar[objects.top()] != x.top()) fail_with("does not send the object space to top");
  for (Elem a = 0; a < objects.size(); ++a)
    for (Elem b = a + 1; b < objects.size(); ++b) {
      if (pstar[objects.meet(a, b)] != x.meet(pstar[a], pstar[b]))
        fail_with("does not preserve the meet of " + objects.label(a) + " and " +
                  objects.label(b));
      if (pstar[objects.join(a, b)] != x.join(pstar[a], pstar[b]))
        fail_with("does not preserve the join of " + objects.label(a) + " and " +
                  objects.label(b));
    }

  std::vector<Point> proj(m.space.size());
  for (Point pt = 0; pt < m.space.size(); ++pt) {
    std::optional<Point> found;
    for (Point o = 0; o < g.objects.size(); ++o) {
      bool same_filter = true;
      for (Elem v = 0; v < objects.size() && same_filter; ++v)
        same_filter = contains(objects.mask(v), o) == contains(x.mask(pstar[v]), pt);
      if (!same_filter) continue;
      if (found)
        fail(ErrorCode::NoPointRealization, "objects " + g.objects.name(*found) + " and " +
                                                g.objects.name(o) +
                                                " are not separated by opens");
      found = o;
    }
    if (!found) fail(ErrorCode::NoPointRealization, "no object under " + m.space.name(pt));
    proj[pt] = *found;
  }
  return proj;
}

ModuleTensor module_tensor(const QLocale& m) {
  const FiniteGroupoid& g = need_groupoid(m);
  ModuleTensor t;
  t.proj = recover_projection(m);
  t.pairs = pullback_space(g.arrows, g.cod, m.space, t.proj);
  return t;
}

PointSet alpha_star(const QLocale& m, const ModuleTensor& t, Elem x,
                    std::span<const Elem> generators) {
  const InvQuantale& q = *m.quantale;
  PointSet out = 0;
  for (Elem s : generators) out |= t.tensor(m, s, m.act(q.star(s), x));
  return out;
}

PointSet alpha_star(const QLocale& m, const ModuleTensor& t, Elem x) {
  const auto units = partial_units(*m.quantale);
  return alpha_star(m, t, x, units);
}

PointSet alpha_star_adjoint(const QLocale& m, const ModuleTensor& t, Elem x) {
  const InvQuantale& q = *m.quantale;
  std::vector<Elem> qs, xs;
  if (q.size() * m.size() <= 4096) {
    for (Elem a = 0; a < q.size(); ++a) qs.push_back(a);
    for (Elem y = 0; y < m.size(); ++y) xs.push_back(y);
  } else {
    qs = q.frame().join_irreducibles();
    xs = m.frame().join_irreducibles();
  }
  PointSet out = 0;
  for (Elem a : qs)
    for (Elem y : xs)
      if (m.frame().leq(m.act(a, y), x)) out |= t.tensor(m, a, y);
  return out;
}

Verdict check_alpha_star(const QLocale& m) {
  const Frame& f = m.frame();
  const ModuleTensor t = module_tensor(m);
  const FiniteSpace& pairs = t.pairs.space;
  const Elem n = static_cast<Elem>(m.size());
  const auto units = partial_units(*m.quantale);
  Verdict v;

  std::vector<PointSet> alpha(n);
  std::string open_w, adjoint_w;
  for (Elem x = 0; x < n; ++x) {
    alpha[x] = alpha_star(m, t, x, units);
    if (!pairs.is_open(alpha[x]) && open_w.empty()) open_w = m.label(x);
    const PointSet brute = alpha_star_adjoint(m, t, x);
    if (alpha[x] != brute && adjoint_w.empty())
      adjoint_w = m.label(x) + ": formula " + pairs.format(alpha[x]) + " vs adjoint " +
                  pairs.format(brute);
  }
  v.record("alpha-star-open", open_w.empty(), open_w);
  v.record("alpha-star-equals-adjoint", adjoint_w.empty(), adjoint_w);

  std::string join_w, meet_w;
  if (alpha[f.bottom()] != 0) join_w = "bottom";
  if (alpha[f.top()] != pairs.full()) meet_w = "top";
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b) {
      if (join_w.empty() && alpha[f.join(a, b)] != (alpha[a] | alpha[b]))
        join_w = m.label(a) + ", " + m.label(b);
      if (meet_w.empty() && alpha[f.meet(a, b)] != (alpha[a] & alpha[b]))
        meet_w = m.label(a) + ", " + m.label(b);
    }
  v.record("alpha-star-join-preserving", join_w.empty(), join_w);
  v.record("alpha-star-meet-preserving", meet_w.empty(), meet_w);

  // The action on a minimal neighbourhood N(g) x N(x) of the pair frame is N(g).N(x).
  const InvQuantale& q = *m.quantale;
  const FiniteGroupoid& g = *q.groupoid;
  std::string galois_w;
  for (Point z = 0; z < pairs.size() && galois_w.empty(); ++z) {
    const PointSet w = pairs.neighborhood(z);
    const Elem image = m.act(q.of_arrows(g.arrows.neighborhood(t.pairs.first[z])),
                             f.at(m.space.neighborhood(t.pairs.second[z])));
    for (Elem x = 0; x < n; ++x)
      if (f.leq(image, x) != subset(w, alpha[x])) {
        galois_w = "pair=" + pairs.name(z) + " x=" + m.label(x);
        break;
      }
  }
  v.record("alpha-star-galois", galois_w.empty(), galois_w);
  return v;
}

GLocale glocale_of_qlocale(const QLocale& m) {
  need_groupoid(m);
  const Frame& f = m.frame();
  const ModuleTensor t = module_tensor(m);
  const auto units = partial_units(*m.quantale);
  std::vector<PointSet> alpha(m.size());
  for (Elem x = 0; x < m.size(); ++x) alpha[x] = alpha_star(m, t, x, units);

  std::vector<Point> act(t.pairs.first.size());
  for (Point z = 0; z < act.size(); ++z) {
    // The opens containing the image point are exactly those x with z in alpha_*(x).
    PointSet smallest = m.space.full();
    for (Elem x = 0; x < m.size(); ++x)
      if (contains(alpha[x], z)) smallest &= f.mask(x);
    std::optional<Point> image;
    for (Point pt = 0; pt < m.space.size(); ++pt)
      if (m.space.neighborhood(pt) == smallest) {
        if (image)
          fail(ErrorCode::NotAFrameHom, "pair " + t.pairs.space.name(z) +
                                            " has no unique image point");
        image = pt;
      }
    if (!image)
      fail(ErrorCode::NotAFrameHom, "opens over pair " + t.pairs.space.name(z) +
                                        " do not form a point filter");
    for (Elem x = 0; x < m.size(); ++x)
      if (contains(alpha[x], z) != contains(f.mask(x), *image))
        fail(ErrorCode::NotAFrameHom, "alpha_* is not a frame map at pair " +
                                          t.pairs.space.name(z) + " and " + m.label(x));
    act[z] = *image;
  }
  return GLocale::make(m.quantale->groupoid, m.space, t.proj, std::move(act));
}

}  // namespace qkit
