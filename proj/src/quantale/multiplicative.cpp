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
#include "qkit/quantale.hpp"

namespace qkit {

namespace {

const FiniteGroupoid& need_groupoid(const InvQuantale& q) {
  if (!q.groupoid) fail(ErrorCode::Internal, "multiplicativity checks need a groupoid");
  return *q.groupoid;
}

constexpr std::size_t kMaxPairsForFullGalois = 16;

}  // namespace

PointSet tensor_pair(const InvQuantale& q, Elem a, Elem b) {
  return need_groupoid(q).composable.rectangle(q.arrows_of(a), q.arrows_of(b));
}

Elem multiply_open(const InvQuantale& q, PointSet w) {
  return q.of_arrows(image_of(need_groupoid(q).comp, w));
}

PointSet mu_star(const InvQuantale& q, Elem a, std::span<const Elem> generators) {
  PointSet out = 0;
  for (Elem s : generators) out |= tensor_pair(q, s, q.mul(q.star(s), a));
  return out;
}

PointSet mu_star(const InvQuantale& q, Elem a) {
  const auto units = partial_units(q);
  return mu_star(q, a, units);
}

PointSet mu_star_adjoint(const InvQuantale& q, Elem c) {
  std::vector<Elem> gens;
  if (q.size() <= 64) {
    for (Elem a = 0; a < q.size(); ++a) gens.push_back(a);
  } else {
    gens = q.frame().join_irreducibles();
  }
  PointSet out = 0;
  for (Elem a : gens)
    for (Elem b : gens)
      if (q.frame().leq(q.mul(a, b), c)) out |= tensor_pair(q, a, b);
  return out;
}

Verdict check_mu_star(const InvQuantale& q) {
  const FiniteGroupoid& g = need_groupoid(q);
  const Frame& f = q.frame();
  const FiniteSpace& g2 = g.composable.space;
  const Elem n = static_cast<Elem>(q.size());
  Verdict v;

  std::vector<PointSet> mu(n);
  std::string formula_w, adjoint_w, preimage_w, open_w;
  const auto units = partial_units(q);
  for (Elem c = 0; c < n; ++c) {
    mu[c] = mu_star(q, c, units);
    if (!g2.is_open(mu[c]) && open_w.empty()) open_w = q.label(c);
    if (mu[c] != mu_star_adjoint(q, c) && adjoint_w.empty())
      adjoint_w = q.label(c) + ": formula " + g2.format(mu[c]) + " vs adjoint " +
                  g2.format(mu_star_adjoint(q, c));
    const PointSet pre = preimage_of(g.comp, g2.size(), q.arrows_of(c));
    if (mu[c] != pre && preimage_w.empty())
      preimage_w = q.label(c) + ": formula " + g2.format(mu[c]) + " vs preimage " +
                   g2.format(pre);
  }
  v.record("mu-star-open", open_w.empty(), open_w);
  v.record("mu-star-equals-adjoint", adjoint_w.empty(), adjoint_w);
  v.record("mu-star-equals-preimage", preimage_w.empty(), preimage_w);

  std::string join_w, meet_w;
  if (mu[f.bottom()] != 0) join_w = "bottom";
  if (mu[f.top()] != g2.full()) meet_w = "top";
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b) {
      if (join_w.empty() && mu[f.join(a, b)] != (mu[a] | mu[b]))
        join_w = q.label(a) + ", " + q.label(b);
      if (meet_w.empty() && mu[f.meet(a, b)] != (mu[a] & mu[b]))
        meet_w = q.label(a) + ", " + q.label(b);
    }
  v.record("mu-star-join-preserving", join_w.empty(), join_w);
  v.record("mu-star-meet-preserving", meet_w.empty(), meet_w);

  // Minimal neighbourhoods are join-dense in the opens of composable pairs.
  std::string galois_w;
  for (Point z = 0; z < g2.size() && galois_w.empty(); ++z) {
    const PointSet w = g2.neighborhood(z);
    const Elem mw = multiply_open(q, w);
    for (Elem c = 0; c < n; ++c)
      if (f.leq(mw, c) != subset(w, mu[c])) {
        galois_w = "w=" + g2.format(w) + " c=" + q.label(c);
        break;
      }
  }
  v.record("mu-star-galois-generators", galois_w.empty(), galois_w);

  if (g2.size() <= kMaxPairsForFullGalois) {
    std::string w_all;
    const PointSet carrier = g2.size() == 64 ? ~PointSet{0} : (PointSet{1} << g2.size()) - 1;
    for (PointSet w = 0;; ++w) {
      bool open = true;
      for (Point z = 0; z < g2.size() && open; ++z)
        if ((w >> z & 1) && !subset(g2.neighborhood(z), w)) open = false;
      if (open) {
        const Elem mw = multiply_open(q, w);
        for (Elem c = 0; c < n; ++c)
          if (f.leq(mw, c) != subset(w, mu[c])) {
            w_all = "w=" + g2.format(w) + " c=" + q.label(c);
            break;
          }
      }
      if (!w_all.empty() || w == carrier) break;
    }
    v.record("mu-star-galois", w_all.empty(), w_all);
  } else {
    v.inconclusive("mu-star-galois", "more than " + std::to_string(kMaxPairsForFullGalois) +
                                         " composable pairs; generator check stands");
  }
  return v;
}

}  // namespace qkit
