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
#include <algorithm>
#include <functional>
#include <set>

#include "qkit/error.hpp"
#include "qkit/quantale.hpp"

namespace qkit {

namespace {

constexpr std::size_t kSupportSearchBudget = 1u << 20;

// The first axioms failing for `sp`, or empty.
std::string support_axiom_witness(const InvQuantale& q, std::span<const Elem> sp) {
  for (Elem a = 0; a < q.size(); ++a) {
    if (!q.in_base(sp[a])) return "sp(" + q.label(a) + ") not in B";
    if (q.mul(sp[a], a) != a) return "sp(" + q.label(a) + ")" + q.label(a);
    if (!q.frame().leq(sp[a], q.mul(a, q.star(a)))) return "sp(" + q.label(a) + ") <= aa*";
    for (Elem b : q.base)
      if (sp[q.mul(b, a)] != q.mul(b, sp[a])) return q.label(b) + " . " + q.label(a);
  }
  return {};
}

}  // namespace

std::vector<Elem> support(const InvQuantale& q) {
  if (!q.groupoid) fail(ErrorCode::Internal, "support needs a groupoid; use search_support");
  std::vector<Elem> sp(q.size());
  for (Elem a = 0; a < q.size(); ++a)
    sp[a] = q.base_of_objects(image_of(q.groupoid->dom, q.arrows_of(a)));
  return sp;
}

SupportSearch search_support(const InvQuantale& q, std::size_t max_size) {
  SupportSearch out;
  if (q.size() > max_size) return out;
  const Frame& f = q.frame();
  std::vector<Elem> ji = f.join_irreducibles();
  std::sort(ji.begin(), ji.end(), [&](Elem a, Elem b) { return f.rank(a) < f.rank(b); });

  std::vector<std::vector<Elem>> candidates(ji.size());
  for (std::size_t k = 0; k < ji.size(); ++k)
    for (Elem b : q.base)
      if (f.leq(b, q.mul(ji[k], q.star(ji[k]))) && q.mul(b, ji[k]) == ji[k])
        candidates[k].push_back(b);

  std::vector<Elem> value(ji.size(), 0);
  std::size_t steps = 0;
  bool budget_hit = false;
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (budget_hit) return;
    if (++steps > kSupportSearchBudget) {
      budget_hit = true;
      return;
    }
    if (k == ji.size()) {
      std::vector<Elem> sp(q.size(), f.bottom());
      for (Elem a = 0; a < q.size(); ++a)
        for (std::size_t i = 0; i < ji.size(); ++i)
          if (f.leq(ji[i], a)) sp[a] = f.join(sp[a], value[i]);
      if (support_axiom_witness(q, sp).empty()) out.found.push_back(std::move(sp));
      return;
    }
    for (Elem b : candidates[k]) {
      bool monotone = true;
      for (std::size_t i = 0; i < k && monotone; ++i)
        if (f.leq(ji[i], ji[k])) monotone = f.leq(value[i], b);
      if (!monotone) continue;
      value[k] = b;
      extend(k + 1);
    }
  };
  extend(0);
  out.exhausted = !budget_hit;
  return out;
}

Verdict check_support(const InvQuantale& q, std::span<const Elem> sp) {
  const Frame& f = q.frame();
  const Elem n = static_cast<Elem>(q.size());
  Verdict v;
  auto law = [&](const char* name, auto&& body) {
    std::string w;
    body(w);
    v.record(name, w.empty(), w);
  };
  auto at = [&](Elem a) { return "sp(" + q.label(a) + ")"; };

  law("support-join-preserving", [&](std::string& w) {
    if (sp[f.bottom()] != f.bottom()) {
      w = "sp(bottom) = " + q.label(sp[f.bottom()]);
      return;
    }
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b)
        if (sp[f.join(a, b)] != f.join(sp[a], sp[b])) {
          w = q.label(a) + ", " + q.label(b);
          return;
        }
  });
  law("support-base-valued", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      if (!q.in_base(sp[a])) {
        w = at(a) + " = " + q.label(sp[a]);
        return;
      }
  });
  law("support-base-linear", [&](std::string& w) {
    for (Elem b : q.base)
      for (Elem a = 0; a < n; ++a)
        if (sp[q.mul(b, a)] != q.mul(b, sp[a])) {
          w = "b=" + q.label(b) + " a=" + q.label(a);
          return;
        }
  });
  law("support-absorbs", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      if (q.mul(sp[a], a) != a) {
        w = at(a) + q.label(a) + " = " + q.label(q.mul(sp[a], a));
        return;
      }
  });
  law("support-below-aastar", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      if (!f.leq(sp[a], q.mul(a, q.star(a)))) {
        w = at(a) + " = " + q.label(sp[a]);
        return;
      }
  });
  law("support-self-adjoint", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      if (q.star(sp[a]) != sp[a] || q.mul(sp[a], sp[a]) != sp[a]) {
        w = at(a);
        return;
      }
  });
  law("support-stable", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (sp[q.mul(a, b)] != sp[q.mul(a, sp[b])]) {
          w = "a=" + q.label(a) + " b=" + q.label(b);
          return;
        }
  });
  law("support-decreasing", [&](std::string& w) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (!f.leq(sp[q.mul(a, b)], sp[a])) {
          w = "a=" + q.label(a) + " b=" + q.label(b);
          return;
        }
  });
  law("support-onto-base", [&](std::string& w) {
    std::set<Elem> image(sp.begin(), sp.end());
    if (image != std::set<Elem>(q.base.begin(), q.base.end()))
      w = "image has " + std::to_string(image.size()) + " elements, B has " +
          std::to_string(q.base.size());
  });
  return v;
}

}  // namespace qkit
