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
#include <map>

#include "qkit/error.hpp"
#include "qkit/order.hpp"

namespace qkit {

namespace {

constexpr std::size_t kMaxTensorElements = 512;

using Bits = std::vector<std::uint64_t>;

struct PairSpace {
  const Frame& left;
  const Frame& right;
  const BaseModule& lm;
  const BaseModule& rm;
  std::size_t nl, nr, words;

  std::size_t id(Elem a, Elem x) const { return std::size_t{a} * nr + x; }
  static bool test(const Bits& b, std::size_t k) { return (b[k >> 6] >> (k & 63)) & 1u; }
  static bool set(Bits& b, std::size_t k) {
    const std::uint64_t bit = std::uint64_t{1} << (k & 63);
    if (b[k >> 6] & bit) return false;
    b[k >> 6] |= bit;
    return true;
  }

  // Smallest saturated set containing `d`.
  Bits close(Bits d) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Elem x = 0; x < nr; ++x) changed |= set(d, id(left.bottom(), x));
      for (Elem a = 0; a < nl; ++a) changed |= set(d, id(a, right.bottom()));
      for (Elem a = 0; a < nl; ++a) {
        for (Elem x = 0; x < nr; ++x) {
          if (!test(d, id(a, x))) continue;
          for (Elem a2 = 0; a2 < nl; ++a2) {
            if (left.leq(a2, a)) changed |= set(d, id(a2, x));
            if (test(d, id(a2, x))) changed |= set(d, id(left.join(a, a2), x));
          }
          for (Elem x2 = 0; x2 < nr; ++x2) {
            if (right.leq(x2, x)) changed |= set(d, id(a, x2));
            if (test(d, id(a, x2))) changed |= set(d, id(a, right.join(x, x2)));
          }
        }
      }
      for (std::size_t b = 0; b < lm.base_size; ++b) {
        for (Elem a = 0; a < nl; ++a) {
          const Elem ab = lm.action[std::size_t{a} * lm.base_size + b];
          for (Elem x = 0; x < nr; ++x) {
            const Elem bx = rm.action[b * nr + x];
            const bool lhs = test(d, id(ab, x));
            const bool rhs = test(d, id(a, bx));
            if (lhs && !rhs) changed |= set(d, id(a, bx));
            if (rhs && !lhs) changed |= set(d, id(ab, x));
          }
        }
      }
    }
    return d;
  }
};

}  // namespace

TensorProduct tensor_oracle(const BaseModule& right_module, const BaseModule& left_module,
                            std::size_t max_factor) {
  const Frame& left = *right_module.lattice;
  const Frame& right = *left_module.lattice;
  if (left.size() > max_factor || right.size() > max_factor)
    fail(ErrorCode::OracleBound, "tensor oracle factors have " + std::to_string(left.size()) +
                                     " and " + std::to_string(right.size()) +
                                     " elements; bound is " + std::to_string(max_factor));
  if (right_module.base_size != left_module.base_size)
    fail(ErrorCode::InvalidInstance, "modules are over different bases");
  const std::size_t pairs = left.size() * right.size();
  PairSpace ps{left, right, right_module, left_module, left.size(), right.size(),
               (pairs + 63) / 64};

  std::map<Bits, Elem> index;
  std::vector<Bits> elems;
  auto intern = [&](Bits b) -> Elem {
    auto [it, inserted] = index.emplace(b, static_cast<Elem>(elems.size()));
    if (inserted) {
      if (elems.size() >= kMaxTensorElements)
        fail(ErrorCode::OracleBound, "tensor product exceeds " +
                                         std::to_string(kMaxTensorElements) + " elements");
      elems.push_back(std::move(b));
    }
    return it->second;
  };

  TensorProduct t;
  t.left_size_ = left.size();
  t.right_size_ = right.size();
  intern(ps.close(Bits(ps.words, 0)));
  t.generator_.resize(pairs);
  for (Elem a = 0; a < left.size(); ++a)
    for (Elem x = 0; x < right.size(); ++x) {
      Bits b(ps.words, 0);
      PairSpace::set(b, ps.id(a, x));
      t.generator_[ps.id(a, x)] = intern(ps.close(std::move(b)));
    }
  // Close the generators under binary joins.
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Bits u = elems[i];
      for (std::size_t w = 0; w < u.size(); ++w) u[w] |= elems[j][w];
      intern(ps.close(std::move(u)));
    }

  const std::size_t n = elems.size();
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool sub = true;
      for (std::size_t w = 0; w < ps.words && sub; ++w) sub = (elems[i][w] & ~elems[j][w]) == 0;
      leq[i * n + j] = sub;
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("t" + std::to_string(i));
  t.lattice_ = std::make_shared<const Frame>(Frame::from_order(n, leq, std::move(labels)));
  t.members_ = std::move(elems);
  return t;
}

std::optional<SupMap> TensorProduct::factor(FramePtr target, std::span<const Elem> phi) const {
  const Frame& tgt = *target;
  SupMap h{lattice_, target, std::vector<Elem>(lattice_->size(), tgt.bottom())};
  for (Elem e = 0; e < lattice_->size(); ++e) {
    Elem acc = tgt.bottom();
    for (std::size_t k = 0; k < left_size_ * right_size_; ++k)
      if (PairSpace::test(members_[e], k)) acc = tgt.join(acc, phi[k]);
    h.table[e] = acc;
  }
  for (std::size_t k = 0; k < left_size_ * right_size_; ++k)
    if (h.table[generator_[k]] != phi[k]) return std::nullopt;
  if (!check_join_preserving(h)) return std::nullopt;
  return h;
}

Verdict check_balanced_bimorphism(const BaseModule& right_module, const BaseModule& left_module,
                                  const Frame& target, std::span<const Elem> phi) {
  const Frame& l = *right_module.lattice;
  const Frame& r = *left_module.lattice;
  const std::size_t nr = r.size();
  auto at = [&](Elem a, Elem x) { return phi[std::size_t{a} * nr + x]; };
  Verdict v;
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem x = 0; x < nr; ++x) {
      if (at(l.bottom(), x) != target.bottom() || at(a, r.bottom()) != target.bottom()) {
        v.fail("bimorphism-bottom", l.label(a) + " (x) " + r.label(x));
        return v;
      }
      for (Elem a2 = 0; a2 < l.size(); ++a2)
        if (at(l.join(a, a2), x) != target.join(at(a, x), at(a2, x))) {
          v.fail("bimorphism-left-join", l.label(a) + ", " + l.label(a2) + " (x) " + r.label(x));
          return v;
        }
      for (Elem x2 = 0; x2 < nr; ++x2)
        if (at(a, r.join(x, x2)) != target.join(at(a, x), at(a, x2))) {
          v.fail("bimorphism-right-join", l.label(a) + " (x) " + r.label(x) + ", " + r.label(x2));
          return v;
        }
      for (std::size_t b = 0; b < right_module.base_size; ++b)
        if (at(right_module.action[std::size_t{a} * right_module.base_size + b], x) !=
            at(a, left_module.action[b * nr + x])) {
          v.fail("bimorphism-balanced", l.label(a) + " (x) " + r.label(x) + " base " + std::to_string(b));
          return v;
        }
    }
  v.pass("bimorphism");
  return v;
}

}  // namespace qkit
