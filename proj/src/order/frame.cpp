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

#include "qkit/error.hpp"
#include "qkit/order.hpp"

namespace qkit {

Frame Frame::of_space(const FiniteSpace& space) {
  Frame f;
  f.masks_ = space.opens();
  f.n_ = f.masks_.size();
  for (Elem i = 0; i < f.n_; ++i) f.index_.emplace(f.masks_[i], i);
  f.leq_.resize(f.n_ * f.n_);
  f.join_.resize(f.n_ * f.n_);
  f.meet_.resize(f.n_ * f.n_);
  for (Elem a = 0; a < f.n_; ++a) {
    for (Elem b = 0; b < f.n_; ++b) {
      const std::size_t k = std::size_t{a} * f.n_ + b;
      f.leq_[k] = subset(f.masks_[a], f.masks_[b]);
      f.join_[k] = f.index_.at(f.masks_[a] | f.masks_[b]);
      f.meet_[k] = f.index_.at(f.masks_[a] & f.masks_[b]);
    }
  }
  f.labels_.reserve(f.n_);
  for (PointSet m : f.masks_) f.labels_.push_back(space.format(m));
  f.finish();
  return f;
}

Frame Frame::from_order(std::size_t n, const std::vector<std::uint8_t>& leq,
                        std::vector<std::string> labels) {
  if (n == 0) fail(ErrorCode::InvalidInstance, "a lattice needs at least one element");
  if (n > kMaxFrameSize) fail(ErrorCode::Bound, "lattice too large");
  if (leq.size() != n * n) fail(ErrorCode::InvalidInstance, "order table size mismatch");
  if (!labels.empty() && labels.size() != n)
    fail(ErrorCode::InvalidInstance, "label count mismatch");
  auto le = [&](std::size_t a, std::size_t b) { return leq[a * n + b] != 0; };
  for (std::size_t a = 0; a < n; ++a) {
    if (!le(a, a)) fail(ErrorCode::InvalidInstance, "order is not reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && le(a, b) && le(b, a))
        fail(ErrorCode::InvalidInstance, "order is not antisymmetric");
      for (std::size_t c = 0; c < n; ++c)
        if (le(a, b) && le(b, c) && !le(a, c))
          fail(ErrorCode::InvalidInstance, "order is not transitive");
    }
  }
  Frame f;
  f.n_ = n;
  f.leq_ = leq;
  f.join_.resize(n * n);
  f.meet_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> lub, glb;
      for (std::size_t c = 0; c < n; ++c) {
        if (le(a, c) && le(b, c) && (!lub || le(c, *lub))) lub = c;
        if (le(c, a) && le(c, b) && (!glb || le(*glb, c))) glb = c;
      }
      // The candidate found must be comparable with every other bound.
      for (std::size_t c = 0; c < n; ++c) {
        if (lub && le(a, c) && le(b, c) && !le(*lub, c)) lub.reset();
        if (glb && le(c, a) && le(c, b) && !le(c, *glb)) glb.reset();
      }
      if (!lub || !glb) fail(ErrorCode::InvalidInstance, "order is not a lattice");
      f.join_[a * n + b] = static_cast<Elem>(*lub);
      f.meet_[a * n + b] = static_cast<Elem>(*glb);
    }
  }
  f.labels_ = std::move(labels);
  f.finish();
  return f;
}

void Frame::finish() {
  rank_.assign(n_, 0);
  bottom_ = top_ = 0;
  for (Elem a = 0; a < n_; ++a) {
    for (Elem b = 0; b < n_; ++b)
      if (b != a && leq(b, a)) ++rank_[a];
    if (rank_[a] == 0) bottom_ = a;
    if (rank_[a] + 1 == n_) top_ = a;
  }
  join_irreducibles_.clear();
  for (Elem a = 0; a < n_; ++a) {
    if (a == bottom_) continue;
    Elem acc = bottom_;
    for (Elem b = 0; b < n_; ++b)
      if (b != a && leq(b, a)) acc = join(acc, b);
    if (acc != a) join_irreducibles_.push_back(a);
  }
}

Elem Frame::join_all(std::span<const Elem> xs) const {
  Elem acc = bottom_;
  for (Elem x : xs) acc = join(acc, x);
  return acc;
}

Elem Frame::meet_all(std::span<const Elem> xs) const {
  Elem acc = top_;
  for (Elem x : xs) acc = meet(acc, x);
  return acc;
}

std::vector<Elem> Frame::below(Elem a) const {
  std::vector<Elem> out;
  for (Elem b = 0; b < n_; ++b)
    if (leq(b, a)) out.push_back(b);
  return out;
}

std::optional<Elem> Frame::find(PointSet s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem Frame::at(PointSet s) const {
  auto it = index_.find(s);
  if (it == index_.end()) fail(ErrorCode::Internal, "set is not an element of the frame");
  return it->second;
}

std::string Frame::label(Elem a) const {
  if (a < labels_.size()) return labels_[a];
  return "#" + std::to_string(a);
}

Verdict Frame::check_distributive() const {
  Verdict v;
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b)
      for (Elem c = 0; c < n_; ++c)
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
          v.fail("frame-distributive", "a=" + label(a) + " b=" + label(b) + " c=" + label(c));
          return v;
        }
  v.pass("frame-distributive");
  return v;
}

}  // namespace qkit
