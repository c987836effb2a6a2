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

#include "qkit/error.hpp"
#include "qkit/order.hpp"

namespace qkit {

Verdict check_join_preserving(const LatticeMap& f) {
  Verdict v;
  const Frame& s = *f.source;
  const Frame& t = *f.target;
  if (f(s.bottom()) != t.bottom()) {
    v.fail("join-preserving", "empty join: f(bottom) = " + t.label(f(s.bottom())));
    return v;
  }
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = a + 1; b < s.size(); ++b)
      if (f(s.join(a, b)) != t.join(f(a), f(b))) {
        v.fail("join-preserving", "{" + s.label(a) + ", " + s.label(b) + "}");
        return v;
      }
  v.pass("join-preserving");
  return v;
}

Verdict check_meet_preserving(const LatticeMap& f) {
  Verdict v;
  const Frame& s = *f.source;
  const Frame& t = *f.target;
  if (f(s.top()) != t.top()) {
    v.fail("meet-preserving", "empty meet: f(top) = " + t.label(f(s.top())));
    return v;
  }
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = a + 1; b < s.size(); ++b)
      if (f(s.meet(a, b)) != t.meet(f(a), f(b))) {
        v.fail("meet-preserving", "{" + s.label(a) + ", " + s.label(b) + "}");
        return v;
      }
  v.pass("meet-preserving");
  return v;
}

LatticeMap right_adjoint(const LatticeMap& f) {
  if (auto v = check_join_preserving(f); !v)
    fail(ErrorCode::NotJoinPreserving, "map does not preserve the join of " +
                                           v.first_failure()->witness);
  const Frame& s = *f.source;
  const Frame& t = *f.target;
  LatticeMap g{f.target, f.source, std::vector<Elem>(t.size(), s.bottom())};
  for (Elem x = 0; x < t.size(); ++x) {
    Elem acc = s.bottom();
    for (Elem y = 0; y < s.size(); ++y)
      if (t.leq(f(y), x)) acc = s.join(acc, y);
    g.table[x] = acc;
  }
  return g;
}

Verdict check_galois(const LatticeMap& f, const LatticeMap& g) {
  Verdict v;
  const Frame& s = *f.source;
  const Frame& t = *f.target;
  for (Elem y = 0; y < s.size(); ++y)
    for (Elem x = 0; x < t.size(); ++x)
      if (t.leq(f(y), x) != s.leq(y, g(x))) {
        v.fail("galois", "y=" + s.label(y) + " x=" + t.label(x));
        return v;
      }
  v.pass("galois");
  return v;
}

SupMap direct_image(const ContinuousMap& f) {
  if (auto w = openness_witness(f.source(), f.target(), f.table()))
    fail(ErrorCode::OpennessViolation,
         "image " + f.target().format(f.image(*w)) + " of open " + f.source().format(*w) +
             " is not open");
  auto src = std::make_shared<const Frame>(Frame::of_space(f.source()));
  auto tgt = std::make_shared<const Frame>(Frame::of_space(f.target()));
  SupMap m{src, tgt, std::vector<Elem>(src->size())};
  for (Elem a = 0; a < src->size(); ++a) m.table[a] = tgt->at(f.image(src->mask(a)));
  return m;
}

LatticeMap inverse_image(const ContinuousMap& f) {
  auto src = std::make_shared<const Frame>(Frame::of_space(f.target()));
  auto tgt = std::make_shared<const Frame>(Frame::of_space(f.source()));
  LatticeMap m{src, tgt, std::vector<Elem>(src->size())};
  for (Elem a = 0; a < src->size(); ++a) m.table[a] = tgt->at(f.preimage(src->mask(a)));
  return m;
}

SpatialRealization points_of_frame(const Frame& frame) {
  if (auto v = frame.check_distributive(); !v)
    fail(ErrorCode::NotDistributive,
         "lattice is not distributive at " + v.first_failure()->witness);
  std::vector<Elem> primes;
  for (Elem q = 0; q < frame.size(); ++q) {
    if (q == frame.top()) continue;
    bool prime = true;
    for (Elem a = 0; a < frame.size() && prime; ++a)
      for (Elem b = 0; b < frame.size() && prime; ++b)
        if (frame.leq(frame.meet(a, b), q) && !frame.leq(a, q) && !frame.leq(b, q))
          prime = false;
    if (prime) primes.push_back(q);
  }
  std::vector<std::string> names;
  for (std::size_t k = 0; k < primes.size(); ++k) names.push_back("pt" + std::to_string(k));
  SpatialRealization out;
  out.open_of.resize(frame.size());
  for (Elem a = 0; a < frame.size(); ++a) {
    PointSet s = 0;
    for (std::size_t k = 0; k < primes.size(); ++k)
      if (!frame.leq(a, primes[k])) s |= singleton(static_cast<Point>(k));
    out.open_of[a] = s;
  }
  out.space = FiniteSpace::from_opens(std::move(names), out.open_of);
  return out;
}

bool is_order_isomorphism(const Frame& a, const Frame& b, std::span<const Elem> f) {
  if (a.size() != b.size() || f.size() != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (Elem x : f) {
    if (x >= b.size() || hit[x]) return false;
    hit[x] = true;
  }
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y)
      if (a.leq(x, y) != b.leq(f[x], f[y])) return false;
  return true;
}

std::optional<std::vector<Elem>> find_isomorphism(const Frame& a, const Frame& b) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  auto up = [](const Frame& f, Elem x) {
    std::size_t c = 0;
    for (Elem y = 0; y < f.size(); ++y)
      if (f.leq(x, y)) ++c;
    return c;
  };
  std::vector<std::pair<std::size_t, std::size_t>> sig_a(n), sig_b(n);
  for (Elem x = 0; x < n; ++x) {
    sig_a[x] = {a.rank(x), up(a, x)};
    sig_b[x] = {b.rank(x), up(b, x)};
  }
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<Elem> order(n);
  for (Elem x = 0; x < n; ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [&](Elem x, Elem y) { return sig_a[x] < sig_a[y]; });

  std::vector<Elem> image(n, 0);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
    if (k == n) return true;
    const Elem x = order[k];
    for (Elem y = 0; y < n; ++y) {
      if (used[y] || sig_b[y] != sig_a[x]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        const Elem w = order[j];
        ok = a.leq(w, x) == b.leq(image[w], y) && a.leq(x, w) == b.leq(y, image[w]);
      }
      if (!ok) continue;
      used[y] = true;
      image[x] = y;
      if (extend(k + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

std::optional<Point> Pullback::index(Point x, Point y) const {
  const std::int32_t k = lookup[std::size_t{x} * right_size + y];
  if (k < 0) return std::nullopt;
  return static_cast<Point>(k);
}

PointSet Pullback::rectangle(PointSet a, PointSet b) const {
  PointSet out = 0;
  for (Point z = 0; z < first.size(); ++z)
    if (contains(a, first[z]) && contains(b, second[z])) out |= singleton(z);
  return out;
}

Pullback pullback_space(const FiniteSpace& left, std::span<const Point> f,
                        const FiniteSpace& right, std::span<const Point> g) {
  if (f.size() != left.size() || g.size() != right.size())
    fail(ErrorCode::Internal, "pullback map size mismatch");
  Pullback pb;
  pb.right_size = right.size();
  pb.lookup.assign(left.size() * right.size(), -1);
  std::vector<std::string> names;
  for (Point x = 0; x < left.size(); ++x)
    for (Point y = 0; y < right.size(); ++y)
      if (f[x] == g[y]) {
        if (names.size() == kMaxPoints)
          fail(ErrorCode::Bound, "pullback has more than 64 points");
        pb.lookup[std::size_t{x} * right.size() + y] = static_cast<std::int32_t>(names.size());
        pb.first.push_back(x);
        pb.second.push_back(y);
        names.push_back("(" + left.name(x) + "," + right.name(y) + ")");
      }
  std::vector<PointSet> nbhd(names.size(), 0);
  for (Point z = 0; z < names.size(); ++z)
    nbhd[z] = pb.rectangle(left.neighborhood(pb.first[z]), right.neighborhood(pb.second[z]));
  pb.space = FiniteSpace::from_neighborhoods(std::move(names), std::move(nbhd));
  return pb;
}

}  // namespace qkit

namespace qkit {

void for_each_continuous_map(const FiniteSpace& source, const FiniteSpace& target,
                             const std::function<bool(std::span<const Point>)>& visit) {
  const std::size_t n = source.size();
  std::vector<Point> image(n, 0);
  bool stop = false;
  std::function<void(Point)> extend = [&](Point x) {
    if (stop) return;
    if (x == n) {
      stop = !visit(image);
      return;
    }
    for (Point y = 0; y < target.size() && !stop; ++y) {
      bool ok = true;
      // Only constraints between x and points already placed.
      for (Point w = 0; w < x && ok; ++w) {
        if (contains(source.neighborhood(x), w)) ok = contains(target.neighborhood(y), image[w]);
        if (ok && contains(source.neighborhood(w), x))
          ok = contains(target.neighborhood(image[w]), y);
      }
      if (!ok) continue;
      image[x] = y;
      extend(x + 1);
    }
  };
  if (n == 0) {
    visit(image);
    return;
  }
  if (target.size() == 0) return;
  extend(0);
}

void for_each_sup_map(const Frame& source, const Frame& target,
                      const std::function<bool(std::span<const Elem>)>& visit) {
  std::vector<Elem> ji = source.join_irreducibles();
  std::sort(ji.begin(), ji.end(), [&](Elem a, Elem b) { return source.rank(a) < source.rank(b); });
  std::vector<Elem> value(ji.size(), target.bottom());
  std::vector<Elem> table(source.size());
  bool stop = false;
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (stop) return;
    if (k == ji.size()) {
      for (Elem a = 0; a < source.size(); ++a) {
        Elem acc = target.bottom();
        for (std::size_t i = 0; i < ji.size(); ++i)
          if (source.leq(ji[i], a)) acc = target.join(acc, value[i]);
        table[a] = acc;
      }
      stop = !visit(table);
      return;
    }
    for (Elem t = 0; t < target.size() && !stop; ++t) {
      bool monotone = true;
      for (std::size_t i = 0; i < k && monotone; ++i)
        if (source.leq(ji[i], ji[k])) monotone = target.leq(value[i], t);
      if (!monotone) continue;
      value[k] = t;
      extend(k + 1);
    }
  };
  extend(0);
}

}  // namespace qkit
