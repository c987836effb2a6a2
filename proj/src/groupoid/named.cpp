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
#include <set>

#include "qkit/error.hpp"
#include "qkit/groupoid.hpp"

namespace qkit {

std::uint32_t FiniteGroup::inverse(std::uint32_t a) const {
  for (std::uint32_t b = 0; b < order(); ++b)
    if (mul(a, b) == identity) return b;
  fail(ErrorCode::Internal, "group element without inverse");
}

namespace groups {

namespace {

std::string power(const std::string& base, std::size_t k) {
  if (k == 0) return "1";
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

}  // namespace

FiniteGroup trivial() { return cyclic(1); }

FiniteGroup cyclic(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidInstance, "cyclic group of order 0");
  FiniteGroup k;
  k.name = n == 1 ? "1" : "Z" + std::to_string(n);
  for (std::size_t i = 0; i < n; ++i) k.elements.push_back(power("g", i));
  k.table.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) k.table[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
  return k;
}

FiniteGroup dihedral(std::size_t n) {
  if (n < 3) fail(ErrorCode::InvalidInstance, "dihedral group needs n >= 3");
  // s^k r^i encoded as k * n + i; (s^k r^i)(s^l r^j) = s^(k+l) r^((-1)^l i + j).
  FiniteGroup g;
  g.name = n == 3 ? "S3" : "D" + std::to_string(n);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < n; ++i)
      g.elements.push_back(k == 0 ? power("r", i) : (i == 0 ? "s" : "s" + power("r", i)));
  const std::size_t m = 2 * n;
  g.table.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t k = a / n, i = a % n, l = b / n, j = b % n;
      const std::size_t ii = l == 0 ? i : (n - i) % n;
      g.table[a * m + b] = static_cast<std::uint32_t>(((k + l) % 2) * n + (ii + j) % n);
    }
  return g;
}

FiniteGroup quaternion() {
  // Units 1, i, j, k with sign; element = sign * 4 + unit.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const char* names[4] = {"1", "i", "j", "k"};
  FiniteGroup q;
  q.name = "Q8";
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 4; ++u) q.elements.push_back(std::string(s ? "-" : "") + names[u]);
  q.table.resize(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int sa = a / 4, ua = a % 4, sb = b / 4, ub = b % 4;
      const int s = (sa + sb + unit_sign[ua][ub]) % 2;
      q.table[a * 8 + b] = static_cast<std::uint32_t>(s * 4 + unit_mul[ua][ub]);
    }
  return q;
}

FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.name = a.name + "x" + b.name;
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      g.elements.push_back("(" + a.elements[i] + "," + b.elements[j] + ")");
  g.table.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      g.table[x * n + y] = static_cast<std::uint32_t>(
          a.mul(static_cast<std::uint32_t>(x / nb), static_cast<std::uint32_t>(y / nb)) * nb +
          b.mul(static_cast<std::uint32_t>(x % nb), static_cast<std::uint32_t>(y % nb)));
  g.identity = static_cast<std::uint32_t>(a.identity * nb + b.identity);
  return g;
}

std::vector<FiniteGroup> of_order(std::size_t n) {
  switch (n) {
    case 1: return {trivial()};
    case 2: return {cyclic(2)};
    case 3: return {cyclic(3)};
    case 4: return {cyclic(4), product(cyclic(2), cyclic(2))};
    case 5: return {cyclic(5)};
    case 6: return {cyclic(6), dihedral(3)};
    case 7: return {cyclic(7)};
    case 8:
      return {cyclic(8), product(cyclic(4), cyclic(2)),
              product(product(cyclic(2), cyclic(2)), cyclic(2)), dihedral(4), quaternion()};
    default:
      fail(ErrorCode::Bound, "group catalogue covers orders 1..8, asked for " + std::to_string(n));
  }
}

FiniteGroup by_name(const std::string& name) {
  if (name == "1" || name == "trivial") return trivial();
  if (name == "Q8") return quaternion();
  if (name == "S3") return dihedral(3);
  if (name.size() > 1 && (name[0] == 'Z' || name[0] == 'D') &&
      name.find('x') == std::string::npos) {
    std::size_t n = 0;
    try {
      n = std::stoul(name.substr(1));
    } catch (...) {
      fail(ErrorCode::Parse, "unknown group '" + name + "'");
    }
    if (n == 0 || n > 8) fail(ErrorCode::Bound, "group order out of range in '" + name + "'");
    return name[0] == 'Z' ? cyclic(n) : dihedral(n);
  }
  if (auto x = name.find('x'); x != std::string::npos)
    return product(by_name(name.substr(0, x)), by_name(name.substr(x + 1)));
  fail(ErrorCode::Parse, "unknown group '" + name + "'");
}

}  // namespace groups

namespace named {

FiniteSpace sierpinski() {
  const std::vector<PointSet> opens{0, 0b01, 0b11};
  return FiniteSpace::from_opens({"a", "b"}, opens);
}

FiniteGroupoid identity_on(const FiniteSpace& space) {
  std::vector<Point> id(space.size());
  for (Point p = 0; p < id.size(); ++p) id[p] = p;
  return FiniteGroupoid::make_with(space, space, id, id, id, id,
                                   [](Point a, Point) { return a; });
}

FiniteGroupoid discrete_group(const FiniteGroup& k) {
  const std::size_t n = k.order();
  std::vector<Point> zero(n, 0), inv(n);
  for (std::uint32_t a = 0; a < n; ++a) inv[a] = k.inverse(a);
  return FiniteGroupoid::make_with(FiniteSpace::discrete({"*"}), FiniteSpace::discrete(k.elements),
                                   zero, zero, {k.identity}, inv,
                                   [&](Point a, Point b) { return k.mul(a, b); });
}

FiniteGroupoid pair(std::size_t n) {
  std::vector<std::string> objs, arrs;
  for (std::size_t i = 1; i <= n; ++i) objs.push_back(std::to_string(i));
  std::vector<Point> d, r, u(n), inv;
  for (Point i = 0; i < n; ++i)
    for (Point j = 0; j < n; ++j) {
      arrs.push_back("(" + objs[i] + "," + objs[j] + ")");
      d.push_back(i);
      r.push_back(j);
      inv.push_back(static_cast<Point>(j * n + i));
    }
  for (Point i = 0; i < n; ++i) u[i] = static_cast<Point>(i * n + i);
  return FiniteGroupoid::make_with(
      FiniteSpace::discrete(objs), FiniteSpace::discrete(arrs), d, r, u, inv,
      [n](Point a, Point b) { return static_cast<Point>((a / n) * n + b % n); });
}

namespace {

std::vector<std::string> tagged(const std::vector<std::string>& names, const std::string& tag,
                                bool rename) {
  if (!rename) return names;
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(tag + n);
  return out;
}

bool overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> s(a.begin(), a.end());
  for (const auto& n : b)
    if (s.count(n)) return true;
  return false;
}

}  // namespace

FiniteGroupoid disjoint_sum(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const bool rename = overlap(a.objects.names(), b.objects.names()) ||
                      overlap(a.arrows.names(), b.arrows.names());
  auto objs = tagged(a.objects.names(), "a:", rename);
  auto more_objs = tagged(b.objects.names(), "b:", rename);
  objs.insert(objs.end(), more_objs.begin(), more_objs.end());
  auto arrs = tagged(a.arrows.names(), "a:", rename);
  auto more_arrs = tagged(b.arrows.names(), "b:", rename);
  arrs.insert(arrs.end(), more_arrs.begin(), more_arrs.end());

  const Point oa = static_cast<Point>(a.objects.size());
  const Point aa = static_cast<Point>(a.arrows.size());
  std::vector<PointSet> on, an;
  for (PointSet s : a.objects.neighborhoods()) on.push_back(s);
  for (PointSet s : b.objects.neighborhoods()) on.push_back(s << oa);
  for (PointSet s : a.arrows.neighborhoods()) an.push_back(s);
  for (PointSet s : b.arrows.neighborhoods()) an.push_back(s << aa);

  std::vector<Point> d = a.dom, r = a.cod, u = a.unit, inv = a.inv;
  for (Point x : b.dom) d.push_back(x + oa);
  for (Point x : b.cod) r.push_back(x + oa);
  for (Point x : b.unit) u.push_back(x + aa);
  for (Point x : b.inv) inv.push_back(x + aa);
  return FiniteGroupoid::make_with(
      FiniteSpace::from_neighborhoods(objs, on), FiniteSpace::from_neighborhoods(arrs, an), d, r,
      u, inv, [&](Point x, Point y) {
        return x < aa ? a.compose(x, y) : b.compose(x - aa, y - aa) + aa;
      });
}

FiniteGroupoid product_with_group(const FiniteGroupoid& g, const FiniteGroup& k) {
  const std::size_t n = k.order();
  std::vector<std::string> arrs;
  std::vector<PointSet> nb;
  std::vector<Point> d, r, inv, u;
  for (Point a = 0; a < g.arrows.size(); ++a)
    for (std::uint32_t c = 0; c < n; ++c) {
      arrs.push_back("(" + g.arrows.name(a) + "," + k.elements[c] + ")");
      PointSet s = 0;
      for (Point b : members(g.arrows.neighborhood(a))) s |= singleton(static_cast<Point>(b * n + c));
      nb.push_back(s);
      d.push_back(g.dom[a]);
      r.push_back(g.cod[a]);
      inv.push_back(static_cast<Point>(g.inv[a] * n + k.inverse(c)));
    }
  for (Point o = 0; o < g.objects.size(); ++o) u.push_back(static_cast<Point>(g.unit[o] * n + k.identity));
  return FiniteGroupoid::make_with(
      g.objects, FiniteSpace::from_neighborhoods(arrs, nb), d, r, u, inv,
      [&](Point x, Point y) {
        return static_cast<Point>(g.compose(static_cast<Point>(x / n), static_cast<Point>(y / n)) * n +
                                  k.mul(static_cast<std::uint32_t>(x % n), static_cast<std::uint32_t>(y % n)));
      });
}

FiniteGroupoid action_groupoid(const FiniteGroup& k, std::size_t m,
                               const std::vector<std::uint32_t>& action) {
  const std::size_t n = k.order();
  if (action.size() != n * m) fail(ErrorCode::InvalidInstance, "action table size mismatch");
  std::vector<std::string> objs, arrs;
  for (std::size_t x = 1; x <= m; ++x) objs.push_back(std::to_string(x));
  std::vector<Point> d, r, inv, u;
  // Arrow (x, c) has index x * n + c and goes from x to c.x.
  for (Point x = 0; x < m; ++x)
    for (std::uint32_t c = 0; c < n; ++c) {
      arrs.push_back("(" + objs[x] + "," + k.elements[c] + ")");
      const Point cx = action[c * m + x];
      d.push_back(x);
      r.push_back(cx);
      inv.push_back(static_cast<Point>(cx * n + k.inverse(c)));
    }
  for (Point x = 0; x < m; ++x) u.push_back(static_cast<Point>(x * n + k.identity));
  return FiniteGroupoid::make_with(
      FiniteSpace::discrete(objs), FiniteSpace::discrete(arrs), d, r, u, inv,
      [&](Point a, Point b) {
        return static_cast<Point>((a / n) * n + k.mul(static_cast<std::uint32_t>(b % n),
                                                      static_cast<std::uint32_t>(a % n)));
      });
}

}  // namespace named

namespace {

FiniteSpace space_by_name(const std::string& name) {
  if (name == "point") return FiniteSpace::discrete({"*"});
  if (name == "sierpinski") return named::sierpinski();
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string kind = name.substr(0, colon);
    std::size_t n = 0;
    try {
      n = std::stoul(name.substr(colon + 1));
    } catch (...) {
      fail(ErrorCode::Parse, "bad space '" + name + "'");
    }
    std::vector<std::string> pts;
    for (std::size_t i = 1; i <= n; ++i) pts.push_back("x" + std::to_string(i));
    if (kind == "discrete") return FiniteSpace::discrete(pts);
    if (kind == "indiscrete") return FiniteSpace::indiscrete(pts);
    if (kind == "chain") {
      // x1 is the open point: opens are {x1}, {x1,x2}, ...
      std::vector<PointSet> nb;
      for (std::size_t i = 0; i < n; ++i) nb.push_back(full_set(i + 1));
      return FiniteSpace::from_neighborhoods(pts, nb);
    }
  }
  fail(ErrorCode::Parse, "unknown space '" + name + "' (point, sierpinski, discrete:N, "
                         "indiscrete:N, chain:N)");
}

std::vector<std::uint32_t> natural_action(const FiniteGroup& k, std::size_t& m) {
  // Cyclic groups rotate their own elements; dihedral groups move polygon vertices.
  const std::size_t n = k.order();
  std::vector<std::uint32_t> act;
  if (k.name.rfind("Z", 0) == 0 || k.name == "1") {
    m = n;
    for (std::uint32_t c = 0; c < n; ++c)
      for (std::uint32_t x = 0; x < m; ++x) act.push_back(k.mul(c, x));
    return act;
  }
  if (k.name == "S3" || k.name.rfind("D", 0) == 0) {
    m = n / 2;
    for (std::uint32_t c = 0; c < n; ++c) {
      const std::size_t refl = c / m, rot = c % m;
      for (std::uint32_t x = 0; x < m; ++x) {
        const std::size_t y = refl ? (m - x) % m : x;
        act.push_back(static_cast<std::uint32_t>((y + rot) % m));
      }
    }
    return act;
  }
  fail(ErrorCode::InvalidInstance, "no natural action for group " + k.name);
}

}  // namespace

FiniteGroupoid make_named(const std::string& kind, const std::vector<std::string>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() < n)
      fail(ErrorCode::Parse, "'" + kind + "' needs " + std::to_string(n) + " parameter(s)");
  };
  FiniteGroupoid g;
  if (kind == "z2") {
    g = named::discrete_group(groups::cyclic(2));
  } else if (kind == "trivial") {
    g = named::discrete_group(groups::trivial());
  } else if (kind == "empty") {
    g = named::identity_on(FiniteSpace{});
  } else if (kind == "pair2" || kind == "pair3") {
    g = named::pair(kind == "pair2" ? 2 : 3);
  } else if (kind == "sierpinski") {
    g = named::identity_on(named::sierpinski());
  } else if (kind == "sierpinski-z2") {
    g = named::product_with_group(named::identity_on(named::sierpinski()), groups::cyclic(2));
  } else if (kind.rfind("pair(", 0) == 0 && kind.back() == ')') {
    g = make_named("pair", {kind.substr(5, kind.size() - 6)});
  } else if (kind == "identity-on-space") {
    need(1);
    g = named::identity_on(space_by_name(params[0]));
  } else if (kind == "discrete-group") {
    need(1);
    g = named::discrete_group(groups::by_name(params[0]));
  } else if (kind == "pair") {
    need(1);
    std::size_t n = 0;
    try {
      n = std::stoul(params[0]);
    } catch (...) {
      fail(ErrorCode::Parse, "pair needs a number of objects");
    }
    if (n > 8) fail(ErrorCode::Bound, "pair groupoid on more than 8 objects exceeds 64 arrows");
    g = named::pair(n);
  } else if (kind == "disjoint-sum") {
    need(2);
    g = named::disjoint_sum(make_named(params[0]), make_named(params[1]));
  } else if (kind == "product-with-group") {
    need(2);
    g = named::product_with_group(make_named(params[0]), groups::by_name(params[1]));
  } else if (kind == "action-groupoid") {
    need(1);
    FiniteGroup k = groups::by_name(params[0]);
    std::size_t m = 0;
    auto act = natural_action(k, m);
    g = named::action_groupoid(k, m, act);
  } else {
    fail(ErrorCode::Parse, "unknown groupoid kind '" + kind + "'");
  }
  if (auto v = check_groupoid(g); !v)
    fail(ErrorCode::InvalidInstance, "constructed groupoid violates " + v.first_failure()->law);
  if (auto v = is_etale(g); !v)
    fail(ErrorCode::NotEtale, "constructed groupoid is not etale: " + v.first_failure()->witness);
  return g;
}

}  // namespace qkit
