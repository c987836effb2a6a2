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
#include "qkit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "qkit/error.hpp"

namespace qkit::corpus {

namespace {

constexpr std::size_t kMaxTopologyPoints = 5;
constexpr std::size_t kMaxGroupoidArrows = 6;
constexpr std::size_t kMaxQLocalePoints = 3;

// Labelled topologies and T0 topologies on n points, n = 0..7.
constexpr double kTopologies[] = {1, 1, 4, 29, 355, 6942, 209527, 9535241};
constexpr double kT0Topologies[] = {1, 1, 3, 19, 219, 4231, 130023, 6129859};

std::vector<std::string> point_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

PointSet permute_set(PointSet s, std::span<const Point> perm) {
  PointSet out = 0;
  for (Point p : members(s)) out |= singleton(perm[p]);
  return out;
}

// Neighbourhood vector after relabelling point p as perm[p].
std::vector<PointSet> permuted(const std::vector<PointSet>& nbhd, std::span<const Point> perm) {
  std::vector<PointSet> out(nbhd.size());
  for (Point p = 0; p < nbhd.size(); ++p) out[perm[p]] = permute_set(nbhd[p], perm);
  return out;
}

std::vector<PointSet> canonical_topology(const std::vector<PointSet>& nbhd) {
  std::vector<Point> perm(nbhd.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<PointSet> best = nbhd;
  do {
    auto cand = permuted(nbhd, perm);
    if (cand < best) best = std::move(cand);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool nested(const std::vector<PointSet>& nbhd) {
  for (Point p = 0; p < nbhd.size(); ++p)
    for (Point q : members(nbhd[p]))
      if (!subset(nbhd[q], nbhd[p])) return false;
  return true;
}

bool t0(const std::vector<PointSet>& nbhd) {
  for (Point p = 0; p < nbhd.size(); ++p)
    for (Point q = p + 1; q < nbhd.size(); ++q)
      if (nbhd[p] == nbhd[q]) return false;
  return true;
}

std::vector<std::vector<PointSet>> labelled_topologies(std::size_t n, bool t0_only) {
  std::vector<std::vector<PointSet>> out;
  std::vector<PointSet> nbhd(n);
  const PointSet all = full_set(n);
  std::function<void(Point)> extend = [&](Point p) {
    if (p == n) {
      if (nested(nbhd) && (!t0_only || t0(nbhd))) out.push_back(nbhd);
      return;
    }
    const PointSet rest = all & ~singleton(p);
    // Enumerate subsets of the other points, in increasing order.
    for (PointSet sub = 0;; sub = (sub - rest) & rest) {
      nbhd[p] = sub | singleton(p);
      extend(p + 1);
      if (sub == rest) break;
    }
  };
  extend(0);
  return out;
}

// A connected component pair(s) x K of a discrete groupoid.
struct Block {
  std::size_t size;
  FiniteGroup group;
};

struct Algebraic {
  std::string label;
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::vector<Point> dom, cod, unit, inv;
  std::map<std::pair<Point, Point>, Point> comp;
};

Algebraic build_algebraic(const std::vector<Block>& blocks) {
  Algebraic a;
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size;
  for (std::size_t i = 1; i <= n; ++i) a.objects.push_back(n == 1 ? "*" : std::to_string(i));
  a.unit.assign(n, 0);

  std::vector<std::string> parts;
  std::map<std::tuple<Point, Point, std::uint32_t>, Point> index;
  std::vector<std::tuple<Point, Point, std::uint32_t, std::size_t>> desc;
  Point first = 0;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& b = blocks[bi];
    std::string part = b.size == 1 ? b.group.name : "pair(" + std::to_string(b.size) + ")";
    if (b.size > 1 && b.group.order() > 1) part += "x" + b.group.name;
    parts.push_back(part);
    for (Point i = first; i < first + b.size; ++i)
      for (Point j = first; j < first + b.size; ++j)
        for (std::uint32_t k = 0; k < b.group.order(); ++k) {
          std::string name;
          if (n == 1) {
            name = b.group.elements[k];
          } else {
            name = "(" + a.objects[i] + "," + a.objects[j];
            if (b.group.order() > 1) name += "," + b.group.elements[k];
            name += ")";
          }
          index[{i, j, k}] = static_cast<Point>(a.arrows.size());
          desc.emplace_back(i, j, k, bi);
          a.arrows.push_back(name);
          a.dom.push_back(i);
          a.cod.push_back(j);
        }
    first += static_cast<Point>(b.size);
  }
  for (Point g = 0; g < a.arrows.size(); ++g) {
    const auto [i, j, k, bi] = desc[g];
    const FiniteGroup& grp = blocks[bi].group;
    a.inv.push_back(index.at({j, i, grp.inverse(k)}));
    if (i == j && k == grp.identity) a.unit[i] = g;
    for (Point h = 0; h < a.arrows.size(); ++h) {
      const auto [i2, j2, k2, bi2] = desc[h];
      if (j == i2) a.comp[{g, h}] = index.at({i, j2, grp.mul(k, k2)});
    }
  }
  if (parts.empty()) a.label = "empty";
  for (std::size_t i = 0; i < parts.size(); ++i) a.label += (i ? "+" : "") + parts[i];
  return a;
}

// Topologies on the arrows making d a local homeomorphism: each N(g) picks
// one arrow over every object of N(d g). Visits valid etale groupoids.
void for_each_etale(const Algebraic& alg, const FiniteSpace& objects, std::mt19937_64* rng,
                    const std::function<bool(FiniteGroupoid)>& visit) {
  const std::size_t m = alg.arrows.size();
  std::vector<std::pair<Point, std::vector<Point>>> slots;  // arrow, options
  for (Point g = 0; g < m; ++g)
    for (Point y : members(objects.neighborhood(alg.dom[g]))) {
      if (y == alg.dom[g]) continue;
      std::vector<Point> opts;
      for (Point h = 0; h < m; ++h)
        if (alg.dom[h] == y) opts.push_back(h);
      if (rng) std::shuffle(opts.begin(), opts.end(), *rng);
      slots.emplace_back(g, std::move(opts));
    }
  std::vector<PointSet> nbhd(m);
  bool stop = false;
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (stop) return;
    if (k == slots.size()) {
      if (!nested(nbhd)) return;
      FiniteSpace arrows = FiniteSpace::from_neighborhoods(alg.arrows, nbhd);
      FiniteGroupoid g = FiniteGroupoid::make_with(
          objects, std::move(arrows), alg.dom, alg.cod, alg.unit, alg.inv,
          [&](Point a, Point b) { return alg.comp.at({a, b}); });
      if (check_groupoid(g).passed() && is_etale(g).passed()) stop = !visit(std::move(g));
      return;
    }
    const auto& [g, opts] = slots[k];
    for (Point h : opts) {
      nbhd[g] |= singleton(h);
      extend(k + 1);
      nbhd[g] &= ~singleton(h);
      if (stop) return;
    }
  };
  for (Point g = 0; g < m; ++g) nbhd[g] = singleton(g);
  extend(0);
}

struct GroupRef {
  std::size_t order, index;
};

// Block structures with at most max_arrows arrows, grouped by component.
void block_configs(std::size_t max_arrows, std::size_t objects_left, std::vector<Block>& cur,
                   std::size_t arrows, std::optional<std::pair<std::size_t, GroupRef>> prev,
                   std::vector<std::vector<Block>>& out) {
  if (objects_left == 0) {
    out.push_back(cur);
    return;
  }
  const std::size_t max_size = prev ? prev->first : objects_left;
  for (std::size_t s = std::min(max_size, objects_left); s >= 1; --s)
    for (std::size_t ord = 1; arrows + s * s * ord <= max_arrows; ++ord) {
      auto gs = groups::of_order(ord);
      for (std::size_t gi = 0; gi < gs.size(); ++gi) {
        if (prev && prev->first == s &&
            std::pair(ord, gi) < std::pair(prev->second.order, prev->second.index))
          continue;
        cur.push_back({s, gs[gi]});
        block_configs(max_arrows, objects_left - s, cur, arrows + s * s * ord,
                      std::pair(s, GroupRef{ord, gi}), out);
        cur.pop_back();
      }
      if (ord >= 8) break;
    }
}

std::vector<std::vector<Block>> configs_with_objects(std::size_t n, std::size_t max_arrows) {
  std::vector<std::vector<Block>> out;
  std::vector<Block> cur;
  block_configs(max_arrows, n, cur, 0, std::nullopt, out);
  return out;
}

std::vector<std::uint64_t> popcounts(const FiniteSpace& s) {
  std::vector<std::uint64_t> out;
  for (PointSet n : s.neighborhoods()) out.push_back(popcount(n));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t arrow_count(const std::vector<Block>& c) {
  std::size_t a = 0;
  for (const auto& b : c) a += b.size * b.size * b.group.order();
  return a;
}

void keep_unique(std::vector<NamedGroupoid>& found, FiniteGroupoid g, const std::string& label) {
  for (const auto& f : found)
    if (isomorphic(*f.groupoid, g)) return;
  std::size_t variants = 0;
  for (const auto& f : found)
    if (f.id.rfind(label, 0) == 0 &&
        (f.id.size() == label.size() || f.id[label.size()] == '~'))
      ++variants;
  const bool discrete = g.objects.is_discrete() && g.arrows.is_discrete();
  std::string id = label;
  if (!discrete || variants > 0) id += "~" + std::to_string(variants + 1);
  found.push_back({id, std::make_shared<const FiniteGroupoid>(std::move(g))});
}

double factorial(std::size_t n) {
  double f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= double(i);
  return f;
}

struct Fibres {
  std::vector<std::vector<Point>> over;  // object -> points over it
};

// Visits every G-locale structure on (space, proj): one fibre bijection per
// arrow, consistent with units, inverses and composition.
void for_each_action(const GroupoidPtr& g, const FiniteSpace& space, std::span<const Point> proj,
                     std::mt19937_64* rng, const std::function<bool(GLocale)>& visit) {
  const FiniteGroupoid& G = *g;
  const std::size_t m = G.arrows.size(), k = space.size();
  std::vector<std::vector<Point>> over(G.objects.size());
  for (Point x = 0; x < k; ++x) over[proj[x]].push_back(x);
  for (Point a = 0; a < m; ++a)
    if (over[G.cod[a]].size() != over[G.dom[a]].size()) return;

  constexpr Point kUnset = ~Point{0};
  std::vector<std::vector<Point>> act(m, std::vector<Point>(k, kUnset));
  std::vector<char> set(m, 0);
  for (Point o = 0; o < G.objects.size(); ++o) {
    for (Point x : over[o]) act[G.unit[o]][x] = x;
    set[G.unit[o]] = 1;
  }
  auto consistent = [&]() {
    for (Point z = 0; z < G.comp.size(); ++z) {
      const Point a = G.composable.first[z], b = G.composable.second[z], c = G.comp[z];
      if (!set[a] || !set[b] || !set[c]) continue;
      for (Point x : over[G.cod[b]])
        if (act[c][x] != act[a][act[b][x]]) return false;
    }
    return true;
  };
  bool stop = false;
  std::function<void(Point)> extend = [&](Point a) {
    if (stop) return;
    if (a == m) {
      GLocale loc = GLocale::make_with(g, space, std::vector<Point>(proj.begin(), proj.end()),
                                       [&](Point h, Point x) { return act[h][x]; });
      if (check_glocale(loc).passed()) stop = !visit(std::move(loc));
      return;
    }
    if (set[a]) {
      extend(a + 1);
      return;
    }
    const auto& from = over[G.cod[a]];
    std::vector<Point> to = over[G.dom[a]];
    std::vector<std::vector<Point>> perms;
    do perms.push_back(to);
    while (std::next_permutation(to.begin(), to.end()));
    if (rng) std::shuffle(perms.begin(), perms.end(), *rng);
    const Point ia = G.inv[a];
    for (const auto& perm : perms) {
      for (std::size_t i = 0; i < from.size(); ++i) act[a][from[i]] = perm[i];
      set[a] = 1;
      bool ok = true;
      if (ia != a) {
        for (std::size_t i = 0; i < from.size(); ++i) act[ia][perm[i]] = from[i];
        set[ia] = 1;
      } else {
        for (Point x : from) ok = ok && act[a][act[a][x]] == x;
      }
      if (ok && consistent()) extend(a + 1);
      set[a] = 0;
      if (ia != a) set[ia] = 0;
      if (stop) return;
    }
  };
  extend(0);
}

template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  std::vector<Point> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do f(std::span<const Point>(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

std::size_t max_instances() {
  if (const char* env = std::getenv("QUANTALE_KIT_MAX_INSTANCES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100000;
}

void require_within_cap(const std::string& what, double estimate) {
  if (estimate <= double(max_instances())) return;
  std::ostringstream os;
  os << what << ": about " << std::llround(estimate)
     << " candidate instances exceed QUANTALE_KIT_MAX_INSTANCES=" << max_instances()
     << "; lower the bounds or use --seed to sample";
  fail(ErrorCode::Bound, os.str());
}

std::vector<FiniteSpace> topologies(std::size_t n, bool t0_only, bool up_to_homeomorphism) {
  if (n > kMaxTopologyPoints)
    fail(ErrorCode::Bound, "topology enumeration covers at most 5 points, asked for " +
                               std::to_string(n));
  auto all = labelled_topologies(n, t0_only);
  if (up_to_homeomorphism) {
    std::set<std::vector<PointSet>> classes;
    for (const auto& t : all) classes.insert(canonical_topology(t));
    all.assign(classes.begin(), classes.end());
  }
  std::vector<FiniteSpace> out;
  for (auto& t : all) out.push_back(FiniteSpace::from_neighborhoods(point_names(n), t));
  return out;
}

bool isomorphic(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.objects.size() != b.objects.size() || a.arrows.size() != b.arrows.size() ||
      a.comp.size() != b.comp.size() || popcounts(a.objects) != popcounts(b.objects) ||
      popcounts(a.arrows) != popcounts(b.arrows))
    return false;
  const std::size_t n = a.objects.size(), m = a.arrows.size();
  bool found = false;
  for_each_permutation(n, [&](std::span<const Point> sigma) {
    if (found || permuted(a.objects.neighborhoods(), sigma) != b.objects.neighborhoods()) return;
    std::vector<Point> tau(m);
    std::vector<char> used(m, 0);
    std::function<bool(Point)> extend = [&](Point g) {
      if (g == m) {
        if (permuted(a.arrows.neighborhoods(), tau) != b.arrows.neighborhoods()) return false;
        for (Point z = 0; z < a.comp.size(); ++z) {
          auto w = b.composable.index(tau[a.composable.first[z]], tau[a.composable.second[z]]);
          if (!w || b.comp[*w] != tau[a.comp[z]]) return false;
        }
        for (Point o = 0; o < n; ++o)
          if (b.unit[sigma[o]] != tau[a.unit[o]]) return false;
        return true;
      }
      for (Point h = 0; h < m; ++h) {
        if (used[h] || b.dom[h] != sigma[a.dom[g]] || b.cod[h] != sigma[a.cod[g]]) continue;
        tau[g] = h;
        used[h] = 1;
        if (extend(g + 1)) return true;
        used[h] = 0;
      }
      return false;
    };
    found = extend(0);
  });
  return found;
}

std::vector<NamedGroupoid> etale_groupoids(const GroupoidBounds& b) {
  if (b.max_arrows > kMaxGroupoidArrows) {
    double estimate = 0;
    for (std::size_t n = 0; n <= std::min<std::size_t>(b.max_arrows, 7); ++n)
      estimate += kTopologies[n] * double(b.max_arrows);
    require_within_cap("etale groupoids with |G1| <= " + std::to_string(b.max_arrows), estimate);
    fail(ErrorCode::Bound, "etale groupoid enumeration covers |G1| <= 6");
  }
  std::vector<std::vector<Block>> configs;
  for (std::size_t n = 0; n <= b.max_arrows; ++n) {
    if (b.objects && *b.objects != n) continue;
    for (auto& c : configs_with_objects(n, b.max_arrows)) configs.push_back(std::move(c));
  }
  std::stable_sort(configs.begin(), configs.end(), [](const auto& x, const auto& y) {
    return arrow_count(x) < arrow_count(y);
  });

  std::vector<NamedGroupoid> found;
  for (const auto& config : configs) {
    const Algebraic alg = build_algebraic(config);
    const std::size_t n = alg.objects.size();
    std::vector<FiniteSpace> spaces;
    if (b.discrete_only) {
      spaces.push_back(FiniteSpace::discrete(alg.objects));
    } else {
      for (auto& t : labelled_topologies(n, false))
        spaces.push_back(FiniteSpace::from_neighborhoods(alg.objects, t));
    }
    for (const auto& objects : spaces)
      for_each_etale(alg, objects, nullptr, [&](FiniteGroupoid g) {
        if (b.discrete_only && !g.arrows.is_discrete()) return true;
        keep_unique(found, std::move(g), alg.label);
        if (found.size() > max_instances())
          require_within_cap("etale groupoids", double(found.size()));
        return true;
      });
  }
  return found;
}

std::vector<NamedGroupoid> identity_groupoids(std::size_t n) {
  std::vector<NamedGroupoid> out;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto spaces = topologies(k, false, true);
    for (std::size_t i = 0; i < spaces.size(); ++i)
      out.push_back({"identity-" + std::to_string(k) + "." + std::to_string(i + 1),
                     std::make_shared<const FiniteGroupoid>(named::identity_on(spaces[i]))});
  }
  return out;
}

std::vector<NamedGroupoid> named_groupoids() {
  std::vector<NamedGroupoid> out;
  for (const char* name : {"z2", "pair2", "pair3"})
    out.push_back({name, std::make_shared<const FiniteGroupoid>(make_named(name))});
  return out;
}

std::vector<std::uint64_t> canonical_key(const GLocale& a) {
  const FiniteGroupoid& g = *a.groupoid;
  const std::size_t k = a.total.size(), m = g.arrows.size();
  std::vector<std::uint64_t> best;
  for_each_permutation(k, [&](std::span<const Point> sigma) {
    std::vector<std::uint64_t> key{k};
    for (PointSet s : permuted(a.total.neighborhoods(), sigma)) key.push_back(s);
    std::vector<std::uint64_t> proj(k), act(m * k, ~std::uint64_t{0});
    for (Point x = 0; x < k; ++x) proj[sigma[x]] = a.proj[x];
    for (Point z = 0; z < a.act.size(); ++z)
      act[a.pairs.first[z] * k + sigma[a.pairs.second[z]]] = sigma[a.act[z]];
    key.insert(key.end(), proj.begin(), proj.end());
    key.insert(key.end(), act.begin(), act.end());
    if (best.empty() || key < best) best = std::move(key);
  });
  return best;
}

std::vector<std::uint64_t> canonical_key(const QLocale& m) {
  const std::size_t k = m.space.size(), n = m.size(), nq = m.quantale->size();
  const Frame& f = m.frame();
  std::vector<std::uint64_t> best;
  for_each_permutation(k, [&](std::span<const Point> sigma) {
    std::vector<std::uint64_t> key{k};
    for (PointSet s : permuted(m.space.neighborhoods(), sigma)) key.push_back(s);
    // Elements are named by their permuted masks, so keys compare across spaces.
    std::vector<std::uint64_t> table(nq * n);
    std::vector<PointSet> image(n);
    for (Elem x = 0; x < n; ++x) image[x] = permute_set(f.mask(x), sigma);
    std::vector<Elem> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Elem x, Elem y) { return image[x] < image[y]; });
    for (Elem a = 0; a < nq; ++a)
      for (std::size_t i = 0; i < n; ++i) table[a * n + i] = image[m.act(a, order[i])];
    key.insert(key.end(), table.begin(), table.end());
    if (best.empty() || key < best) best = std::move(key);
  });
  return best;
}

namespace {

// Arrows that determine an action: a spanning tree per component plus
// generators of its isotropy group (at most log2 of the group order).
double action_generators(const FiniteGroupoid& G) {
  const std::size_t n = G.objects.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (Point a = 0; a < G.arrows.size(); ++a) parent[root(G.dom[a])] = root(G.cod[a]);
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> comps;  // objects, arrows
  for (std::size_t x = 0; x < n; ++x) ++comps[root(x)].first;
  for (Point a = 0; a < G.arrows.size(); ++a) ++comps[root(G.dom[a])].second;
  double gens = 0;
  for (const auto& [r, c] : comps) {
    const double h = double(c.second) / double(c.first * c.first);
    gens += double(c.first - 1) + std::ceil(std::log2(std::max(h, 1.0)));
  }
  return gens;
}

}  // namespace

std::vector<GLocale> glocales(const GroupoidPtr& g, const ModuleBounds& b) {
  const FiniteGroupoid& G = *g;
  double estimate = 0;
  for (std::size_t k = 1; k <= b.max_points; ++k) {
    if (b.points && *b.points != k) continue;
    if (k > kMaxTopologyPoints) {
      estimate = std::numeric_limits<double>::infinity();
      break;
    }
    estimate += kT0Topologies[k] * std::pow(double(G.objects.size()), double(k)) *
                std::pow(factorial(k), action_generators(G));
  }
  require_within_cap("G-locales with |X| <= " + std::to_string(b.max_points), estimate);

  std::map<std::vector<std::uint64_t>, GLocale> found;
  for (std::size_t k = 1; k <= b.max_points; ++k) {
    if (b.points && *b.points != k) continue;
    for (auto& t : labelled_topologies(k, true)) {
      const FiniteSpace space = FiniteSpace::from_neighborhoods(point_names(k), t);
      if (b.discrete_only && !space.is_discrete()) continue;
      for_each_continuous_map(space, G.objects, [&](std::span<const Point> proj) {
        for_each_action(g, space, proj, nullptr, [&](GLocale a) {
          auto key = canonical_key(a);
          found.try_emplace(std::move(key), std::move(a));
          return true;
        });
        if (found.size() > max_instances())
          require_within_cap("G-locales", double(found.size()));
        return true;
      });
    }
  }
  std::vector<GLocale> out;
  for (auto& [key, a] : found) out.push_back(std::move(a));
  return out;
}

std::vector<QLocale> qlocales(const QuantalePtr& qp, const ModuleBounds& b) {
  const InvQuantale& q = *qp;
  if (b.max_points > kMaxQLocalePoints && !(b.points && *b.points <= kMaxQLocalePoints))
    fail(ErrorCode::Bound, "direct Q-locale enumeration covers |X| <= 3");
  const Frame& Q = q.frame();
  std::vector<Elem> ji = Q.join_irreducibles();
  std::stable_partition(ji.begin(), ji.end(), [&](Elem j) { return q.in_base(j); });
  std::vector<std::vector<Elem>> below(q.size());  // join-irreducible positions under a
  for (Elem a = 0; a < q.size(); ++a)
    for (std::size_t i = 0; i < ji.size(); ++i)
      if (Q.leq(ji[i], a)) below[a].push_back(static_cast<Elem>(i));

  std::map<std::vector<std::uint64_t>, QLocale> found;
  for (std::size_t k = 1; k <= b.max_points; ++k) {
    if (b.points && *b.points != k) continue;
    for (const FiniteSpace& space : topologies(k, true, true)) {
      if (b.discrete_only && !space.is_discrete()) continue;
      const Frame F = Frame::of_space(space);
      const std::size_t n = F.size();
      std::vector<std::vector<Elem>> sup_maps;
      for_each_sup_map(F, F, [&](std::span<const Elem> t) {
        sup_maps.emplace_back(t.begin(), t.end());
        return true;
      });
      std::vector<std::vector<Elem>> meets(n);
      for (Elem c = 0; c < n; ++c)
        for (Elem x = 0; x < n; ++x) meets[c].push_back(F.meet(c, x));

      std::vector<const std::vector<Elem>*> f(ji.size(), nullptr);
      auto act_of = [&](Elem a, Elem x, std::size_t upto) -> std::optional<Elem> {
        Elem acc = F.bottom();
        for (Elem i : below[a]) {
          if (i >= upto) return std::nullopt;
          acc = F.join(acc, (*f[i])[x]);
        }
        return acc;
      };
      auto pair_ok = [&](std::size_t i, std::size_t j, std::size_t upto) {
        const Elem p = q.mul(ji[i], ji[j]);
        for (Elem x = 0; x < n; ++x) {
          auto lhs = act_of(p, x, upto);
          if (!lhs) return true;
          if (*lhs != (*f[i])[(*f[j])[x]]) return false;
        }
        return true;
      };
      std::function<void(std::size_t)> extend = [&](std::size_t i) {
        if (i == ji.size()) {
          std::vector<Elem> table(q.size() * n);
          for (Elem a = 0; a < q.size(); ++a)
            for (Elem x = 0; x < n; ++x) table[a * n + x] = *act_of(a, x, ji.size());
          QLocale m = QLocale::make(qp, space, std::move(table));
          if (check_qlocale(m).passed()) {
            auto key = canonical_key(m);
            found.try_emplace(std::move(key), std::move(m));
            if (found.size() > max_instances())
              require_within_cap("Q-locales", double(found.size()));
          }
          return;
        }
        const auto& cands = q.in_base(ji[i]) ? meets : sup_maps;
        for (const auto& cand : cands) {
          f[i] = &cand;
          bool ok = true;
          for (std::size_t j = 0; j <= i && ok; ++j)
            ok = pair_ok(i, j, i + 1) && pair_ok(j, i, i + 1);
          if (ok) extend(i + 1);
        }
        f[i] = nullptr;
      };
      extend(0);
    }
  }
  std::vector<QLocale> out;
  for (auto& [key, m] : found) out.push_back(std::move(m));
  return out;
}

std::vector<GLocale> sample_glocales(const GroupoidPtr& g, std::size_t points, std::size_t count,
                                     std::uint64_t seed) {
  if (points > kMaxTopologyPoints)
    fail(ErrorCode::Bound, "sampling covers spaces of at most 5 points");
  std::mt19937_64 rng(seed);
  const auto spaces = labelled_topologies(points, true);
  std::map<std::vector<std::uint64_t>, GLocale> seen;
  std::vector<GLocale> out;
  const FiniteGroupoid& G = *g;
  if (G.objects.size() == 0 && points > 0) return out;
  for (std::size_t attempt = 0; attempt < 64 * count && out.size() < count; ++attempt) {
    const auto& t = spaces[rng() % spaces.size()];
    const FiniteSpace space = FiniteSpace::from_neighborhoods(point_names(points), t);
    std::vector<Point> proj(points);
    for (auto& p : proj) p = static_cast<Point>(rng() % G.objects.size());
    if (!is_continuous(space, G.objects, proj)) continue;
    for_each_action(g, space, proj, &rng, [&](GLocale a) {
      auto key = canonical_key(a);
      if (seen.try_emplace(key, a).second) out.push_back(std::move(a));
      return false;
    });
  }
  return out;
}

std::vector<NamedGroupoid> sample_groupoids(std::size_t max_arrows, std::size_t count,
                                            std::uint64_t seed) {
  if (max_arrows > 64) fail(ErrorCode::Bound, "groupoids are capped at 64 arrows");
  std::mt19937_64 rng(seed);
  std::vector<NamedGroupoid> out;
  for (std::size_t attempt = 0; attempt < 64 * count && out.size() < count; ++attempt) {
    // Random components until the arrow budget is spent.
    std::vector<Block> blocks;
    std::size_t arrows = 0, objects = 0;
    while (objects < kMaxTopologyPoints) {
      const std::size_t s = 1 + rng() % 2;
      const std::size_t ord = 1 + rng() % 8;
      if (arrows + s * s * ord > max_arrows || objects + s > kMaxTopologyPoints) break;
      auto gs = groups::of_order(ord);
      blocks.push_back({s, gs[rng() % gs.size()]});
      arrows += s * s * ord;
      objects += s;
      if (rng() % 2) break;
    }
    const Algebraic alg = build_algebraic(blocks);
    const auto ts = labelled_topologies(objects, false);
    const FiniteSpace space = FiniteSpace::from_neighborhoods(alg.objects, ts[rng() % ts.size()]);
    for_each_etale(alg, space, &rng, [&](FiniteGroupoid g) {
      keep_unique(out, std::move(g), alg.label);
      return false;
    });
  }
  return out;
}

}  // namespace qkit::corpus
