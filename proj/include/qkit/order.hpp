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
#pragma once

// Finite order-theoretic substrate: finite spaces, their frames of opens,
// join-preserving maps and their adjoints, spatial duality, pullbacks, and a
// brute-force tensor product of base modules.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qkit/verdict.hpp"

namespace qkit {

using Point = std::uint32_t;
using PointSet = std::uint64_t;  // bit i set <=> point i is a member
using Elem = std::uint32_t;      // index of a lattice element

inline constexpr std::size_t kMaxPoints = 64;
inline constexpr std::size_t kMaxFrameSize = 4096;

inline PointSet singleton(Point p) { return PointSet{1} << p; }
inline bool contains(PointSet s, Point p) { return (s >> p) & 1u; }
inline bool subset(PointSet a, PointSet b) { return (a & ~b) == 0; }
inline PointSet full_set(std::size_t n) {
  return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1;
}
int popcount(PointSet s);
std::vector<Point> members(PointSet s);

/// A finite set of named points with a topology. The topology is stored by
/// the minimal open neighbourhood of every point; a set is open iff it
/// contains the minimal neighbourhood of each of its points.
class FiniteSpace {
 public:
  FiniteSpace() = default;

  /// Validates that `opens` contains the empty set and the carrier and is
  /// closed under pairwise union and intersection; the offending pair is
  /// named otherwise.
  static FiniteSpace from_opens(std::vector<std::string> names,
                                std::span<const PointSet> opens);
  static FiniteSpace from_opens(std::vector<std::string> names,
                                std::initializer_list<PointSet> opens) {
    return from_opens(std::move(names), std::span<const PointSet>(opens.begin(), opens.size()));
  }
  /// The topology generated by an arbitrary family of subsets.
  static FiniteSpace from_subbasis(std::vector<std::string> names,
                                   std::span<const PointSet> sets);
  static FiniteSpace from_neighborhoods(std::vector<std::string> names,
                                        std::vector<PointSet> nbhds);
  static FiniteSpace discrete(std::vector<std::string> names);
  static FiniteSpace indiscrete(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(Point p) const { return names_[p]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Point> find(const std::string& name) const;

  PointSet full() const { return full_set(size()); }
  PointSet neighborhood(Point p) const { return nbhd_[p]; }
  const std::vector<PointSet>& neighborhoods() const { return nbhd_; }

  bool is_open(PointSet s) const;
  /// Largest open contained in `s`.
  PointSet interior(PointSet s) const;
  bool is_t0() const;
  bool is_discrete() const;

  /// All opens, sorted by (cardinality, bits). Throws Bound when the frame
  /// would exceed kMaxFrameSize.
  std::vector<PointSet> opens() const;
  std::size_t count_opens(std::size_t cap) const;

  /// "{a,b}" with members in carrier order.
  std::string format(PointSet s) const;

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<PointSet> nbhd_;
};

/// True iff the preimage of every open of `target` is open in `source`.
bool is_continuous(const FiniteSpace& source, const FiniteSpace& target,
                   std::span<const Point> map);
PointSet image_of(std::span<const Point> map, PointSet s);
PointSet preimage_of(std::span<const Point> map, std::size_t source_size, PointSet s);
/// First open of `source` whose image is not open in `target`.
std::optional<PointSet> openness_witness(const FiniteSpace& source,
                                         const FiniteSpace& target,
                                         std::span<const Point> map);

/// A continuous map between finite spaces; construction validates continuity.
class ContinuousMap {
 public:
  ContinuousMap(FiniteSpace source, FiniteSpace target, std::vector<Point> map);

  const FiniteSpace& source() const { return source_; }
  const FiniteSpace& target() const { return target_; }
  const std::vector<Point>& table() const { return map_; }
  Point operator()(Point p) const { return map_[p]; }

  PointSet image(PointSet s) const { return image_of(map_, s); }
  PointSet preimage(PointSet s) const { return preimage_of(map_, source_.size(), s); }

 private:
  FiniteSpace source_;
  FiniteSpace target_;
  std::vector<Point> map_;
};

/// A finite lattice with precomputed join/meet tables. Frames built from a
/// space remember the open set behind every element.
class Frame {
 public:
  static Frame of_space(const FiniteSpace& space);
  /// `leq[a * n + b]` is a <= b. Validates that the relation is a partial
  /// order with all binary joins and meets, and a bottom and a top.
  static Frame from_order(std::size_t n, const std::vector<std::uint8_t>& leq,
                          std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  bool leq(Elem a, Elem b) const { return leq_[std::size_t{a} * n_ + b] != 0; }
  Elem join(Elem a, Elem b) const { return join_[std::size_t{a} * n_ + b]; }
  Elem meet(Elem a, Elem b) const { return meet_[std::size_t{a} * n_ + b]; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }
  Elem join_all(std::span<const Elem> xs) const;
  Elem meet_all(std::span<const Elem> xs) const;

  /// Number of elements strictly below `a`.
  std::size_t rank(Elem a) const { return rank_[a]; }
  /// Join-irreducible elements (non-bottom, not a join of strictly smaller ones).
  const std::vector<Elem>& join_irreducibles() const { return join_irreducibles_; }
  std::vector<Elem> below(Elem a) const;

  bool is_spatial() const { return !masks_.empty() || n_ == 0; }
  PointSet mask(Elem a) const { return masks_[a]; }
  std::optional<Elem> find(PointSet s) const;
  Elem at(PointSet s) const;  // throws Internal if `s` is not an element
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem a) const;

  /// Frame law a /\ (b \/ c) = (a /\ b) \/ (a /\ c), checked on all triples.
  Verdict check_distributive() const;

 private:
  void finish();

  std::size_t n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  std::vector<std::size_t> rank_;
  std::vector<Elem> join_irreducibles_;
  Elem bottom_ = 0;
  Elem top_ = 0;
  std::vector<PointSet> masks_;
  std::unordered_map<PointSet, Elem> index_;
  std::vector<std::string> labels_;
};

using FramePtr = std::shared_ptr<const Frame>;

/// A table-valued map between two finite lattices. SupMap is the
/// join-preserving case; right adjoints come back in the same form.
struct LatticeMap {
  FramePtr source;
  FramePtr target;
  std::vector<Elem> table;

  Elem operator()(Elem a) const { return table[a]; }
};
using SupMap = LatticeMap;

/// Empty and binary joins, which covers all joins of a finite lattice.
/// On failure the witness names a violating pair (or the empty join).
Verdict check_join_preserving(const LatticeMap& f);
Verdict check_meet_preserving(const LatticeMap& f);

/// g(x) = join of { y | f(y) <= x }. Throws NotJoinPreserving on bad input.
LatticeMap right_adjoint(const LatticeMap& f);
/// f(y) <= x <=> y <= g(x) over all pairs.
Verdict check_galois(const LatticeMap& f, const LatticeMap& g);

/// U |-> f(U) between the frames of opens. Throws OpennessViolation naming the
/// first open whose image is not open.
SupMap direct_image(const ContinuousMap& f);
/// V |-> f^{-1}(V).
LatticeMap inverse_image(const ContinuousMap& f);

/// Spatial realization of a finite frame: its points are the frame
/// homomorphisms into {bottom, top}, one per meet-prime element.
struct SpatialRealization {
  FiniteSpace space;
  std::vector<PointSet> open_of;  // element -> open set of points
};
SpatialRealization points_of_frame(const Frame& frame);

/// Calls `visit` on every continuous map source -> target, in lexicographic
/// order of point images; stops early when `visit` returns false.
void for_each_continuous_map(const FiniteSpace& source, const FiniteSpace& target,
                             const std::function<bool(std::span<const Point>)>& visit);
/// Calls `visit` on every join-preserving map source -> target, as a table.
/// Maps are determined by monotone assignments on join-irreducibles.
void for_each_sup_map(const Frame& source, const Frame& target,
                      const std::function<bool(std::span<const Elem>)>& visit);

/// Order isomorphism search with pruning by rank; result maps elements of
/// `a` to elements of `b`.
std::optional<std::vector<Elem>> find_isomorphism(const Frame& a, const Frame& b);
bool is_order_isomorphism(const Frame& a, const Frame& b, std::span<const Elem> f);

/// Pullback of two maps into a common space: pairs (x, y) with f(x) = g(y),
/// ordered lexicographically, with the subspace topology of the product.
struct Pullback {
  FiniteSpace space;
  std::vector<Point> first;   // pullback point -> source point of f
  std::vector<Point> second;  // pullback point -> source point of g
  std::size_t right_size = 0;
  std::vector<std::int32_t> lookup;  // x * right_size + y -> point or -1

  std::optional<Point> index(Point x, Point y) const;
  /// { (x, y) in P | x in a, y in b }, the image of a (x) b.
  PointSet rectangle(PointSet a, PointSet b) const;
};
Pullback pullback_space(const FiniteSpace& left, std::span<const Point> f,
                        const FiniteSpace& right, std::span<const Point> g);

/// A lattice with an action of a base lattice on one side, given as a table
/// `action[a * base_size + b]` (right action a.b) or `[b * size + x]` (left).
struct BaseModule {
  FramePtr lattice;
  std::size_t base_size = 0;
  std::vector<Elem> action;
};

/// L (x)_B M computed as the lattice of saturated subsets of L x M, i.e.
/// down-closed subsets that contain (bottom, m) and (l, bottom), are closed
/// under joins in each coordinate, and satisfy (a.b, x) in D <=> (a, b.x) in D.
class TensorProduct {
 public:
  const Frame& lattice() const { return *lattice_; }
  FramePtr lattice_ptr() const { return lattice_; }
  Elem tensor(Elem a, Elem x) const { return generator_[std::size_t{a} * right_size_ + x]; }
  std::size_t left_size() const { return left_size_; }
  std::size_t right_size() const { return right_size_; }

  /// Factors a balanced bimorphism phi: L x M -> target (table indexed
  /// a * |M| + x) through the universal one. Returns nullopt if the factoring
  /// map fails to reproduce phi or to preserve joins.
  std::optional<SupMap> factor(FramePtr target, std::span<const Elem> phi) const;

 private:
  friend TensorProduct tensor_oracle(const BaseModule&, const BaseModule&, std::size_t);
  FramePtr lattice_;
  std::size_t left_size_ = 0;
  std::size_t right_size_ = 0;
  std::vector<Elem> generator_;
  std::vector<std::vector<std::uint64_t>> members_;  // saturated set per element
};

inline constexpr std::size_t kDefaultOracleBound = 8;

/// Throws OracleBound when either factor exceeds `max_factor` elements.
TensorProduct tensor_oracle(const BaseModule& right_module, const BaseModule& left_module,
                            std::size_t max_factor = kDefaultOracleBound);

/// Checks phi(a \/ a', x) = phi(a,x) \/ phi(a',x), the symmetric law, both
/// bottoms, and phi(a.b, x) = phi(a, b.x).
Verdict check_balanced_bimorphism(const BaseModule& right_module, const BaseModule& left_module,
                                  const Frame& target, std::span<const Elem> phi);

}  // namespace qkit
