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
#include <bit>
#include <set>
#include <unordered_set>

#include "qkit/error.hpp"
#include "qkit/order.hpp"

namespace qkit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::OpennessViolation: return "OpennessViolation";
    case ErrorCode::NotDistributive: return "NotDistributive";
    case ErrorCode::NotJoinPreserving: return "NotJoinPreserving";
    case ErrorCode::OracleBound: return "OracleBound";
    case ErrorCode::NotEtale: return "NotEtale";
    case ErrorCode::NotAFrameHom: return "NotAFrameHom";
    case ErrorCode::NoPointRealization: return "NoPointRealization";
    case ErrorCode::Bound: return "BoundExceeded";
    case ErrorCode::Internal: return "InternalError";
  }
  return "UnknownError";
}

int popcount(PointSet s) { return std::popcount(s); }

std::vector<Point> members(PointSet s) {
  std::vector<Point> out;
  while (s) {
    out.push_back(static_cast<Point>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

namespace {

void validate_names(const std::vector<std::string>& names) {
  if (names.size() > kMaxPoints)
    fail(ErrorCode::Bound, "space has " + std::to_string(names.size()) +
                               " points; at most 64 are supported");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) fail(ErrorCode::InvalidInstance, "empty point name");
    if (!seen.insert(n).second) fail(ErrorCode::InvalidInstance, "duplicate point name '" + n + "'");
  }
}

}  // namespace

FiniteSpace FiniteSpace::from_opens(std::vector<std::string> names,
                                    std::span<const PointSet> opens) {
  validate_names(names);
  FiniteSpace s;
  s.names_ = std::move(names);
  const PointSet all = s.full();
  std::unordered_set<PointSet> family;
  for (PointSet u : opens) {
    if (!subset(u, all)) fail(ErrorCode::InvalidInstance, "open set mentions an unknown point");
    family.insert(u);
  }
  if (!family.count(0)) fail(ErrorCode::InvalidInstance, "open family lacks the empty set");
  if (!family.count(all)) fail(ErrorCode::InvalidInstance, "open family lacks the full carrier");
  std::vector<PointSet> sorted(family.begin(), family.end());
  std::sort(sorted.begin(), sorted.end());
  s.nbhd_.assign(s.names_.size(), all);
  for (PointSet u : sorted)
    for (Point p : members(u)) s.nbhd_[p] &= u;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      PointSet a = sorted[i], b = sorted[j];
      if (!family.count(a | b))
        fail(ErrorCode::InvalidInstance, "union of " + s.format(a) + " and " + s.format(b) +
                                             " is not in the open family");
      if (!family.count(a & b))
        fail(ErrorCode::InvalidInstance, "intersection of " + s.format(a) + " and " +
                                             s.format(b) + " is not in the open family");
    }
  }
  return s;
}

FiniteSpace FiniteSpace::from_subbasis(std::vector<std::string> names,
                                       std::span<const PointSet> sets) {
  validate_names(names);
  FiniteSpace s;
  s.names_ = std::move(names);
  const PointSet all = s.full();
  s.nbhd_.assign(s.names_.size(), all);
  for (PointSet u : sets) {
    if (!subset(u, all)) fail(ErrorCode::InvalidInstance, "basis set mentions an unknown point");
    for (Point p : members(u)) s.nbhd_[p] &= u;
  }
  return s;
}

FiniteSpace FiniteSpace::from_neighborhoods(std::vector<std::string> names,
                                            std::vector<PointSet> nbhds) {
  validate_names(names);
  if (nbhds.size() != names.size())
    fail(ErrorCode::InvalidInstance, "neighbourhood table size mismatch");
  FiniteSpace s;
  s.names_ = std::move(names);
  s.nbhd_ = std::move(nbhds);
  for (Point p = 0; p < s.size(); ++p) {
    if (!contains(s.nbhd_[p], p) || !subset(s.nbhd_[p], s.full()))
      fail(ErrorCode::InvalidInstance, "bad neighbourhood of " + s.names_[p]);
    for (Point q : members(s.nbhd_[p]))
      if (!subset(s.nbhd_[q], s.nbhd_[p]))
        fail(ErrorCode::InvalidInstance, "neighbourhoods of " + s.names_[p] + " and " +
                                             s.names_[q] + " are not nested");
  }
  return s;
}

FiniteSpace FiniteSpace::discrete(std::vector<std::string> names) {
  validate_names(names);
  FiniteSpace s;
  s.names_ = std::move(names);
  for (Point p = 0; p < s.size(); ++p) s.nbhd_.push_back(singleton(p));
  return s;
}

FiniteSpace FiniteSpace::indiscrete(std::vector<std::string> names) {
  validate_names(names);
  FiniteSpace s;
  s.names_ = std::move(names);
  s.nbhd_.assign(s.size(), s.full());
  return s;
}

std::optional<Point> FiniteSpace::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Point>(it - names_.begin());
}

bool FiniteSpace::is_open(PointSet s) const {
  if (!subset(s, full())) return false;
  for (Point p : members(s))
    if (!subset(nbhd_[p], s)) return false;
  return true;
}

PointSet FiniteSpace::interior(PointSet s) const {
  PointSet out = 0;
  for (Point p : members(s & full()))
    if (subset(nbhd_[p], s)) out |= singleton(p);
  return out;
}

bool FiniteSpace::is_t0() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (nbhd_[i] == nbhd_[j]) return false;
  return true;
}

bool FiniteSpace::is_discrete() const {
  for (Point p = 0; p < size(); ++p)
    if (nbhd_[p] != singleton(p)) return false;
  return true;
}

namespace {

std::vector<PointSet> unions_of(const std::vector<PointSet>& nbhd, std::size_t cap) {
  std::unordered_set<PointSet> seen{0};
  std::vector<PointSet> out{0};
  for (PointSet n : nbhd) {
    const std::size_t current = out.size();
    for (std::size_t i = 0; i < current; ++i) {
      PointSet u = out[i] | n;
      if (seen.insert(u).second) {
        out.push_back(u);
        if (out.size() > cap) return out;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<PointSet> FiniteSpace::opens() const {
  auto out = unions_of(nbhd_, kMaxFrameSize);
  if (out.size() > kMaxFrameSize)
    fail(ErrorCode::Bound, "space " + format(full()) + " has more than " +
                               std::to_string(kMaxFrameSize) + " opens");
  std::sort(out.begin(), out.end(), [](PointSet a, PointSet b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::size_t FiniteSpace::count_opens(std::size_t cap) const {
  return std::min(unions_of(nbhd_, cap).size(), cap + 1);
}

std::string FiniteSpace::format(PointSet s) const {
  std::string out = "{";
  bool first = true;
  for (Point p : members(s)) {
    if (!first) out += ",";
    out += p < names_.size() ? names_[p] : "?" + std::to_string(p);
    first = false;
  }
  return out + "}";
}

bool is_continuous(const FiniteSpace& source, const FiniteSpace& target,
                   std::span<const Point> map) {
  if (map.size() != source.size()) return false;
  // Continuity of a map between finite spaces is monotonicity of the
  // specialisation order: y in N(x) implies f(y) in N(f(x)).
  for (Point x = 0; x < source.size(); ++x) {
    if (map[x] >= target.size()) return false;
    for (Point y : members(source.neighborhood(x)))
      if (!contains(target.neighborhood(map[x]), map[y])) return false;
  }
  return true;
}

PointSet image_of(std::span<const Point> map, PointSet s) {
  PointSet out = 0;
  for (Point p : members(s)) out |= singleton(map[p]);
  return out;
}

PointSet preimage_of(std::span<const Point> map, std::size_t source_size, PointSet s) {
  PointSet out = 0;
  for (Point p = 0; p < source_size; ++p)
    if (contains(s, map[p])) out |= singleton(p);
  return out;
}

std::optional<PointSet> openness_witness(const FiniteSpace& source, const FiniteSpace& target,
                                         std::span<const Point> map) {
  // Every open is a union of minimal neighbourhoods, so those suffice.
  for (Point x = 0; x < source.size(); ++x) {
    PointSet n = source.neighborhood(x);
    if (!target.is_open(image_of(map, n))) return n;
  }
  return std::nullopt;
}

ContinuousMap::ContinuousMap(FiniteSpace source, FiniteSpace target, std::vector<Point> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (!is_continuous(source_, target_, map_))
    fail(ErrorCode::InvalidInstance, "map " + source_.format(source_.full()) + " -> " +
                                         target_.format(target_.full()) + " is not continuous");
}

}  // namespace qkit
