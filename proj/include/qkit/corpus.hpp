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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkit/groupoid.hpp"
#include "qkit/qmodule.hpp"

namespace qkit::corpus {

/// QUANTALE_KIT_MAX_INSTANCES, default 100000.
std::size_t max_instances();

/// Throws Bound with the estimate when it exceeds max_instances().
void require_within_cap(const std::string& what, double estimate);

/// Topologies on points "x1".."xn": every labelled one, or one per
/// homeomorphism class (ascending canonical form). n <= 5.
std::vector<FiniteSpace> topologies(std::size_t n, bool t0_only, bool up_to_homeomorphism);

struct GroupoidBounds {
  std::size_t max_arrows = 3;
  std::optional<std::size_t> objects;  // exact |G0| when set
  bool discrete_only = false;
};

struct NamedGroupoid {
  std::string id;
  GroupoidPtr groupoid;
};

/// Etale groupoids with |G1| <= max_arrows, one per isomorphism class, in a
/// fixed order (arrows, objects, topology, then generation order).
std::vector<NamedGroupoid> etale_groupoids(const GroupoidBounds& b);
/// Identity groupoids on every topology with at most n points, up to
/// homeomorphism, non-T0 spaces included.
std::vector<NamedGroupoid> identity_groupoids(std::size_t n);
/// z2, pair(2), pair(3).
std::vector<NamedGroupoid> named_groupoids();

bool isomorphic(const FiniteGroupoid& a, const FiniteGroupoid& b);

struct ModuleBounds {
  std::size_t max_points = 3;
  std::optional<std::size_t> points;  // exact |X| when set
  bool discrete_only = false;
};

/// G-locales on T0 spaces with 1..max_points points, up to isomorphism over G.
std::vector<GLocale> glocales(const GroupoidPtr& g, const ModuleBounds& b);
/// Q-locales enumerated directly from the action laws, independently of the
/// G-locale enumeration, up to isomorphism.
std::vector<QLocale> qlocales(const QuantalePtr& q, const ModuleBounds& b);

/// Canonical key of a G-locale under relabelling of its points.
std::vector<std::uint64_t> canonical_key(const GLocale& a);
std::vector<std::uint64_t> canonical_key(const QLocale& m);

/// Random samples with a fixed seed: valid instances drawn from randomly
/// chosen spaces and projections, deduplicated up to isomorphism.
std::vector<GLocale> sample_glocales(const GroupoidPtr& g, std::size_t points, std::size_t count,
                                     std::uint64_t seed);
std::vector<NamedGroupoid> sample_groupoids(std::size_t max_arrows, std::size_t count,
                                            std::uint64_t seed);

}  // namespace qkit::corpus
