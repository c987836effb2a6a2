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
#include "qkit/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qkit/error.hpp"

namespace qkit::io {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::Parse, "field " + path + ": " + what);
}

const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path, "missing key \"" + key + "\"");
  return *it;
}

std::string need_string(const json& j, const std::string& path) {
  if (!j.is_string()) field_error(path, "expected a string");
  return j.get<std::string>();
}

Point need_point(const FiniteSpace& s, const json& j, const std::string& path) {
  const std::string name = need_string(j, path);
  auto p = s.find(name);
  if (!p) field_error(path, "unknown point \"" + name + "\"");
  return *p;
}

PointSet need_set(const FiniteSpace& s, const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected a list of point names");
  PointSet out = 0;
  for (std::size_t k = 0; k < j.size(); ++k)
    out |= singleton(need_point(s, j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

FiniteSpace parse_space(const json& j, const std::string& path) {
  const json& pts = need(j, "points", path);
  if (!pts.is_array()) field_error(path + ".points", "expected a list of names");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < pts.size(); ++k)
    names.push_back(need_string(pts[k], path + ".points[" + std::to_string(k) + "]"));
  if (names.size() > kMaxPoints)
    fail(ErrorCode::Bound, path + " has more than 64 points");
  const FiniteSpace bare = FiniteSpace::discrete(names);

  if (j.contains("neighborhoods")) {
    const json& nb = j["neighborhoods"];
    if (!nb.is_object()) field_error(path + ".neighborhoods", "expected an object");
    std::vector<PointSet> sets(names.size());
    for (Point p = 0; p < names.size(); ++p)
      sets[p] = need_set(bare, need(nb, names[p], path + ".neighborhoods"),
                         path + ".neighborhoods." + names[p]);
    return FiniteSpace::from_neighborhoods(names, std::move(sets));
  }
  auto sets_of = [&](const char* key) {
    const json& list = j[key];
    if (!list.is_array()) field_error(path + "." + key, "expected a list of sets");
    std::vector<PointSet> sets;
    for (std::size_t k = 0; k < list.size(); ++k)
      sets.push_back(need_set(bare, list[k], path + "." + key + "[" + std::to_string(k) + "]"));
    return sets;
  };
  if (j.contains("opens")) return FiniteSpace::from_opens(names, sets_of("opens"));
  if (j.contains("basis")) return FiniteSpace::from_subbasis(names, sets_of("basis"));
  if (j.contains("topology")) {
    const std::string t = need_string(j["topology"], path + ".topology");
    if (t == "discrete") return bare;
    if (t == "indiscrete") return FiniteSpace::indiscrete(names);
    field_error(path + ".topology", "expected \"discrete\" or \"indiscrete\"");
  }
  field_error(path, "needs one of neighborhoods, opens, basis, topology");
}

std::vector<Point> parse_function(const FiniteSpace& from, const FiniteSpace& to, const json& j,
                                  const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object from names to names");
  std::vector<Point> out(from.size());
  for (Point p = 0; p < from.size(); ++p)
    out[p] = need_point(to, need(j, from.name(p), path), path + "." + from.name(p));
  if (j.size() != from.size()) field_error(path, "has entries for unknown points");
  return out;
}

json names_of(const FiniteSpace& s, PointSet set) {
  std::vector<std::string> out;
  for (Point p : members(set)) out.push_back(s.name(p));
  std::sort(out.begin(), out.end());
  return out;
}

json save_space(const FiniteSpace& s) {
  std::vector<std::string> pts = s.names();
  std::sort(pts.begin(), pts.end());
  json nb = json::object();
  for (Point p = 0; p < s.size(); ++p) nb[s.name(p)] = names_of(s, s.neighborhood(p));
  return json{{"points", pts}, {"neighborhoods", nb}};
}

json save_function(const FiniteSpace& from, const FiniteSpace& to, std::span<const Point> f) {
  json out = json::object();
  for (Point p = 0; p < from.size(); ++p) out[from.name(p)] = to.name(f[p]);
  return out;
}

json sorted_rows(std::vector<json> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

json save_groupoid(const FiniteGroupoid& g) {
  std::vector<json> m;
  for (Point z = 0; z < g.comp.size(); ++z)
    m.push_back(json::array({g.arrows.name(g.composable.first[z]),
                             g.arrows.name(g.composable.second[z]),
                             g.arrows.name(g.comp[z])}));
  return json{{"objects", save_space(g.objects)},
              {"arrows", save_space(g.arrows)},
              {"d", save_function(g.arrows, g.objects, g.dom)},
              {"r", save_function(g.arrows, g.objects, g.cod)},
              {"u", save_function(g.objects, g.arrows, g.unit)},
              {"i", save_function(g.arrows, g.arrows, g.inv)},
              {"m", sorted_rows(std::move(m))}};
}

FiniteGroupoid parse_groupoid_body(const json& j, const std::string& path) {
  FiniteSpace objects = parse_space(need(j, "objects", path), path + ".objects");
  FiniteSpace arrows = parse_space(need(j, "arrows", path), path + ".arrows");
  auto dom = parse_function(arrows, objects, need(j, "d", path), path + ".d");
  auto cod = parse_function(arrows, objects, need(j, "r", path), path + ".r");
  auto unit = parse_function(objects, arrows, need(j, "u", path), path + ".u");
  auto inv = parse_function(arrows, arrows, need(j, "i", path), path + ".i");

  const Pullback pb = pullback_space(arrows, cod, arrows, dom);
  std::vector<std::int64_t> comp(pb.first.size(), -1);
  const json& m = need(j, "m", path);
  if (!m.is_array()) field_error(path + ".m", "expected a list of [g, h, gh] triples");
  for (std::size_t k = 0; k < m.size(); ++k) {
    const std::string at = path + ".m[" + std::to_string(k) + "]";
    if (!m[k].is_array() || m[k].size() != 3) field_error(at, "expected [g, h, gh]");
    const Point a = need_point(arrows, m[k][0], at + "[0]");
    const Point b = need_point(arrows, m[k][1], at + "[1]");
    const Point c = need_point(arrows, m[k][2], at + "[2]");
    auto z = pb.index(a, b);
    if (!z) field_error(at, arrows.name(a) + " and " + arrows.name(b) + " are not composable");
    if (comp[*z] >= 0) field_error(at, "duplicate composite");
    comp[*z] = c;
  }
  std::vector<Point> table(comp.size());
  for (Point z = 0; z < comp.size(); ++z) {
    if (comp[z] < 0)
      field_error(path + ".m", "missing composite of " + arrows.name(pb.first[z]) + " and " +
                                   arrows.name(pb.second[z]));
    table[z] = static_cast<Point>(comp[z]);
  }
  return FiniteGroupoid::make(std::move(objects), std::move(arrows), std::move(dom),
                              std::move(cod), std::move(unit), std::move(inv), std::move(table));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    std::string msg = e.what();
    if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    fail(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
  }
}

class Reader {
 public:
  explicit Reader(const LoadOptions& opts) : opts_(opts) {}

  GroupoidPtr groupoid(const json& j, const std::string& path) {
    if (j.is_string()) return referenced(j.get<std::string>(), path);
    return std::make_shared<const FiniteGroupoid>(parse_groupoid_body(j, path));
  }

  GLocale glocale(const json& j, const std::string& path) {
    GroupoidPtr g = groupoid(need(j, "groupoid", path), path + ".groupoid");
    FiniteSpace total = parse_space(need(j, "space", path), path + ".space");
    auto proj = parse_function(total, g->objects, need(j, "p", path), path + ".p");
    const Pullback pb = pullback_space(g->arrows, g->cod, total, proj);
    std::vector<std::int64_t> act(pb.first.size(), -1);
    const json& rows = need(j, "act", path);
    if (!rows.is_array()) field_error(path + ".act", "expected a list of [g, x, gx] triples");
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const std::string at = path + ".act[" + std::to_string(k) + "]";
      if (!rows[k].is_array() || rows[k].size() != 3) field_error(at, "expected [g, x, gx]");
      const Point a = need_point(g->arrows, rows[k][0], at + "[0]");
      const Point x = need_point(total, rows[k][1], at + "[1]");
      const Point y = need_point(total, rows[k][2], at + "[2]");
      auto z = pb.index(a, x);
      if (!z) field_error(at, "r(" + g->arrows.name(a) + ") is not p(" + total.name(x) + ")");
      if (act[*z] >= 0) field_error(at, "duplicate entry");
      act[*z] = y;
    }
    std::vector<Point> table(act.size());
    for (Point z = 0; z < act.size(); ++z) {
      if (act[z] < 0)
        field_error(path + ".act", "missing action of " + g->arrows.name(pb.first[z]) + " on " +
                                       total.name(pb.second[z]));
      table[z] = static_cast<Point>(act[z]);
    }
    return GLocale::make(std::move(g), std::move(total), std::move(proj), std::move(table));
  }

  QLocale qlocale(const json& j, const std::string& path) {
    GroupoidPtr g = groupoid(need(j, "groupoid", path), path + ".groupoid");
    QuantalePtr q = quantale_of(g);
    FiniteSpace space = parse_space(need(j, "space", path), path + ".space");
    const Frame x = Frame::of_space(space);
    std::vector<std::int64_t> act(q->size() * x.size(), -1);
    const json& rows = need(j, "act", path);
    if (!rows.is_array()) field_error(path + ".act", "expected a list of [a, x, ax] triples");
    auto elem = [](const Frame& f, PointSet s, const std::string& at) {
      auto e = f.find(s);
      if (!e) field_error(at, "not an open set");
      return *e;
    };
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const std::string at = path + ".act[" + std::to_string(k) + "]";
      if (!rows[k].is_array() || rows[k].size() != 3) field_error(at, "expected [a, x, ax]");
      const Elem a = elem(q->frame(), need_set(g->arrows, rows[k][0], at + "[0]"), at + "[0]");
      const Elem s = elem(x, need_set(space, rows[k][1], at + "[1]"), at + "[1]");
      const Elem t = elem(x, need_set(space, rows[k][2], at + "[2]"), at + "[2]");
      auto& slot = act[std::size_t{a} * x.size() + s];
      if (slot >= 0) field_error(at, "duplicate entry");
      slot = t;
    }
    std::vector<Elem> table(act.size());
    for (std::size_t k = 0; k < act.size(); ++k) {
      if (act[k] < 0)
        field_error(path + ".act", "missing entry for " + q->label(k / x.size()) + " . " +
                                       x.label(k % x.size()));
      table[k] = static_cast<Elem>(act[k]);
    }
    return QLocale::make(std::move(q), std::move(space), std::move(table));
  }

 private:
  GroupoidPtr referenced(const std::string& ref, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path file = fs::path(opts_.base_dir) / ref;
    if (!ref.empty() && fs::is_regular_file(file)) {
      LoadOptions sub = opts_;
      sub.base_dir = file.parent_path().string();
      Instance inst = parse(read_text(file.string()), sub);
      if (inst.kind != Kind::Groupoid) field_error(path, ref + " is not a groupoid file");
      return inst.groupoid;
    }
    try {
      return std::make_shared<const FiniteGroupoid>(make_named(ref));
    } catch (const Error& e) {
      field_error(path, "\"" + ref + "\" is neither a groupoid file nor a named groupoid");
    }
  }

  const LoadOptions& opts_;
};

json save_glocale_body(const GLocale& a) {
  const FiniteGroupoid& g = *a.groupoid;
  std::vector<json> rows;
  for (Point z = 0; z < a.act.size(); ++z)
    rows.push_back(json::array({g.arrows.name(a.pairs.first[z]),
                                a.total.name(a.pairs.second[z]), a.total.name(a.act[z])}));
  return json{{"groupoid", save_groupoid(g)},
              {"space", save_space(a.total)},
              {"p", save_function(a.total, g.objects, a.proj)},
              {"act", sorted_rows(std::move(rows))}};
}

json save_qlocale_body(const QLocale& m) {
  const InvQuantale& q = *m.quantale;
  const FiniteGroupoid& g = *q.groupoid;
  std::vector<json> rows;
  for (Elem a = 0; a < q.size(); ++a)
    for (Elem x = 0; x < m.size(); ++x)
      rows.push_back(json::array({names_of(g.arrows, q.arrows_of(a)),
                                  names_of(m.space, m.frame().mask(x)),
                                  names_of(m.space, m.frame().mask(m.act(a, x)))}));
  return json{{"groupoid", save_groupoid(g)},
              {"space", save_space(m.space)},
              {"act", sorted_rows(std::move(rows))}};
}

void parse_meta(const json& j, Metadata& meta) {
  if (j.contains("name")) meta.name = need_string(j["name"], "name");
  if (!j.contains("meta")) return;
  const json& m = j["meta"];
  if (!m.is_object()) field_error("meta", "expected an object");
  if (m.contains("seed")) {
    if (!m["seed"].is_number_unsigned()) field_error("meta.seed", "expected an unsigned integer");
    meta.seed = m["seed"].get<std::uint64_t>();
  }
  if (m.contains("bounds")) meta.bounds = need_string(m["bounds"], "meta.bounds");
}

std::string first_failure(const Verdict& v) {
  const LawOutcome* f = v.first_failure();
  return f->law + (f->witness.empty() ? "" : " (" + f->witness + ")");
}

}  // namespace

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::Groupoid: return "groupoid";
    case Kind::GLocale: return "glocale";
    case Kind::QLocale: return "qlocale";
    case Kind::Hom: return "hom";
  }
  return "?";
}

std::optional<Kind> kind_from_string(const std::string& s) {
  for (Kind k : {Kind::Groupoid, Kind::GLocale, Kind::QLocale, Kind::Hom})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

QuantalePtr quantale_of(const GroupoidPtr& g) {
  return std::make_shared<const InvQuantale>(InvQuantale::of_groupoid(g));
}

Instance parse(const std::string& text, const LoadOptions& opts) {
  const json j = parse_json(text);
  if (!j.is_object()) fail(ErrorCode::Parse, "line 1: expected a JSON object");
  auto kind = kind_from_string(need_string(need(j, "kind", "<root>"), "kind"));
  if (!kind) field_error("kind", "expected groupoid, glocale, qlocale or hom");

  Instance inst;
  inst.kind = *kind;
  parse_meta(j, inst.meta);
  Reader r(opts);
  switch (*kind) {
    case Kind::Groupoid:
      inst.groupoid = r.groupoid(j, "<root>");
      break;
    case Kind::GLocale:
      inst.glocale = r.glocale(j, "<root>");
      inst.groupoid = inst.glocale->groupoid;
      break;
    case Kind::QLocale:
      inst.qlocale = r.qlocale(j, "<root>");
      inst.groupoid = inst.qlocale->quantale->groupoid;
      break;
    case Kind::Hom: {
      GLocale src = r.glocale(need(j, "source", "<root>"), "source");
      GLocale dst = r.glocale(need(j, "target", "<root>"), "target");
      if (save_groupoid(*src.groupoid) != save_groupoid(*dst.groupoid))
        field_error("target.groupoid", "differs from the source groupoid");
      auto map = parse_function(src.total, dst.total, need(j, "map", "<root>"), "map");
      dst.groupoid = src.groupoid;
      inst.groupoid = src.groupoid;
      inst.hom = Hom{std::move(src), std::move(dst), std::move(map)};
      break;
    }
  }
  if (!opts.allow_invalid) {
    const Verdict v = validate(inst);
    if (!v.passed())
      fail(ErrorCode::InvalidInstance, std::string(to_string(*kind)) +
                                           " violates " + first_failure(v) +
                                           "; pass --allow-invalid to load it anyway");
  }
  return inst;
}

Instance load(const std::string& path, bool allow_invalid) {
  LoadOptions opts;
  opts.allow_invalid = allow_invalid;
  opts.base_dir = std::filesystem::path(path).parent_path().string();
  try {
    return parse(read_text(path), opts);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string save(const Instance& inst, bool compact) {
  json j;
  switch (inst.kind) {
    case Kind::Groupoid: j = save_groupoid(*inst.groupoid); break;
    case Kind::GLocale: j = save_glocale_body(*inst.glocale); break;
    case Kind::QLocale: j = save_qlocale_body(*inst.qlocale); break;
    case Kind::Hom:
      j = json{{"source", save_glocale_body(inst.hom->source)},
               {"target", save_glocale_body(inst.hom->target)},
               {"map", save_function(inst.hom->source.total, inst.hom->target.total,
                                     inst.hom->map)}};
      break;
  }
  j["kind"] = to_string(inst.kind);
  if (!inst.meta.name.empty()) j["name"] = inst.meta.name;
  json meta = json::object();
  if (inst.meta.seed) meta["seed"] = *inst.meta.seed;
  if (!inst.meta.bounds.empty()) meta["bounds"] = inst.meta.bounds;
  if (!meta.empty()) j["meta"] = meta;
  return (compact ? j.dump() : j.dump(2)) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Parse, "cannot write " + path);
  out << text;
}

Verdict validate(const Instance& inst) {
  Verdict v;
  switch (inst.kind) {
    case Kind::Groupoid:
      v.merge(check_groupoid(*inst.groupoid));
      break;
    case Kind::GLocale:
      v.merge(check_groupoid(*inst.groupoid), "groupoid:");
      v.merge(check_glocale(*inst.glocale));
      break;
    case Kind::QLocale:
      v.merge(check_qlocale(*inst.qlocale));
      break;
    case Kind::Hom:
      v.merge(check_groupoid(*inst.groupoid), "groupoid:");
      v.merge(check_glocale(inst.hom->source), "source:");
      v.merge(check_glocale(inst.hom->target), "target:");
      v.merge(check_equivariant(inst.hom->source, inst.hom->target, inst.hom->map));
      break;
  }
  return v;
}

Instance of_groupoid(GroupoidPtr g, std::string name) {
  Instance inst;
  inst.kind = Kind::Groupoid;
  inst.meta.name = std::move(name);
  inst.groupoid = std::move(g);
  return inst;
}

Instance of_glocale(GLocale a, std::string name) {
  Instance inst;
  inst.kind = Kind::GLocale;
  inst.meta.name = std::move(name);
  inst.groupoid = a.groupoid;
  inst.glocale = std::move(a);
  return inst;
}

Instance of_qlocale(QLocale m, std::string name) {
  Instance inst;
  inst.kind = Kind::QLocale;
  inst.meta.name = std::move(name);
  inst.groupoid = m.quantale->groupoid;
  inst.qlocale = std::move(m);
  return inst;
}

}  // namespace qkit::io
