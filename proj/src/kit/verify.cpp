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
#include "qkit/verify.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "qkit/error.hpp"
#include "qkit/sheaf.hpp"

namespace qkit::kit {

namespace {

constexpr std::size_t kOracleFactor = kDefaultOracleBound;

// First witness per law across many instances.
class Tally {
 public:
  void add(const Verdict& v, const std::string& where) {
    for (const auto& o : v.outcomes()) {
      auto [it, fresh] = index_.try_emplace(o.law, laws_.size());
      if (fresh) laws_.push_back({o.law, true, {}, false});
      LawOutcome& l = laws_[it->second];
      if (!o.passed && l.passed) {
        l.passed = false;
        l.inconclusive = false;
        l.witness = where + ": " + o.witness;
      } else if (o.inconclusive && l.passed && !l.inconclusive) {
        l.inconclusive = true;
        l.witness = where + ": " + o.witness;
      }
    }
  }
  void record(const std::string& law, bool ok, const std::string& where,
              const std::string& witness = {}) {
    Verdict v;
    v.record(law, ok, witness);
    add(v, where);
  }
  bool empty() const { return laws_.empty(); }
  Verdict verdict() const {
    Verdict v;
    for (const auto& l : laws_) {
      if (l.inconclusive && l.passed)
        v.inconclusive(l.law, l.witness);
      else
        v.record(l.law, l.passed, l.witness);
    }
    return v;
  }

 private:
  std::vector<LawOutcome> laws_;
  std::map<std::string, std::size_t> index_;
};

std::string glabel(std::size_t i) { return "glocale#" + std::to_string(i + 1); }

// Runs `body`, turning library errors into a failing (or, for size bounds,
// inconclusive) outcome named after the step.
template <class F>
void guarded(Tally& t, const std::string& step, const std::string& where, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    Verdict v;
    if (e.code() == ErrorCode::Bound || e.code() == ErrorCode::OracleBound)
      v.inconclusive(step, e.what());
    else
      v.fail(step, std::string(to_string(e.code())) + ": " + e.what());
    t.add(v, where);
  }
}

// Q acting on itself: the regular G-locale (G1, d, m) and back.
Verdict regular_module(const QuantalePtr& q) {
  Verdict v;
  const GLocale reg = regular_glocale(q->groupoid);
  const QLocale m = module_of_glocale(q, reg);
  std::string w;
  for (Elem a = 0; a < q->size() && w.empty(); ++a)
    for (Elem b = 0; b < q->size() && w.empty(); ++b)
      if (m.act(a, b) != q->mul(a, b)) w = q->label(a) + " . " + q->label(b);
  v.record("action-is-multiplication", w.empty(), w);
  v.merge(check_qlocale(m), "regular:");
  const GLocale back = glocale_of_qlocale(m);
  v.record("recovers-arrows-and-d", back.proj == q->groupoid->dom,
           "projection differs from d");
  v.record("recovers-multiplication", same_glocale(back, reg), "action differs from m");
  return v;
}

// O(G1) recomputed from the groupoid tables: pointwise products, inverses, u(G0).
Verdict groupoid_quantale(const InvQuantale& q) {
  Verdict v;
  const FiniteGroupoid& g = *q.groupoid;
  std::string mul_w, star_w;
  for (Elem a = 0; a < q.size(); ++a) {
    const std::vector<Point> us = members(q.arrows_of(a));
    PointSet inv = 0;
    for (Point x : us) inv |= singleton(g.inv[x]);
    if (star_w.empty() && q.arrows_of(q.star(a)) != inv) star_w = q.label(a);
    for (Elem b = 0; b < q.size() && mul_w.empty(); ++b) {
      PointSet prod = 0;
      for (Point x : us)
        for (Point y : members(q.arrows_of(b)))
          if (auto z = g.composable.index(x, y)) prod |= singleton(g.comp[*z]);
      if (q.arrows_of(q.mul(a, b)) != prod) mul_w = q.label(a) + " . " + q.label(b);
    }
  }
  v.record("opens-are-elements", q.size() == g.arrows.opens().size(),
           std::to_string(q.size()) + " elements");
  v.record("product-is-pointwise", mul_w.empty(), mul_w);
  v.record("involution-is-inverse", star_w.empty(), star_w);
  PointSet units = 0;
  for (Point x : g.unit) units |= singleton(x);
  v.record("unit-is-identities", q.arrows_of(q.unit) == units, q.label(q.unit));
  return v;
}

// The action on opens of X is the direct image of the point action.
Verdict induced_module(const GLocale& a, const QLocale& m) {
  Verdict v;
  std::string w;
  for (Elem s = 0; s < m.quantale->size() && w.empty(); ++s)
    for (Elem x = 0; x < m.size() && w.empty(); ++x) {
      PointSet image = 0;
      for (Point g : members(m.quantale->arrows_of(s)))
        for (Point p : members(m.frame().mask(x)))
          if (auto z = a.pairs.index(g, p)) image |= singleton(a.act[*z]);
      if (m.frame().mask(m.act(s, x)) != image) w = m.quantale->label(s) + " . " + m.label(x);
    }
  v.record("action-is-direct-image", w.empty(), w);
  return v;
}

void quantale_rows(Report& r, const QuantalePtr& q, const std::string& id) {
  r.add(id, "construction:groupoid-quantale", groupoid_quantale(*q));
  r.add(id, "characterization:inverse-quantal-frame", check_inverse_quantal_frame(*q));
  r.add(id, "remark:multiplicativity", check_mu_star(*q));
  if (!q->groupoid->objects.is_t0()) {
    r.note(id + ": object space is not T0; module checks skipped");
    return;
  }
  r.add(id, "example:quantale-as-q-locale", regular_module(q));
  r.add(id, "definition:local-sections", check_local_bisections(q));
}

// Being etale is a property of the instance; only the two criteria agreeing is a law.
Verdict etale_agreement(const Verdict& v) {
  Verdict keep;
  const LawOutcome* agree = v.find("etale-criteria-agree");
  keep.record(agree->law, agree->passed, agree->witness);
  return keep;
}

std::string canonical(const GLocale& a) { return io::save(io::of_glocale(a)); }
std::string canonical(const QLocale& m) { return io::save(io::of_qlocale(m)); }

Verdict tensor_cross_check(const QLocale& m) {
  const InvQuantale& q = *m.quantale;
  const std::size_t nb = q.base.size(), nq = q.size(), nx = m.size();
  BaseModule right{q.carrier, nb, {}};
  for (Elem a = 0; a < nq; ++a)
    for (std::size_t b = 0; b < nb; ++b) right.action.push_back(q.mul(a, q.base[b]));
  BaseModule left{m.carrier, nb, {}};
  for (std::size_t b = 0; b < nb; ++b)
    for (Elem x = 0; x < nx; ++x) left.action.push_back(m.act(q.base[b], x));

  const TensorProduct t = tensor_oracle(right, left, kOracleFactor);
  const ModuleTensor mt = module_tensor(m);
  auto pairs = std::make_shared<const Frame>(Frame::of_space(mt.pairs.space));
  std::vector<Elem> phi;
  for (Elem a = 0; a < nq; ++a)
    for (Elem x = 0; x < nx; ++x) phi.push_back(pairs->at(mt.tensor(m, a, x)));

  Verdict v;
  v.merge(check_balanced_bimorphism(right, left, *pairs, phi), "pairs:");
  v.record("tensor-isomorphic-to-pairs", find_isomorphism(t.lattice(), *pairs).has_value(),
           std::to_string(t.lattice().size()) + " vs " + std::to_string(pairs->size()) +
               " elements");
  auto h = t.factor(pairs, phi);
  v.record("tensor-factorization", h.has_value(), "bimorphism does not factor");
  if (h) {
    v.record("tensor-factor-isomorphism", is_order_isomorphism(t.lattice(), *pairs, h->table),
             "factor is not an order isomorphism");
    std::string w;
    for (Elem a = 0; a < nq && w.empty(); ++a)
      for (Elem x = 0; x < nx && w.empty(); ++x)
        if ((*h)(t.tensor(a, x)) != phi[a * nx + x]) w = q.label(a) + " (x) " + m.label(x);
    v.record("tensor-intertwines-bimorphism", w.empty(), w);
  }
  return v;
}

struct Entry {
  std::string id;
  GroupoidPtr g;
  QuantalePtr q;
  bool modules = false;
  std::optional<std::vector<GLocale>> glocales;
  std::vector<QLocale> module_cache;
  std::optional<Verdict> category;
  CategoryCounts counts;
};

class Runner {
 public:
  Runner(const VerifyBounds& b, Report& r) : bounds_(b), report_(r) {}

  void build() {
    std::vector<corpus::NamedGroupoid> list;
    if (!bounds_.only.empty()) {
      for (const auto& ref : bounds_.only) list.push_back({ref, resolve_groupoid(ref)});
    } else {
      auto append = [&](std::vector<corpus::NamedGroupoid> more) {
        for (auto& n : more) {
          bool dup = false;
          for (const auto& have : list) dup = dup || corpus::isomorphic(*have.groupoid, *n.groupoid);
          if (!dup) list.push_back(std::move(n));
        }
      };
      append(corpus::etale_groupoids({bounds_.max_arrows, std::nullopt, false}));
      append(corpus::etale_groupoids({bounds_.discrete_arrows, std::nullopt, true}));
      append(corpus::identity_groupoids(bounds_.identity_points));
      if (bounds_.named) append(corpus::named_groupoids());
    }
    for (auto& n : list) {
      Entry e;
      e.id = n.id;
      e.g = n.groupoid;
      e.modules = e.g->objects.is_t0();
      if (!check_groupoid(*e.g).passed() || !is_etale(*e.g).passed())
        fail(ErrorCode::NotEtale, n.id + " is not an etale groupoid");
      e.q = io::quantale_of(e.g);
      entries_.push_back(std::move(e));
    }
    corpus::require_within_cap("verification corpus", double(entries_.size()));
  }

  const std::vector<GLocale>& glocales(Entry& e) {
    if (!e.glocales) {
      corpus::ModuleBounds mb;
      mb.max_points = bounds_.max_points;
      e.glocales = e.modules ? corpus::glocales(e.g, mb) : std::vector<GLocale>{};
      for (const auto& a : *e.glocales) e.module_cache.push_back(module_of_glocale(e.q, a));
    }
    return *e.glocales;
  }

  void run(Scope s) {
    for (Entry& e : entries_) {
      if (s != Scope::All) {
        run_one(e, s);
        continue;
      }
      for (Scope t : {Scope::Iqf, Scope::MuStar, Scope::ProjectionFactorization,
                      Scope::ActionsCoincide, Scope::AlphaStar, Scope::Bijection, Scope::CatIso,
                      Scope::Lax, Scope::SupportLaws, Scope::Sections, Scope::SheafCatIso,
                      Scope::TensorOracle})
        run_one(e, t);
    }
  }

  std::size_t groupoid_count() const { return entries_.size(); }

 private:
  void run_one(Entry& e, Scope s) {
    switch (s) {
      case Scope::Iqf: iqf(e); break;
      case Scope::MuStar: mu(e); break;
      case Scope::ProjectionFactorization: projection(e); break;
      case Scope::ActionsCoincide: actions(e); break;
      case Scope::AlphaStar: alpha(e); break;
      case Scope::Bijection: bijection(e); break;
      case Scope::CatIso: category(e, {}); break;
      case Scope::SupportLaws: support_laws(e); break;
      case Scope::Sections: sections(e); break;
      case Scope::SheafCatIso: sheaves(e); break;
      case Scope::TensorOracle: tensor(e); break;
      case Scope::FunctorFaithful: category(e, {"functor-preserves-homs", "functor-faithful"}); break;
      case Scope::Lax: lax(e); break;
      case Scope::All: break;
    }
  }

  void emit(const Entry& e, const std::string& anchor, const Tally& t) {
    if (!t.empty()) report_.add(e.id, anchor, t.verdict());
  }

  void iqf(Entry& e) {
    report_.add(e.id, "construction:groupoid-quantale", groupoid_quantale(*e.q));
    report_.add(e.id, "characterization:inverse-quantal-frame", check_inverse_quantal_frame(*e.q));
    if (e.modules) report_.add(e.id, "example:quantale-as-q-locale", regular_module(e.q));
  }

  void mu(Entry& e) {
    Tally t;
    guarded(t, "mu-star", e.id, [&] { t.add(check_mu_star(*e.q), e.id); });
    emit(e, "remark:multiplicativity", t);
  }

  void projection(Entry& e) {
    Tally t;
    const auto& gs = glocales(e);
    for (std::size_t i = 0; i < gs.size(); ++i)
      t.add(check_projection_factorization(gs[i]), glabel(i));
    emit(e, "lemma:projection-factorization", t);
  }

  void actions(Entry& e) {
    Tally t;
    const auto& gs = glocales(e);
    for (std::size_t i = 0; i < gs.size(); ++i)
      t.add(check_actions_coincide(gs[i], e.module_cache[i]), glabel(i));
    emit(e, "lemma:actions-coincide", t);
    Tally induced;
    for (std::size_t i = 0; i < gs.size(); ++i)
      induced.add(induced_module(gs[i], e.module_cache[i]), glabel(i));
    emit(e, "construction:induced-module", induced);
  }

  void alpha(Entry& e) {
    Tally t;
    const auto& gs = glocales(e);
    for (std::size_t i = 0; i < gs.size(); ++i)
      guarded(t, "alpha-star", glabel(i), [&] { t.add(check_alpha_star(e.module_cache[i]), glabel(i)); });
    emit(e, "lemma:alpha-star", t);
  }

  void bijection(Entry& e) {
    if (!e.modules) return;
    Tally t;
    const auto& gs = glocales(e);
    for (std::size_t i = 0; i < gs.size(); ++i)
      guarded(t, "bijection", glabel(i), [&] {
        const QLocale& m = e.module_cache[i];
        const GLocale back = glocale_of_qlocale(m);
        t.record("bijection-glocale-roundtrip", canonical(back) == canonical(gs[i]), glabel(i),
                 "canonical forms differ");
        t.record("bijection-qlocale-roundtrip",
                 canonical(module_of_glocale(e.q, back)) == canonical(m), glabel(i),
                 "canonical forms differ");
      });
    // Q-locales found directly from the module laws.
    if (bounds_.max_points <= 3) {
      guarded(t, "qlocale-enumeration", e.id, [&] {
        corpus::ModuleBounds mb;
        mb.max_points = bounds_.max_points;
        const auto qs = corpus::qlocales(e.q, mb);
        for (std::size_t i = 0; i < qs.size(); ++i) {
          const std::string where = "qlocale#" + std::to_string(i + 1);
          guarded(t, "bijection-enumerated-qlocale", where, [&] {
            const GLocale back = glocale_of_qlocale(qs[i]);
            t.record("bijection-enumerated-qlocale",
                     canonical(module_of_glocale(e.q, back)) == canonical(qs[i]), where,
                     "canonical forms differ");
          });
        }
        t.record("qlocale-count-matches", qs.size() == gs.size(), e.id,
                 std::to_string(gs.size()) + " G-locales vs " + std::to_string(qs.size()) +
                     " Q-locales");
        report_.note(e.id + ": " + std::to_string(gs.size()) + " G-locales, " +
                     std::to_string(qs.size()) + " Q-locales up to isomorphism");
      });
    }
    emit(e, "lemma:strict-bijection", t);
  }

  const Verdict& category_verdict(Entry& e) {
    if (!e.category) {
      const auto& gs = glocales(e);
      Tally t;
      guarded(t, "category-isomorphism", e.id,
              [&] { t.add(check_category_isomorphism(e.q, gs, &e.counts), e.id); });
      e.category = t.verdict();
      const auto& c = e.counts;
      report_.note(e.id + ": " + std::to_string(c.objects) + " objects, " +
                   std::to_string(c.continuous_maps) + " continuous maps, " +
                   std::to_string(c.equivariant_maps) + " equivariant maps, " +
                   std::to_string(c.module_homs) + " module homs (" +
                   std::to_string(c.non_spatial_module_homs) + " non-spatial)");
    }
    return *e.category;
  }

  void category(Entry& e, std::set<std::string> only) {
    if (!e.modules) return;
    const Verdict& v = category_verdict(e);
    if (only.empty()) {
      report_.add(e.id, "theorem:g-loc-q-loc", v);
      return;
    }
    Verdict keep;
    for (const auto& o : v.outcomes())
      if (only.count(o.law)) {
        if (o.inconclusive) keep.inconclusive(o.law, o.witness);
        else keep.record(o.law, o.passed, o.witness);
      }
    report_.add(e.id, "theorem:g-loc-q-loc", keep);
  }

  void lax(Entry& e) {
    if (!e.modules) return;
    Tally t;
    const auto& gs = glocales(e);
    std::size_t inducing = 0;
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = 0; j < gs.size(); ++j)
        for_each_continuous_map(gs[i].total, gs[j].total, [&](std::span<const Point> f) {
          const Verdict v = check_lax_inequality(e.q, gs[i], gs[j], f);
          const LawOutcome* hom = v.find("inverse-image-module-hom");
          if (!hom || !hom->passed) return true;
          ++inducing;
          Verdict keep;
          for (const auto& o : v.outcomes())
            if (o.law != "inverse-image-module-hom") keep.record(o.law, o.passed, o.witness);
          t.add(keep, glabel(i) + " -> " + glabel(j));
          return true;
        });
    emit(e, "lemma:lax-inequality", t);
    report_.note(e.id + ": " + std::to_string(inducing) + " module-hom-inducing maps");
  }

  void support_laws(Entry& e) {
    report_.add(e.id, "theorem:support-laws", check_support(*e.q, support(*e.q)));
    if (!e.modules) return;
    Tally open_laws, laws;
    const auto& gs = glocales(e);
    std::size_t open = 0;
    for (std::size_t i = 0; i < gs.size(); ++i)
      guarded(laws, "support-laws", glabel(i), [&] {
        const OpenCheck oc = open_qlocale(e.module_cache[i]);
        if (!oc.open) return;
        ++open;
        open_laws.add(oc.open->laws, glabel(i));
        laws.add(check_support_laws(*oc.open), glabel(i));
      });
    emit(e, "lemma:open-q-locale", open_laws);
    emit(e, "theorem:support-laws", laws);
    report_.note(e.id + ": " + std::to_string(open) + " of " + std::to_string(gs.size()) +
                 " modules are open");
  }

  void sections(Entry& e) {
    if (!e.modules) return;
    report_.add(e.id, "definition:local-sections", check_local_bisections(e.q));
    {
      const OpenCheck reg = open_qlocale(module_of_glocale(e.q, regular_glocale(e.g)));
      if (reg.open)
        report_.note(e.id + ": |I(Q)| = " + std::to_string(partial_units(*e.q).size()) +
                     ", |Gamma_Q| = " + std::to_string(local_sections(*reg.open).size()));
    }
    Tally t;
    const auto& gs = glocales(e);
    std::size_t etale = 0;
    for (std::size_t i = 0; i < gs.size(); ++i)
      guarded(t, "etale-q-locale", glabel(i), [&] {
        const OpenCheck oc = open_qlocale(e.module_cache[i]);
        const bool geometric = is_local_homeomorphism(gs[i].total, e.g->objects, gs[i].proj).passed();
        if (!oc.open) {
          t.record("etale-criteria-agree", !geometric, glabel(i),
                   "p is a local homeomorphism but the module is not open");
          return;
        }
        const Verdict v = is_etale_qlocale(*oc.open);
        t.add(etale_agreement(v), glabel(i));
        if (v.find("sections-cover")->passed) ++etale;
      });
    emit(e, "definition:etale-q-locale", t);
    report_.note(e.id + ": " + std::to_string(etale) + " of " + std::to_string(gs.size()) +
                 " modules are etale");
  }

  void sheaves(Entry& e) {
    if (!e.modules) return;
    const auto& gs = glocales(e);
    std::vector<GLocale> corpus;
    for (const auto& a : gs)
      if (is_local_homeomorphism(a.total, e.g->objects, a.proj).passed()) corpus.push_back(a);
    Tally t;
    SheafCounts c;
    guarded(t, "sheaf-category", e.id,
            [&] { t.add(check_sheaf_category_isomorphisms(e.q, corpus, &c), e.id); });
    emit(e, "theorem:sheaves", t);
    report_.note(e.id + ": " + std::to_string(c.objects) + " G-sheaves, " +
                 std::to_string(c.sheaf_maps) + " sheaf maps, " + std::to_string(c.sheaf_homs) +
                 " sheaf homs");
  }

  void tensor(Entry& e) {
    Tally t;
    std::size_t checked = 0;
    if (e.modules && e.q->size() <= kOracleFactor) {
      guarded(t, "tensor-oracle", "regular", [&] {
        t.add(tensor_cross_check(module_of_glocale(e.q, regular_glocale(e.g))), "regular");
        ++checked;
      });
      const auto& gs = glocales(e);
      for (std::size_t i = 0; i < gs.size(); ++i)
        if (e.module_cache[i].size() <= kOracleFactor)
          guarded(t, "tensor-oracle", glabel(i), [&] {
            t.add(tensor_cross_check(e.module_cache[i]), glabel(i));
            ++checked;
          });
    }
    emit(e, "example:tensor-as-pullback", t);
    if (checked) report_.note(e.id + ": " + std::to_string(checked) + " tensor products checked");
  }

  const VerifyBounds& bounds_;
  Report& report_;
  std::vector<Entry> entries_;
};

constexpr std::pair<Scope, const char*> kScopes[] = {
    {Scope::ProjectionFactorization, "projection-factorization"},
    {Scope::FunctorFaithful, "functor-faithful"},
    {Scope::Lax, "lax"},
    {Scope::ActionsCoincide, "actions-coincide"},
    {Scope::AlphaStar, "alpha-star"},
    {Scope::MuStar, "mu-star"},
    {Scope::Bijection, "bijection"},
    {Scope::CatIso, "cat-iso"},
    {Scope::SupportLaws, "support-laws"},
    {Scope::Sections, "sections"},
    {Scope::SheafCatIso, "sheaf-cat-iso"},
    {Scope::Iqf, "iqf"},
    {Scope::TensorOracle, "tensor-oracle"},
    {Scope::All, "all"},
};

std::string show_elem(const InvQuantale& q, Elem a) { return q.label(a); }

}  // namespace

std::optional<Scope> scope_from_string(const std::string& s) {
  if (s == "lemma-2.1") return Scope::ProjectionFactorization;
  for (const auto& [scope, name] : kScopes)
    if (s == name) return scope;
  return std::nullopt;
}

const char* to_string(Scope s) {
  for (const auto& [scope, name] : kScopes)
    if (s == scope) return name;
  return "?";
}

std::vector<std::string> scope_names() {
  std::vector<std::string> out;
  for (const auto& [scope, name] : kScopes) out.push_back(name);
  out.push_back("lemma-2.1");
  return out;
}

GroupoidPtr resolve_groupoid(const std::string& ref) {
  if (std::filesystem::is_regular_file(ref)) {
    io::Instance inst = io::load(ref);
    if (inst.kind != io::Kind::Groupoid) fail(ErrorCode::Parse, ref + " is not a groupoid file");
    return inst.groupoid;
  }
  const auto colon = ref.find(':');
  if (colon != std::string::npos)
    return std::make_shared<const FiniteGroupoid>(
        make_named(ref.substr(0, colon), {ref.substr(colon + 1)}));
  return std::make_shared<const FiniteGroupoid>(make_named(ref));
}

Report verify(Scope scope, const VerifyBounds& bounds) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  Runner runner(bounds, report);
  runner.build();
  runner.run(scope);
  report.note(std::to_string(runner.groupoid_count()) + " groupoids in the corpus");
  report.set_seconds(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return report;
}

Report check_instance(const io::Instance& inst, const std::string& id) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  const FiniteGroupoid& g = *inst.groupoid;
  const Verdict axioms = check_groupoid(g);
  r.add(id, "definition:groupoid-axioms", axioms);
  const Verdict etale = is_etale(g);
  r.add(id, "definition:etale-groupoid", etale);
  auto done = [&]() -> Report {
    r.set_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return r;
  };
  if (!axioms.passed() || !etale.passed()) return done();

  auto module_stack = [&](const GLocale& a, const QLocale& m) {
    r.add(id, "lemma:projection-factorization", check_projection_factorization(a));
    r.add(id, "definition:q-locale", check_qlocale(m));
    r.add(id, "construction:induced-module", induced_module(a, m));
    r.add(id, "lemma:actions-coincide", check_actions_coincide(a, m));
    r.add(id, "lemma:alpha-star", check_alpha_star(m));
    Verdict bij;
    const GLocale back = glocale_of_qlocale(m);
    bij.record("bijection-glocale-roundtrip", canonical(back) == canonical(a),
               "canonical forms differ");
    bij.record("bijection-qlocale-roundtrip",
               canonical(module_of_glocale(m.quantale, back)) == canonical(m),
               "canonical forms differ");
    r.add(id, "lemma:strict-bijection", bij);
    const OpenCheck oc = open_qlocale(m);
    if (oc.open) {
      r.add(id, "lemma:open-q-locale", oc.open->laws);
      r.add(id, "theorem:support-laws", check_support_laws(*oc.open));
      const Verdict v = is_etale_qlocale(*oc.open);
      r.add(id, "definition:etale-q-locale", etale_agreement(v));
      r.note(id + (v.find("sections-cover")->passed ? ": etale" : ": open but not etale, " +
                                                                      v.find("sections-cover")->witness));
    } else {
      r.note(id + ": not open, " + oc.not_open_witness + " has a non-open image");
    }
    if (m.quantale->size() <= kOracleFactor && m.size() <= kOracleFactor)
      r.add(id, "example:tensor-as-pullback", tensor_cross_check(m));
  };

  switch (inst.kind) {
    case io::Kind::Groupoid: {
      quantale_rows(r, io::quantale_of(inst.groupoid), id);
      break;
    }
    case io::Kind::GLocale: {
      const GLocale& a = *inst.glocale;
      const Verdict ax = check_glocale(a);
      r.add(id, "definition:g-locale", ax);
      if (!ax.passed()) break;
      module_stack(a, module_of_glocale(io::quantale_of(inst.groupoid), a));
      break;
    }
    case io::Kind::QLocale: {
      const QLocale& m = *inst.qlocale;
      const Verdict laws = check_qlocale(m);
      r.add(id, "definition:q-locale", laws);
      if (!laws.passed()) break;
      try {
        const GLocale a = glocale_of_qlocale(m);
        module_stack(a, m);
      } catch (const Error& e) {
        Verdict v;
        v.fail("glocale-realization", std::string(to_string(e.code())) + ": " + e.what());
        r.add(id, "lemma:strict-bijection", v);
      }
      break;
    }
    case io::Kind::Hom: {
      const io::Hom& h = *inst.hom;
      r.add(id, "definition:g-locale", check_equivariant(h.source, h.target, h.map));
      const QuantalePtr q = io::quantale_of(inst.groupoid);
      r.add(id, "lemma:lax-inequality", check_lax_inequality(q, h.source, h.target, h.map));
      const bool sheaf_map =
          is_local_homeomorphism(h.source.total, h.target.total, h.map).passed();
      if (sheaf_map) {
        const OpenCheck x = open_qlocale(module_of_glocale(q, h.source));
        const OpenCheck y = open_qlocale(module_of_glocale(q, h.target));
        if (x.open && y.open) {
          const SupMap f = direct_image(ContinuousMap(h.source.total, h.target.total, h.map));
          r.add(id, "definition:sheaf-homomorphism", check_sheaf_hom(*x.open, *y.open, f.table));
        }
      }
      break;
    }
  }
  return done();
}

std::string quantale_tables(const InvQuantale& q) {
  std::ostringstream os;
  os << "elements: " << q.size() << "\n";
  for (Elem a = 0; a < q.size(); ++a) os << "  " << a << " " << show_elem(q, a) << "\n";
  os << "unit: " << show_elem(q, q.unit) << "\n";
  os << "base:";
  for (Elem b : q.base) os << " " << show_elem(q, b);
  os << "\ninvolution:\n";
  for (Elem a = 0; a < q.size(); ++a) os << "  " << a << "* = " << q.star(a) << "\n";
  os << "multiplication (row a, column b, entry ab):\n";
  for (Elem a = 0; a < q.size(); ++a) {
    os << "  " << a << ":";
    for (Elem b = 0; b < q.size(); ++b) os << " " << q.mul(a, b);
    os << "\n";
  }
  return os.str();
}

std::string show_partial_units(const InvQuantale& q) {
  const auto units = partial_units(q);
  std::ostringstream os;
  os << "partial units: " << units.size() << "\n";
  for (Elem s : units) os << "  " << show_elem(q, s) << "\n";
  return os.str();
}

std::string show_support(const InvQuantale& q) {
  const auto sp = support(q);
  std::ostringstream os;
  for (Elem a = 0; a < q.size(); ++a)
    os << "sp(" << show_elem(q, a) << ") = " << show_elem(q, sp[a]) << "\n";
  return os.str();
}

Report verify_quantale(const QuantalePtr& q, const std::string& id) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  quantale_rows(r, q, id);
  r.set_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return r;
}

io::Instance convert(const io::Instance& inst) {
  switch (inst.kind) {
    case io::Kind::GLocale: {
      io::Instance out = io::of_qlocale(
          module_of_glocale(io::quantale_of(inst.groupoid), *inst.glocale), inst.meta.name);
      out.meta = inst.meta;
      return out;
    }
    case io::Kind::QLocale: {
      io::Instance out = io::of_glocale(glocale_of_qlocale(*inst.qlocale), inst.meta.name);
      out.meta = inst.meta;
      return out;
    }
    default:
      fail(ErrorCode::Parse, std::string("convert takes a glocale or qlocale, not a ") +
                                 io::to_string(inst.kind));
  }
}

Report roundtrip(const io::Instance& inst, const std::string& id) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  const std::string before = io::save(inst);
  const std::string after = io::save(convert(convert(inst)));
  Verdict v;
  std::string w;
  if (before != after) {
    std::istringstream a(before), b(after);
    std::string la, lb;
    for (int line = 1;; ++line) {
      const bool ga = static_cast<bool>(std::getline(a, la));
      const bool gb = static_cast<bool>(std::getline(b, lb));
      if (!ga && !gb) break;
      if (la != lb || ga != gb) {
        w = "line " + std::to_string(line) + ": \"" + (ga ? la : "") + "\" vs \"" +
            (gb ? lb : "") + "\"";
        break;
      }
    }
  }
  v.record(std::string("roundtrip-") + io::to_string(inst.kind) + "-byte-identical", w.empty(), w);
  r.add(id, "lemma:strict-bijection", v);
  r.set_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return r;
}

std::vector<io::Instance> enumerate(const EnumerateOptions& o) {
  std::vector<io::Instance> out;
  std::ostringstream bounds;
  switch (o.kind) {
    case io::Kind::Groupoid: {
      bounds << "arrows<=" << o.groupoids.max_arrows;
      if (o.groupoids.objects) bounds << ",objects=" << *o.groupoids.objects;
      if (o.groupoids.discrete_only) bounds << ",discrete";
      std::vector<corpus::NamedGroupoid> gs;
      if (o.seed) {
        for (auto& n : corpus::sample_groupoids(o.groupoids.max_arrows, o.samples, *o.seed)) {
          if (o.groupoids.objects && n.groupoid->objects.size() != *o.groupoids.objects) continue;
          if (o.groupoids.discrete_only && !n.groupoid->arrows.is_discrete()) continue;
          gs.push_back(std::move(n));
        }
      } else {
        gs = corpus::etale_groupoids(o.groupoids);
      }
      for (auto& n : gs) out.push_back(io::of_groupoid(n.groupoid, n.id));
      break;
    }
    case io::Kind::GLocale:
    case io::Kind::QLocale: {
      if (!o.over) fail(ErrorCode::Parse, "enumerating modules needs a groupoid (--over)");
      if (!is_etale(*o.over).passed()) fail(ErrorCode::NotEtale, "groupoid is not etale");
      bounds << "points<=" << o.modules.max_points;
      if (o.modules.points) bounds << ",points=" << *o.modules.points;
      if (o.modules.discrete_only) bounds << ",discrete";
      const QuantalePtr q = io::quantale_of(o.over);
      std::vector<GLocale> gs;
      if (o.seed) {
        const std::size_t k = o.modules.points.value_or(o.modules.max_points);
        for (auto& a : corpus::sample_glocales(o.over, k, o.samples, *o.seed))
          if (!o.modules.discrete_only || a.total.is_discrete()) gs.push_back(std::move(a));
      }
      if (o.kind == io::Kind::GLocale) {
        if (!o.seed) gs = corpus::glocales(o.over, o.modules);
        for (std::size_t i = 0; i < gs.size(); ++i)
          out.push_back(io::of_glocale(gs[i], "glocale-" + std::to_string(i + 1)));
      } else if (o.seed) {
        for (std::size_t i = 0; i < gs.size(); ++i)
          out.push_back(
              io::of_qlocale(module_of_glocale(q, gs[i]), "qlocale-" + std::to_string(i + 1)));
      } else {
        auto qs = corpus::qlocales(q, o.modules);
        for (std::size_t i = 0; i < qs.size(); ++i)
          out.push_back(io::of_qlocale(std::move(qs[i]), "qlocale-" + std::to_string(i + 1)));
      }
      break;
    }
    case io::Kind::Hom:
      fail(ErrorCode::Parse, "enumerate covers groupoid, glocale and qlocale");
  }
  for (auto& inst : out) {
    inst.meta.bounds = bounds.str();
    inst.meta.seed = o.seed;
  }
  return out;
}

}  // namespace qkit::kit
