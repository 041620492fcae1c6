#include "commands.hpp"

#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "mackeylab/bredon.hpp"
#include "mackeylab/error.hpp"
#include "mackeylab/transfer.hpp"

namespace mackeylab::cli {

namespace {

GroupPtr load_group(const Options& o) {
  if (!o.group.empty()) return resolve_group(Json(o.group));
  if (o.system != "full") {
    Json j = load_json(o.system);
    if (j.contains("group")) return resolve_group(j.at("group"), std::filesystem::path(o.system).parent_path());
  }
  throw InputError("MissingGroup", "--group is required");
}

MackeySystem load_system(const Options& o, const GroupPtr& g) {
  if (o.system == "full") return MackeySystem::full(g);
  return system_from_json(g, load_json(o.system));
}

SubId parse_object(const FiniteGroup& g, const std::string& s, bool allow_terminal) {
  if (s == "*") {
    if (!allow_terminal) throw InputError("UnknownObject", "the terminal object is only allowed as a target");
    return kTerminal;
  }
  std::string t = s.rfind("G/", 0) == 0 ? s.substr(2) : s;
  try {
    std::size_t pos = 0;
    unsigned long id = std::stoul(t, &pos);
    if (pos == t.size() && id < g.subgroup_count()) return static_cast<SubId>(id);
  } catch (const std::exception&) {
  }
  throw InputError("UnknownObject", "cannot parse object \"" + s + "\"");
}

ResolveOptions resolve_options(const Options& o) {
  return ResolveOptions{o.max_rank, CoverStrategy::Greedy};
}

ModulePtr optional_module(const std::string& file, const CatPtr& cat, const ModulePtr& fallback) {
  return file.empty() ? fallback : module_from_json(cat, load_json(file));
}

TowerPtr load_tower(const Options& o) {
  if (o.tower == "2adic") return Tower::two_adic(std::max<std::size_t>(o.depth, 1));
  return tower_from_json(load_json(o.tower), std::filesystem::path(o.tower).parent_path());
}

ClosedThread load_thread(const Options& o, const Tower& t) {
  if (o.thread == "whole") return ClosedThread::whole(t);
  if (o.thread == "trivial") return ClosedThread::trivial(t);
  return thread_from_json(load_json(o.thread));
}

void fail_verify(const std::string& what) { throw InvariantViolation("verification failed: " + what); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// H-orbits on pairs (L in O(H), fixed coset y of K), counted point by point.
std::size_t brute_hom_rank(const MackeySystem& s, SubId h, SubId k) {
  const auto& g = *s.group();
  std::vector<std::pair<SubId, std::uint32_t>> points;
  const CosetTable* ck = k == kTerminal ? nullptr : &g.cosets(k);
  for (SubId l : s.opens(h)) {
    std::size_t n = ck ? ck->index() : 1;
    for (std::uint32_t y = 0; y < n; ++y) {
      bool fixed = true;
      if (ck)
        for (Elem x : g.subgroup(l).elements) fixed = fixed && ck->act(x, y) == y;
      if (fixed) points.emplace_back(l, y);
    }
  }
  std::set<std::pair<SubId, std::uint32_t>> seen;
  std::size_t orbits = 0;
  for (const auto& p : points) {
    if (seen.count(p)) continue;
    ++orbits;
    for (Elem x : g.subgroup(h).elements)
      seen.insert({g.conjugate(p.first, g.inv(x)), ck ? ck->act(x, p.second) : 0});
  }
  return orbits;
}

// f o g recomputed from the point-set pullback of G/U -> G/K <- G/V.
IntVector pullback_compose(const MackeyCategory& m, const BasicSpan& f, const BasicSpan& g) {
  const auto& grp = m.group();
  auto gs = [&](SubId h) { return std::make_shared<const GSet>(GSet::homogeneous(grp, h)); };
  auto gu = gs(g.middle), gv = gs(f.middle), gk = gs(g.target), gh = gs(g.source);
  Pullback p = pullback_general(homogeneous_map(gu, gk, g.b), homogeneous_map(gv, gk, f.a));
  GMap to_h = homogeneous_map(gu, gh, g.a);
  IntVector out(m.hom_rank(g.source, f.target));
  for (const auto& orb : p.set->orbits()) {
    std::uint32_t pt = orb.representative;
    Elem eh = grp->cosets(g.source).reps[to_h(p.left(pt))];
    Elem em = 0;
    if (f.target != kTerminal) {
      GMap to_m = homogeneous_map(gv, gs(f.target), f.b);
      em = grp->cosets(f.target).reps[to_m(p.right(pt))];
    }
    out[m.locate({g.source, f.target, orb.stabilizer, eh, em})] += 1;
  }
  return out;
}

Json groups_json(const std::vector<AbelianGroup>& gs) {
  Json out = Json::array();
  for (const auto& a : gs) out.push_back(abelian_to_json(a));
  return out;
}

}  // namespace

Report validate(const Options& o) {
  auto g = load_group(o);
  MackeySystem s = load_system(o, g);
  ValidationReport v = s.validate();
  Report r;
  Json vs = Json::array();
  std::ostringstream text;
  for (const auto& x : v.violations) {
    vs.push_back(violation_to_json(x));
    text << "axiom " << x.axiom << ": " << x.message;
    if (!x.subgroups.empty()) {
      std::vector<std::string> ids;
      for (SubId h : x.subgroups) ids.push_back(std::to_string(h));
      text << " [subgroups " << join(ids, ", ") << "]";
    }
    if (x.element) text << " [element " << g->element_string(*x.element) << "]";
    text << "\n";
  }
  if (v.ok()) text << "valid: " << s.family().size() << " subgroups in the family\n";
  r.json = Json{{"valid", v.ok()}, {"violations", vs}, {"system", system_to_json(s)}};
  r.text = text.str();
  r.exit_code = v.ok() ? 0 : 2;
  return r;
}

Report lattice(const Options& o) {
  auto g = load_group(o);
  Report r;
  Json subs = Json::array();
  std::ostringstream text;
  text << g->name() << ": order " << g->order() << ", " << g->subgroup_count() << " subgroups, " << g->class_count()
       << " classes\n";
  text << std::setw(4) << "id" << std::setw(7) << "order" << std::setw(7) << "class" << std::setw(7) << "norm"
       << "  generators\n";
  for (SubId h = 0; h < g->subgroup_count(); ++h) {
    const auto& s = g->subgroup(h);
    std::vector<std::string> gens;
    for (Elem e : s.generators) gens.push_back(g->element_string(e));
    subs.push_back(Json{{"id", h},
                        {"order", s.order()},
                        {"class", g->class_of(h)},
                        {"normalizer", g->normalizer(h)},
                        {"generators", s.generators},
                        {"elements", s.elements}});
    text << std::setw(4) << h << std::setw(7) << s.order() << std::setw(7) << g->class_of(h) << std::setw(7)
         << g->normalizer(h) << "  " << join(gens, " ") << "\n";
  }
  Json classes = Json::array();
  for (std::size_t c = 0; c < g->class_count(); ++c) classes.push_back(g->class_members(c));
  r.json = Json{{"group", group_to_json(*g)}, {"subgroups", subs}, {"classes", classes}};
  r.text = text.str();
  return r;
}

Report marks(const Options& o) {
  auto g = load_group(o);
  auto t = table_of_marks(*g);
  Report r;
  std::vector<SubId> reps;
  for (std::size_t c = 0; c < g->class_count(); ++c) reps.push_back(g->class_rep(c));
  r.json = Json{{"classes", reps}, {"marks", t}};
  std::ostringstream text;
  text << "rows H, columns G/K, entries |(G/K)^H|\n" << std::setw(6) << "";
  for (SubId k : reps) text << std::setw(6) << ("G/" + std::to_string(k));
  text << "\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    text << std::setw(6) << reps[i];
    for (auto v : t[i]) text << std::setw(6) << v;
    text << "\n";
  }
  if (o.verify) {
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j) {
        auto fixed = fixed_points(GSet::homogeneous(g, reps[j]), reps[i]);
        if (fixed.size() != t[i][j]) fail_verify("mark (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
  }
  r.text = text.str();
  return r;
}

Report hom(const Options& o) {
  auto g = load_group(o);
  MackeyCategory m(load_system(o, g));
  SubId h = parse_object(*g, o.from, false), k = parse_object(*g, o.to, true);
  const auto& basis = m.hom_basis(h, k);
  Report r;
  Json spans = Json::array();
  std::ostringstream text;
  text << "[" << m.object_string(h) << ", " << m.object_string(k) << "] is free of rank " << basis.size() << "\n";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    spans.push_back(span_to_json(m, basis[i]));
    text << std::setw(4) << i << "  " << m.span_string(basis[i]) << "\n";
  }
  if (o.verify) {
    if (brute_hom_rank(m.system(), h, k) != basis.size()) fail_verify("hom rank differs from the orbit count");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      m.check_span(basis[i]);
      for (std::size_t j = 0; j < i; ++j)
        if (m.span_equivalent(basis[i], basis[j])) fail_verify("basis spans " + std::to_string(j) + " and " + std::to_string(i) + " are equivalent");
    }
  }
  r.json = Json{{"source", m.object_string(h)}, {"target", m.object_string(k)}, {"rank", basis.size()}, {"basis", spans}};
  r.text = text.str();
  return r;
}

Report compose(const Options& o) {
  auto g = load_group(o);
  MackeyCategory m(load_system(o, g));
  SubId h = parse_object(*g, o.from, false), k = parse_object(*g, o.via, false), z = parse_object(*g, o.to, true);
  const auto& fb = m.hom_basis(k, z);
  const auto& gb = m.hom_basis(h, k);
  if (o.first >= fb.size() || o.second >= gb.size()) throw InputError("UnknownMorphism", "basis index out of range");
  const BasicSpan& f = fb[o.first];
  const BasicSpan& gg = gb[o.second];
  IntVector c = m.compose_basic(f, gg);
  const auto& basis = m.hom_basis(h, z);
  Report r;
  Json terms = Json::array();
  std::ostringstream text;
  text << m.span_string(f) << " o " << m.span_string(gg) << " =\n";
  for (std::size_t i = 0; i < c.size(); ++i)
    if (sgn(c[i]) != 0) {
      terms.push_back(Json{{"index", i}, {"coefficient", int_to_json(c[i])}, {"span", span_to_json(m, basis[i])}});
      text << "  " << c[i].get_str() << " * " << m.span_string(basis[i]) << "\n";
    }
  if (terms.empty()) text << "  0\n";
  if (o.verify && pullback_compose(m, f, gg) != c) fail_verify("composite differs from the point-set pullback");
  r.json = Json{{"first", span_to_json(m, f)}, {"second", span_to_json(m, gg)}, {"coefficients", vector_to_json(c)}, {"terms", terms}};
  r.text = text.str();
  return r;
}

Report burnside(const Options& o) {
  auto g = load_group(o);
  MackeyCategory m(load_system(o, g));
  Report r;
  Json values = Json::array();
  std::ostringstream text;
  text << "B(G/H) is free on H-classes of L in O(H)\n";
  for (SubId h : m.objects()) {
    BurnsideValue b = m.burnside_eval(h);
    std::vector<std::string> ls;
    for (SubId l : b.labels) ls.push_back("Z_" + std::to_string(l));
    values.push_back(Json{{"object", m.object_string(h)}, {"rank", b.rank()}, {"labels", b.labels}});
    text << std::setw(8) << m.object_string(h) << "  rank " << b.rank() << "  " << join(ls, " + ") << "\n";
    if (o.verify) {
      std::set<SubId> classes;
      for (SubId l : m.system().opens(h)) {
        SubId least = l;
        for (Elem x : g->subgroup(h).elements) least = std::min(least, g->conjugate(l, x));
        classes.insert(least);
      }
      if (classes.size() != b.rank()) fail_verify("rank of B(" + m.object_string(h) + ")");
    }
  }
  r.json = Json{{"values", values}, {"terminal_adjoined", m.adjoined_terminal()}};
  r.text = text.str();
  return r;
}

Report resolve(const Options& o) {
  auto g = load_group(o);
  MackeyCategory m(load_system(o, g));
  auto cat = m.skeleton();
  auto mod = optional_module(o.module, cat, m.burnside_module());
  Resolution res = mackeylab::resolve(mod, o.depth, resolve_options(o));
  if (o.verify) res.check();
  Report r;
  Json terms = Json::array();
  std::ostringstream text;
  text << "free resolution, " << (res.terminated ? "terminated" : "truncated") << " at length " << res.length() << "\n";
  for (std::size_t k = 0; k < res.modules.size(); ++k) {
    const auto& p = res.modules[k];
    std::vector<std::string> gens;
    std::vector<std::size_t> ranks;
    for (auto y : p.generators) gens.push_back(cat->label(y));
    for (std::size_t x = 0; x < cat->size(); ++x) ranks.push_back(p.module->generators(x));
    Json gj = Json::array();
    for (auto& s : gens) gj.push_back(s);
    terms.push_back(Json{{"degree", k}, {"generators", gj}, {"ranks", ranks}});
    std::vector<std::string> rs;
    for (auto x : ranks) rs.push_back(std::to_string(x));
    text << "P_" << k << ": " << gens.size() << " generators [" << join(gens, " ") << "], ranks " << join(rs, " ") << "\n";
  }
  Json objs = Json::array();
  for (std::size_t x = 0; x < cat->size(); ++x) objs.push_back(cat->label(x));
  r.json = Json{{"objects", objs}, {"terms", terms}, {"terminated", res.terminated}};
  r.text = text.str();
  return r;
}

namespace {

std::vector<AbelianGroup> ext_range(const ModulePtr& m, const ModulePtr& n, std::size_t depth, const ResolveOptions& opts) {
  Resolution res = mackeylab::resolve(m, depth + 1, opts);
  std::vector<AbelianGroup> out;
  for (std::size_t k = 0; k <= depth; ++k)
    out.push_back(ext_from(res, n, k).group);
  return out;
}

std::string ext_lines(const std::string& name, const std::vector<AbelianGroup>& gs) {
  std::ostringstream text;
  for (std::size_t k = 0; k < gs.size(); ++k) text << name << "^" << k << " = " << gs[k].to_string() << "\n";
  return text.str();
}

// The resolution is exact and Ext^0 agrees with Hom computed from naturality.
void verify_ext(const ModulePtr& m, const ModulePtr& n, const std::vector<AbelianGroup>& groups, const Options& o) {
  mackeylab::resolve(m, o.depth + 1, resolve_options(o)).check();
  if (!groups.empty() && !(groups[0] == mackeylab::hom(m, n).group)) fail_verify("Ext^0 differs from Hom");
}

}  // namespace

Report ext(const Options& o) {
  auto g = load_group(o);
  MackeyCategory m(load_system(o, g));
  auto cat = m.skeleton();
  auto src = optional_module(o.module, cat, m.burnside_module());
  auto dst = optional_module(o.target, cat, m.burnside_module());
  auto groups = ext_range(src, dst, o.depth, resolve_options(o));
  if (o.verify) verify_ext(src, dst, groups, o);
  Report r;
  r.json = Json{{"ext", groups_json(groups)}};
  r.text = ext_lines("Ext", groups);
  return r;
}

Report bredon_ext(const Options& o) {
  auto g = load_group(o);
  OrbitCategory oc(load_system(o, g));
  auto dst = optional_module(o.target.empty() ? o.module : o.target, oc.skeleton(), oc.constant_module());
  auto groups = ext_range(oc.constant_module(), dst, o.depth, resolve_options(o));
  if (o.verify) verify_ext(oc.constant_module(), dst, groups, o);
  ProjectiveDimension cd = bredon_cd(oc, o.depth + 1, resolve_options(o));
  Report r;
  Json cdj{{"lower", cd.lower}, {"text", cd.to_string()}};
  cdj["upper"] = cd.upper ? Json(*cd.upper) : Json(nullptr);
  r.json = Json{{"ext", groups_json(groups)}, {"cd", cdj}};
  r.text = ext_lines("H", groups) + "Bredon cd: " + cd.to_string() + "\n";
  return r;
}

Report ind(const Options& o) {
  auto g = load_group(o);
  Transfer t(load_system(o, g));
  auto tm = optional_module(o.module, t.orbit()->skeleton(), t.orbit()->constant_module());
  Induced in = t.induce(tm);
  std::vector<AbelianGroup> values;
  for (std::size_t x = 0; x < t.mackey()->objects().size(); ++x) values.push_back(in.module->group(x));
  if (o.verify) {
    in.module->check();
    if (t.induce_closed_form(tm) != values) fail_verify("coend and closed form differ");
    if (o.module.empty() && !is_isomorphism(t.burnside_comparison(in))) fail_verify("ind Z is not isomorphic to B");
  }
  Report r;
  std::ostringstream text;
  for (std::size_t x = 0; x < values.size(); ++x)
    text << "ind T(" << t.mackey()->skeleton()->label(x) << ") = " << values[x].to_string() << "\n";
  r.json = Json{{"module", module_to_json(*in.module)}, {"values", groups_json(values)}};
  r.text = text.str();
  return r;
}

Report res(const Options& o) {
  auto g = load_group(o);
  Transfer t(load_system(o, g));
  auto mm = optional_module(o.module, t.mackey()->skeleton(), t.mackey()->burnside_module());
  auto rm = t.restrict(mm);
  if (o.verify) rm->check();
  Report r;
  std::ostringstream text;
  for (std::size_t x = 0; x < rm->category()->size(); ++x)
    text << "res M(" << rm->category()->label(x) << ") = " << rm->group(x).to_string() << "\n";
  r.json = Json{{"module", module_to_json(*rm)}};
  r.text = text.str();
  return r;
}

Report adjoint(const Options& o) {
  auto g = load_group(o);
  Transfer t(load_system(o, g));
  auto tm = optional_module(o.module, t.orbit()->skeleton(), t.orbit()->constant_module());
  auto mm = optional_module(o.target, t.mackey()->skeleton(), t.mackey()->burnside_module());
  AdjunctionReport a = t.adjunction_check(tm, mm);
  if (o.verify && !a.ok()) fail_verify("adjunction");
  Report r;
  r.json = Json{{"hom_ind", abelian_to_json(a.left)},
                {"hom_res", abelian_to_json(a.right)},
                {"unit_natural", a.unit_natural},
                {"counit_natural", a.counit_natural},
                {"round_trips", a.round_trips},
                {"ok", a.ok()}};
  std::ostringstream text;
  text << "Hom(ind T, M) = " << a.left.to_string() << "\nHom(T, res M) = " << a.right.to_string() << "\nunit natural: "
       << (a.unit_natural ? "yes" : "no") << "\ncounit natural: " << (a.counit_natural ? "yes" : "no")
       << "\nround trips: " << (a.round_trips ? "yes" : "no") << "\n";
  r.text = text.str();
  r.exit_code = a.ok() ? 0 : 1;
  return r;
}

Report tower_colim(const Options& o) {
  auto t = load_tower(o);
  ClosedThread k = load_thread(o, *t);
  std::size_t depth = std::min(o.depth, t->depth());
  ColimitReport c = colim_burnside(*t, k, depth);
  if (o.verify) {
    for (std::size_t n = 0; n <= depth; ++n) {
      if (c.ranks[n] != t->mackey(n).burnside_eval(k.groups[n]).rank()) fail_verify("rank at level " + std::to_string(n));
      const auto& g = *t->level(n);
      for (SubId u = 0; u < g.subgroup_count(); ++u)
        for (SubId v = 0; v < g.subgroup_count(); ++v)
          for (SubId w = 0; w < g.subgroup_count(); ++w)
            if (g.is_subgroup(w, v) && g.is_subgroup(v, u) &&
                !(connecting_map(t->mackey(n), w, u, kTerminal) ==
                  connecting_map(t->mackey(n), w, v, kTerminal) * connecting_map(t->mackey(n), v, u, kTerminal)))
              fail_verify("connecting maps do not compose at level " + std::to_string(n));
    }
  }
  Json maps = Json::array();
  for (const auto& m : c.maps) maps.push_back(matrix_to_json(m));
  Report r;
  r.json = Json{{"thread", thread_to_json(k)}, {"ranks", c.ranks}, {"labels", c.labels}, {"maps", maps},
                {"stabilized", c.stabilized}, {"growth", c.growth()}};
  if (c.stabilized) r.json["stable_from"] = c.stable_from;
  std::ostringstream text;
  for (std::size_t n = 0; n <= depth; ++n) {
    text << "level " << n << ": " << t->level(n)->name() << ", K_" << n << " = " << k.groups[n] << ", rank " << c.ranks[n] << "\n";
    if (n < c.maps.size()) text << "  map to level " << n + 1 << ":\n" << c.maps[n].to_string() << "\n";
  }
  text << (c.stabilized ? "stabilized from level " + std::to_string(c.stable_from) : std::string("not stabilized")) << "\n";
  r.text = text.str();
  return r;
}

Report tower_eval(const Options& o) {
  auto t = load_tower(o);
  ClosedThread k = load_thread(o, *t);
  std::size_t depth = std::min(o.depth, t->depth());
  auto rs = resolve_levels(*t, depth, 2, resolve_options(o));
  if (o.verify)
    for (const auto& x : rs) x.check();
  ThreadEvaluation e = evaluate_resolution_at_thread(*t, rs, k, depth);
  Report r;
  r.json = Json{{"thread", thread_to_json(k)}, {"ranks", e.ranks}, {"exact", e.exact}, {"ok", e.ok()}};
  std::ostringstream text;
  for (std::size_t n = 0; n < e.exact.size(); ++n) {
    std::vector<std::string> rk, ex;
    for (auto x : e.ranks[n]) rk.push_back(std::to_string(x));
    for (bool b : e.exact[n]) ex.push_back(b ? "exact" : "NOT exact");
    text << "level " << n << ": ranks " << join(rk, " ") << "; " << join(ex, ", ") << "\n";
  }
  text << (e.ok() ? "exact at every checked level" : "exactness fails") << "\n";
  r.text = text.str();
  r.exit_code = e.ok() ? 0 : 1;
  return r;
}

Report compare_dims(const Options& o) {
  auto g = load_group(o);
  Transfer t(load_system(o, g));
  auto mm = optional_module(o.module, t.mackey()->skeleton(), t.mackey()->burnside_module());
  auto opts = resolve_options(o);
  auto mack = ext_range(t.mackey()->burnside_module(), mm, o.depth, opts);
  auto bred = ext_range(t.orbit()->constant_module(), t.restrict(mm), o.depth, opts);
  ProjectiveDimension pm = projective_dimension(t.mackey()->burnside_module(), o.depth + 1, opts);
  ProjectiveDimension pb = bredon_cd(*t.orbit(), o.depth + 1, opts);
  if (o.verify && mack != bred) fail_verify("Mackey and Bredon Ext differ");
  Report r;
  Json rows = Json::array();
  std::ostringstream text;
  text << std::setw(4) << "k" << std::setw(24) << "Ext_Mackey(B, M)" << std::setw(24) << "Ext_Bredon(Z, res M)" << "\n";
  for (std::size_t k = 0; k <= o.depth; ++k) {
    rows.push_back(Json{{"degree", k}, {"mackey", abelian_to_json(mack[k])}, {"bredon", abelian_to_json(bred[k])},
                        {"agree", mack[k] == bred[k]}});
    text << std::setw(4) << k << std::setw(24) << mack[k].to_string() << std::setw(24) << bred[k].to_string() << "\n";
  }
  text << "Mackey cd: " << pm.to_string() << "\nBredon cd: " << pb.to_string() << "\n";
  r.json = Json{{"degrees", rows}, {"mackey_cd", pm.to_string()}, {"bredon_cd", pb.to_string()}};
  r.text = text.str();
  return r;
}

}  // namespace mackeylab::cli
