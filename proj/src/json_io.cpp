#include "mackeylab/json_io.hpp"

#include <fstream>
#include <limits>

#include "mackeylab/error.hpp"

namespace mackeylab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError("BadJson", std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t index_from_json(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError("BadJson", "expected a non-negative integer, got " + j.dump());
  return j.get<std::size_t>();
}

std::size_t key_index(const std::string& key) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(key, &pos);
    if (pos == key.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("BadJson", "expected a numeric key, got \"" + key + "\"");
}

std::vector<SubId> ids_from_json(const Json& j, const FiniteGroup& g) {
  if (!j.is_array()) throw InputError("BadJson", "expected a list of subgroup ids");
  std::vector<SubId> out;
  for (const auto& x : j) {
    std::size_t id = index_from_json(x);
    if (id >= g.subgroup_count()) throw InputError("UnknownSubgroup", "subgroup id " + std::to_string(id) + " out of range");
    out.push_back(static_cast<SubId>(id));
  }
  return out;
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("BadJson", "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("BadJson", path.string() + ": " + e.what());
  }
}

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw InputError("BadJson", "expected an integer, got " + j.dump());
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("BadJson", "expected a list of integers");
  IntVector out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

IntMatrix matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) throw InputError("BadJson", "expected a matrix as a list of rows");
  if (j.empty()) return IntMatrix(0, cols);
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  IntMatrix out(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != out.cols()) throw InputError("BadJson", "ragged matrix");
    for (std::size_t c = 0; c < out.cols(); ++c) out(i, c) = rows[i][c];
  }
  return out;
}

Json abelian_to_json(const AbelianGroup& a) {
  return Json{{"rank", a.rank}, {"torsion", vector_to_json(a.torsion)}, {"text", a.to_string()}};
}

AbelianGroup abelian_from_json(const Json& j) {
  return AbelianGroup{index_from_json(field(j, "rank")), vector_from_json(field(j, "torsion"))};
}

Json group_to_json(const FiniteGroup& g) {
  Json gens = Json::array();
  for (const auto& p : g.generator_perms()) gens.push_back(p);
  return Json{{"degree", g.degree()}, {"generators", gens}, {"name", g.name()}};
}

GroupPtr group_from_json(const Json& j) {
  std::size_t degree = index_from_json(field(j, "degree"));
  const Json& gens = field(j, "generators");
  if (!gens.is_array()) throw InputError("BadGroup", "generators must be a list of image lists");
  std::vector<Perm> perms;
  for (const auto& p : gens) {
    if (!p.is_array() || p.size() != degree) throw InputError("BadGroup", "generator " + p.dump() + " is not of degree " + std::to_string(degree));
    Perm q;
    std::vector<bool> seen(degree);
    for (const auto& x : p) {
      std::size_t v = index_from_json(x);
      if (v >= degree || seen[v]) throw InputError("BadGroup", "generator " + p.dump() + " is not a permutation");
      seen[v] = true;
      q.push_back(static_cast<std::uint32_t>(v));
    }
    perms.push_back(std::move(q));
  }
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
  return FiniteGroup::create(degree, std::move(perms), name);
}

GroupPtr resolve_group(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_object()) return group_from_json(ref);
  if (!ref.is_string()) throw InputError("BadJson", "group reference must be an object or a string");
  std::string s = ref.get<std::string>();
  std::filesystem::path p = base.empty() ? std::filesystem::path(s) : base / s;
  if (std::filesystem::exists(p)) return group_from_json(load_json(p));
  return named_group(s);
}

Json system_to_json(const MackeySystem& s) {
  const auto& g = *s.group();
  auto fam = s.family();
  Json out;
  if (fam.size() == g.subgroup_count())
    out["family"] = "all";
  else
    out["family"] = fam;
  bool full = true;
  Json opens = Json::object();
  for (SubId h : fam) {
    auto o = s.opens(h);
    std::size_t below = 0;
    for (SubId u : fam) below += g.is_subgroup(u, h);
    full = full && o.size() == below;
    opens[std::to_string(h)] = o;
  }
  out["opens"] = full ? Json("full") : opens;
  return out;
}

MackeySystem system_from_json(GroupPtr g, const Json& j) {
  if (j.is_string() && j.get<std::string>() == "full") return MackeySystem::full(g);
  const Json& fam = field(j, "family");
  std::vector<SubId> family;
  if (fam.is_string()) {
    if (fam.get<std::string>() != "all") throw InputError("BadJson", "family must be \"all\" or a list of ids");
    for (SubId h = 0; h < g->subgroup_count(); ++h) family.push_back(h);
  } else {
    family = ids_from_json(fam, *g);
  }
  const Json& opens = j.contains("opens") ? j.at("opens") : Json("full");
  if (opens.is_string()) {
    if (opens.get<std::string>() != "full") throw InputError("BadJson", "opens must be \"full\" or an object");
    return MackeySystem::with_family(g, family);
  }
  if (!opens.is_object()) throw InputError("BadJson", "opens must be \"full\" or an object");
  std::map<SubId, std::vector<SubId>> o;
  for (const auto& [k, v] : opens.items()) {
    std::size_t h = key_index(k);
    if (h >= g->subgroup_count()) throw InputError("UnknownSubgroup", "subgroup id " + k + " out of range");
    o[static_cast<SubId>(h)] = ids_from_json(v, *g);
  }
  return MackeySystem::from_opens(g, family, o);
}

Json violation_to_json(const Violation& v) {
  Json out{{"axiom", v.axiom}, {"message", v.message}, {"subgroups", v.subgroups}};
  if (v.element) out["element"] = *v.element;
  return out;
}

Json gset_to_json(const GSet& x) {
  std::vector<Json> parts;
  for (const auto& o : x.orbits()) parts.push_back(Json{{"type", "homogeneous"}, {"subgroup", o.stabilizer}});
  if (parts.size() == 1) return parts[0];
  return Json{{"type", "disjoint_union"}, {"parts", parts}};
}

GSet gset_from_json(GroupPtr g, const Json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "homogeneous") {
    std::size_t h = index_from_json(field(j, "subgroup"));
    if (h >= g->subgroup_count()) throw InputError("UnknownSubgroup", "subgroup id out of range");
    return GSet::homogeneous(g, static_cast<SubId>(h));
  }
  if (type == "disjoint_union") {
    std::vector<GSet> parts;
    for (const auto& p : field(j, "parts")) parts.push_back(gset_from_json(g, p));
    if (parts.empty()) return GSet::empty(g);
    return GSet::disjoint_union(parts);
  }
  throw InputError("BadJson", "unknown G-set type \"" + type + "\"");
}

Json module_to_json(const CatModule& m) {
  const auto& c = *m.category();
  Json values = Json::object(), actions = Json::object();
  for (std::size_t x = 0; x < c.size(); ++x)
    values[c.label(x)] = Json{{"rank", m.generators(x)}, {"relations", matrix_to_json(m.value(x).relations)},
                              {"group", abelian_to_json(m.group(x))}};
  for (std::size_t g = 0; g < c.morphism_count(); ++g) {
    auto r = c.morphism(g);
    actions[std::to_string(g)] = matrix_to_json(m.action(r.source, r.target, r.index));
  }
  return Json{{"values", values}, {"actions", actions}};
}

ModulePtr module_from_json(const CatPtr& cat, const Json& j) {
  const auto& c = *cat;
  const Json& values = field(j, "values");
  std::vector<Presentation> pres;
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (!values.contains(c.label(x))) throw InputError("BadModule", "no value at " + c.label(x));
    const Json& v = values.at(c.label(x));
    std::size_t rank = index_from_json(field(v, "rank"));
    IntMatrix rel = v.contains("relations") ? matrix_from_json(v.at("relations")) : IntMatrix(rank, 0);
    if (rel.rows() == 0) rel = IntMatrix(rank, 0);
    if (rel.rows() != rank) throw InputError("BadModule", "relations at " + c.label(x) + " have the wrong number of rows");
    pres.emplace_back(rank, rel);
  }
  const Json& acts = field(j, "actions");
  CatModule::Actions a(c.size(), std::vector<std::vector<IntMatrix>>(c.size()));
  for (std::size_t g = 0; g < c.morphism_count(); ++g) {
    auto r = c.morphism(g);
    const std::string key = std::to_string(g);
    std::size_t rows = pres[r.source].generators, cols = pres[r.target].generators;
    IntMatrix m = acts.contains(key) ? matrix_from_json(acts.at(key), cols) : IntMatrix(rows, cols);
    if (rows == 0) m = IntMatrix(0, cols);
    if (m.rows() != rows || m.cols() != cols)
      throw InputError("BadModule", "action of morphism " + key + " must be " + std::to_string(rows) + " x " + std::to_string(cols));
    a[r.source][r.target].push_back(std::move(m));
  }
  auto out = std::make_shared<CatModule>(cat, std::move(pres), std::move(a));
  try {
    out->check();
  } catch (const InvariantViolation& e) {
    throw InputError("BadModule", e.what());
  }
  return out;
}

Json span_to_json(const MackeyCategory& m, const BasicSpan& s) {
  Json out{{"source", s.source}, {"middle", s.middle}, {"a", s.a}, {"b", s.b}, {"text", m.span_string(s)}};
  out["target"] = s.target == kTerminal ? Json("*") : Json(s.target);
  return out;
}

TowerPtr tower_from_json(const Json& j, const std::filesystem::path& base) {
  std::vector<GroupPtr> levels;
  for (const auto& ref : field(j, "levels")) levels.push_back(resolve_group(ref, base));
  std::vector<std::vector<Elem>> proj;
  for (const auto& p : field(j, "projections")) {
    std::vector<Elem> img;
    for (const auto& x : p) img.push_back(static_cast<Elem>(index_from_json(x)));
    proj.push_back(std::move(img));
  }
  return std::make_shared<Tower>(std::move(levels), proj);
}

Json tower_to_json(const Tower& t) {
  Json levels = Json::array(), proj = Json::array();
  for (std::size_t n = 0; n <= t.depth(); ++n) levels.push_back(group_to_json(*t.level(n)));
  for (std::size_t n = 0; n < t.depth(); ++n) {
    std::vector<Elem> img;
    for (Elem g : t.level(n + 1)->generators()) img.push_back(t.projection(n)(g));
    proj.push_back(img);
  }
  return Json{{"levels", levels}, {"projections", proj}};
}

ClosedThread thread_from_json(const Json& j) {
  ClosedThread k;
  const Json& g = field(j, "groups");
  if (!g.is_array()) throw InputError("BadJson", "thread groups must be a list");
  for (const auto& x : g) k.groups.push_back(static_cast<SubId>(index_from_json(x)));
  return k;
}

Json thread_to_json(const ClosedThread& k) { return Json{{"groups", k.groups}}; }

}  // namespace mackeylab
