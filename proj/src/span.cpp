#include "mackeylab/span.hpp"

#include <algorithm>
#include <tuple>

#include "mackeylab/error.hpp"

namespace mackeylab {

MackeyCategory::MackeyCategory(MackeySystem system) : system_(std::move(system)) {
  system_.require_valid();
  objects_ = system_.object_reps();
}

std::size_t MackeyCategory::object_index(SubId h) const {
  auto it = std::find(objects_.begin(), objects_.end(), h);
  if (it == objects_.end()) throw InputError("UnknownObject", "G/" + std::to_string(h) + " is not an object of the skeleton");
  return static_cast<std::size_t>(it - objects_.begin());
}

void MackeyCategory::check_object(SubId h, bool allow_terminal) const {
  if (h == kTerminal) {
    if (!allow_terminal) throw InputError("UnknownObject", "the terminal object cannot be a source");
    return;
  }
  if (h >= group()->subgroup_count()) throw InputError("UnknownSubgroupId", "no subgroup " + std::to_string(h));
  if (!system_.in_family(h)) throw InputError("UnknownObject", "subgroup " + std::to_string(h) + " is not in the family");
}

MackeyCategory::HomTable MackeyCategory::build_table(SubId h, SubId k) const {
  const auto& g = *group();
  const bool term = k == kTerminal;
  const CosetTable* ck = term ? nullptr : &g.cosets(k);
  std::vector<std::pair<SubId, std::uint32_t>> pts;
  for (SubId l : g.subgroups_of(h)) {
    if (!system_.is_open(h, l)) continue;
    if (term) {
      pts.emplace_back(l, 0);
      continue;
    }
    for (std::uint32_t y = 0; y < ck->index(); ++y) {
      bool fixed = true;
      for (Elem s : g.subgroup(l).generators)
        if (ck->act(s, y) != y) {
          fixed = false;
          break;
        }
      if (fixed && system_.is_open(g.conjugate(k, g.inv(ck->reps[y])), l)) pts.emplace_back(l, y);
    }
  }
  std::sort(pts.begin(), pts.end());
  std::map<std::pair<SubId, std::uint32_t>, std::size_t> orbit_of;
  std::vector<std::vector<std::pair<SubId, std::uint32_t>>> orbits;
  const auto& hgens = g.subgroup(h).generators;
  for (const auto& p : pts) {
    if (orbit_of.count(p)) continue;
    const std::size_t id = orbits.size();
    orbits.emplace_back();
    std::vector<std::pair<SubId, std::uint32_t>> stack{p};
    orbit_of[p] = id;
    while (!stack.empty()) {
      auto q = stack.back();
      stack.pop_back();
      orbits[id].push_back(q);
      for (Elem s : hgens) {
        std::pair<SubId, std::uint32_t> r{g.conjugate(q.first, g.inv(s)), term ? 0 : ck->act(s, q.second)};
        if (orbit_of.emplace(r, id).second) stack.push_back(r);
      }
    }
  }
  std::vector<std::size_t> order(orbits.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto least = [&](std::size_t o) { return *std::min_element(orbits[o].begin(), orbits[o].end()); };
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    auto lx = least(x), ly = least(y);
    return std::make_tuple(g.class_of(lx.first), lx.first, lx.second) <
           std::make_tuple(g.class_of(ly.first), ly.first, ly.second);
  });
  HomTable t;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    auto rep = least(order[pos]);
    t.basis.push_back({h, k, rep.first, g.identity(), term ? g.identity() : ck->reps[rep.second]});
    for (const auto& q : orbits[order[pos]]) t.index[q] = pos;
  }
  return t;
}

const MackeyCategory::HomTable& MackeyCategory::table(SubId h, SubId k) const {
  check_object(h, false);
  check_object(k, true);
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = tables_[{h, k}];
  if (!slot) slot = std::make_unique<HomTable>(build_table(h, k));
  return *slot;
}

const std::vector<BasicSpan>& MackeyCategory::hom_basis(SubId h, SubId k) const { return table(h, k).basis; }

std::size_t MackeyCategory::locate(const BasicSpan& s) const {
  const auto& g = *group();
  const auto& t = table(s.source, s.target);
  SubId l = g.conjugate(s.middle, s.a);
  std::uint32_t y = s.target == kTerminal ? 0 : g.cosets(s.target).coset_of[g.mul(g.inv(s.a), s.b)];
  auto it = t.index.find({l, y});
  if (it == t.index.end()) throw InputError("InvalidSpan", span_string(s) + " is not an admissible basic span");
  return it->second;
}

void MackeyCategory::check_span(const BasicSpan& s) const {
  const auto& g = *group();
  check_object(s.source, false);
  check_object(s.target, true);
  if (s.middle >= g.subgroup_count() || s.a >= g.order() || s.b >= g.order())
    throw InputError("InvalidSpan", "span data out of range");
  SubId la = g.conjugate(s.middle, s.a);
  if (!g.is_subgroup(la, s.source) || !system_.is_open(s.source, la))
    throw InputError("InvalidSpan", span_string(s) + ": left leg is not an admissible map");
  if (s.target == kTerminal) return;
  SubId lb = g.conjugate(s.middle, s.b);
  if (!g.is_subgroup(lb, s.target) || !system_.is_open(s.target, lb))
    throw InputError("InvalidSpan", span_string(s) + ": right leg is not an admissible map");
}

bool MackeyCategory::span_equivalent(const BasicSpan& s, const BasicSpan& t) const {
  if (s.source != t.source || s.target != t.target) return false;
  const auto& g = *group();
  const auto& ch = g.cosets(s.source);
  const CosetTable* ck = s.target == kTerminal ? nullptr : &g.cosets(s.target);
  for (Elem c = 0; c < g.order(); ++c) {
    if (g.conjugate(s.middle, c) != t.middle) continue;
    if (ch.coset_of[s.a] != ch.coset_of[g.mul(c, t.a)]) continue;
    if (ck && ck->coset_of[s.b] != ck->coset_of[g.mul(c, t.b)]) continue;
    return true;
  }
  return false;
}

IntVector MackeyCategory::compose_basic(const BasicSpan& f, const BasicSpan& gs) const {
  if (gs.target != f.source) throw InputError("ObjectMismatch", "spans are not composable");
  if (gs.target == kTerminal) throw InputError("ObjectMismatch", "nothing leaves the terminal object");
  const auto& g = *group();
  const SubId k = gs.target;
  IntVector out(hom_rank(gs.source, f.target));
  DoubleCosets dc = g.double_cosets(gs.middle, gs.b, k, f.middle, f.a);
  for (Elem rep : dc.representatives) {
    Elem v = g.mul(gs.b, g.mul(rep, g.inv(f.a)));
    SubId w = g.intersect(gs.middle, g.conjugate(f.middle, g.inv(v)));
    BasicSpan s{gs.source, f.target, w, gs.a, f.target == kTerminal ? g.identity() : g.mul(v, f.b)};
    out[locate(s)] += 1;
  }
  return out;
}

MackeyHom MackeyCategory::compose(const MackeyHom& f, const MackeyHom& gh) const {
  if (gh.target != f.source) throw InputError("ObjectMismatch", "homs are not composable");
  const auto& gb = hom_basis(gh.source, gh.target);
  const auto& fb = hom_basis(f.source, f.target);
  if (gh.coefficients.size() != gb.size() || f.coefficients.size() != fb.size())
    throw InputError("ShapeMismatch", "hom coefficients do not match the basis");
  MackeyHom out{gh.source, f.target, IntVector(hom_rank(gh.source, f.target))};
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (sgn(gh.coefficients[i]) == 0) continue;
    for (std::size_t j = 0; j < fb.size(); ++j) {
      if (sgn(f.coefficients[j]) == 0) continue;
      Int c = gh.coefficients[i] * f.coefficients[j];
      IntVector v = compose_basic(fb[j], gb[i]);
      for (std::size_t r = 0; r < v.size(); ++r) out.coefficients[r] += c * v[r];
    }
  }
  return out;
}

MackeyHom MackeyCategory::identity(SubId h) const {
  MackeyHom out{h, h, IntVector(hom_rank(h, h))};
  out.coefficients[locate({h, h, h, group()->identity(), group()->identity()})] = 1;
  return out;
}

MackeyHom MackeyCategory::basis_hom(SubId h, SubId k, std::size_t i) const {
  MackeyHom out{h, k, IntVector(hom_rank(h, k))};
  out.coefficients.at(i) = 1;
  return out;
}

std::string MackeyCategory::object_string(SubId h) const { return h == kTerminal ? "*" : "G/" + std::to_string(h); }

std::string MackeyCategory::span_string(const BasicSpan& s) const {
  std::string mid = std::to_string(s.middle);
  std::string right = s.target == kTerminal ? "-> *]" : "-(" + mid + "," + std::to_string(s.b) + ")-> " + object_string(s.target) + "]";
  return "[" + object_string(s.source) + " <-(" + mid + "," + std::to_string(s.a) + ")- " + right;
}

CatPtr MackeyCategory::skeleton() const {
  std::call_once(skeleton_once_, [this] {
    const std::size_t n = objects_.size();
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> ranks(n, std::vector<std::size_t>(n));
    std::vector<std::size_t> ids;
    for (std::size_t x = 0; x < n; ++x) {
      labels.push_back(object_string(objects_[x]));
      for (std::size_t y = 0; y < n; ++y) ranks[x][y] = hom_rank(objects_[x], objects_[y]);
      ids.push_back(locate({objects_[x], objects_[x], objects_[x], group()->identity(), group()->identity()}));
    }
    skeleton_ = std::make_shared<SkeletonCategory>(
        labels, ranks, ids, [this](std::size_t x, std::size_t y, std::size_t z, std::size_t f, std::size_t g) {
          return compose_basic(hom_basis(objects_[y], objects_[z])[f], hom_basis(objects_[x], objects_[y])[g]);
        });
  });
  return skeleton_;
}

FreeModule MackeyCategory::representable(SubId k) const { return free_module(skeleton(), {object_index(k)}); }

BurnsideValue MackeyCategory::burnside_eval(SubId h) const {
  BurnsideValue out;
  out.subgroup = h;
  for (const auto& s : hom_basis(h, kTerminal)) out.labels.push_back(s.middle);
  return out;
}

ModulePtr MackeyCategory::burnside_module() const {
  if (!adjoined_terminal()) return representable(group()->whole()).module;
  return terminal_module();
}

ModulePtr MackeyCategory::terminal_module() const {
  auto cat = skeleton();
  const std::size_t n = objects_.size();
  std::vector<Presentation> values;
  for (SubId h : objects_) values.emplace_back(hom_rank(h, kTerminal));
  CatModule::Actions actions(n, std::vector<std::vector<IntMatrix>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& phis = hom_basis(objects_[x], objects_[y]);
      const auto& tops = hom_basis(objects_[y], kTerminal);
      for (const auto& phi : phis) {
        IntMatrix m(values[x].generators, values[y].generators);
        for (std::size_t j = 0; j < tops.size(); ++j) m.set_column(j, compose_basic(tops[j], phi));
        actions[x][y].push_back(std::move(m));
      }
    }
  return std::make_shared<CatModule>(cat, std::move(values), std::move(actions));
}

bool MackeyCategory::terminal_matches_representable() const {
  if (adjoined_terminal()) return true;
  for (SubId h : objects_)
    if (hom_rank(h, kTerminal) != hom_rank(h, group()->whole())) return false;
  return true;
}

std::vector<std::vector<std::size_t>> table_of_marks(const FiniteGroup& g) {
  const std::size_t n = g.class_count();
  std::vector<std::vector<std::size_t>> marks(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ck = g.cosets(g.class_rep(j));
      const auto& gens = g.subgroup(g.class_rep(i)).generators;
      for (std::uint32_t y = 0; y < ck.index(); ++y) {
        bool fixed = true;
        for (Elem s : gens)
          if (ck.act(s, y) != y) {
            fixed = false;
            break;
          }
        if (fixed) ++marks[i][j];
      }
    }
  return marks;
}

}  // namespace mackeylab
