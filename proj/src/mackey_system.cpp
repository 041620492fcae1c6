#include "mackeylab/mackey_system.hpp"

#include <algorithm>
#include <set>

#include "mackeylab/error.hpp"

namespace mackeylab {

bool ValidationReport::violates(const std::string& axiom) const { return first(axiom) != nullptr; }

const Violation* ValidationReport::first(const std::string& axiom) const {
  for (const auto& v : violations)
    if (v.axiom == axiom) return &v;
  return nullptr;
}

MackeySystem MackeySystem::full(GroupPtr g) {
  std::vector<SubId> all(g->subgroup_count());
  for (SubId h = 0; h < all.size(); ++h) all[h] = h;
  return with_family(std::move(g), all);
}

MackeySystem MackeySystem::with_family(GroupPtr g, const std::vector<SubId>& family) {
  MackeySystem s;
  const std::size_t n = g->subgroup_count();
  s.group_ = std::move(g);
  s.family_.assign(n, false);
  s.opens_.assign(n, std::vector<bool>(n, false));
  for (SubId h : family) {
    s.group_->subgroup(h);
    s.family_[h] = true;
  }
  for (SubId h = 0; h < n; ++h) {
    if (!s.family_[h]) continue;
    for (SubId u : s.group_->subgroups_of(h))
      if (s.family_[u]) s.opens_[h][u] = true;
  }
  return s;
}

MackeySystem MackeySystem::from_opens(GroupPtr g, const std::vector<SubId>& family,
                                      const std::map<SubId, std::vector<SubId>>& opens) {
  MackeySystem s;
  const std::size_t n = g->subgroup_count();
  s.group_ = g;
  s.family_.assign(n, false);
  s.opens_.assign(n, std::vector<bool>(n, false));
  for (SubId h : family) {
    g->subgroup(h);
    s.family_[h] = true;
  }
  for (const auto& [h, us] : opens) {
    g->subgroup(h);
    if (!s.family_[h]) throw InputError("UnknownSubgroupId", "opens given for subgroup " + std::to_string(h) + " outside the family");
    for (SubId u : us) g->subgroup(u);
  }
  bool all_keys = true;
  for (SubId h = 0; h < n; ++h)
    if (s.family_[h] && !opens.count(h)) all_keys = false;
  if (all_keys) {
    s.explicit_ = true;
    for (const auto& [h, us] : opens)
      for (SubId u : us) s.opens_[h][u] = true;
    return s;
  }
  // compressed form: one key per conjugacy class of the family
  std::map<std::size_t, SubId> key_of_class;
  for (const auto& [h, us] : opens) {
    auto [it, fresh] = key_of_class.emplace(g->class_of(h), h);
    if (!fresh)
      throw InputError("IncompleteOpens", "compressed opens name two conjugate subgroups " + std::to_string(it->second) +
                                              " and " + std::to_string(h));
  }
  for (SubId h = 0; h < n; ++h) {
    if (!s.family_[h]) continue;
    auto it = key_of_class.find(g->class_of(h));
    if (it == key_of_class.end())
      throw InputError("IncompleteOpens", "no opens given for the conjugacy class of subgroup " + std::to_string(h));
    SubId key = it->second;
    Elem a = *g->conjugator(key, h);
    for (SubId u : opens.at(key)) s.opens_[h][g->conjugate(u, a)] = true;
  }
  return s;
}

std::vector<SubId> MackeySystem::family() const {
  std::vector<SubId> out;
  for (SubId h = 0; h < family_.size(); ++h)
    if (family_[h]) out.push_back(h);
  return out;
}

std::vector<SubId> MackeySystem::opens(SubId h) const {
  std::vector<SubId> out;
  if (!in_family(h)) return out;
  for (SubId u = 0; u < opens_[h].size(); ++u)
    if (opens_[h][u]) out.push_back(u);
  return out;
}

std::vector<SubId> MackeySystem::object_reps() const {
  std::vector<SubId> out;
  for (std::size_t c = 0; c < group_->class_count(); ++c) {
    SubId r = group_->class_rep(c);
    if (in_family(r)) out.push_back(r);
  }
  return out;
}

ValidationReport MackeySystem::validate() const {
  const auto& g = *group_;
  ValidationReport rep;
  auto add = [&](std::string axiom, std::string msg, std::vector<SubId> subs, std::optional<Elem> e = std::nullopt) {
    rep.violations.push_back({std::move(axiom), std::move(msg), std::move(subs), e});
  };
  auto fam = family();
  if (fam.empty()) add("family-empty", "the family is empty", {});
  for (SubId h : fam)
    for (Elem s : g.generators())
      if (!in_family(g.conjugate(h, s))) {
        add("family-conjugation", "conjugate of " + std::to_string(h) + " by " + g.element_string(s) + " is not in the family",
            {h, g.conjugate(h, s)}, s);
        break;
      }
  for (SubId a : fam)
    for (SubId b : fam)
      if (a < b && !in_family(g.intersect(a, b)))
        add("family-intersection", "intersection of " + std::to_string(a) + " and " + std::to_string(b) + " is not in the family",
            {a, b, g.intersect(a, b)});
  for (SubId h : fam)
    for (SubId u : opens(h))
      if (!in_family(u) || !g.is_subgroup(u, h))
        add("containment", "O(" + std::to_string(h) + ") contains " + std::to_string(u) + " which is not in C(H)", {h, u});
  // (i) is automatic for finite groups once O(H) lies in C(H); checked for uniformity.
  for (SubId h : fam)
    for (SubId u : opens(h))
      if (g.is_subgroup(u, h) && g.subgroup(h).order() % g.subgroup(u).order() != 0)
        add("i", "index of " + std::to_string(u) + " in " + std::to_string(h) + " is not finite", {h, u});
  for (SubId h : fam)
    for (SubId u : opens(h)) {
      if (!in_family(u)) continue;
      for (SubId w : opens(u))
        if (!is_open(h, w))
          add("ii", "O(" + std::to_string(u) + ") is not contained in O(" + std::to_string(h) + "): missing " + std::to_string(w),
              {h, u, w});
    }
  for (SubId h : fam)
    for (Elem a = 0; a < g.order(); ++a) {
      SubId ha = g.conjugate(h, a);
      if (!in_family(ha)) continue;
      std::optional<SubId> bad;
      for (SubId u : opens(h))
        if (!is_open(ha, g.conjugate(u, a))) bad = u;
      for (SubId w : opens(ha))
        if (!is_open(h, g.conjugate(w, g.inv(a)))) bad = g.conjugate(w, g.inv(a));
      if (bad) {
        add("iii", "O(H^a) differs from O(H)^a for H=" + std::to_string(h) + ", a=" + g.element_string(a) +
                       ", witness U=" + std::to_string(*bad),
            {h, ha, *bad}, a);
        break;
      }
    }
  for (SubId h : fam) {
    auto os = opens(h);
    for (SubId u : os)
      for (SubId v : os) {
        SubId uv = g.intersect(u, v);
        if (!is_open(v, uv))
          add("iv", std::to_string(u) + " meet " + std::to_string(v) + " = " + std::to_string(uv) + " is not in O(" +
                        std::to_string(v) + ") (both in O(" + std::to_string(h) + "))",
              {h, u, v, uv});
      }
  }
  for (SubId h : fam)
    if (!is_open(h, h)) add("v", std::to_string(h) + " is not in O(" + std::to_string(h) + ")", {h});
  return rep;
}

void MackeySystem::require_valid() const {
  auto rep = validate();
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw InputError("InvalidSystem", "axiom " + v.axiom + ": " + v.message);
  }
}

bool MackeySystem::is_system_morphism(const GMap& f) const {
  if (f.source->group() != group_) throw InputError("GroupMismatch", "map is over a different group");
  for (const auto& o : f.source->orbits()) {
    SubId gx = o.stabilizer;
    SubId gy = f.target->stabilizer(f.image[o.representative]);
    if (!in_family(gx) || !in_family(gy))
      throw InputError("StabilizerNotInFamily", "stabilizer " + std::to_string(in_family(gx) ? gy : gx) + " is not in the family");
    if (!is_open(gy, gx)) return false;
  }
  return true;
}

MackeySystem MackeySystem::conjugated(Elem a) const {
  MackeySystem s = *this;
  const auto& g = *group_;
  const std::size_t n = family_.size();
  s.family_.assign(n, false);
  s.opens_.assign(n, std::vector<bool>(n, false));
  for (SubId h = 0; h < n; ++h) {
    if (!family_[h]) continue;
    SubId ha = g.conjugate(h, a);
    s.family_[ha] = true;
    for (SubId u : opens(h)) s.opens_[ha][g.conjugate(u, a)] = true;
  }
  return s;
}

}  // namespace mackeylab
