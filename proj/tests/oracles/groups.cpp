#include "groups.hpp"

#include <algorithm>

namespace oracle {

Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<std::uint32_t>(i);
  return c;
}

PermSet closure(std::size_t degree, const std::vector<Perm>& gens) {
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);
  PermSet s{id};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> cur(s.begin(), s.end());
    for (const auto& x : cur)
      for (const auto& g : gens)
        if (s.insert(compose(x, g)).second) grew = true;
  }
  return s;
}

std::vector<PermSet> two_generated_subgroups(const PermSet& group) {
  std::set<PermSet> out;
  const std::size_t n = group.begin()->size();
  for (const auto& x : group)
    for (const auto& y : group)
      if (x <= y) out.insert(closure(n, {x, y}));
  return {out.begin(), out.end()};
}

static PermSet conjugate(const PermSet& h, const Perm& a) {
  PermSet c;
  Perm ai = inverse(a);
  for (const auto& x : h) c.insert(compose(ai, compose(x, a)));
  return c;
}

std::size_t conjugacy_class_count(const PermSet& group, const std::vector<PermSet>& subgroups) {
  std::set<std::set<PermSet>> classes;
  for (const auto& h : subgroups) {
    std::set<PermSet> cls;
    for (const auto& a : group) cls.insert(conjugate(h, a));
    classes.insert(cls);
  }
  return classes.size();
}

PermSet normalizer(const PermSet& group, const PermSet& h) {
  PermSet n;
  for (const auto& a : group)
    if (conjugate(h, a) == h) n.insert(a);
  return n;
}

std::vector<std::size_t> double_coset_sizes(const PermSet& a, const PermSet& k, const PermSet& b) {
  std::set<PermSet> cosets;
  for (const auto& x : k) {
    PermSet c;
    for (const auto& s : a)
      for (const auto& t : b) c.insert(compose(s, compose(x, t)));
    cosets.insert(c);
  }
  std::vector<std::size_t> sizes;
  for (const auto& c : cosets) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

PermSet group_of(const mackeylab::FiniteGroup& g) { return closure(g.degree(), g.generator_perms()); }

PermSet subgroup_perms(const mackeylab::FiniteGroup& g, mackeylab::SubId h) {
  PermSet s;
  for (auto e : g.subgroup(h).elements) s.insert(g.perm(e));
  return s;
}

}  // namespace oracle
