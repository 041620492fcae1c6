#include "mackeylab/gset.hpp"

#include <algorithm>
#include <map>

#include "mackeylab/error.hpp"

namespace mackeylab {

GSet GSet::homogeneous(GroupPtr g, SubId h) {
  GSet x(g);
  Part p;
  p.coset_space = h;
  p.size = g->cosets(h).index();
  x.add_part(std::move(p));
  x.decompose();
  return x;
}

GSet GSet::raw(GroupPtr g, std::size_t size, std::vector<std::uint32_t> action) {
  if (action.size() != size * g->order()) throw InputError("ShapeMismatch", "raw action table has the wrong size");
  for (auto v : action)
    if (v >= size) throw InputError("InvalidAction", "action table entry out of range");
  GSet x(g);
  Part p;
  p.size = size;
  p.action = std::move(action);
  x.add_part(std::move(p));
  x.check_action();
  x.decompose();
  return x;
}

GSet GSet::disjoint_union(const std::vector<GSet>& parts) {
  if (parts.empty()) throw InputError("InvalidGSet", "disjoint union of nothing needs a group");
  GSet x(parts.front().group_);
  for (const auto& s : parts) {
    if (s.group_ != x.group_) throw InputError("GroupMismatch", "disjoint union over different groups");
    for (const auto& p : s.parts_) x.add_part(p);
  }
  x.decompose();
  return x;
}

void GSet::add_part(Part p) {
  offsets_.push_back(offsets_.back() + static_cast<std::uint32_t>(p.size));
  parts_.push_back(std::move(p));
}

std::pair<std::uint32_t, std::uint32_t> GSet::locate(std::uint32_t p) const {
  if (p >= size()) throw InvariantViolation("point out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), p);
  auto part = static_cast<std::uint32_t>(it - offsets_.begin() - 1);
  return {part, p - offsets_[part]};
}

std::uint32_t GSet::act(Elem g, std::uint32_t p) const {
  auto [part, i] = locate(p);
  const Part& pt = parts_[part];
  if (pt.coset_space) return offsets_[part] + group_->cosets(*pt.coset_space).act(g, i);
  return offsets_[part] + pt.action[g * pt.size + i];
}

SubId GSet::stabilizer(std::uint32_t p) const {
  auto [part, i] = locate(p);
  const Part& pt = parts_[part];
  if (pt.coset_space) return group_->conjugate(*pt.coset_space, group_->inv(group_->cosets(*pt.coset_space).reps[i]));
  std::vector<Elem> st;
  for (Elem g = 0; g < group_->order(); ++g)
    if (pt.action[g * pt.size + i] == i) st.push_back(g);
  auto id = group_->find_subgroup(st);
  if (!id) throw InvariantViolation("stabilizer is not a subgroup");
  return *id;
}

void GSet::decompose() {
  orbits_.clear();
  std::vector<bool> seen(size());
  for (std::size_t part = 0; part < parts_.size(); ++part) {
    const Part& pt = parts_[part];
    if (pt.coset_space) {
      orbits_.push_back({offsets_[part], *pt.coset_space, pt.size});
      continue;
    }
    std::vector<std::uint32_t> stack;
    for (std::uint32_t i = 0; i < pt.size; ++i) {
      if (seen[offsets_[part] + i]) continue;
      std::size_t count = 0;
      seen[offsets_[part] + i] = true;
      stack.push_back(i);
      while (!stack.empty()) {
        auto y = stack.back();
        stack.pop_back();
        ++count;
        for (Elem s : group_->generators()) {
          auto z = pt.action[s * pt.size + y];
          if (!seen[offsets_[part] + z]) {
            seen[offsets_[part] + z] = true;
            stack.push_back(z);
          }
        }
      }
      orbits_.push_back({offsets_[part] + i, stabilizer(offsets_[part] + i), count});
    }
  }
}

std::vector<std::uint32_t> GSet::fixed_points(SubId u) const {
  const auto& gens = group_->subgroup(u).generators;
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 0; p < size(); ++p) {
    bool fixed = true;
    for (Elem s : gens)
      if (act(s, p) != p) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(p);
  }
  return out;
}

std::vector<std::size_t> GSet::iso_signature() const {
  std::vector<std::size_t> sig;
  for (const auto& o : orbits_) sig.push_back(group_->class_of(o.stabilizer));
  std::sort(sig.begin(), sig.end());
  return sig;
}

void GSet::check_action() const {
  const auto& g = *group_;
  for (std::uint32_t p = 0; p < size(); ++p) {
    if (act(g.identity(), p) != p) throw InvariantViolation("identity moves point " + std::to_string(p));
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem s : g.generators())
        if (act(g.mul(a, s), p) != act(a, act(s, p)))
          throw InvariantViolation("action is not compatible with composition at point " + std::to_string(p));
  }
}

std::vector<std::uint32_t> fixed_points(const GSet& x, SubId u) { return x.fixed_points(u); }

void GMap::check_equivariant() const {
  if (!source || !target) throw InvariantViolation("map without endpoints");
  if (source->group() != target->group()) throw InputError("GroupMismatch", "map between different groups");
  if (image.size() != source->size()) throw InputError("ShapeMismatch", "map image has the wrong length");
  for (auto y : image)
    if (y >= target->size()) throw InputError("ShapeMismatch", "map image out of range");
  for (Elem s : source->group()->generators())
    for (std::uint32_t p = 0; p < source->size(); ++p)
      if (image[source->act(s, p)] != target->act(s, image[p]))
        throw InvariantViolation("map is not equivariant at point " + std::to_string(p) + " under generator " +
                                 source->group()->element_string(s));
}

bool GMap::is_equivariant() const {
  try {
    check_equivariant();
    return true;
  } catch (const Error&) {
    return false;
  }
}

GMap compose(const GMap& f, const GMap& g) {
  if (g.target->size() != f.source->size() || g.target->group() != f.source->group())
    throw InputError("ObjectMismatch", "maps are not composable");
  GMap h{g.source, f.target, std::vector<std::uint32_t>(g.image.size())};
  for (std::size_t p = 0; p < g.image.size(); ++p) h.image[p] = f.image[g.image[p]];
  return h;
}

GMap identity_map(const GSetPtr& x) {
  GMap f{x, x, std::vector<std::uint32_t>(x->size())};
  for (std::uint32_t p = 0; p < x->size(); ++p) f.image[p] = p;
  return f;
}

namespace {

SubId coset_subgroup(const GSet& x, const char* what) {
  if (!x.is_homogeneous()) throw InputError("NotHomogeneous", std::string(what) + " is not a homogeneous G-set");
  return *x.parts()[0].coset_space;
}

}  // namespace

GMap homogeneous_map(const GSetPtr& gh, const GSetPtr& gk, Elem a) {
  const auto& g = *gh->group();
  SubId h = coset_subgroup(*gh, "source"), k = coset_subgroup(*gk, "target");
  if (!g.is_subgroup(g.conjugate(h, a), k)) throw InputError("NotSubconjugate", "H^a is not contained in K");
  const auto& ch = g.cosets(h);
  const auto& ck = g.cosets(k);
  GMap f{gh, gk, std::vector<std::uint32_t>(ch.index())};
  for (std::size_t i = 0; i < ch.index(); ++i) f.image[i] = ck.coset_of[g.mul(ch.reps[i], a)];
  return f;
}

std::vector<GMap> maps_between_homogeneous(const GSetPtr& gh, const GSetPtr& gk) {
  if (gh->group() != gk->group()) throw InputError("GroupMismatch", "homogeneous sets over different groups");
  const auto& g = *gh->group();
  SubId h = coset_subgroup(*gh, "source"), k = coset_subgroup(*gk, "target");
  std::vector<GMap> out;
  const auto& ck = g.cosets(k);
  for (auto c : gk->fixed_points(h)) out.push_back(homogeneous_map(gh, gk, ck.reps[c]));
  return out;
}

Elem map_element(const GMap& f) {
  SubId k = coset_subgroup(*f.target, "target");
  return f.source->group()->cosets(k).reps[f.image[0]];
}

Pullback pullback_homogeneous(const GMap& f, const GMap& g) {
  if (f.target->size() != g.target->size() || f.target->group() != g.target->group())
    throw InputError("ObjectMismatch", "pullback needs a common target");
  const auto& G = *f.source->group();
  SubId l = coset_subgroup(*f.source, "first source");
  SubId s = coset_subgroup(*g.source, "second source");
  SubId k = coset_subgroup(*f.target, "target");
  coset_subgroup(*g.target, "target");
  Elem a = map_element(f), b = map_element(g);
  auto dc = G.double_cosets(l, a, k, s, b);
  Pullback out;
  std::vector<GSet> parts;
  auto gp = f.source->group();
  for (Elem kk : dc.representatives) {
    Elem v = G.mul(a, G.mul(kk, G.inv(b)));
    SubId st = G.intersect(l, G.conjugate(s, G.inv(v)));
    out.summands.push_back({st, v});
    parts.push_back(GSet::homogeneous(gp, st));
  }
  auto set = std::make_shared<GSet>(parts.empty() ? GSet::empty(gp) : GSet::disjoint_union(parts));
  out.set = set;
  out.left = GMap{set, f.source, std::vector<std::uint32_t>(set->size())};
  out.right = GMap{set, g.source, std::vector<std::uint32_t>(set->size())};
  const auto& cl = G.cosets(l);
  const auto& cs = G.cosets(s);
  for (std::uint32_t part = 0; part < out.summands.size(); ++part) {
    const auto& ct = G.cosets(out.summands[part].stabilizer);
    for (std::uint32_t i = 0; i < ct.index(); ++i) {
      auto p = set->point(part, i);
      out.left.image[p] = cl.coset_of[ct.reps[i]];
      out.right.image[p] = cs.coset_of[G.mul(ct.reps[i], out.summands[part].v)];
    }
  }
  return out;
}

Pullback pullback_general(const GMap& f, const GMap& g) {
  if (f.target->size() != g.target->size() || f.target->group() != g.target->group())
    throw InputError("ObjectMismatch", "pullback needs a common target");
  auto gp = f.source->group();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pts;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t x = 0; x < f.source->size(); ++x)
    for (std::uint32_t y = 0; y < g.source->size(); ++y)
      if (f.image[x] == g.image[y]) {
        index[{x, y}] = static_cast<std::uint32_t>(pts.size());
        pts.emplace_back(x, y);
      }
  const std::size_t n = pts.size();
  std::vector<std::uint32_t> action(gp->order() * n);
  for (Elem e = 0; e < gp->order(); ++e)
    for (std::size_t p = 0; p < n; ++p)
      action[e * n + p] = index.at({f.source->act(e, pts[p].first), g.source->act(e, pts[p].second)});
  Pullback out;
  auto set = std::make_shared<GSet>(n == 0 ? GSet::empty(gp) : GSet::raw(gp, n, std::move(action)));
  out.set = set;
  out.left = GMap{set, f.source, std::vector<std::uint32_t>(n)};
  out.right = GMap{set, g.source, std::vector<std::uint32_t>(n)};
  for (std::size_t p = 0; p < n; ++p) {
    out.left.image[p] = pts[p].first;
    out.right.image[p] = pts[p].second;
  }
  return out;
}

}  // namespace mackeylab
