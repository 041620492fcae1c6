#include "mackeylab/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <sstream>

#include "mackeylab/error.hpp"

namespace mackeylab {

GroupLimits GroupLimits::from_environment() {
  GroupLimits l;
  if (const char* env = std::getenv("MACKEYLAB_MAX_LATTICE")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) l.max_subgroups = v;
  }
  return l;
}

std::size_t FiniteGroup::PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p) h = (h ^ x) * 1099511628211ull;
  return h;
}

namespace {

Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm identity_perm(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

}  // namespace

GroupPtr FiniteGroup::create(std::size_t degree, std::vector<Perm> generators, std::string name,
                             GroupLimits limits) {
  if (degree == 0) throw InputError("InvalidGroup", "degree must be positive");
  for (const auto& g : generators) {
    if (g.size() != degree) throw InputError("InvalidPermutation", "generator length differs from degree");
    std::vector<bool> hit(degree);
    for (auto x : g) {
      if (x >= degree || hit[x]) throw InputError("InvalidPermutation", "generator is not a permutation");
      hit[x] = true;
    }
  }
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->degree_ = degree;
  g->name_ = std::move(name);
  g->limits_ = limits;
  g->generator_perms_ = std::move(generators);
  g->enumerate();
  return g;
}

void FiniteGroup::enumerate() {
  std::unordered_map<Perm, Elem, PermHash> seen;
  std::vector<Perm> elems{identity_perm(degree_)};
  seen.emplace(elems[0], 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : generator_perms_) {
      Perm p = compose(elems[i], s);
      if (seen.count(p)) continue;
      if (elems.size() >= limits_.max_order)
        throw BoundExceeded("group order exceeds " + std::to_string(limits_.max_order));
      seen.emplace(p, static_cast<Elem>(elems.size()));
      elems.push_back(std::move(p));
    }
  }
  std::sort(elems.begin(), elems.end());
  elements_ = std::move(elems);
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], static_cast<Elem>(i));
  const std::size_t n = elements_.size();
  if (n <= 1024) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) table_[a * n + b] = index_.at(compose(elements_[a], elements_[b]));
  }
  inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    Perm inv(degree_);
    for (std::size_t i = 0; i < degree_; ++i) inv[elements_[a][i]] = static_cast<std::uint32_t>(i);
    inverse_[a] = index_.at(inv);
  }
  for (const auto& s : generator_perms_) generators_.push_back(index_.at(s));
}

std::optional<Elem> FiniteGroup::find(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem FiniteGroup::index_of(const Perm& p) const {
  auto e = find(p);
  if (!e) throw InputError("UnknownElement", "permutation is not an element of the group");
  return *e;
}

Elem FiniteGroup::mul(Elem a, Elem b) const {
  if (!table_.empty()) return table_[a * elements_.size() + b];
  return index_.at(compose(elements_[a], elements_[b]));
}

std::string FiniteGroup::element_string(Elem g) const {
  const Perm& p = elements_[g];
  std::ostringstream os;
  std::vector<bool> done(p.size());
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      os << (first ? "" : " ") << j;
      first = false;
      j = p[j];
    }
    os << ')';
    any = true;
  }
  return any ? os.str() : "()";
}

Subgroup FiniteGroup::close(std::vector<Elem> gens) const {
  Subgroup s;
  s.member.assign(order(), false);
  s.member[0] = true;
  s.elements.push_back(0);
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    for (Elem g : gens) {
      Elem y = mul(s.elements[i], g);
      if (!s.member[y]) {
        s.member[y] = true;
        s.elements.push_back(y);
      }
    }
  std::sort(s.elements.begin(), s.elements.end());
  s.generators = std::move(gens);
  return s;
}

void FiniteGroup::build_lattice() const {
  std::call_once(lattice_once_, [this] {
    std::vector<Subgroup> found;
    std::map<std::vector<Elem>, std::size_t> seen;
    found.push_back(close({}));
    seen.emplace(found[0].elements, 0);
    std::vector<bool> visited(order());
    for (std::size_t i = 0; i < found.size(); ++i) {
      const std::vector<Elem> gens = found[i].generators;
      const std::vector<bool> member = found[i].member;
      const std::vector<Elem> elems = found[i].elements;
      std::fill(visited.begin(), visited.end(), false);
      for (Elem g = 0; g < order(); ++g) {
        if (member[g] || visited[g]) continue;
        for (Elem h : elems) visited[mul(g, h)] = true;
        std::vector<Elem> ext = gens;
        ext.push_back(g);
        Subgroup k = close(std::move(ext));
        if (seen.count(k.elements)) continue;
        if (found.size() >= limits_.max_subgroups)
          throw BoundExceeded("subgroup lattice exceeds " + std::to_string(limits_.max_subgroups) + " subgroups");
        seen.emplace(k.elements, found.size());
        found.push_back(std::move(k));
      }
    }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
      if (a.order() != b.order()) return a.order() < b.order();
      return a.elements < b.elements;
    });
    for (std::size_t i = 0; i < found.size(); ++i) {
      found[i].id = static_cast<SubId>(i);
      subgroup_index_.emplace(found[i].elements, static_cast<SubId>(i));
    }
    subgroups_ = std::move(found);

    const std::size_t n = subgroups_.size();
    class_of_.assign(n, n);
    for (SubId s = 0; s < n; ++s) {
      if (class_of_[s] != n) continue;
      std::size_t cls = classes_.size();
      classes_.emplace_back();
      std::deque<SubId> queue{s};
      class_of_[s] = cls;
      while (!queue.empty()) {
        SubId h = queue.front();
        queue.pop_front();
        classes_[cls].push_back(h);
        for (Elem a : generators_) {
          std::vector<Elem> c;
          c.reserve(subgroups_[h].order());
          for (Elem x : subgroups_[h].elements) c.push_back(conj(x, a));
          std::sort(c.begin(), c.end());
          SubId k = subgroup_index_.at(c);
          if (class_of_[k] == n) {
            class_of_[k] = cls;
            queue.push_back(k);
          }
        }
      }
      std::sort(classes_[cls].begin(), classes_[cls].end());
    }

    contained_.assign(n, std::vector<bool>(n, false));
    for (SubId b = 0; b < n; ++b)
      for (SubId a = 0; a <= b; ++a) {
        if (subgroups_[b].order() % subgroups_[a].order() != 0) continue;
        bool ok = true;
        for (Elem x : subgroups_[a].elements)
          if (!subgroups_[b].member[x]) {
            ok = false;
            break;
          }
        contained_[b][a] = ok;
      }
  });
}

std::size_t FiniteGroup::subgroup_count() const {
  build_lattice();
  return subgroups_.size();
}

void FiniteGroup::check_id(SubId h) const {
  build_lattice();
  if (h >= subgroups_.size()) throw InputError("UnknownSubgroupId", "subgroup id " + std::to_string(h) + " out of range");
}

const Subgroup& FiniteGroup::subgroup(SubId id) const {
  check_id(id);
  return subgroups_[id];
}

SubId FiniteGroup::whole() const { return static_cast<SubId>(subgroup_count() - 1); }

std::optional<SubId> FiniteGroup::find_subgroup(std::vector<Elem> elements) const {
  build_lattice();
  std::sort(elements.begin(), elements.end());
  auto it = subgroup_index_.find(elements);
  if (it == subgroup_index_.end()) return std::nullopt;
  return it->second;
}

SubId FiniteGroup::generated(const std::vector<Elem>& gens) const {
  for (Elem g : gens)
    if (g >= order()) throw InputError("UnknownElement", "element index out of range");
  return *find_subgroup(close(gens).elements);
}

std::size_t FiniteGroup::class_count() const {
  build_lattice();
  return classes_.size();
}

std::size_t FiniteGroup::class_of(SubId h) const {
  check_id(h);
  return class_of_[h];
}

SubId FiniteGroup::class_rep(std::size_t cls) const { return class_members(cls).front(); }

const std::vector<SubId>& FiniteGroup::class_members(std::size_t cls) const {
  build_lattice();
  if (cls >= classes_.size()) throw InputError("UnknownClass", "conjugacy class out of range");
  return classes_[cls];
}

bool FiniteGroup::is_subgroup(SubId a, SubId b) const {
  check_id(a);
  check_id(b);
  return contained_[b][a];
}

std::vector<SubId> FiniteGroup::subgroups_of(SubId h) const {
  check_id(h);
  std::vector<SubId> out;
  for (SubId a = 0; a <= h; ++a)
    if (contained_[h][a]) out.push_back(a);
  return out;
}

const std::vector<SubId>& FiniteGroup::conj_table(SubId h) const {
  check_id(h);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto& slot = conj_tables_[h];
  if (!slot) {
    auto t = std::make_unique<std::vector<SubId>>(order());
    std::vector<Elem> c(subgroups_[h].order());
    for (Elem a = 0; a < order(); ++a) {
      std::size_t i = 0;
      for (Elem x : subgroups_[h].elements) c[i++] = conj(x, a);
      std::sort(c.begin(), c.end());
      (*t)[a] = subgroup_index_.at(c);
    }
    slot = std::move(t);
  }
  return *slot;
}

SubId FiniteGroup::conjugate(SubId h, Elem a) const { return conj_table(h)[a]; }

std::optional<Elem> FiniteGroup::conjugator(SubId h, SubId k) const {
  const auto& t = conj_table(h);
  for (Elem a = 0; a < order(); ++a)
    if (t[a] == k) return a;
  return std::nullopt;
}

std::optional<Elem> FiniteGroup::subconjugator(SubId h, SubId k) const {
  const auto& t = conj_table(h);
  if (subgroup(k).order() % subgroup(h).order() != 0) return std::nullopt;
  for (Elem a = 0; a < order(); ++a)
    if (contained_[k][t[a]]) return a;
  return std::nullopt;
}

SubId FiniteGroup::intersect(SubId a, SubId b) const {
  check_id(a);
  check_id(b);
  if (contained_[b][a]) return a;
  if (contained_[a][b]) return b;
  auto key = std::minmax(a, b);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = intersections_.find(key);
    if (it != intersections_.end()) return it->second;
  }
  std::vector<Elem> c;
  std::set_intersection(subgroups_[a].elements.begin(), subgroups_[a].elements.end(),
                        subgroups_[b].elements.begin(), subgroups_[b].elements.end(), std::back_inserter(c));
  SubId r = subgroup_index_.at(c);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  intersections_[key] = r;
  return r;
}

SubId FiniteGroup::normalizer(SubId h) const {
  const auto& t = conj_table(h);
  std::vector<Elem> n;
  for (Elem a = 0; a < order(); ++a)
    if (t[a] == h) n.push_back(a);
  return subgroup_index_.at(n);
}

const CosetTable& FiniteGroup::cosets(SubId h) const {
  check_id(h);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto& slot = coset_tables_[h];
  if (!slot) {
    auto t = std::make_unique<CosetTable>();
    t->subgroup = h;
    const std::uint32_t unset = ~std::uint32_t{0};
    t->coset_of.assign(order(), unset);
    for (Elem g = 0; g < order(); ++g) {
      if (t->coset_of[g] != unset) continue;
      auto c = static_cast<std::uint32_t>(t->reps.size());
      t->reps.push_back(g);
      for (Elem x : subgroups_[h].elements) t->coset_of[mul(g, x)] = c;
    }
    const std::size_t idx = t->reps.size();
    if (order() * idx > 50'000'000) throw BoundExceeded("coset action table too large");
    t->action.resize(order() * idx);
    for (Elem g = 0; g < order(); ++g)
      for (std::size_t c = 0; c < idx; ++c) t->action[g * idx + c] = t->coset_of[mul(g, t->reps[c])];
    slot = std::move(t);
  }
  return *slot;
}

DoubleCosets FiniteGroup::double_cosets(SubId a, Elem g, SubId k, SubId b, Elem h) const {
  if (g >= order() || h >= order()) throw InputError("UnknownElement", "element index out of range");
  SubId ag = conjugate(a, g), bh = conjugate(b, h);
  if (!is_subgroup(ag, k) || !is_subgroup(bh, k))
    throw InputError("NotSubgroup", "conjugated subgroups must lie in the ambient subgroup");
  const Subgroup& K = subgroups_[k];
  const auto& left = subgroups_[ag].generators;
  const auto& right = subgroups_[bh].generators;
  std::vector<bool> seen(order());
  DoubleCosets out;
  std::vector<Elem> stack;
  for (Elem x : K.elements) {
    if (seen[x]) continue;
    out.representatives.push_back(x);
    std::size_t size = 0;
    seen[x] = true;
    stack.push_back(x);
    while (!stack.empty()) {
      Elem y = stack.back();
      stack.pop_back();
      ++size;
      for (Elem s : left) {
        Elem z = mul(s, y);
        if (!seen[z]) {
          seen[z] = true;
          stack.push_back(z);
        }
      }
      for (Elem t : right) {
        Elem z = mul(y, t);
        if (!seen[z]) {
          seen[z] = true;
          stack.push_back(z);
        }
      }
    }
    out.sizes.push_back(size);
  }
  return out;
}

GroupPtr FiniteGroup::weyl_group(SubId h) const {
  SubId n = normalizer(h);
  const CosetTable& ct = cosets(h);
  std::vector<std::uint32_t> local(ct.index(), ~std::uint32_t{0});
  std::uint32_t m = 0;
  for (std::size_t c = 0; c < ct.index(); ++c)
    if (subgroups_[n].member[ct.reps[c]]) local[c] = m++;
  std::vector<Perm> gens;
  for (Elem x : subgroups_[n].generators) {
    Perm p(m);
    for (std::size_t c = 0; c < ct.index(); ++c)
      if (local[c] != ~std::uint32_t{0}) p[local[c]] = local[ct.act(x, static_cast<std::uint32_t>(c))];
    gens.push_back(std::move(p));
  }
  std::string nm = (name_.empty() ? std::string("G") : name_) + "/W" + std::to_string(h);
  return create(m, std::move(gens), nm, limits_);
}

GroupPtr cyclic_group(std::size_t n) {
  if (n == 0) throw InputError("InvalidGroup", "cyclic group of order 0");
  if (n == 1) return trivial_group();
  Perm r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>((i + 1) % n);
  return FiniteGroup::create(n, {r}, "C" + std::to_string(n));
}

GroupPtr dihedral_group(std::size_t n) {
  if (n < 3) throw InputError("InvalidGroup", "dihedral group needs n >= 3");
  Perm r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<std::uint32_t>((i + 1) % n);
    s[i] = static_cast<std::uint32_t>((n - i) % n);
  }
  return FiniteGroup::create(n, {r, s}, "D" + std::to_string(n));
}

GroupPtr symmetric_group(std::size_t n) {
  if (n == 0) throw InputError("InvalidGroup", "symmetric group of degree 0");
  if (n == 1) return trivial_group();
  Perm t = identity_perm(n), c(n);
  std::swap(t[0], t[1]);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint32_t>((i + 1) % n);
  return FiniteGroup::create(n, {t, c}, "S" + std::to_string(n));
}

GroupPtr alternating_group(std::size_t n) {
  if (n < 3) return FiniteGroup::create(std::max<std::size_t>(n, 1), {}, "A" + std::to_string(n));
  std::vector<Perm> gens;
  for (std::size_t i = 2; i < n; ++i) {
    Perm p = identity_perm(n);
    p[0] = 1;
    p[1] = static_cast<std::uint32_t>(i);
    p[i] = 0;
    gens.push_back(p);
  }
  return FiniteGroup::create(n, gens, "A" + std::to_string(n));
}

GroupPtr quaternion_group() {
  // regular representation: i = (0 1 3 6)(2 5 7 4), j = (0 2 3 7)(1 4 6 5)
  Perm i{1, 3, 5, 6, 2, 7, 0, 4};
  Perm j{2, 4, 3, 7, 6, 1, 5, 0};
  return FiniteGroup::create(8, {i, j}, "Q8");
}

GroupPtr trivial_group() { return FiniteGroup::create(1, {}, "trivial"); }

GroupPtr named_group(const std::string& raw) {
  std::string name;
  for (char ch : raw) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (name == "trivial" || name == "1") return trivial_group();
  if (name == "q8") return quaternion_group();
  if (name.size() >= 2 && std::isdigit(static_cast<unsigned char>(name[1]))) {
    std::size_t n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoul(name.substr(1), &pos);
      if (pos != name.size() - 1) n = 0;
    } catch (const std::exception&) {
      n = 0;
    }
    if (n > 0) switch (name[0]) {
        case 'c':
          return cyclic_group(n);
        case 's':
          return symmetric_group(n);
        case 'd':
          return dihedral_group(n);
        case 'a':
          return alternating_group(n);
        default:
          break;
      }
  }
  throw InputError("UnknownGroup", "no built-in group named '" + raw + "'");
}

}  // namespace mackeylab
