#include "mackeylab/tower.hpp"

#include <algorithm>
#include <deque>

#include "mackeylab/error.hpp"

namespace mackeylab {

Homomorphism::Homomorphism(GroupPtr source, GroupPtr target, const std::vector<Elem>& generator_images)
    : source_(std::move(source)), target_(std::move(target)) {
  const auto& gens = source_->generators();
  if (generator_images.size() != gens.size())
    throw InputError("NotHomomorphism", "expected " + std::to_string(gens.size()) + " generator images");
  for (Elem y : generator_images)
    if (y >= target_->order()) throw InputError("NotHomomorphism", "image outside the target group");
  constexpr Elem unset = ~Elem{0};
  table_.assign(source_->order(), unset);
  table_[source_->identity()] = target_->identity();
  std::deque<Elem> queue{source_->identity()};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem sx = source_->mul(gens[i], x);
      Elem img = target_->mul(generator_images[i], table_[x]);
      if (table_[sx] == unset) {
        table_[sx] = img;
        queue.push_back(sx);
      } else if (table_[sx] != img) {
        throw InputError("NotHomomorphism", "generator images do not respect the relations of " + source_->name());
      }
    }
  }
}

bool Homomorphism::surjective() const {
  std::vector<bool> hit(target_->order());
  for (Elem y : table_) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SubId Homomorphism::image(SubId h) const {
  std::vector<Elem> gens;
  for (Elem g : source_->subgroup(h).generators) gens.push_back(table_[g]);
  return target_->generated(gens);
}

SubId Homomorphism::preimage(SubId k) const {
  const auto& sub = target_->subgroup(k);
  std::vector<Elem> els;
  for (Elem g = 0; g < source_->order(); ++g)
    if (sub.contains(table_[g])) els.push_back(g);
  return *source_->find_subgroup(els);
}

Tower::Tower(std::vector<GroupPtr> levels, const std::vector<std::vector<Elem>>& projections) : levels_(std::move(levels)) {
  if (levels_.empty()) throw InputError("EmptyTower", "a tower needs at least one level");
  if (levels_.size() - 1 > kMaxDepth)
    throw BoundExceeded("tower depth " + std::to_string(levels_.size() - 1) + " exceeds " + std::to_string(kMaxDepth));
  if (projections.size() + 1 != levels_.size())
    throw InputError("ProjectionCount", "expected " + std::to_string(levels_.size() - 1) + " projections");
  for (std::size_t n = 0; n + 1 < levels_.size(); ++n) {
    projections_.emplace_back(levels_[n + 1], levels_[n], projections[n]);
    if (!projections_.back().surjective())
      throw InputError("NotSurjective", "projection from level " + std::to_string(n + 1) + " is not onto");
  }
  mackey_.resize(levels_.size());
}

TowerPtr Tower::two_adic(std::size_t depth) {
  std::vector<GroupPtr> levels;
  std::vector<std::vector<Elem>> proj;
  for (std::size_t n = 0; n <= depth; ++n) levels.push_back(n == 0 ? trivial_group() : cyclic_group(std::size_t{1} << n));
  for (std::size_t n = 0; n < depth; ++n) {
    const auto& src = levels[n + 1];
    const auto& dst = levels[n];
    // a generator of C_{2^{n+1}} maps to a generator of C_{2^n}
    std::vector<Elem> img;
    for (std::size_t i = 0; i < src->generators().size(); ++i)
      img.push_back(dst->generators().empty() ? dst->identity() : dst->generators()[0]);
    proj.push_back(img);
  }
  return std::make_shared<Tower>(std::move(levels), proj);
}

TowerPtr Tower::constant(GroupPtr g, std::size_t depth) {
  std::vector<GroupPtr> levels(depth + 1, g);
  std::vector<std::vector<Elem>> proj(depth, g->generators());
  return std::make_shared<Tower>(std::move(levels), proj);
}

const GroupPtr& Tower::level(std::size_t n) const {
  if (n >= levels_.size())
    throw InputError("DepthExceeded", "level " + std::to_string(n) + " beyond tower depth " + std::to_string(depth()));
  return levels_[n];
}

const MackeyCategory& Tower::mackey(std::size_t n) const {
  const auto& g = level(n);
  std::lock_guard lock(mutex_);
  if (!mackey_[n]) mackey_[n] = std::make_shared<MackeyCategory>(MackeySystem::full(g));
  return *mackey_[n];
}

ClosedThread ClosedThread::whole(const Tower& t) {
  ClosedThread k;
  for (std::size_t n = 0; n <= t.depth(); ++n) k.groups.push_back(t.level(n)->whole());
  return k;
}

ClosedThread ClosedThread::trivial(const Tower& t) {
  return ClosedThread{std::vector<SubId>(t.depth() + 1, 0)};
}

void ClosedThread::check(const Tower& t) const {
  if (groups.size() != t.depth() + 1)
    throw InputError("IncompatibleThread", "thread has " + std::to_string(groups.size()) + " levels, tower has " +
                                               std::to_string(t.depth() + 1));
  for (std::size_t n = 0; n < groups.size(); ++n)
    if (groups[n] >= t.level(n)->subgroup_count())
      throw InputError("IncompatibleThread", "unknown subgroup id at level " + std::to_string(n));
  for (std::size_t n = 0; n + 1 < groups.size(); ++n)
    if (t.projection(n).image(groups[n + 1]) != groups[n])
      throw InputError("IncompatibleThread", "level " + std::to_string(n + 1) + " does not project onto level " +
                                                 std::to_string(n));
}

std::vector<SubId> open_neighborhoods(const Tower& t, const ClosedThread& k, std::size_t n) {
  const auto& g = t.level(n);
  k.check(t);
  std::vector<SubId> out;
  for (SubId u = 0; u < g->subgroup_count(); ++u)
    if (g->is_subgroup(k.groups[n], u)) out.push_back(u);
  return out;
}

IntMatrix connecting_map(const MackeyCategory& m, SubId v, SubId u, SubId l) {
  const auto& g = *m.group();
  if (!g.is_subgroup(v, u)) throw InputError("NotSubgroup", "connecting map needs V <= U");
  BasicSpan res{v, u, v, g.identity(), g.identity()};
  const auto& basis = m.hom_basis(u, l);
  IntMatrix out(m.hom_rank(v, l), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) out.set_column(j, m.compose_basic(basis[j], res));
  return out;
}

std::vector<std::size_t> ColimitReport::growth() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n + 1 < ranks.size(); ++n) out.push_back(ranks[n + 1] - std::min(ranks[n + 1], ranks[n]));
  return out;
}

namespace {

bool unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  if (a.rows() == 0) return true;
  return Presentation(a.rows(), a).group().is_zero();
}

}  // namespace

ColimitReport colim_burnside(const Tower& t, const ClosedThread& k, std::size_t depth) {
  t.level(depth);
  k.check(t);
  ColimitReport rep;
  for (std::size_t n = 0; n <= depth; ++n) {
    const auto& m = t.mackey(n);
    rep.labels.push_back({});
    for (const auto& s : m.hom_basis(k.groups[n], kTerminal)) rep.labels.back().push_back(s.middle);
    rep.ranks.push_back(rep.labels.back().size());
  }
  for (std::size_t n = 0; n < depth; ++n) {
    const auto& m = t.mackey(n + 1);
    const auto& g = *t.level(n + 1);
    const auto& pi = t.projection(n);
    SubId up = pi.preimage(k.groups[n]);
    SubId v = k.groups[n + 1];
    BasicSpan res{v, up, v, g.identity(), g.identity()};
    IntMatrix c(rep.ranks[n + 1], rep.ranks[n]);
    for (std::size_t j = 0; j < rep.ranks[n]; ++j) {
      // Z_L |-> Z_{pi^{-1} L} at level n+1, restricted to K_{n+1}
      BasicSpan inflated{up, kTerminal, pi.preimage(rep.labels[n][j]), g.identity(), g.identity()};
      c.set_column(j, m.compose_basic(inflated, res));
    }
    rep.maps.push_back(std::move(c));
  }
  for (std::size_t n = 0; n + 1 < rep.maps.size(); ++n)
    if (unimodular(rep.maps[n]) && unimodular(rep.maps[n + 1])) {
      rep.stabilized = true;
      rep.stable_from = n;
      break;
    }
  return rep;
}

bool ThreadEvaluation::ok() const {
  for (const auto& level : exact)
    for (bool e : level)
      if (!e) return false;
  return true;
}

std::vector<Resolution> resolve_levels(const Tower& t, std::size_t depth, std::size_t steps, const ResolveOptions& opts) {
  t.level(depth);
  std::vector<Resolution> out;
  for (std::size_t n = 0; n <= depth; ++n) out.push_back(resolve(t.mackey(n).burnside_module(), steps, opts));
  return out;
}

ThreadEvaluation evaluate_resolution_at_thread(const Tower& t, const std::vector<Resolution>& r, const ClosedThread& k,
                                               std::size_t depth) {
  t.level(depth);
  k.check(t);
  if (r.size() < depth + 1) throw InputError("IncompatibleResolution", "need one resolution per level");
  ThreadEvaluation out;
  for (std::size_t n = 0; n <= depth; ++n) {
    const auto& m = t.mackey(n);
    const Resolution& res = r[n];
    if (res.target->category() != m.skeleton())
      throw InputError("IncompatibleResolution", "resolution at level " + std::to_string(n) + " is over another category");
    auto b = m.burnside_module();
    for (std::size_t x = 0; x < m.objects().size(); ++x)
      if (!(res.target->value(x).group() == b->value(x).group()))
        throw InputError("IncompatibleResolution", "level " + std::to_string(n) + " does not resolve B");
    const auto& g = *t.level(n);
    std::size_t x = m.object_index(g.class_rep(g.class_of(k.groups[n])));
    out.ranks.push_back({});
    out.exact.push_back({});
    for (const auto& p : res.modules) out.ranks.back().push_back(p.module->generators(x));
    const std::size_t last = res.terminated ? res.modules.size() : res.modules.size() - 1;
    for (std::size_t d = 0; d < last; ++d) {
      const Presentation& mid = res.modules[d].module->value(x);
      IntMatrix incoming = d < res.differentials.size() ? res.differentials[d].components[x] : IntMatrix(mid.generators, 0);
      const ModuleMap& outgoing = d == 0 ? res.augmentation : res.differentials[d - 1];
      const Presentation& next = outgoing.target->value(x);
      bool e = next.vanishes(outgoing.components[x] * incoming) &&
               is_exact_at(incoming, mid, outgoing.components[x], next);
      if (d == 0) e = e && res.augmentation.is_surjective();
      out.exact.back().push_back(e);
    }
  }
  return out;
}

}  // namespace mackeylab
