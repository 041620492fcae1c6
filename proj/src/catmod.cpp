#include "mackeylab/catmod.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "mackeylab/error.hpp"

namespace mackeylab {

SkeletonCategory::SkeletonCategory(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> ranks,
                                   std::vector<std::size_t> identities, const ComposeFn& compose)
    : labels_(std::move(labels)), ranks_(std::move(ranks)), identities_(std::move(identities)) {
  const std::size_t n = labels_.size();
  if (ranks_.size() != n || identities_.size() != n) throw InvariantViolation("skeleton: inconsistent sizes");
  offsets_.assign(1, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (ranks_[x].size() != n) throw InvariantViolation("skeleton: rank table is not square");
    for (std::size_t y = 0; y < n; ++y) offsets_.push_back(offsets_.back() + ranks_[x][y]);
    if (identities_[x] >= ranks_[x][x]) throw InvariantViolation("skeleton: identity out of range");
  }
  table_.resize(n * n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto& slot = table_[(x * n + y) * n + z];
        const std::size_t rxy = ranks_[x][y], ryz = ranks_[y][z];
        slot.resize(rxy * ryz);
        for (std::size_t f = 0; f < ryz; ++f)
          for (std::size_t g = 0; g < rxy; ++g) {
            IntVector c = compose(x, y, z, f, g);
            if (c.size() != ranks_[x][z]) throw InvariantViolation("skeleton: composition has the wrong length");
            slot[f * rxy + g] = std::move(c);
          }
      }
}

const IntVector& SkeletonCategory::compose(std::size_t x, std::size_t y, std::size_t z, std::size_t f,
                                           std::size_t g) const {
  const std::size_t n = size();
  return table_[(x * n + y) * n + z][f * ranks_[x][y] + g];
}

SkeletonCategory::MorphismRef SkeletonCategory::morphism(std::size_t global) const {
  if (global >= morphism_count()) throw InputError("UnknownMorphism", "morphism id " + std::to_string(global) + " out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  std::size_t pair = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {pair / size(), pair % size(), global - offsets_[pair]};
}

std::size_t SkeletonCategory::find_object(const std::string& label) const {
  for (std::size_t x = 0; x < size(); ++x)
    if (labels_[x] == label) return x;
  throw InputError("UnknownObject", "no object labelled '" + label + "'");
}

void SkeletonCategory::check_axioms() const {
  const std::size_t n = size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t g = 0; g < ranks_[x][y]; ++g) {
        IntVector unit = unit_vector(ranks_[x][y], g);
        if (compose(x, y, y, identities_[y], g) != unit || compose(x, x, y, g, identities_[x]) != unit)
          throw InvariantViolation("identity law fails at " + labels_[x] + " -> " + labels_[y]);
      }
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          for (std::size_t h = 0; h < ranks_[w][x]; ++h)
            for (std::size_t g = 0; g < ranks_[x][y]; ++g)
              for (std::size_t f = 0; f < ranks_[y][z]; ++f) {
                // (f o g) o h  vs  f o (g o h)
                IntVector left(ranks_[w][z]), right(ranks_[w][z]);
                const IntVector& fg = compose(x, y, z, f, g);
                for (std::size_t k = 0; k < fg.size(); ++k)
                  if (sgn(fg[k]) != 0) {
                    const IntVector& t = compose(w, x, z, k, h);
                    for (std::size_t i = 0; i < t.size(); ++i) left[i] += fg[k] * t[i];
                  }
                const IntVector& gh = compose(w, x, y, g, h);
                for (std::size_t k = 0; k < gh.size(); ++k)
                  if (sgn(gh[k]) != 0) {
                    const IntVector& t = compose(w, y, z, f, k);
                    for (std::size_t i = 0; i < t.size(); ++i) right[i] += gh[k] * t[i];
                  }
                if (left != right)
                  throw InvariantViolation("composition is not associative on " + labels_[w] + " -> " + labels_[x] + " -> " +
                                           labels_[y] + " -> " + labels_[z]);
              }
}

namespace {

// Membership in the relation lattice of each value, built lazily.
class RelationTest {
 public:
  explicit RelationTest(const std::vector<Presentation>& values) : values_(values), solvers_(values.size()) {}

  bool vanishes(std::size_t x, const IntMatrix& m) {
    if (m.is_zero()) return true;
    auto& s = solvers_[x];
    if (!s) {
      IntMatrix b = values_[x].relations.cols() ? lattice_basis(values_[x].relations) : IntMatrix(values_[x].generators, 0);
      s.emplace(b.cols() ? LatticeSolver(b) : LatticeSolver());
    }
    if (s->dimension() == 0) return false;
    return s->contains_columns(m);
  }

 private:
  const std::vector<Presentation>& values_;
  std::vector<std::optional<LatticeSolver>> solvers_;
};

}  // namespace

CatModule::CatModule(CatPtr cat, std::vector<Presentation> values, Actions actions)
    : cat_(std::move(cat)), values_(std::move(values)), actions_(std::move(actions)) {
  const std::size_t n = cat_->size();
  if (values_.size() != n || actions_.size() != n) throw InputError("ShapeMismatch", "module has the wrong number of objects");
  for (std::size_t x = 0; x < n; ++x) {
    if (actions_[x].size() != n) throw InputError("ShapeMismatch", "module action table has the wrong shape");
    for (std::size_t y = 0; y < n; ++y) {
      if (actions_[x][y].size() != cat_->rank(x, y))
        throw InputError("ShapeMismatch", "module has " + std::to_string(actions_[x][y].size()) + " actions for hom(" +
                                              cat_->label(x) + ", " + cat_->label(y) + ")");
      for (const auto& m : actions_[x][y])
        if (m.rows() != values_[x].generators || m.cols() != values_[y].generators)
          throw InputError("ShapeMismatch", "action matrix for hom(" + cat_->label(x) + ", " + cat_->label(y) +
                                                ") has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
  }
}

CatModule CatModule::zero(CatPtr cat) {
  const std::size_t n = cat->size();
  Actions a(n, std::vector<std::vector<IntMatrix>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) a[x][y].assign(cat->rank(x, y), IntMatrix(0, 0));
  return CatModule(cat, std::vector<Presentation>(n), std::move(a));
}

IntMatrix CatModule::action_of(std::size_t x, std::size_t y, const IntVector& coeffs) const {
  IntMatrix m(generators(x), generators(y));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (sgn(coeffs[i]) != 0) m.accumulate(0, 0, actions_[x][y][i], coeffs[i]);
  return m;
}

bool CatModule::is_zero() const {
  for (const auto& v : values_)
    if (!v.group().is_zero()) return false;
  return true;
}

std::size_t CatModule::total_generators() const {
  std::size_t t = 0;
  for (const auto& v : values_) t += v.generators;
  return t;
}

void CatModule::check() const {
  const auto& c = *cat_;
  const std::size_t n = c.size();
  RelationTest rel(values_);
  for (std::size_t x = 0; x < n; ++x) {
    IntMatrix d = actions_[x][x][c.identity(x)] - IntMatrix::identity(generators(x));
    if (!rel.vanishes(x, d)) throw InvariantViolation("identity of " + c.label(x) + " does not act as the identity");
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < c.rank(x, y); ++i)
        if (!rel.vanishes(x, actions_[x][y][i] * values_[y].relations))
          throw InvariantViolation("morphism " + std::to_string(c.morphism_index(x, y, i)) + " does not preserve relations");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t g = 0; g < c.rank(x, y); ++g)
          for (std::size_t f = 0; f < c.rank(y, z); ++f) {
            IntMatrix lhs = action_of(x, z, c.compose(x, y, z, f, g));
            IntMatrix rhs = actions_[x][y][g] * actions_[y][z][f];
            if (!rel.vanishes(x, lhs - rhs))
              throw InvariantViolation("module is not functorial: M(f o g) != M(g) M(f) for g = " +
                                       std::to_string(c.morphism_index(x, y, g)) + ", f = " +
                                       std::to_string(c.morphism_index(y, z, f)));
          }
}

std::size_t FreeModule::generator_coordinate(std::size_t j) const {
  const std::size_t y = generators.at(j);
  return offsets[y][j] + module->category()->identity(y);
}

FreeModule free_module(const CatPtr& cat, const std::vector<std::size_t>& generators) {
  const auto& c = *cat;
  const std::size_t n = c.size();
  for (auto y : generators)
    if (y >= n) throw InputError("UnknownObject", "object " + std::to_string(y) + " is not in the category");
  FreeModule fm;
  fm.generators = generators;
  fm.offsets.assign(n, std::vector<std::size_t>(generators.size() + 1, 0));
  std::vector<Presentation> values(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < generators.size(); ++j) fm.offsets[x][j + 1] = fm.offsets[x][j] + c.rank(x, generators[j]);
    values[x] = Presentation(fm.offsets[x].back());
  }
  CatModule::Actions actions(n, std::vector<std::vector<IntMatrix>>(n));
  for (std::size_t xp = 0; xp < n; ++xp)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < c.rank(xp, x); ++i) {
        IntMatrix m(values[xp].generators, values[x].generators);
        for (std::size_t j = 0; j < generators.size(); ++j) {
          const std::size_t y = generators[j];
          for (std::size_t psi = 0; psi < c.rank(x, y); ++psi) {
            const IntVector& comp = c.compose(xp, x, y, psi, i);
            for (std::size_t k = 0; k < comp.size(); ++k)
              if (sgn(comp[k]) != 0) m(fm.offsets[xp][j] + k, fm.offsets[x][j] + psi) = comp[k];
          }
        }
        actions[xp][x].push_back(std::move(m));
      }
  fm.module = std::make_shared<CatModule>(cat, std::move(values), std::move(actions));
  return fm;
}

void ModuleMap::check() const {
  const auto& c = *source->category();
  const std::size_t n = c.size();
  if (target->category() != source->category()) throw InputError("CategoryMismatch", "map between modules over different categories");
  if (components.size() != n) throw InputError("ShapeMismatch", "map has the wrong number of components");
  for (std::size_t x = 0; x < n; ++x)
    if (components[x].rows() != target->generators(x) || components[x].cols() != source->generators(x))
      throw InputError("ShapeMismatch", "map component at " + c.label(x) + " has the wrong shape");
  RelationTest rel(target->values());
  for (std::size_t x = 0; x < n; ++x)
    if (!rel.vanishes(x, components[x] * source->value(x).relations))
      throw InvariantViolation("NotNatural: component at " + c.label(x) + " does not respect relations");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < c.rank(x, y); ++i) {
        IntMatrix d = components[x] * source->action(x, y, i) - target->action(x, y, i) * components[y];
        if (!rel.vanishes(x, d))
          throw InvariantViolation("NotNatural: square for morphism " + std::to_string(c.morphism_index(x, y, i)) + " (" +
                                   c.label(x) + " -> " + c.label(y) + ") does not commute");
      }
}

bool ModuleMap::is_natural() const {
  try {
    check();
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool ModuleMap::is_surjective() const {
  for (std::size_t x = 0; x < components.size(); ++x) {
    IntMatrix all = IntMatrix::hstack(components[x], target->value(x).relations);
    if (!cokernel_group(target->generators(x), all).is_zero()) return false;
  }
  return true;
}

bool ModuleMap::is_zero() const {
  RelationTest rel(target->values());
  for (std::size_t x = 0; x < components.size(); ++x)
    if (!rel.vanishes(x, components[x])) return false;
  return true;
}

ModuleMap identity_map(const ModulePtr& m) {
  ModuleMap f{m, m, {}};
  for (std::size_t x = 0; x < m->category()->size(); ++x) f.components.push_back(IntMatrix::identity(m->generators(x)));
  return f;
}

ModuleMap zero_map(const ModulePtr& source, const ModulePtr& target) {
  ModuleMap f{source, target, {}};
  for (std::size_t x = 0; x < source->category()->size(); ++x)
    f.components.emplace_back(target->generators(x), source->generators(x));
  return f;
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (g.target->category() != f.source->category()) throw InputError("ObjectMismatch", "maps are not composable");
  ModuleMap h{g.source, f.target, {}};
  for (std::size_t x = 0; x < f.components.size(); ++x) h.components.push_back(f.components[x] * g.components[x]);
  return h;
}

ModuleMap yoneda_map(const FreeModule& free, const ModulePtr& target, const std::vector<IntVector>& images) {
  const auto& c = *target->category();
  if (images.size() != free.generators.size()) throw InputError("ShapeMismatch", "one image per generator required");
  ModuleMap f{free.module, target, {}};
  for (std::size_t z = 0; z < c.size(); ++z) {
    IntMatrix m(target->generators(z), free.module->generators(z));
    for (std::size_t j = 0; j < images.size(); ++j) {
      const std::size_t y = free.generators[j];
      if (images[j].size() != target->generators(y)) throw InputError("ShapeMismatch", "generator image has the wrong length");
      for (std::size_t psi = 0; psi < c.rank(z, y); ++psi) {
        IntVector col = target->action(z, y, psi) * images[j];
        for (std::size_t r = 0; r < col.size(); ++r) m(r, free.offsets[z][j] + psi) = col[r];
      }
    }
    f.components.push_back(std::move(m));
  }
  return f;
}

bool maps_equal(const ModuleMap& f, const ModuleMap& g) {
  RelationTest rel(f.target->values());
  for (std::size_t x = 0; x < f.components.size(); ++x)
    if (!rel.vanishes(x, f.components[x] - g.components[x])) return false;
  return true;
}

SubmoduleResult kernel(const ModuleMap& f) {
  const auto& cat = f.source->category();
  const std::size_t n = cat->size();
  std::vector<IntMatrix> basis(n);
  std::vector<LatticeSolver> solvers(n);
  std::vector<Presentation> values(n);
  for (std::size_t x = 0; x < n; ++x) {
    basis[x] = preimage_lattice(f.components[x], f.target->value(x).relations);
    if (basis[x].cols()) solvers[x] = LatticeSolver(basis[x]);
    const IntMatrix& rel = f.source->value(x).relations;
    IntMatrix coords(basis[x].cols(), 0);
    if (rel.cols() && !rel.is_zero() && basis[x].cols()) coords = solvers[x].solve_columns(rel);
    values[x] = Presentation(basis[x].cols(), coords);
  }
  CatModule::Actions actions(n, std::vector<std::vector<IntMatrix>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < cat->rank(x, y); ++i) {
        IntMatrix img = f.source->action(x, y, i) * basis[y];
        actions[x][y].push_back(basis[x].cols() && img.cols() ? solvers[x].solve_columns(img)
                                                              : IntMatrix(basis[x].cols(), basis[y].cols()));
      }
  auto k = std::make_shared<CatModule>(cat, std::move(values), std::move(actions));
  return {k, ModuleMap{k, f.source, std::move(basis)}};
}

SubmoduleResult cokernel(const ModuleMap& f) {
  const auto& cat = f.target->category();
  const std::size_t n = cat->size();
  std::vector<Presentation> values(n);
  ModuleMap proj{nullptr, f.target, {}};
  for (std::size_t x = 0; x < n; ++x) {
    values[x] = Presentation(f.target->generators(x), IntMatrix::hstack(f.target->value(x).relations, f.components[x]));
    proj.components.push_back(IntMatrix::identity(f.target->generators(x)));
  }
  auto c = std::make_shared<CatModule>(cat, std::move(values), f.target->actions());
  proj.target = c;
  proj.source = f.target;
  return {c, std::move(proj)};
}

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b) {
  const auto& cat = a->category();
  if (b->category() != cat) throw InputError("CategoryMismatch", "direct sum over different categories");
  const std::size_t n = cat->size();
  std::vector<Presentation> values(n);
  for (std::size_t x = 0; x < n; ++x)
    values[x] = Presentation(a->generators(x) + b->generators(x),
                             IntMatrix::block_diagonal({a->value(x).relations, b->value(x).relations}));
  CatModule::Actions actions(n, std::vector<std::vector<IntMatrix>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < cat->rank(x, y); ++i)
        actions[x][y].push_back(IntMatrix::block_diagonal({a->action(x, y, i), b->action(x, y, i)}));
  return std::make_shared<CatModule>(cat, std::move(values), std::move(actions));
}

namespace {

// Columns M(psi) v for all psi in hom(z, x).
IntMatrix orbit_columns(const CatModule& m, std::size_t z, std::size_t x, const IntVector& v) {
  const auto& c = *m.category();
  IntMatrix out(m.generators(z), c.rank(z, x));
  for (std::size_t psi = 0; psi < c.rank(z, x); ++psi) out.set_column(psi, m.action(z, x, psi) * v);
  return out;
}

struct Chosen {
  std::size_t object;
  IntVector vector;
};

bool covers(const CatModule& m, const std::vector<Chosen>& gens, std::size_t skip) {
  const std::size_t n = m.category()->size();
  for (std::size_t z = 0; z < n; ++z) {
    IntMatrix img = m.value(z).relations;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != skip) img = IntMatrix::hstack(img, orbit_columns(m, z, gens[j].object, gens[j].vector));
    if (!cokernel_group(m.generators(z), img).is_zero()) return false;
  }
  return true;
}

std::size_t free_rank(const SkeletonCategory& c, const std::vector<Chosen>& gens) {
  std::size_t r = 0;
  for (const auto& g : gens)
    for (std::size_t z = 0; z < c.size(); ++z) r += c.rank(z, g.object);
  return r;
}

}  // namespace

Cover free_cover(const ModulePtr& mp, const ResolveOptions& opts) {
  const CatModule& m = *mp;
  const auto& c = *m.category();
  const std::size_t n = c.size();
  std::vector<Chosen> chosen;
  if (opts.strategy == CoverStrategy::Naive) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < m.generators(x); ++i) chosen.push_back({x, unit_vector(m.generators(x), i)});
    if (free_rank(c, chosen) > opts.max_rank)
      throw BoundExceeded("free cover rank " + std::to_string(free_rank(c, chosen)) + " exceeds " + std::to_string(opts.max_rank));
  } else {
    std::vector<IntMatrix> image(n);
    for (std::size_t z = 0; z < n; ++z) image[z] = lattice_basis(m.value(z).relations);
    for (;;) {
      std::vector<std::size_t> open;
      for (std::size_t z = 0; z < n; ++z)
        if (!cokernel_group(m.generators(z), image[z]).is_zero()) open.push_back(z);
      if (open.empty()) break;
      // score: (rank gain, value size, -object, -index), lexicographically largest wins
      std::tuple<std::size_t, std::size_t, long, long> best{0, 0, 1, 1};
      std::optional<Chosen> pick;
      for (std::size_t x : open) {
        std::optional<LatticeSolver> solver;
        if (image[x].cols()) solver.emplace(image[x]);
        for (std::size_t i = 0; i < m.generators(x); ++i) {
          IntVector e = unit_vector(m.generators(x), i);
          if (solver && solver->contains(e)) continue;
          std::size_t gain = 0;
          for (std::size_t z = 0; z < n; ++z) {
            if (c.rank(z, x) == 0) continue;
            IntMatrix cols = orbit_columns(m, z, x, e);
            gain += rank_mod_p(IntMatrix::hstack(image[z], cols)) - image[z].cols();
          }
          std::tuple<std::size_t, std::size_t, long, long> score{gain, m.generators(x), -static_cast<long>(x),
                                                                 -static_cast<long>(i)};
          if (!pick || score > best) {
            best = score;
            pick = Chosen{x, e};
          }
        }
      }
      if (!pick) throw InvariantViolation("free cover: no generator candidate for a nonzero cokernel");
      for (std::size_t z = 0; z < n; ++z)
        if (c.rank(z, pick->object))
          image[z] = lattice_basis(IntMatrix::hstack(image[z], orbit_columns(m, z, pick->object, pick->vector)));
      chosen.push_back(std::move(*pick));
      if (free_rank(c, chosen) > opts.max_rank)
        throw BoundExceeded("free cover rank exceeds " + std::to_string(opts.max_rank));
    }
    for (std::size_t j = chosen.size(); j-- > 0;)
      if (covers(m, chosen, j)) chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(j));
  }
  std::vector<std::size_t> objs;
  std::vector<IntVector> vecs;
  for (const auto& ch : chosen) {
    objs.push_back(ch.object);
    vecs.push_back(ch.vector);
  }
  FreeModule fm = free_module(m.category(), objs);
  ModuleMap map = yoneda_map(fm, mp, vecs);
  return {std::move(fm), std::move(map)};
}

Resolution resolve(const ModulePtr& m, std::size_t steps, const ResolveOptions& opts) {
  Resolution r;
  r.target = m;
  Cover c = free_cover(m, opts);
  r.modules.push_back(c.free);
  r.augmentation = c.map;
  SubmoduleResult k = kernel(c.map);
  r.syzygies.push_back(k.module);
  if (k.module->is_zero()) {
    r.terminated = true;
    return r;
  }
  ModuleMap incl = k.map;
  for (std::size_t step = 1; step <= steps; ++step) {
    Cover next = free_cover(k.module, opts);
    r.differentials.push_back(compose(incl, next.map));
    r.modules.push_back(next.free);
    k = kernel(next.map);
    r.syzygies.push_back(k.module);
    incl = k.map;
    if (k.module->is_zero()) {
      r.terminated = true;
      break;
    }
  }
  return r;
}

void Resolution::check() const {
  const auto& c = *target->category();
  augmentation.check();
  if (!augmentation.is_surjective()) throw InvariantViolation("augmentation is not surjective");
  for (const auto& d : differentials) d.check();
  if (!differentials.empty() && !compose(augmentation, differentials[0]).is_zero())
    throw InvariantViolation("augmentation o d_1 != 0");
  for (std::size_t k = 1; k < differentials.size(); ++k)
    if (!compose(differentials[k - 1], differentials[k]).is_zero())
      throw InvariantViolation("d_" + std::to_string(k) + " o d_" + std::to_string(k + 1) + " != 0");
  for (std::size_t k = 0; k < modules.size(); ++k) {
    if (k + 1 == modules.size() && !terminated) break;
    for (std::size_t x = 0; x < c.size(); ++x) {
      const Presentation& mid = modules[k].module->value(x);
      IntMatrix incoming = k < differentials.size() ? differentials[k].components[x] : IntMatrix(mid.generators, 0);
      const ModuleMap& out = k == 0 ? augmentation : differentials[k - 1];
      if (!is_exact_at(incoming, mid, out.components[x], out.target->value(x)))
        throw InvariantViolation("resolution is not exact at P_" + std::to_string(k) + "(" + c.label(x) + ")");
    }
  }
}

std::vector<HomComplexTerm> hom_complex(const Resolution& r, const ModulePtr& np) {
  const CatModule& n = *np;
  const auto& c = *n.category();
  std::vector<HomComplexTerm> terms;
  std::vector<std::vector<std::size_t>> offs;
  for (const auto& p : r.modules) {
    std::vector<std::size_t> off{0};
    std::vector<IntMatrix> rels;
    for (auto y : p.generators) {
      off.push_back(off.back() + n.generators(y));
      rels.push_back(n.value(y).relations);
    }
    offs.push_back(off);
    terms.push_back({Presentation(off.back(), IntMatrix::block_diagonal(rels)), IntMatrix(off.back(), 0)});
  }
  for (std::size_t k = 1; k < r.modules.size(); ++k) {
    const FreeModule& pk = r.modules[k];
    const FreeModule& prev = r.modules[k - 1];
    const ModuleMap& d = r.differentials[k - 1];
    IntMatrix delta(offs[k].back(), offs[k - 1].back());
    for (std::size_t g = 0; g < pk.generators.size(); ++g) {
      const std::size_t yg = pk.generators[g];
      IntVector img = d.components[yg].column(pk.generator_coordinate(g));
      for (std::size_t h = 0; h < prev.generators.size(); ++h) {
        const std::size_t yh = prev.generators[h];
        IntVector coeffs(c.rank(yg, yh));
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = img[prev.offsets[yg][h] + i];
        if (is_zero(coeffs)) continue;
        delta.place(offs[k][g], offs[k - 1][h], n.action_of(yg, yh, coeffs));
      }
    }
    terms[k].incoming = std::move(delta);
  }
  return terms;
}

ExtResult ext_from(const Resolution& r, const ModulePtr& n, std::size_t k) {
  ExtResult out;
  out.degree = k;
  if (k > r.length()) {
    if (r.terminated) return out;
    throw InvariantViolation("resolution too short for Ext^" + std::to_string(k));
  }
  if (k == r.length() && !r.terminated) throw InvariantViolation("resolution too short for Ext^" + std::to_string(k));
  auto terms = hom_complex(r, n);
  const auto& mid = terms[k];
  if (k + 1 < terms.size())
    out.group = cohomology(mid.incoming, mid.group, terms[k + 1].incoming, terms[k + 1].group);
  else
    out.group = cohomology(mid.incoming, mid.group, IntMatrix(0, mid.group.generators), Presentation(0));
  return out;
}

ExtResult ext(const ModulePtr& m, const ModulePtr& n, std::size_t k, const ResolveOptions& opts) {
  return ext_from(resolve(m, k + 1, opts), n, k);
}

HomResult hom(const ModulePtr& mp, const ModulePtr& np) {
  const CatModule& m = *mp;
  const CatModule& nn = *np;
  const auto& c = *m.category();
  if (np->category() != mp->category()) throw InputError("CategoryMismatch", "Hom between modules over different categories");
  const std::size_t objs = c.size();
  std::vector<std::size_t> off{0};
  for (std::size_t x = 0; x < objs; ++x) off.push_back(off.back() + nn.generators(x) * m.generators(x));
  auto var = [&](std::size_t x, std::size_t r, std::size_t j) { return off[x] + r * m.generators(x) + j; };
  IntMatrix basis = IntMatrix::identity(off.back());

  // Each constraint is a vector of rows (in N(x) coordinates) that must lie in the relation lattice.
  auto impose = [&](std::size_t x, const std::function<void(IntMatrix&)>& fill) {
    if (basis.cols() == 0) return;
    IntMatrix rows(nn.generators(x), basis.cols());
    fill(rows);
    if (rows.is_zero()) return;
    IntMatrix k = preimage_lattice(rows, nn.value(x).relations);
    if (k.cols() == basis.cols() && k.is_identity()) return;
    basis = basis * k;
  };

  for (std::size_t x = 0; x < objs; ++x) {
    const IntMatrix& rel = m.value(x).relations;
    for (std::size_t rc = 0; rc < rel.cols(); ++rc)
      impose(x, [&](IntMatrix& rows) {
        for (std::size_t r = 0; r < rows.rows(); ++r)
          for (std::size_t j = 0; j < m.generators(x); ++j)
            if (sgn(rel(j, rc)) != 0)
              for (std::size_t col = 0; col < basis.cols(); ++col) rows(r, col) += rel(j, rc) * basis(var(x, r, j), col);
      });
  }
  for (std::size_t x = 0; x < objs; ++x)
    for (std::size_t y = 0; y < objs; ++y)
      for (std::size_t i = 0; i < c.rank(x, y); ++i) {
        const IntMatrix& a = m.action(x, y, i);
        const IntMatrix& b = nn.action(x, y, i);
        for (std::size_t cc = 0; cc < m.generators(y); ++cc)
          impose(x, [&](IntMatrix& rows) {
            for (std::size_t r = 0; r < rows.rows(); ++r) {
              for (std::size_t j = 0; j < m.generators(x); ++j)
                if (sgn(a(j, cc)) != 0)
                  for (std::size_t col = 0; col < basis.cols(); ++col) rows(r, col) += a(j, cc) * basis(var(x, r, j), col);
              for (std::size_t s = 0; s < nn.generators(y); ++s)
                if (sgn(b(r, s)) != 0)
                  for (std::size_t col = 0; col < basis.cols(); ++col) rows(r, col) -= b(r, s) * basis(var(y, s, cc), col);
            }
          });
      }

  HomResult out;
  if (basis.cols() == 0) return out;
  // maps whose columns lie in the relations of N are zero
  std::vector<IntVector> zero_gens;
  for (std::size_t x = 0; x < objs; ++x) {
    const IntMatrix& rel = nn.value(x).relations;
    for (std::size_t rc = 0; rc < rel.cols(); ++rc)
      for (std::size_t j = 0; j < m.generators(x); ++j) {
        IntVector u(off.back());
        for (std::size_t r = 0; r < nn.generators(x); ++r) u[var(x, r, j)] = rel(r, rc);
        zero_gens.push_back(std::move(u));
      }
  }
  LatticeSolver solver(basis);
  IntMatrix zero_coords(basis.cols(), zero_gens.size());
  for (std::size_t k = 0; k < zero_gens.size(); ++k) {
    auto s = solver.solve(zero_gens[k]);
    if (!s) throw InvariantViolation("hom: zero map outside the solution lattice");
    zero_coords.set_column(k, *s);
  }
  PresentationChange ch = simplify(Presentation(basis.cols(), zero_coords));
  out.group = ch.simplified.group();
  for (std::size_t g = 0; g < ch.simplified.generators; ++g) {
    IntVector u = basis * ch.to_old.column(g);
    ModuleMap f{mp, np, {}};
    for (std::size_t x = 0; x < objs; ++x) {
      IntMatrix comp(nn.generators(x), m.generators(x));
      for (std::size_t r = 0; r < comp.rows(); ++r)
        for (std::size_t j = 0; j < comp.cols(); ++j) comp(r, j) = u[var(x, r, j)];
      f.components.push_back(std::move(comp));
    }
    out.generators.push_back(std::move(f));
  }
  return out;
}

std::string ProjectiveDimension::to_string() const {
  std::ostringstream os;
  if (exact())
    os << "pd = " << lower;
  else if (upper)
    os << lower << " <= pd <= " << *upper;
  else
    os << "pd >= " << lower;
  return os.str();
}

ProjectiveDimension projective_dimension(const ModulePtr& m, std::size_t depth, const ResolveOptions& opts) {
  ProjectiveDimension pd;
  Resolution r = resolve(m, depth + 1, opts);
  if (r.terminated) pd.upper = r.length();
  for (std::size_t k = 1; k <= depth; ++k) {
    if (pd.upper && k > *pd.upper) break;
    if (k >= r.syzygies.size()) break;
    ExtResult e = ext_from(r, r.syzygies[k - 1], k);
    if (e.group.is_zero()) {
      pd.upper = pd.upper ? std::min(*pd.upper, k - 1) : k - 1;
      break;
    }
    pd.lower = k;
  }
  if (pd.upper && *pd.upper < pd.lower) throw InvariantViolation("projective dimension bounds cross");
  return pd;
}

}  // namespace mackeylab
