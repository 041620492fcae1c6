#include "mackeylab/transfer.hpp"

#include "mackeylab/error.hpp"

namespace mackeylab {

IntVector Induced::tensor(std::size_t x, std::size_t k, std::size_t j, const IntVector& v) const {
  IntVector old(coend[x].generators);
  const std::size_t g = source->generators(k);
  for (std::size_t i = 0; i < v.size(); ++i) old[offsets[x][k] + j * g + i] = v[i];
  return change[x].to_new * old;
}

Transfer::Transfer(MackeySystem system) : system_(std::move(system)) {
  orbit_ = std::make_shared<OrbitCategory>(system_);
  mackey_ = std::make_shared<MackeyCategory>(system_);
  const auto& g = *system_.group();
  const auto& objs = orbit_->objects();
  const auto& oc = *orbit_->skeleton();
  const std::size_t n = objs.size();
  sigma_.assign(n, std::vector<std::vector<IntVector>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < oc.rank(x, y); ++i) {
        Elem a = orbit_->element(x, y, i);
        if (!system_.is_open(objs[y], g.conjugate(objs[x], a)))
          throw InputError("NotAdmissible", "the G-map G/" + std::to_string(objs[x]) + " -> G/" + std::to_string(objs[y]) +
                                                " by " + g.element_string(a) + " is not a system morphism");
        BasicSpan s{objs[x], objs[y], objs[x], g.identity(), a};
        sigma_[x][y].push_back(unit_vector(mackey_->hom_rank(objs[x], objs[y]), mackey_->locate(s)));
      }
}

void Transfer::check_functor() const {
  const auto& oc = *orbit_->skeleton();
  const auto& objs = orbit_->objects();
  const std::size_t n = objs.size();
  for (std::size_t x = 0; x < n; ++x)
    if (sigma_[x][x][oc.identity(x)] != mackey_->identity(objs[x]).coefficients)
      throw InvariantViolation("sigma does not preserve the identity of G/" + std::to_string(objs[x]));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t gi = 0; gi < oc.rank(x, y); ++gi)
          for (std::size_t f = 0; f < oc.rank(y, z); ++f) {
            const IntVector& fg = oc.compose(x, y, z, f, gi);
            IntVector lhs(mackey_->hom_rank(objs[x], objs[z]));
            for (std::size_t k = 0; k < fg.size(); ++k)
              if (sgn(fg[k]) != 0)
                for (std::size_t r = 0; r < lhs.size(); ++r) lhs[r] += fg[k] * sigma_[x][z][k][r];
            MackeyHom rhs = mackey_->compose({objs[y], objs[z], sigma_[y][z][f]}, {objs[x], objs[y], sigma_[x][y][gi]});
            if (lhs != rhs.coefficients) throw InvariantViolation("sigma is not functorial");
          }
}

ModulePtr Transfer::restrict(const ModulePtr& m) const {
  if (m->category() != mackey_->skeleton()) throw InputError("CategoryMismatch", "module is not over the Mackey category");
  const auto& oc = *orbit_->skeleton();
  const std::size_t n = oc.size();
  CatModule::Actions a(n, std::vector<std::vector<IntMatrix>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < oc.rank(x, y); ++i) a[x][y].push_back(m->action_of(x, y, sigma_[x][y][i]));
  return std::make_shared<CatModule>(orbit_->skeleton(), m->values(), std::move(a));
}

ModuleMap Transfer::restrict(const ModuleMap& f) const {
  return ModuleMap{restrict(f.source), restrict(f.target), f.components};
}

Induced Transfer::induce(const ModulePtr& t) const {
  if (t->category() != orbit_->skeleton()) throw InputError("CategoryMismatch", "module is not over the orbit category");
  const auto& oc = *orbit_->skeleton();
  const auto& mc = *mackey_->skeleton();
  const std::size_t n = oc.size();
  Induced out;
  out.source = t;
  out.offsets.assign(n, std::vector<std::size_t>(n + 1, 0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < n; ++k) out.offsets[x][k + 1] = out.offsets[x][k] + mc.rank(x, k) * t->generators(k);
    const std::size_t total = out.offsets[x][n];
    auto coord = [&](std::size_t k, std::size_t j, std::size_t g) { return out.offsets[x][k] + j * t->generators(k) + g; };
    std::vector<IntVector> rels;
    for (std::size_t k = 0; k < n; ++k) {
      const IntMatrix& r = t->value(k).relations;
      for (std::size_t j = 0; j < mc.rank(x, k); ++j)
        for (std::size_t c = 0; c < r.cols(); ++c) {
          IntVector v(total);
          for (std::size_t g = 0; g < t->generators(k); ++g) v[coord(k, j, g)] = r(g, c);
          rels.push_back(std::move(v));
        }
    }
    // a (x) alpha^*(m) - (sigma(alpha) o a) (x) m for alpha: K1 -> K2, a in [x, K1], m a generator of T(K2)
    for (std::size_t k1 = 0; k1 < n; ++k1)
      for (std::size_t k2 = 0; k2 < n; ++k2)
        for (std::size_t i = 0; i < oc.rank(k1, k2); ++i) {
          const IntMatrix& act = t->action(k1, k2, i);
          const IntVector& s = sigma_[k1][k2][i];
          std::size_t sidx = 0;
          while (sgn(s[sidx]) == 0) ++sidx;
          for (std::size_t j1 = 0; j1 < mc.rank(x, k1); ++j1) {
            const IntVector& pushed = mc.compose(x, k1, k2, sidx, j1);
            for (std::size_t g = 0; g < t->generators(k2); ++g) {
              IntVector v(total);
              for (std::size_t g1 = 0; g1 < t->generators(k1); ++g1) v[coord(k1, j1, g1)] += act(g1, g);
              for (std::size_t j2 = 0; j2 < pushed.size(); ++j2) v[coord(k2, j2, g)] -= pushed[j2];
              if (!is_zero(v)) rels.push_back(std::move(v));
            }
          }
        }
    IntMatrix rel(total, rels.size());
    for (std::size_t c = 0; c < rels.size(); ++c) rel.set_column(c, rels[c]);
    out.coend.emplace_back(total, std::move(rel));
    out.change.push_back(simplify(out.coend.back()));
  }
  std::vector<Presentation> values;
  for (const auto& ch : out.change) values.push_back(ch.simplified);
  CatModule::Actions actions(n, std::vector<std::vector<IntMatrix>>(n));
  for (std::size_t xp = 0; xp < n; ++xp)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < mc.rank(xp, x); ++i) {
        // a (x) m |-> (a o phi) (x) m
        IntMatrix a(out.coend[xp].generators, out.coend[x].generators);
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t gk = t->generators(k);
          for (std::size_t j = 0; j < mc.rank(x, k); ++j) {
            const IntVector& c = mc.compose(xp, x, k, j, i);
            for (std::size_t jj = 0; jj < c.size(); ++jj)
              if (sgn(c[jj]) != 0)
                for (std::size_t g = 0; g < gk; ++g)
                  a(out.offsets[xp][k] + jj * gk + g, out.offsets[x][k] + j * gk + g) += c[jj];
          }
        }
        actions[xp][x].push_back(out.change[xp].to_new * a * out.change[x].to_old);
      }
  out.module = std::make_shared<CatModule>(mackey_->skeleton(), std::move(values), std::move(actions));
  return out;
}

ModuleMap Transfer::induce(const ModuleMap& f, const Induced& src, const Induced& dst) const {
  const auto& mc = *mackey_->skeleton();
  const std::size_t n = mc.size();
  ModuleMap out{src.module, dst.module, {}};
  for (std::size_t x = 0; x < n; ++x) {
    IntMatrix a(dst.coend[x].generators, src.coend[x].generators);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t gs = src.source->generators(k), gt = dst.source->generators(k);
      for (std::size_t j = 0; j < mc.rank(x, k); ++j) a.place(dst.offsets[x][k] + j * gt, src.offsets[x][k] + j * gs, f.components[k]);
    }
    out.components.push_back(dst.change[x].to_new * a * src.change[x].to_old);
  }
  return out;
}

std::vector<AbelianGroup> Transfer::induce_closed_form(const ModulePtr& t) const {
  const auto& g = *system_.group();
  std::vector<AbelianGroup> out;
  for (SubId h : mackey_->objects()) {
    std::vector<std::size_t> gens;
    std::vector<IntMatrix> rels;
    for (SubId l : mackey_->burnside_eval(h).labels) {
      std::size_t k = orbit_->object_of(l);
      SubId r = orbit_->objects()[k];
      Elem d = *g.conjugator(l, r);
      SubId nh = g.intersect(g.normalizer(l), h);
      IntMatrix rel = t->value(k).relations;
      for (Elem w : g.subgroup(nh).generators) {
        std::size_t idx = orbit_->map_index(k, k, g.mul(g.inv(d), g.mul(w, d)));
        rel = IntMatrix::hstack(rel, t->action(k, k, idx) - IntMatrix::identity(t->generators(k)));
      }
      gens.push_back(t->generators(k));
      rels.push_back(std::move(rel));
    }
    std::size_t total = 0;
    for (auto x : gens) total += x;
    out.push_back(Presentation(total, IntMatrix::block_diagonal(rels)).group());
  }
  return out;
}

ModuleMap Transfer::unit(const Induced& ind) const {
  const auto& t = ind.source;
  const std::size_t n = orbit_->objects().size();
  ModuleMap out{t, restrict(ind.module), {}};
  for (std::size_t x = 0; x < n; ++x) {
    SubId h = orbit_->objects()[x];
    std::size_t id = mackey_->locate({h, h, h, 0, 0});
    IntMatrix c(ind.module->generators(x), t->generators(x));
    for (std::size_t g = 0; g < t->generators(x); ++g) c.set_column(g, ind.tensor(x, x, id, unit_vector(t->generators(x), g)));
    out.components.push_back(std::move(c));
  }
  return out;
}

ModuleMap Transfer::counit(const ModulePtr& m, const Induced& ind) const {
  const auto& mc = *mackey_->skeleton();
  const std::size_t n = mc.size();
  ModuleMap out{ind.module, m, {}};
  for (std::size_t x = 0; x < n; ++x) {
    IntMatrix a(m->generators(x), ind.coend[x].generators);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < mc.rank(x, k); ++j) a.place(0, ind.offsets[x][k] + j * m->generators(k), m->action(x, k, j));
    out.components.push_back(a * ind.change[x].to_old);
  }
  return out;
}

AdjunctionReport Transfer::adjunction_check(const ModulePtr& t, const ModulePtr& m) const {
  AdjunctionReport rep;
  Induced ind = induce(t);
  ModulePtr rm = restrict(m);
  Induced indres = induce(rm);
  HomResult left = hom(ind.module, m);
  HomResult right = hom(t, rm);
  rep.left = left.group;
  rep.right = right.group;
  ModuleMap eta = unit(ind);
  ModuleMap eps = counit(m, indres);
  rep.unit_natural = eta.is_natural();
  rep.counit_natural = eps.is_natural();
  auto phi = [&](const ModuleMap& f) {
    ModuleMap out{t, rm, {}};
    for (std::size_t x = 0; x < f.components.size(); ++x) out.components.push_back(f.components[x] * eta.components[x]);
    return out;
  };
  auto psi = [&](const ModuleMap& gm) { return compose(eps, induce(gm, ind, indres)); };
  rep.round_trips = true;
  for (const auto& f : left.generators)
    if (!maps_equal(psi(phi(f)), f)) rep.round_trips = false;
  for (const auto& gm : right.generators)
    if (!maps_equal(phi(psi(gm)), gm)) rep.round_trips = false;
  return rep;
}

ModuleMap Transfer::burnside_comparison(const Induced& ind) const {
  const auto& objs = mackey_->objects();
  const std::size_t n = objs.size();
  ModulePtr b = mackey_->terminal_module();
  ModuleMap out{ind.module, b, {}};
  for (std::size_t x = 0; x < n; ++x) {
    IntMatrix a(b->generators(x), ind.coend[x].generators);
    for (std::size_t k = 0; k < n; ++k) {
      BasicSpan top{objs[k], kTerminal, objs[k], 0, 0};
      const auto& basis = mackey_->hom_basis(objs[x], objs[k]);
      for (std::size_t j = 0; j < basis.size(); ++j) a.set_column(ind.offsets[x][k] + j, mackey_->compose_basic(top, basis[j]));
    }
    out.components.push_back(a * ind.change[x].to_old);
  }
  return out;
}

Transfer::InducedComplex Transfer::induce_resolution(const Resolution& r) const {
  InducedComplex out;
  for (const auto& p : r.modules) out.terms.push_back(induce(p.module));
  for (std::size_t k = 0; k < r.differentials.size(); ++k)
    out.differentials.push_back(induce(r.differentials[k], out.terms[k + 1], out.terms[k]));
  Induced base = induce(r.target);
  out.augmentation = compose(burnside_comparison(base), induce(r.augmentation, out.terms[0], base));
  const auto& mc = *mackey_->skeleton();
  out.exact = true;
  if (!out.augmentation.is_surjective()) {
    out.exact = false;
    out.failure = "augmentation is not surjective";
    return out;
  }
  const std::size_t last = r.terminated ? out.terms.size() : out.terms.size() - 1;
  for (std::size_t k = 0; k < last && out.exact; ++k)
    for (std::size_t x = 0; x < mc.size(); ++x) {
      const Presentation& mid = out.terms[k].module->value(x);
      IntMatrix incoming = k < out.differentials.size() ? out.differentials[k].components[x] : IntMatrix(mid.generators, 0);
      const ModuleMap& outgoing = k == 0 ? out.augmentation : out.differentials[k - 1];
      if (!outgoing.target->value(x).vanishes(outgoing.components[x] * incoming) ||
          !is_exact_at(incoming, mid, outgoing.components[x], outgoing.target->value(x))) {
        out.exact = false;
        out.failure = "degree " + std::to_string(k) + " at " + mc.label(x);
        break;
      }
    }
  return out;
}

Transfer::ExtPair Transfer::compare_ext(const ModulePtr& m, std::size_t k, const ResolveOptions& opts) const {
  ExtPair out;
  out.mackey = ext(mackey_->burnside_module(), m, k, opts).group;
  out.bredon = ext(orbit_->constant_module(), restrict(m), k, opts).group;
  return out;
}

bool is_isomorphism(const ModuleMap& f) {
  return kernel(f).module->is_zero() && cokernel(f).module->is_zero();
}

}  // namespace mackeylab
