#include <doctest.h>

#include <random>
#include <set>

#include "corpus.hpp"
#include "mackeylab/error.hpp"
#include "mackeylab/transfer.hpp"

using namespace mackeylab;

namespace {

std::vector<AbelianGroup> values(const ModulePtr& m) {
  std::vector<AbelianGroup> out;
  for (std::size_t x = 0; x < m->category()->size(); ++x) out.push_back(m->value(x).group());
  return out;
}

// Cokernel of a random map between free modules on random objects.
ModulePtr random_module(std::mt19937& rng, const CatPtr& cat) {
  std::uniform_int_distribution<std::size_t> obj(0, cat->size() - 1), count(1, 2);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<std::size_t> pg(count(rng)), qg(count(rng) - 1);
  for (auto& y : pg) y = obj(rng);
  for (auto& y : qg) y = obj(rng);
  FreeModule p = free_module(cat, pg), q = free_module(cat, qg);
  std::vector<IntVector> images;
  for (auto y : qg) {
    IntVector v(p.module->generators(y));
    for (auto& c : v) c = coef(rng);
    images.push_back(std::move(v));
  }
  return cokernel(yoneda_map(q, p.module, images)).module;
}

std::vector<GroupPtr> small() { return {cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)}; }

}  // namespace

TEST_CASE("sigma is a functor") {
  for (auto g : corpus_groups()) {
    CAPTURE(g->name());
    Transfer(MackeySystem::full(g)).check_functor();
  }
  Transfer(MackeySystem::with_family(cyclic_group(4), {0, 1})).check_functor();
}

TEST_CASE("sigma needs every G-map to be admissible") {
  auto g = symmetric_group(3);
  std::map<SubId, std::vector<SubId>> own;
  for (SubId h = 0; h < g->subgroup_count(); ++h) own[h] = {h};
  CHECK_THROWS_AS(Transfer(MackeySystem::from_opens(g, {0, 1, 2, 3, 4, 5}, own)), InputError);
}

TEST_CASE("restriction") {
  Transfer t(MackeySystem::full(cyclic_group(2)));
  auto b = t.restrict(t.mackey()->burnside_module());
  b->check();
  CHECK(b->generators(0) == 1);
  CHECK(b->generators(1) == 2);
  const auto& c = *t.mackey()->skeleton();
  CatModule::Actions za(2, std::vector<std::vector<IntMatrix>>(2));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) za[x][y].assign(c.rank(x, y), IntMatrix(0, 0));
  auto z = std::make_shared<CatModule>(t.mackey()->skeleton(), std::vector<Presentation>{Presentation(0), Presentation(0)}, za);
  CHECK(t.restrict(z)->is_zero());
  auto r = t.mackey()->representable(1).module;
  auto sum = direct_sum(r, r);
  auto rs = t.restrict(sum);
  for (std::size_t x = 0; x < 2; ++x) CHECK(rs->generators(x) == 2 * r->generators(x));
}

TEST_CASE("the coend agrees with the closed form") {
  std::mt19937 rng(7);
  for (auto g : small()) {
    CAPTURE(g->name());
    Transfer t(MackeySystem::full(g));
    const auto& oc = *t.orbit();
    std::vector<ModulePtr> ts{oc.constant_module()};
    for (SubId k : oc.objects()) ts.push_back(oc.projective_block(k).module);
    for (int i = 0; i < 3; ++i) ts.push_back(random_module(rng, oc.skeleton()));
    for (const auto& m : ts) {
      Induced ind = t.induce(m);
      ind.module->check();
      CHECK(values(ind.module) == t.induce_closed_form(m));
    }
  }
}

TEST_CASE("ind Z is the Burnside module") {
  for (auto g : small()) {
    CAPTURE(g->name());
    Transfer t(MackeySystem::full(g));
    Induced ind = t.induce(t.orbit()->constant_module());
    ModuleMap c = t.burnside_comparison(ind);
    c.check();
    CHECK(is_isomorphism(c));
    // ranks are the number of subgroup classes of H
    const auto& objs = t.mackey()->objects();
    for (std::size_t x = 0; x < objs.size(); ++x) {
      std::set<SubId> classes;
      for (SubId l = 0; l < g->subgroup_count(); ++l)
        if (g->is_subgroup(l, objs[x])) {
          SubId least = l;
          for (Elem h : g->subgroup(objs[x]).elements) least = std::min(least, g->conjugate(l, h));
          classes.insert(least);
        }
      CHECK(ind.module->value(x).group() == AbelianGroup{classes.size(), {}});
    }
  }
  Transfer proper(MackeySystem::with_family(cyclic_group(2), {0}));
  CHECK(is_isomorphism(proper.burnside_comparison(proper.induce(proper.orbit()->constant_module()))));
}

TEST_CASE("induction takes projectives to representables") {
  for (auto g : small()) {
    Transfer t(MackeySystem::full(g));
    const auto& objs = t.orbit()->objects();
    for (std::size_t k = 0; k < objs.size(); ++k) {
      auto ind = t.induce(t.orbit()->projective_block(objs[k]).module).module;
      auto rep = t.mackey()->representable(objs[k]).module;
      CHECK(values(ind) == values(rep));
    }
  }
}

TEST_CASE("induction is left adjoint to restriction") {
  std::mt19937 rng(11);
  std::size_t pairs = 0;
  for (auto g : small())
    for (int i = 0; i < 3; ++i) {
      CAPTURE(g->name());
      Transfer t(MackeySystem::full(g));
      auto tm = random_module(rng, t.orbit()->skeleton());
      auto m = random_module(rng, t.mackey()->skeleton());
      AdjunctionReport rep = t.adjunction_check(tm, m);
      CHECK(rep.left == rep.right);
      CHECK(rep.unit_natural);
      CHECK(rep.counit_natural);
      CHECK(rep.round_trips);
      ++pairs;
    }
  CHECK(pairs >= 10);
}

TEST_CASE("induced Bredon resolutions resolve B") {
  for (auto sys : {MackeySystem::full(symmetric_group(3)), MackeySystem::full(cyclic_group(4)),
                   MackeySystem::with_family(cyclic_group(2), {0})}) {
    Transfer t(sys);
    auto r = resolve(t.orbit()->constant_module(), 3);
    auto c = t.induce_resolution(r);
    CHECK_MESSAGE(c.exact, c.failure);
    for (const auto& d : c.differentials) d.check();
  }
}

TEST_CASE("Mackey and Bredon Ext agree") {
  std::mt19937 rng(3);
  for (auto sys : {MackeySystem::full(symmetric_group(3)), MackeySystem::with_family(cyclic_group(2), {0})}) {
    Transfer t(sys);
    for (int i = 0; i < 2; ++i) {
      auto m = random_module(rng, t.mackey()->skeleton());
      for (std::size_t k = 0; k <= 2; ++k) {
        auto e = t.compare_ext(m, k);
        CHECK(e.mackey == e.bredon);
      }
    }
  }
}
