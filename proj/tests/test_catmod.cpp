#include <doctest.h>

#include <random>

#include "mackeylab/catmod.hpp"
#include "mackeylab/error.hpp"
#include "oracles/cyclic.hpp"

using namespace mackeylab;

namespace {

// One object, hom = Z[C_n] with basis g^i.
CatPtr cyclic_category(std::size_t n) {
  return std::make_shared<SkeletonCategory>(
      std::vector<std::string>{"*"}, std::vector<std::vector<std::size_t>>{{n}}, std::vector<std::size_t>{0},
      [n](std::size_t, std::size_t, std::size_t, std::size_t f, std::size_t g) { return unit_vector(n, (f + g) % n); });
}

// a -> b, nothing else but identities.
CatPtr arrow_category() {
  return std::make_shared<SkeletonCategory>(
      std::vector<std::string>{"a", "b"}, std::vector<std::vector<std::size_t>>{{1, 1}, {0, 1}},
      std::vector<std::size_t>{0, 0},
      [](std::size_t, std::size_t, std::size_t, std::size_t, std::size_t) { return unit_vector(1, 0); });
}

ModulePtr cyclic_module(const CatPtr& cat, const IntMatrix& t) {
  const std::size_t n = cat->rank(0, 0);
  CatModule::Actions a(1, std::vector<std::vector<IntMatrix>>(1));
  IntMatrix p = IntMatrix::identity(t.rows());
  for (std::size_t i = 0; i < n; ++i) {
    a[0][0].push_back(p);
    p = p * t;
  }
  return std::make_shared<CatModule>(cat, std::vector<Presentation>{Presentation(t.rows())}, std::move(a));
}

ModulePtr random_module(std::mt19937& rng, const CatPtr& cat) {
  std::uniform_int_distribution<std::size_t> obj(0, cat->size() - 1), count(1, 3);
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

}  // namespace

TEST_CASE("skeleton axioms and morphism numbering") {
  auto c3 = cyclic_category(3);
  c3->check_axioms();
  CHECK(c3->morphism_count() == 3);
  auto arrow = arrow_category();
  arrow->check_axioms();
  CHECK(arrow->morphism_count() == 3);
  auto m = arrow->morphism(1);
  CHECK(m.source == 0);
  CHECK(m.target == 1);
  CHECK(arrow->find_object("b") == 1);
  CHECK_THROWS_AS(arrow->find_object("c"), InputError);
}

TEST_CASE("free modules are modules and Yoneda maps are natural") {
  auto arrow = arrow_category();
  FreeModule f = free_module(arrow, {1, 0, 1});
  f.module->check();
  CHECK(f.module->generators(0) == 3);  // hom(a,b) + hom(a,a) + hom(a,b)
  CHECK(f.module->generators(1) == 2);
  auto target = free_module(arrow, {1}).module;
  auto y = yoneda_map(f, target, {IntVector{2}, IntVector{-1}, IntVector{3}});
  y.check();
  CHECK(y.components[1] == IntMatrix{{2, 3}});
}

TEST_CASE("kernel and cokernel of identity and zero") {
  auto c2 = cyclic_category(2);
  auto m = cyclic_module(c2, IntMatrix{{0, 1}, {1, 0}});
  auto id = identity_map(m);
  CHECK(kernel(id).module->is_zero());
  CHECK(cokernel(id).module->is_zero());
  auto z = zero_map(m, m);
  CHECK(kernel(z).module->group(0) == make_group(2));
  CHECK(cokernel(z).module->group(0) == make_group(2));
  CHECK(z.is_zero());
  CHECK_FALSE(id.is_zero());
}

TEST_CASE("non-natural maps are rejected") {
  auto c2 = cyclic_category(2);
  auto triv = cyclic_module(c2, IntMatrix{{1}});
  auto sign = cyclic_module(c2, IntMatrix{{-1}});
  ModuleMap f{triv, sign, {IntMatrix{{1}}}};
  CHECK_FALSE(f.is_natural());
  CHECK_THROWS_AS(f.check(), InvariantViolation);
  ModuleMap g{triv, sign, {IntMatrix{{0}}}};
  CHECK(g.is_natural());
}

TEST_CASE("Ext over cyclic groups agrees with the periodic complex") {
  struct Case {
    std::size_t n;
    IntMatrix t;
  };
  std::vector<Case> cases{{2, IntMatrix{{1}}},
                          {2, IntMatrix{{-1}}},
                          {2, IntMatrix{{0, 1}, {1, 0}}},
                          {3, IntMatrix{{1}}},
                          {3, IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}},
                          {3, IntMatrix{{0, -1}, {1, -1}}},
                          {4, IntMatrix{{1}}},
                          {4, IntMatrix{{-1}}}};
  for (const auto& cs : cases) {
    auto cat = cyclic_category(cs.n);
    auto triv = cyclic_module(cat, IntMatrix{{1}});
    auto n = cyclic_module(cat, cs.t);
    n->check();
    Resolution r = resolve(triv, 6);
    r.check();
    for (std::size_t k = 0; k <= 5; ++k) {
      CAPTURE(cs.n);
      CAPTURE(k);
      CHECK(ext_from(r, n, k).group == oracle::cyclic_cohomology(cs.t, static_cast<long>(cs.n), k));
    }
  }
}

TEST_CASE("Ext^0 is Hom and Hom generators are natural") {
  std::mt19937 rng(7);
  for (auto cat : {cyclic_category(2), arrow_category(), cyclic_category(3)})
    for (int trial = 0; trial < 12; ++trial) {
      auto m = random_module(rng, cat);
      auto n = random_module(rng, cat);
      m->check();
      n->check();
      HomResult h = hom(m, n);
      CHECK(ext(m, n, 0).group == h.group);
      CHECK(h.generators.size() == h.group.generator_count());
      for (const auto& f : h.generators) CHECK(f.is_natural());
    }
}

TEST_CASE("resolutions are exact and Ext does not depend on the cover strategy") {
  std::mt19937 rng(11);
  for (auto cat : {cyclic_category(2), arrow_category()})
    for (int trial = 0; trial < 10; ++trial) {
      auto m = random_module(rng, cat);
      auto n = random_module(rng, cat);
      Resolution greedy = resolve(m, 3);
      Resolution naive = resolve(m, 3, {5000, CoverStrategy::Naive});
      greedy.check();
      naive.check();
      for (std::size_t k = 0; k <= 2; ++k) CHECK(ext_from(greedy, n, k).group == ext_from(naive, n, k).group);
    }
}

TEST_CASE("kernels and cokernels of random maps are modules") {
  std::mt19937 rng(3);
  auto cat = arrow_category();
  for (int trial = 0; trial < 15; ++trial) {
    auto m = random_module(rng, cat);
    Cover c = free_cover(m);
    CHECK(c.map.is_surjective());
    auto k = kernel(c.map);
    k.module->check();
    k.map.check();
    CHECK(compose(c.map, k.map).is_zero());
    auto q = cokernel(c.map);
    CHECK(q.module->is_zero());
  }
}

TEST_CASE("projective dimension") {
  auto arrow = arrow_category();
  auto free = free_module(arrow, {0, 1}).module;
  auto pd0 = projective_dimension(free, 3);
  CHECK(pd0.exact());
  CHECK(pd0.lower == 0);

  // simple module at b: Z at b, 0 at a; resolved by P_a -> P_b
  CatModule::Actions acts(2, std::vector<std::vector<IntMatrix>>(2));
  acts[0][0] = {IntMatrix(0, 0)};
  acts[0][1] = {IntMatrix(0, 1)};
  acts[1][1] = {IntMatrix{{1}}};
  auto simple = std::make_shared<CatModule>(arrow, std::vector<Presentation>{Presentation(0), Presentation(1)}, acts);
  simple->check();
  auto pd1 = projective_dimension(simple, 3);
  CHECK(pd1.exact());
  CHECK(pd1.lower == 1);
  CHECK(pd1.to_string() == "pd = 1");

  auto triv = cyclic_module(cyclic_category(2), IntMatrix{{1}});
  auto pdinf = projective_dimension(triv, 3);
  CHECK(pdinf.lower == 3);
  CHECK_FALSE(pdinf.upper);
}

TEST_CASE("cover bound") {
  auto c2 = cyclic_category(2);
  auto m = cyclic_module(c2, IntMatrix::identity(4));
  CHECK_THROWS_AS(free_cover(m, {3, CoverStrategy::Greedy}), BoundExceeded);
  CHECK_THROWS_AS(free_cover(m, {3, CoverStrategy::Naive}), BoundExceeded);
}
