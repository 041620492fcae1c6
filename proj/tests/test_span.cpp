#include <doctest.h>

#include "corpus.hpp"
#include "mackeylab/error.hpp"
#include "mackeylab/span.hpp"
#include "oracles/spans.hpp"

using namespace mackeylab;

namespace {

MackeyPtr full(GroupPtr g) { return std::make_shared<MackeyCategory>(MackeySystem::full(std::move(g))); }

std::optional<SubId> opt_target(SubId k) { return k == kTerminal ? std::nullopt : std::optional<SubId>(k); }

oracle::RawSpan raw(const MackeyCategory& m, const BasicSpan& s) {
  return {s.middle, m.group()->perm(s.a), m.group()->perm(s.b)};
}

std::vector<SubId> targets(const MackeyCategory& m) {
  auto t = m.system().family();
  t.push_back(kTerminal);
  return t;
}

// Library basis is complete and irredundant against the brute-force classes.
void check_bases(const MackeyCategory& m) {
  oracle::SpanOracle o(m.system());
  for (SubId h : m.system().family())
    for (SubId k : targets(m)) {
      CAPTURE(h);
      CAPTURE(k);
      const auto& basis = m.hom_basis(h, k);
      auto classes = o.classes(h, opt_target(k));
      REQUIRE(basis.size() == classes.size());
      for (std::size_t i = 0; i < basis.size(); ++i) {
        m.check_span(basis[i]);
        for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(o.equivalent(h, opt_target(k), raw(m, basis[i]), raw(m, basis[j])));
      }
    }
}

// Library composition against the fiber product, on all basis pairs between objects.
void check_composition(const MackeyCategory& m) {
  oracle::SpanOracle o(m.system());
  const auto& obj = m.objects();
  std::vector<SubId> tops = obj;
  tops.push_back(kTerminal);
  for (SubId h : obj)
    for (SubId k : obj)
      for (SubId z : tops)
        for (const auto& g : m.hom_basis(h, k))
          for (const auto& f : m.hom_basis(k, z)) {
            IntVector lib = m.compose_basic(f, g);
            IntVector expect(lib.size());
            const auto& basis = m.hom_basis(h, z);
            for (const auto& s : o.compose(k, raw(m, f), raw(m, g))) {
              std::size_t hits = 0;
              for (std::size_t i = 0; i < basis.size(); ++i)
                if (o.equivalent(h, opt_target(z), s, raw(m, basis[i]))) {
                  expect[i] += 1;
                  ++hits;
                }
              REQUIRE(hits == 1);
            }
            CHECK(lib == expect);
          }
}

}  // namespace

TEST_CASE("small hom ranks") {
  auto c2 = full(cyclic_group(2));
  CHECK(c2->hom_rank(0, 0) == 2);
  CHECK(c2->hom_rank(1, 1) == 2);  // [G/G, G/G] over C2: middles 1 and C2
  auto s3 = full(symmetric_group(3));
  CHECK(s3->hom_rank(5, 5) == 4);
  CHECK(s3->hom_rank(1, 4) == 1);  // only through the trivial middle
}

TEST_CASE("span equivalence on C2") {
  auto c2 = full(cyclic_group(2));
  BasicSpan et{0, 0, 0, 0, 1}, te{0, 0, 0, 1, 0}, ee{0, 0, 0, 0, 0};
  CHECK(c2->span_equivalent(et, et));
  CHECK(c2->span_equivalent(et, te));
  CHECK_FALSE(c2->span_equivalent(ee, et));
  CHECK(c2->locate(et) == c2->locate(te));
  CHECK(c2->locate(ee) != c2->locate(et));
  CHECK(c2->span_string(et) == "[G/0 <-(0,0)- -(0,1)-> G/0]");
}

TEST_CASE("bases agree with brute-force enumeration") {
  for (auto g : {cyclic_group(2), cyclic_group(4), symmetric_group(3), cyclic_group(3), dihedral_group(4)}) {
    CAPTURE(g->name());
    check_bases(*full(g));
  }
  // proper family and a non-full system
  check_bases(MackeyCategory(MackeySystem::with_family(cyclic_group(2), {0})));
  auto s3 = symmetric_group(3);
  check_bases(MackeyCategory(MackeySystem::from_opens(s3, {0, 1, 2, 3, 4, 5},
                                                      {{0, {0}}, {1, {0, 1}}, {2, {0, 2}}, {3, {0, 3}}, {4, {0, 4}}, {5, {0, 4, 5}}})));
}

TEST_CASE("composition agrees with the fiber product") {
  for (auto g : {cyclic_group(2), cyclic_group(4), symmetric_group(3)}) {
    CAPTURE(g->name());
    check_composition(*full(g));
  }
  check_composition(MackeyCategory(MackeySystem::with_family(cyclic_group(2), {0})));
  check_composition(MackeyCategory(MackeySystem::with_family(symmetric_group(3), {0, 1, 2, 3})));
}

TEST_CASE("transfer after restriction on C2 doubles") {
  auto c2 = full(cyclic_group(2));
  // [G/G <- G/1 -> G/G]
  std::size_t i = c2->locate({1, 1, 0, 0, 0});
  MackeyHom f = c2->basis_hom(1, 1, i);
  MackeyHom ff = c2->compose(f, f);
  MackeyHom twice = f;
  for (auto& c : twice.coefficients) c *= 2;
  CHECK(ff.coefficients == twice.coefficients);
}

TEST_CASE("identities are units and zero absorbs") {
  auto s3 = full(symmetric_group(3));
  for (SubId h : s3->objects())
    for (SubId k : s3->objects())
      for (std::size_t i = 0; i < s3->hom_rank(h, k); ++i) {
        MackeyHom f = s3->basis_hom(h, k, i);
        CHECK(s3->compose(s3->identity(k), f).coefficients == f.coefficients);
        CHECK(s3->compose(f, s3->identity(h)).coefficients == f.coefficients);
        MackeyHom zero{k, k, IntVector(s3->hom_rank(k, k))};
        CHECK(is_zero(s3->compose(zero, f).coefficients));
      }
  CHECK_THROWS_AS(s3->compose(s3->identity(1), s3->identity(4)), InputError);
}

TEST_CASE("skeletons are associative") {
  for (auto g : {cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3), dihedral_group(4), quaternion_group(),
                 alternating_group(4)}) {
    CAPTURE(g->name());
    full(g)->skeleton()->check_axioms();
  }
  MackeyCategory(MackeySystem::with_family(cyclic_group(4), {0, 1})).skeleton()->check_axioms();
}

TEST_CASE("Burnside values") {
  auto s3 = full(symmetric_group(3));
  CHECK(s3->burnside_eval(5).rank() == 4);
  CHECK(full(dihedral_group(4))->burnside_eval(dihedral_group(4)->whole()).rank() == 8);
  CHECK(full(alternating_group(4))->burnside_eval(alternating_group(4)->whole()).rank() == 5);
  CHECK(s3->burnside_eval(0).rank() == 1);
  CHECK(s3->burnside_eval(1).labels == std::vector<SubId>{0, 1});

  // O(H) = {H} everywhere
  auto g = symmetric_group(3);
  std::map<SubId, std::vector<SubId>> own;
  for (SubId h = 0; h < g->subgroup_count(); ++h) own[h] = {h};
  MackeyCategory thin(MackeySystem::from_opens(g, {0, 1, 2, 3, 4, 5}, own));
  for (SubId h : thin.objects()) CHECK(thin.burnside_eval(h).rank() == 1);

  // C2 with the trivial family: B(G/1) = Z with trivial action
  MackeyCategory c2(MackeySystem::with_family(cyclic_group(2), {0}));
  CHECK(c2.adjoined_terminal());
  auto b = c2.burnside_module();
  b->check();
  CHECK(b->generators(0) == 1);
  for (std::size_t i = 0; i < 2; ++i) CHECK(b->action(0, 0, i) == IntMatrix{{1}});
}

TEST_CASE("with G in the family, the terminal object is represented by G/G") {
  for (auto g : corpus_groups()) {
    auto m = full(g);
    CHECK(m->terminal_matches_representable());
    auto t = m->terminal_module();
    auto r = m->representable(g->whole()).module;
    t->check();
    const auto& c = *m->skeleton();
    for (std::size_t x = 0; x < c.size(); ++x) {
      CHECK(t->generators(x) == r->generators(x));
      for (std::size_t y = 0; y < c.size(); ++y)
        for (std::size_t i = 0; i < c.rank(x, y); ++i) CHECK(t->action(x, y, i) == r->action(x, y, i));
    }
  }
}

TEST_CASE("homs out of a disjoint union split") {
  for (auto g : {cyclic_group(2), symmetric_group(3)}) {
    auto m = full(g);
    oracle::SpanOracle o(m->system());
    const auto& obj = m->objects();
    for (SubId a : obj)
      for (SubId b : obj)
        for (SubId x : obj) {
          CHECK(o.class_count({a, b}, {x}) == m->hom_rank(a, x) + m->hom_rank(b, x));
          CHECK(o.class_count({x}, {a, b}) == m->hom_rank(x, a) + m->hom_rank(x, b));
        }
  }
}

TEST_CASE("table of marks") {
  auto marks = table_of_marks(*symmetric_group(3));
  std::vector<std::vector<std::size_t>> expect{{6, 3, 2, 1}, {0, 1, 0, 1}, {0, 0, 2, 1}, {0, 0, 0, 1}};
  CHECK(marks == expect);
  auto c4 = table_of_marks(*cyclic_group(4));
  CHECK(c4.size() == 3);
}

TEST_CASE("invalid spans and objects") {
  auto s3 = full(symmetric_group(3));
  CHECK_THROWS_AS(s3->check_span({1, 4, 1, 0, 0}), InputError);  // C2 is not inside C3
  CHECK_THROWS_AS(s3->hom_basis(kTerminal, 0), InputError);
  MackeyCategory proper(MackeySystem::with_family(cyclic_group(4), {0, 1}));
  CHECK_THROWS_AS(proper.hom_basis(2, 2), InputError);
  CHECK_THROWS_AS(proper.object_index(2), InputError);
}
