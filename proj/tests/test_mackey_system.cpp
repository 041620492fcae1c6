#include <doctest.h>

#include "corpus.hpp"
#include "mackeylab/error.hpp"
#include "mackeylab/mackey_system.hpp"

using namespace mackeylab;

namespace {

// S3 lattice ids: 0 trivial, 1..3 the C2s, 4 C3, 5 S3
std::map<SubId, std::vector<SubId>> s3_opens(std::vector<SubId> top) {
  return {{0, {0}}, {1, {0, 1}}, {2, {0, 2}}, {3, {0, 3}}, {4, {0, 4}}, {5, top}};
}

std::vector<SubId> all_ids(const FiniteGroup& g) {
  std::vector<SubId> v(g.subgroup_count());
  for (SubId h = 0; h < v.size(); ++h) v[h] = h;
  return v;
}

GSetPtr hom(const GroupPtr& g, SubId h) { return std::make_shared<GSet>(GSet::homogeneous(g, h)); }

}  // namespace

TEST_CASE("full systems validate") {
  for (const auto& g : corpus_groups()) {
    auto s = MackeySystem::full(g);
    CHECK(s.validate().ok());
    CHECK(s.contains_group());
  }
}

TEST_CASE("proper subgroups of C4") {
  auto c4 = cyclic_group(4);
  auto s = MackeySystem::with_family(c4, {0, 1});
  CHECK(s.validate().ok());
  CHECK_FALSE(s.contains_group());
}

TEST_CASE("constructed violations") {
  auto s3 = symmetric_group(3);
  REQUIRE(s3->subgroup(4).order() == 3);
  auto fam = all_ids(*s3);

  auto two_axioms_broken = MackeySystem::from_opens(s3, fam, s3_opens({1, 4, 5}));
  auto r = two_axioms_broken.validate();
  REQUIRE(r.violates("iii"));
  CHECK(r.first("iii")->element.has_value());

  auto only_iii = MackeySystem::from_opens(s3, fam, s3_opens({0, 1, 4, 5}));
  auto r3 = only_iii.validate();
  CHECK(r3.violates("iii"));
  CHECK_FALSE(r3.violates("ii"));
  CHECK_FALSE(r3.violates("iv"));
  CHECK(r3.first("iii")->element.has_value());

  auto only_ii = MackeySystem::from_opens(s3, fam, s3_opens({4, 5}));
  auto r2 = only_ii.validate();
  CHECK(r2.violates("ii"));
  CHECK_FALSE(r2.violates("iii"));
  CHECK_FALSE(r2.violates("iv"));
  CHECK(r2.first("ii")->subgroups == std::vector<SubId>{5, 4, 0});

  std::map<SubId, std::vector<SubId>> o4 = {{0, {0}}, {1, {1}}, {2, {2}}, {3, {3}}, {4, {0, 4}}, {5, {1, 2, 3, 5}}};
  auto only_iv = MackeySystem::from_opens(s3, fam, o4);
  auto r4 = only_iv.validate();
  CHECK(r4.violates("iv"));
  CHECK_FALSE(r4.violates("ii"));
  CHECK_FALSE(r4.violates("iii"));

  auto no_v = MackeySystem::from_opens(s3, fam, s3_opens({0, 4}));
  CHECK(no_v.validate().violates("v"));
  CHECK_THROWS_AS(no_v.require_valid(), InputError);

  // family not closed under conjugation or intersection
  CHECK(MackeySystem::with_family(s3, {0, 1, 5}).validate().violates("family-conjugation"));
  CHECK(MackeySystem::with_family(s3, {1, 2, 3, 5}).validate().violates("family-intersection"));
  CHECK_THROWS_AS(MackeySystem::with_family(s3, {9}), InputError);
}

TEST_CASE("compressed input expands by conjugation") {
  auto s3 = symmetric_group(3);
  std::map<SubId, std::vector<SubId>> compressed = {{0, {0}}, {2, {0, 2}}, {4, {0, 4}}, {5, {0, 1, 2, 3, 4, 5}}};
  auto s = MackeySystem::from_opens(s3, all_ids(*s3), compressed);
  CHECK_FALSE(s.explicit_input());
  CHECK(s == MackeySystem::full(s3));
  std::map<SubId, std::vector<SubId>> two_keys = {{1, {1}}, {2, {2}}};
  CHECK_THROWS_AS(MackeySystem::from_opens(s3, {1, 2, 3}, two_keys), InputError);
}

TEST_CASE("system morphisms") {
  auto c2 = cyclic_group(2);
  auto full = MackeySystem::full(c2);
  auto bottom = hom(c2, 0), top = hom(c2, 1);
  auto q = maps_between_homogeneous(bottom, top).front();
  CHECK(full.is_system_morphism(identity_map(bottom)));
  CHECK(full.is_system_morphism(q));
  auto thin = MackeySystem::from_opens(c2, {0, 1}, {{0, {0}}, {1, {1}}});
  CHECK(thin.validate().ok());
  CHECK_FALSE(thin.is_system_morphism(q));
  CHECK(thin.is_system_morphism(identity_map(top)));
  auto only_trivial = MackeySystem::with_family(c2, {0});
  CHECK_THROWS_AS(only_trivial.is_system_morphism(q), InputError);
}

TEST_CASE("system morphisms compose and systems are conjugation invariant") {
  for (const auto& g : corpus_groups()) {
    if (g->order() > 24) continue;
    std::vector<MackeySystem> systems{MackeySystem::full(g)};
    // O(H) = {H}: the discrete-like extreme
    std::map<SubId, std::vector<SubId>> diag;
    for (SubId h = 0; h < g->subgroup_count(); ++h) diag[h] = {h};
    systems.push_back(MackeySystem::from_opens(g, all_ids(*g), diag));
    for (const auto& sys : systems) {
      REQUIRE(sys.validate().ok());
      for (Elem a = 0; a < g->order(); ++a) CHECK(sys.conjugated(a) == sys);
      std::vector<GSetPtr> objs;
      for (SubId h = 0; h < g->subgroup_count(); ++h) objs.push_back(hom(g, h));
      for (const auto& x : objs)
        for (const auto& y : objs)
          for (const auto& f : maps_between_homogeneous(x, y)) {
            if (!sys.is_system_morphism(f)) continue;
            for (const auto& z : objs)
              for (const auto& h : maps_between_homogeneous(y, z))
                if (sys.is_system_morphism(h)) CHECK(sys.is_system_morphism(compose(h, f)));
          }
    }
  }
}
