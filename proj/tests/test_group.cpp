#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "mackeylab/error.hpp"
#include "mackeylab/group.hpp"
#include "oracles/groups.hpp"

using namespace mackeylab;

namespace {

SubId find(const FiniteGroup& g, std::size_t order, std::size_t skip = 0) {
  for (SubId h = 0; h < g.subgroup_count(); ++h)
    if (g.subgroup(h).order() == order && skip-- == 0) return h;
  FAIL("no such subgroup");
  return 0;
}

}  // namespace

TEST_CASE("lattice sizes on literals") {
  auto t = trivial_group();
  CHECK(t->subgroup_count() == 1);
  CHECK(t->class_count() == 1);
  auto s3 = symmetric_group(3);
  CHECK(s3->order() == 6);
  CHECK(s3->subgroup_count() == 6);
  CHECK(s3->class_count() == 4);
  auto c4 = cyclic_group(4);
  CHECK(c4->subgroup_count() == 3);
  CHECK(c4->class_count() == 3);
  auto q8 = quaternion_group();
  CHECK(q8->order() == 8);
  CHECK(q8->subgroup_count() == 6);
  CHECK(q8->class_count() == 6);
  CHECK(dihedral_group(4)->class_count() == 8);
  CHECK(alternating_group(4)->class_count() == 5);
  CHECK(symmetric_group(4)->subgroup_count() == 30);
  CHECK(symmetric_group(4)->class_count() == 11);
}

TEST_CASE("lattice agrees with brute-force closure") {
  for (const auto& g : corpus_groups()) {
    CAPTURE(g->name());
    auto whole = oracle::group_of(*g);
    CHECK(whole.size() == g->order());
    auto subs = oracle::two_generated_subgroups(whole);
    CHECK(subs.size() == g->subgroup_count());
    CHECK(oracle::conjugacy_class_count(whole, subs) == g->class_count());
    for (SubId h = 0; h < g->subgroup_count(); ++h)
      CHECK(std::find(subs.begin(), subs.end(), oracle::subgroup_perms(*g, h)) != subs.end());
    CHECK(g->subgroup(g->trivial()).order() == 1);
    CHECK(g->subgroup(g->whole()).order() == g->order());
  }
}

TEST_CASE("classes, normalizers and conjugation") {
  for (const auto& g : corpus_groups()) {
    auto whole = oracle::group_of(*g);
    std::size_t total = 0;
    for (std::size_t c = 0; c < g->class_count(); ++c) {
      const auto& members = g->class_members(c);
      total += members.size();
      CHECK(g->class_rep(c) == members.front());
      SubId n = g->normalizer(members.front());
      CHECK(members.size() * g->subgroup(n).order() == g->order());
    }
    CHECK(total == g->subgroup_count());
    for (SubId h = 0; h < g->subgroup_count(); ++h) {
      auto n = oracle::normalizer(whole, oracle::subgroup_perms(*g, h));
      CHECK(n == oracle::subgroup_perms(*g, g->normalizer(h)));
      for (Elem a = 0; a < g->order(); ++a) CHECK(g->class_of(g->conjugate(h, a)) == g->class_of(h));
      auto w = g->weyl_group(h);
      CHECK(w->order() * g->subgroup(h).order() == n.size());
    }
  }
}

TEST_CASE("double cosets") {
  auto s3 = symmetric_group(3);
  SubId c2 = find(*s3, 2);
  auto d = s3->double_cosets(c2, 0, s3->whole(), c2, 0);
  auto sizes = d.sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 4});
  CHECK(s3->double_cosets(0, 0, s3->whole(), 0, 0).sizes == std::vector<std::size_t>(6, 1));
  CHECK(s3->double_cosets(s3->whole(), 0, s3->whole(), s3->whole(), 0).sizes.size() == 1);
  SubId c3 = find(*s3, 3);
  CHECK_THROWS_AS(s3->double_cosets(c2, 0, c3, 0, 0), InputError);

  for (const auto& g : corpus_groups()) {
    for (SubId k = 0; k < g->subgroup_count(); ++k)
      for (SubId a : g->subgroups_of(k))
        for (SubId b : g->subgroups_of(k)) {
          auto dc = g->double_cosets(a, 0, k, b, 0);
          std::size_t sum = 0;
          for (auto s : dc.sizes) sum += s;
          CHECK(sum == g->subgroup(k).order());
          auto mine = dc.sizes;
          std::sort(mine.begin(), mine.end());
          CHECK(mine == oracle::double_coset_sizes(oracle::subgroup_perms(*g, a), oracle::subgroup_perms(*g, k),
                                                   oracle::subgroup_perms(*g, b)));
        }
  }
}

TEST_CASE("weyl groups on literals") {
  auto s3 = symmetric_group(3);
  CHECK(s3->weyl_group(s3->whole())->order() == 1);
  CHECK(s3->weyl_group(find(*s3, 2))->order() == 1);
  CHECK(s3->weyl_group(s3->trivial())->order() == 6);
}

TEST_CASE("coset tables") {
  for (const auto& g : corpus_groups())
    for (SubId h = 0; h < g->subgroup_count(); ++h) {
      const auto& ct = g->cosets(h);
      CHECK(ct.index() * g->subgroup(h).order() == g->order());
      for (Elem x : g->subgroup(h).elements) CHECK(ct.coset_of[x] == 0);
      for (Elem a = 0; a < g->order(); ++a)
        for (Elem b = 0; b < g->order(); b += 3)
          for (std::uint32_t c = 0; c < ct.index(); ++c)
            CHECK(ct.act(g->mul(a, b), c) == ct.act(a, ct.act(b, c)));
    }
}

TEST_CASE("input validation and bounds") {
  CHECK_THROWS_AS(FiniteGroup::create(3, {{0, 0, 1}}), InputError);
  CHECK_THROWS_AS(FiniteGroup::create(3, {{0, 1}}), InputError);
  GroupLimits tight;
  tight.max_order = 5;
  CHECK_THROWS_AS(FiniteGroup::create(3, {{1, 0, 2}, {1, 2, 0}}, "s3", tight), BoundExceeded);
  GroupLimits lattice;
  lattice.max_subgroups = 4;
  auto s3 = FiniteGroup::create(3, {{1, 0, 2}, {1, 2, 0}}, "s3", lattice);
  CHECK_THROWS_AS(s3->subgroup_count(), BoundExceeded);
  CHECK(named_group("D4")->order() == 8);
  CHECK_THROWS_AS(named_group("x9"), InputError);
}
