#include <doctest.h>

#include <set>

#include "mackeylab/error.hpp"
#include "mackeylab/tower.hpp"
#include "oracles/spans.hpp"

using namespace mackeylab;

namespace {

// Subgroups of a cyclic group of order m are one per divisor.
std::size_t divisor_count(std::size_t m) {
  std::size_t c = 0;
  for (std::size_t d = 1; d <= m; ++d) c += m % d == 0;
  return c;
}

}  // namespace

TEST_CASE("homomorphisms") {
  auto c4 = cyclic_group(4), c2 = cyclic_group(2);
  Homomorphism p(c4, c2, {c2->generators()[0]});
  CHECK(p.surjective());
  CHECK(c2->subgroup(p.image(c4->whole())).order() == 2);
  CHECK(c4->subgroup(p.preimage(0)).order() == 2);
  auto s3 = symmetric_group(3);
  // S3 -> C2 sending every generator to the nontrivial element is the sign map only if
  // each generator is odd; a 3-cycle generator is not
  std::vector<Elem> img(s3->generators().size(), c2->generators()[0]);
  bool all_odd = true;
  for (Elem g : s3->generators()) all_odd = all_odd && s3->subgroup(s3->generated({g})).order() == 2;
  if (all_odd)
    CHECK(Homomorphism(s3, c2, img).surjective());
  else
    CHECK_THROWS_AS(Homomorphism(s3, c2, img), InputError);
  CHECK_THROWS_AS(Homomorphism(c2, c4, {c4->generators()[0]}), InputError);
}

TEST_CASE("towers and threads") {
  auto t = Tower::two_adic(4);
  CHECK(t->depth() == 4);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(t->level(n)->order() == (std::size_t{1} << n));
  CHECK_THROWS_AS(t->level(5), InputError);
  CHECK_THROWS_AS(Tower::two_adic(7), BoundExceeded);

  auto whole = ClosedThread::whole(*t);
  auto triv = ClosedThread::trivial(*t);
  whole.check(*t);
  triv.check(*t);
  ClosedThread bad{{0, 0, 2, 1, 0}};  // C2 at level 3 does not map onto C4 at level 2
  CHECK_THROWS_AS(bad.check(*t), InputError);

  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(open_neighborhoods(*t, whole, n) == std::vector<SubId>{t->level(n)->whole()});
    CHECK(open_neighborhoods(*t, triv, n).size() == divisor_count(std::size_t{1} << n));
  }
  CHECK(open_neighborhoods(*t, triv, 3).size() == 4);
  CHECK_THROWS_AS(open_neighborhoods(*t, triv, 5), InputError);
}

TEST_CASE("neighborhoods project onto neighborhoods") {
  auto t = Tower::two_adic(4);
  // a thread through the index-2 subgroups
  ClosedThread k{{0}};
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto& g = *t->level(n);
    for (SubId h = 0; h < g.subgroup_count(); ++h)
      if (g.subgroup(h).order() * 2 == g.order()) k.groups.push_back(h);
  }
  k.groups[1] = 0;
  k.check(*t);
  for (const auto& thread : {k, ClosedThread::trivial(*t)})
    for (std::size_t n = 0; n < 4; ++n) {
      std::set<SubId> up;
      for (SubId u : open_neighborhoods(*t, thread, n + 1)) up.insert(t->projection(n).image(u));
      auto here = open_neighborhoods(*t, thread, n);
      CHECK(up == std::set<SubId>(here.begin(), here.end()));
    }
}

TEST_CASE("connecting maps against the pullback oracle") {
  for (auto g : {cyclic_group(4), symmetric_group(3), cyclic_group(8)}) {
    MackeyCategory m(MackeySystem::full(g));
    oracle::SpanOracle o(m.system());
    const std::size_t n = g->subgroup_count();
    for (SubId u = 0; u < n; ++u)
      for (SubId v = 0; v < n; ++v) {
        if (!g->is_subgroup(v, u)) continue;
        for (SubId l = 0; l < n; ++l) {
          IntMatrix c = connecting_map(m, v, u, l);
          const auto& src = m.hom_basis(u, l);
          const auto& dst = m.hom_basis(v, l);
          oracle::RawSpan res{v, g->perm(0), g->perm(0)};
          for (std::size_t j = 0; j < src.size(); ++j) {
            IntVector expect(dst.size());
            oracle::RawSpan f{src[j].middle, g->perm(src[j].a), g->perm(src[j].b)};
            for (const auto& s : o.compose(u, f, res))
              for (std::size_t i = 0; i < dst.size(); ++i)
                if (o.equivalent(v, l, s, {dst[i].middle, g->perm(dst[i].a), g->perm(dst[i].b)})) expect[i] += 1;
            CHECK(c.column(j) == expect);
          }
          if (u == v) CHECK(c == IntMatrix::identity(src.size()));
        }
      }
  }
}

TEST_CASE("connecting maps compose") {
  auto t = Tower::two_adic(4);
  for (std::size_t lv = 0; lv <= 4; ++lv) {
    const auto& m = t->mackey(lv);
    const auto& g = *t->level(lv);
    const SubId n = g.subgroup_count();
    std::vector<SubId> ls;
    for (SubId l = 0; l < n; ++l) ls.push_back(l);
    ls.push_back(kTerminal);
    for (SubId u = 0; u < n; ++u)
      for (SubId v = 0; v < n; ++v)
        for (SubId w = 0; w < n; ++w) {
          if (!g.is_subgroup(w, v) || !g.is_subgroup(v, u)) continue;
          for (SubId l : ls) CHECK(connecting_map(m, w, u, l) == connecting_map(m, w, v, l) * connecting_map(m, v, u, l));
        }
  }
}

TEST_CASE("Burnside colimits") {
  auto t = Tower::two_adic(4);
  auto whole = colim_burnside(*t, ClosedThread::whole(*t), 4);
  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(whole.ranks[n] == divisor_count(std::size_t{1} << n));
    CHECK(whole.ranks[n] == table_of_marks(*t->level(n)).size());
  }
  CHECK_FALSE(whole.stabilized);
  CHECK(whole.growth() == std::vector<std::size_t>{1, 1, 1, 1});

  // B(G_n/1) is free on the trivial subgroup alone, and the maps are identities
  auto triv = colim_burnside(*t, ClosedThread::trivial(*t), 4);
  CHECK(triv.ranks == std::vector<std::size_t>(5, 1));
  for (const auto& c : triv.maps) CHECK(c == IntMatrix{{1}});
  CHECK(triv.stabilized);

  auto s3 = Tower::constant(symmetric_group(3), 3);
  auto c = colim_burnside(*s3, ClosedThread::whole(*s3), 3);
  CHECK(c.stabilized);
  CHECK(c.stable_from == 0);
  for (const auto& m : c.maps) CHECK(m == IntMatrix::identity(4));
  CHECK_THROWS_AS(colim_burnside(*t, ClosedThread::whole(*t), 5), InputError);
}

TEST_CASE("resolutions evaluated along a thread") {
  auto t = Tower::two_adic(4);
  auto r = resolve_levels(*t, 4, 2);
  for (const auto& k : {ClosedThread::trivial(*t), ClosedThread::whole(*t)}) {
    auto e = evaluate_resolution_at_thread(*t, r, k, 4);
    CHECK(e.ok());
    CHECK(e.exact.size() == 5);
  }
  auto e0 = evaluate_resolution_at_thread(*t, r, ClosedThread::whole(*t), 0);
  CHECK(e0.exact.size() == 1);
  CHECK(e0.ok());

  auto s3 = Tower::constant(symmetric_group(3), 1);
  auto rs = resolve_levels(*s3, 1, 2);
  CHECK(evaluate_resolution_at_thread(*s3, rs, ClosedThread::trivial(*s3), 1).ok());

  std::vector<Resolution> swapped{r[1], r[0]};
  CHECK_THROWS_AS(evaluate_resolution_at_thread(*t, swapped, ClosedThread::whole(*t), 1), InputError);
}
