#include "mackeylab/bredon.hpp"

#include <algorithm>

#include "mackeylab/error.hpp"

namespace mackeylab {

OrbitCategory::OrbitCategory(MackeySystem system) : system_(std::move(system)) {
  system_.require_valid();
  objects_ = system_.object_reps();
  const auto& g = *group();
  const std::size_t n = objects_.size();
  cosets_.assign(n, std::vector<std::vector<std::uint32_t>>(n));
  index_.assign(n, std::vector<std::vector<std::int64_t>>(n));
  std::vector<std::vector<std::size_t>> ranks(n, std::vector<std::size_t>(n));
  std::vector<std::size_t> ids(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& ck = g.cosets(objects_[y]);
      index_[x][y].assign(ck.index(), -1);
      for (std::uint32_t c = 0; c < ck.index(); ++c) {
        bool fixed = true;
        for (Elem s : g.subgroup(objects_[x]).generators)
          if (ck.act(s, c) != c) {
            fixed = false;
            break;
          }
        if (!fixed) continue;
        index_[x][y][c] = static_cast<std::int64_t>(cosets_[x][y].size());
        cosets_[x][y].push_back(c);
      }
      ranks[x][y] = cosets_[x][y].size();
      if (x == y) ids[x] = static_cast<std::size_t>(index_[x][x][0]);
    }
  std::vector<std::string> labels;
  for (SubId h : objects_) labels.push_back("G/" + std::to_string(h));
  skeleton_ = std::make_shared<SkeletonCategory>(
      labels, ranks, ids, [this](std::size_t x, std::size_t y, std::size_t z, std::size_t f, std::size_t gi) {
        // xH -> x a K -> x a b M
        const auto& grp = *group();
        Elem ab = grp.mul(element(x, y, gi), element(y, z, f));
        return unit_vector(cosets_[x][z].size(), map_index(x, z, ab));
      });
}

std::size_t OrbitCategory::object_index(SubId h) const {
  auto it = std::find(objects_.begin(), objects_.end(), h);
  if (it == objects_.end()) throw InputError("UnknownObject", "G/" + std::to_string(h) + " is not an object of the orbit category");
  return static_cast<std::size_t>(it - objects_.begin());
}

std::size_t OrbitCategory::object_of(SubId h) const {
  if (!system_.in_family(h)) throw InputError("UnknownObject", "subgroup " + std::to_string(h) + " is not in the family");
  return object_index(group()->class_rep(group()->class_of(h)));
}

Elem OrbitCategory::element(std::size_t x, std::size_t y, std::size_t i) const {
  return group()->cosets(objects_[y]).reps[cosets_[x][y][i]];
}

std::size_t OrbitCategory::map_index(std::size_t x, std::size_t y, Elem a) const {
  auto c = group()->cosets(objects_[y]).coset_of[a];
  auto i = index_[x][y][c];
  if (i < 0) throw InputError("NotSubconjugate", "no G-map G/" + std::to_string(objects_[x]) + " -> G/" + std::to_string(objects_[y]) + " for this element");
  return static_cast<std::size_t>(i);
}

ModulePtr OrbitCategory::constant_module() const {
  const std::size_t n = objects_.size();
  CatModule::Actions a(n, std::vector<std::vector<IntMatrix>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) a[x][y].assign(cosets_[x][y].size(), IntMatrix{{1}});
  return std::make_shared<CatModule>(skeleton_, std::vector<Presentation>(n, Presentation(1)), std::move(a));
}

FreeModule OrbitCategory::projective_block(SubId k) const { return free_module(skeleton_, {object_of(k)}); }

ExtResult bredon_ext(const OrbitCategory& oc, const ModulePtr& m, std::size_t k, const ResolveOptions& opts) {
  if (m->category() != oc.skeleton()) throw InputError("CategoryMismatch", "module is not over this orbit category");
  return ext(oc.constant_module(), m, k, opts);
}

ProjectiveDimension bredon_cd(const OrbitCategory& oc, std::size_t depth, const ResolveOptions& opts) {
  return projective_dimension(oc.constant_module(), depth, opts);
}

}  // namespace mackeylab
