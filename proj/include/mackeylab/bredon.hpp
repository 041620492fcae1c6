#pragma once

// The orbit category of a family: objects G/H for class representatives of
// the family, hom(G/H, G/K) free on the G-maps xH |-> x a K (one per coset aK
// fixed by H, in coset order).

#include <memory>
#include <vector>

#include "mackeylab/catmod.hpp"
#include "mackeylab/mackey_system.hpp"

namespace mackeylab {

class OrbitCategory {
 public:
  explicit OrbitCategory(MackeySystem system);

  const MackeySystem& system() const { return system_; }
  const GroupPtr& group() const { return system_.group(); }
  const std::vector<SubId>& objects() const { return objects_; }
  std::size_t object_index(SubId h) const;
  /// Object index of the class of any family member.
  std::size_t object_of(SubId h) const;
  const CatPtr& skeleton() const { return skeleton_; }

  /// The coset aK (index in cosets(K)) of basis map i in hom(x, y).
  std::uint32_t coset(std::size_t x, std::size_t y, std::size_t i) const { return cosets_[x][y][i]; }
  /// Representative a of that coset.
  Elem element(std::size_t x, std::size_t y, std::size_t i) const;
  /// Basis index of the map xH |-> x a K; a must satisfy H^a <= K.
  std::size_t map_index(std::size_t x, std::size_t y, Elem a) const;

  /// Z(-): Z everywhere, every map acting as 1.
  ModulePtr constant_module() const;
  /// Z[-, G/K], evaluating to Z[(G/K)^H].
  FreeModule projective_block(SubId k) const;

 private:
  MackeySystem system_;
  std::vector<SubId> objects_;
  std::vector<std::vector<std::vector<std::uint32_t>>> cosets_;
  std::vector<std::vector<std::vector<std::int64_t>>> index_;  // [x][y][coset] -> basis index or -1
  CatPtr skeleton_;
};

using OrbitPtr = std::shared_ptr<const OrbitCategory>;

/// Ext^k(Z(-), M(-)) over the orbit category.
ExtResult bredon_ext(const OrbitCategory& oc, const ModulePtr& m, std::size_t k, const ResolveOptions& opts = {});
/// Bounds on the projective dimension of Z(-).
ProjectiveDimension bredon_cd(const OrbitCategory& oc, std::size_t depth, const ResolveOptions& opts = {});

}  // namespace mackeylab
