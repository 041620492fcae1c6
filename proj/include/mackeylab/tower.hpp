#pragma once

// Profinite groups modelled by inverse systems of finite quotients
// G_0 <- G_1 <- ... with surjective projections. A closed subgroup K is a
// thread (K_n), and the open subgroups containing K are cofinally the
// preimages of the K_n.

#include <memory>
#include <mutex>
#include <vector>

#include "mackeylab/catmod.hpp"
#include "mackeylab/span.hpp"

namespace mackeylab {

/// Homomorphism of enumerated groups, stored as an element table.
class Homomorphism {
 public:
  /// Extends the generator images; throws InputError("NotHomomorphism") when inconsistent.
  Homomorphism(GroupPtr source, GroupPtr target, const std::vector<Elem>& generator_images);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  Elem operator()(Elem g) const { return table_[g]; }
  bool surjective() const;
  SubId image(SubId h) const;
  SubId preimage(SubId k) const;

 private:
  GroupPtr source_, target_;
  std::vector<Elem> table_;
};

class Tower {
 public:
  static constexpr std::size_t kMaxDepth = 6;

  /// projections[n]: levels[n+1] -> levels[n], given by generator images;
  /// throws InputError("NotSurjective") or BoundExceeded past kMaxDepth.
  Tower(std::vector<GroupPtr> levels, const std::vector<std::vector<Elem>>& projections);

  /// C_1 <- C_2 <- C_4 <- ... <- C_{2^depth}.
  static std::shared_ptr<const Tower> two_adic(std::size_t depth);
  /// g <- g <- ... with identity projections.
  static std::shared_ptr<const Tower> constant(GroupPtr g, std::size_t depth);

  std::size_t depth() const { return levels_.size() - 1; }
  const GroupPtr& level(std::size_t n) const;
  const Homomorphism& projection(std::size_t n) const { return projections_.at(n); }
  /// Full Mackey system of level n, built on first use.
  const MackeyCategory& mackey(std::size_t n) const;

 private:
  std::vector<GroupPtr> levels_;
  std::vector<Homomorphism> projections_;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const MackeyCategory>> mackey_;
};

using TowerPtr = std::shared_ptr<const Tower>;

struct ClosedThread {
  std::vector<SubId> groups;  // one per level

  static ClosedThread whole(const Tower& t);
  static ClosedThread trivial(const Tower& t);
  /// projection(groups[n+1]) = groups[n]; throws InputError("IncompatibleThread").
  void check(const Tower& t) const;
};

/// Subgroups of level n containing K_n, in id order; InputError("DepthExceeded") past the tower.
std::vector<SubId> open_neighborhoods(const Tower& t, const ClosedThread& k, std::size_t n);

/// Precomposition with the restriction G/V -> G/U: [G/U, G/L] -> [G/V, G/L], columns
/// over hom_basis(U, L), rows over hom_basis(V, L). L may be kTerminal.
IntMatrix connecting_map(const MackeyCategory& m, SubId v, SubId u, SubId l);

struct ColimitReport {
  std::vector<std::vector<SubId>> labels;  // per level, the L of each basis element Z_L of B(G_n/K_n)
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> maps;  // maps[n]: level n -> level n+1, inflation then restriction
  bool stabilized = false;      // two consecutive maps are isomorphisms
  std::size_t stable_from = 0;

  std::vector<std::size_t> growth() const;  // rank differences between consecutive levels
};

/// The directed segment B(G_0/K_0) -> ... -> B(G_n/K_n) approximating B(G/K).
ColimitReport colim_burnside(const Tower& t, const ClosedThread& k, std::size_t depth);

struct ThreadEvaluation {
  std::vector<std::vector<std::size_t>> ranks;  // [level][degree]: rank of P_degree(G/K_n)
  std::vector<std::vector<bool>> exact;         // [level][degree], degree 0 includes the augmentation
  bool ok() const;
};

/// Free resolutions of B at levels 0..steps-1 of the tower.
std::vector<Resolution> resolve_levels(const Tower& t, std::size_t depth, std::size_t steps,
                                       const ResolveOptions& opts = {});
/// Evaluates each level's resolution at K_n. Throws InputError("IncompatibleResolution")
/// when a resolution is not over that level's Mackey category or does not resolve B.
ThreadEvaluation evaluate_resolution_at_thread(const Tower& t, const std::vector<Resolution>& r, const ClosedThread& k,
                                               std::size_t depth);

}  // namespace mackeylab
