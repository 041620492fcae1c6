#pragma once

// Finite G-sets as tagged disjoint unions of coset spaces and raw actions.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mackeylab/group.hpp"

namespace mackeylab {

struct Orbit {
  std::uint32_t representative;
  SubId stabilizer;
  std::size_t size;
};

class GSet {
 public:
  struct Part {
    std::optional<SubId> coset_space;  // G/H when set
    std::size_t size = 0;
    std::vector<std::uint32_t> action;  // raw parts: action[g * size + p]
  };

  GSet() = default;
  explicit GSet(GroupPtr g) : group_(std::move(g)) {}

  static GSet empty(GroupPtr g) { return GSet(std::move(g)); }
  static GSet homogeneous(GroupPtr g, SubId h);
  /// Raw action: action[g * size + p] is the image of point p under element g.
  static GSet raw(GroupPtr g, std::size_t size, std::vector<std::uint32_t> action);
  static GSet disjoint_union(const std::vector<GSet>& parts);

  const GroupPtr& group() const { return group_; }
  const std::vector<Part>& parts() const { return parts_; }
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.back(); }
  bool is_empty() const { return size() == 0; }
  bool is_homogeneous() const { return parts_.size() == 1 && parts_[0].coset_space.has_value(); }

  std::uint32_t act(Elem g, std::uint32_t p) const;
  /// (tag, index within part)
  std::pair<std::uint32_t, std::uint32_t> locate(std::uint32_t p) const;
  std::uint32_t point(std::uint32_t part, std::uint32_t index) const { return offsets_[part] + index; }

  const std::vector<Orbit>& orbits() const { return orbits_; }
  SubId stabilizer(std::uint32_t p) const;
  std::vector<std::uint32_t> fixed_points(SubId u) const;
  /// Sorted multiset of stabilizer conjugacy-class ids: a complete isomorphism invariant.
  std::vector<std::size_t> iso_signature() const;
  /// Checks the action axioms on all points; throws InvariantViolation.
  void check_action() const;

 private:
  void add_part(Part p);
  void decompose();

  GroupPtr group_;
  std::vector<Part> parts_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Orbit> orbits_;
};

using GSetPtr = std::shared_ptr<const GSet>;

struct GMap {
  GSetPtr source;
  GSetPtr target;
  std::vector<std::uint32_t> image;

  std::uint32_t operator()(std::uint32_t p) const { return image[p]; }
  /// Throws InvariantViolation naming a witness when f(g x) != g f(x).
  void check_equivariant() const;
  bool is_equivariant() const;
};

GMap compose(const GMap& f, const GMap& g);
GMap identity_map(const GSetPtr& x);

/// G/H -> G/K, xH |-> x a K; requires H^a <= K.
GMap homogeneous_map(const GSetPtr& gh, const GSetPtr& gk, Elem a);
/// One map per coset aK fixed by H (coset order).
std::vector<GMap> maps_between_homogeneous(const GSetPtr& gh, const GSetPtr& gk);
/// Element a with f(xH) = x a K, the least representative of f(H).
Elem map_element(const GMap& f);

std::vector<std::uint32_t> fixed_points(const GSet& x, SubId u);

struct PullbackSummand {
  SubId stabilizer;   // L ∩ v S v^{-1}
  Elem v;             // second projection x St |-> x v S; first is x St |-> x L
};

struct Pullback {
  GSetPtr set;
  GMap left;
  GMap right;
  std::vector<PullbackSummand> summands;  // empty for the general construction
};

/// Pullback of G/L -> G/K <- G/S by double cosets L^a \ K / S^b.
Pullback pullback_homogeneous(const GMap& f, const GMap& g);
/// Pullback as {(x, y) : f(x) = g(y)} with the diagonal action.
Pullback pullback_general(const GMap& f, const GMap& g);

}  // namespace mackeylab
