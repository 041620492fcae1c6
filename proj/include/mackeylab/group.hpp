#pragma once

// Permutation groups with a fully enumerated element set and subgroup lattice.
//
// Conventions: (a*b)(x) = a(b(x)); groups act on the left; H^a = a^{-1} H a;
// cosets are left cosets aH.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace mackeylab {

using Perm = std::vector<std::uint32_t>;
using Elem = std::uint32_t;
using SubId = std::uint32_t;

struct GroupLimits {
  std::size_t max_order = 10000;
  std::size_t max_subgroups = 1000;

  /// Defaults, with MACKEYLAB_MAX_LATTICE overriding max_subgroups.
  static GroupLimits from_environment();
};

struct Subgroup {
  SubId id = 0;
  std::vector<Elem> elements;  // sorted
  std::vector<Elem> generators;
  std::vector<bool> member;    // indexed by element

  std::size_t order() const { return elements.size(); }
  bool contains(Elem g) const { return member[g]; }
};

/// Left cosets aH, numbered by their least element; coset 0 is H itself.
struct CosetTable {
  SubId subgroup = 0;
  std::vector<std::uint32_t> coset_of;  // per element
  std::vector<Elem> reps;               // least element of each coset
  std::vector<std::uint32_t> action;    // action[g * index + c] = coset of g*reps[c]

  std::size_t index() const { return reps.size(); }
  std::uint32_t act(Elem g, std::uint32_t c) const { return action[g * reps.size() + c]; }
};

struct DoubleCosets {
  std::vector<Elem> representatives;  // least element of each double coset
  std::vector<std::size_t> sizes;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  static GroupPtr create(std::size_t degree, std::vector<Perm> generators, std::string name = "",
                         GroupLimits limits = GroupLimits::from_environment());

  const std::string& name() const { return name_; }
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& generator_perms() const { return generator_perms_; }
  const std::vector<Elem>& generators() const { return generators_; }
  const GroupLimits& limits() const { return limits_; }

  const Perm& perm(Elem g) const { return elements_[g]; }
  std::optional<Elem> find(const Perm& p) const;
  Elem index_of(const Perm& p) const;
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const { return inverse_[a]; }
  /// a^{-1} x a
  Elem conj(Elem x, Elem a) const { return mul(inverse_[a], mul(x, a)); }
  std::string element_string(Elem g) const;

  // Subgroup lattice: ids sorted by (order, element list); 0 is trivial, last is G.
  std::size_t subgroup_count() const;
  const Subgroup& subgroup(SubId id) const;
  SubId trivial() const { return 0; }
  SubId whole() const;
  std::optional<SubId> find_subgroup(std::vector<Elem> elements) const;
  SubId generated(const std::vector<Elem>& gens) const;

  std::size_t class_count() const;
  std::size_t class_of(SubId h) const;
  SubId class_rep(std::size_t cls) const;
  const std::vector<SubId>& class_members(std::size_t cls) const;

  bool is_subgroup(SubId a, SubId b) const;
  /// All subgroups of `h`, in id order.
  std::vector<SubId> subgroups_of(SubId h) const;
  SubId conjugate(SubId h, Elem a) const;
  /// Some a with h^a = k.
  std::optional<Elem> conjugator(SubId h, SubId k) const;
  /// Some a with h^a <= k.
  std::optional<Elem> subconjugator(SubId h, SubId k) const;
  SubId intersect(SubId a, SubId b) const;
  SubId normalizer(SubId h) const;
  const CosetTable& cosets(SubId h) const;

  /// Partition of K into the double cosets A^g x B^h; requires A^g, B^h <= K.
  DoubleCosets double_cosets(SubId a, Elem g, SubId k, SubId b, Elem h) const;

  /// N_G(H)/H acting on the cosets of H in N_G(H) (in coset-table order).
  GroupPtr weyl_group(SubId h) const;

 private:
  FiniteGroup() = default;
  void enumerate();
  void build_lattice() const;
  Subgroup close(std::vector<Elem> gens) const;
  void check_id(SubId h) const;
  const std::vector<SubId>& conj_table(SubId h) const;

  std::string name_;
  std::size_t degree_ = 0;
  GroupLimits limits_;
  std::vector<Perm> generator_perms_;
  std::vector<Elem> generators_;
  std::vector<Perm> elements_;
  std::vector<Elem> inverse_;
  std::vector<Elem> table_;  // multiplication table when small
  struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
  };
  std::unordered_map<Perm, Elem, PermHash> index_;

  mutable std::once_flag lattice_once_;
  mutable std::vector<Subgroup> subgroups_;
  mutable std::map<std::vector<Elem>, SubId> subgroup_index_;
  mutable std::vector<std::size_t> class_of_;
  mutable std::vector<std::vector<SubId>> classes_;
  mutable std::vector<std::vector<bool>> contained_;  // contained_[b][a]: a <= b

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<SubId, std::unique_ptr<std::vector<SubId>>> conj_tables_;
  mutable std::unordered_map<SubId, std::unique_ptr<CosetTable>> coset_tables_;
  mutable std::map<std::pair<SubId, SubId>, SubId> intersections_;
};

// Small catalogue used by tests and the CLI.
GroupPtr cyclic_group(std::size_t n);
GroupPtr dihedral_group(std::size_t n);  // order 2n
GroupPtr symmetric_group(std::size_t n);
GroupPtr alternating_group(std::size_t n);
GroupPtr quaternion_group();
GroupPtr trivial_group();
/// Looks up names such as "c4", "s3", "d4", "q8", "a4", "trivial".
GroupPtr named_group(const std::string& name);

}  // namespace mackeylab
