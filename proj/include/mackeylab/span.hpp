#pragma once

// The Mackey category of a system: objects are the homogeneous sets G/H with
// H in the family, hom groups are free on basic spans G/H <-a- G/L -b-> G/K,
// composition is by pullback. A terminal object is adjoined when G is not in
// the family; it only ever appears as a target.

#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mackeylab/catmod.hpp"
#include "mackeylab/mackey_system.hpp"

namespace mackeylab {

inline constexpr SubId kTerminal = std::numeric_limits<SubId>::max();

/// Legs xL |-> x a H and xL |-> x b K, with L^a <= H and L^b <= K.
/// For target kTerminal, b is ignored.
struct BasicSpan {
  SubId source = 0;
  SubId target = 0;
  SubId middle = 0;
  Elem a = 0;
  Elem b = 0;

  friend bool operator==(const BasicSpan&, const BasicSpan&) = default;
};

/// Integer combination of the canonical basis of [source, target].
struct MackeyHom {
  SubId source = 0;
  SubId target = 0;
  IntVector coefficients;
};

struct BurnsideValue {
  SubId subgroup = 0;
  std::vector<SubId> labels;  // one L per basis element Z_L, L <= H up to H-conjugacy
  std::size_t rank() const { return labels.size(); }
};

class MackeyCategory {
 public:
  /// Requires a valid system.
  explicit MackeyCategory(MackeySystem system);

  const MackeySystem& system() const { return system_; }
  const GroupPtr& group() const { return system_.group(); }
  /// Conjugacy-class representatives of the family, in class order.
  const std::vector<SubId>& objects() const { return objects_; }
  std::size_t object_index(SubId h) const;
  bool adjoined_terminal() const { return !system_.contains_group(); }
  /// G/G when G is in the family, otherwise kTerminal.
  SubId terminal() const { return adjoined_terminal() ? kTerminal : group()->whole(); }

  /// Canonical basis of [G/H, G/K] (K may be kTerminal), for any H, K in the family.
  /// Canonical form: a = 1, then least (middle id, coset index of b) under H.
  const std::vector<BasicSpan>& hom_basis(SubId h, SubId k) const;
  std::size_t hom_rank(SubId h, SubId k) const { return hom_basis(h, k).size(); }
  /// Position of the class of s in hom_basis(s.source, s.target).
  std::size_t locate(const BasicSpan& s) const;
  /// Conjugacy and admissibility conditions; throws InputError("InvalidSpan").
  void check_span(const BasicSpan& s) const;
  /// Some c with L^c = L', aH = c a'H and bK = c b'K.
  bool span_equivalent(const BasicSpan& s, const BasicSpan& t) const;

  /// f o g for basic spans g in [H, K], f in [K, M]; coefficients over hom_basis(H, M).
  IntVector compose_basic(const BasicSpan& f, const BasicSpan& g) const;
  MackeyHom compose(const MackeyHom& f, const MackeyHom& g) const;
  MackeyHom identity(SubId h) const;
  MackeyHom basis_hom(SubId h, SubId k, std::size_t i) const;

  std::string span_string(const BasicSpan& s) const;
  std::string object_string(SubId h) const;

  /// The skeleton over objects(), built once.
  CatPtr skeleton() const;
  /// [-, G/K] as a free module; K must be an object.
  FreeModule representable(SubId k) const;
  /// B(G/H): one basis element per H-class of L in O(H).
  BurnsideValue burnside_eval(SubId h) const;
  /// B(-) = [-, terminal] as a module over skeleton(): representable when G is
  /// in the family, terminal_module() otherwise.
  ModulePtr burnside_module() const;
  /// Spans X <- Z -> * with the left leg admissible, acted on by precomposition.
  ModulePtr terminal_module() const;
  /// For G in the family, whether rank B(G/H) from H-classes of O(H) equals rank [G/H, G/G] on every object.
  bool terminal_matches_representable() const;

 private:
  struct HomTable {
    std::vector<BasicSpan> basis;
    std::map<std::pair<SubId, std::uint32_t>, std::size_t> index;  // (middle, coset of b) with a = 1
  };
  const HomTable& table(SubId h, SubId k) const;
  HomTable build_table(SubId h, SubId k) const;
  void check_object(SubId h, bool allow_terminal) const;

  MackeySystem system_;
  std::vector<SubId> objects_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<SubId, SubId>, std::unique_ptr<HomTable>> tables_;
  mutable std::once_flag skeleton_once_;
  mutable CatPtr skeleton_;
};

using MackeyPtr = std::shared_ptr<const MackeyCategory>;

/// |(G/K)^H| over subgroup class representatives.
std::vector<std::vector<std::size_t>> table_of_marks(const FiniteGroup& g);

}  // namespace mackeylab
