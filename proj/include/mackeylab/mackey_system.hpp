#pragma once

// Mackey systems (C, O): a family of subgroups closed under conjugation and
// intersection, and for each H in C a subfamily O(H) of C(H).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mackeylab/group.hpp"
#include "mackeylab/gset.hpp"

namespace mackeylab {

struct Violation {
  std::string axiom;  // "family-conjugation", "family-intersection", "containment", "i" .. "v"
  std::string message;
  std::vector<SubId> subgroups;
  std::optional<Elem> element;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(const std::string& axiom) const;
  const Violation* first(const std::string& axiom) const;
};

class MackeySystem {
 public:
  MackeySystem() = default;

  /// C = all subgroups, O(H) = C(H).
  static MackeySystem full(GroupPtr g);
  /// Given family with O(H) = C(H).
  static MackeySystem with_family(GroupPtr g, const std::vector<SubId>& family);
  /// Explicit O for every member of the family, or compressed input giving O
  /// on exactly one member of each conjugacy class (expanded by conjugation).
  static MackeySystem from_opens(GroupPtr g, const std::vector<SubId>& family,
                                 const std::map<SubId, std::vector<SubId>>& opens);

  const GroupPtr& group() const { return group_; }
  bool in_family(SubId h) const { return h < family_.size() && family_[h]; }
  bool is_open(SubId h, SubId u) const { return in_family(h) && opens_[h][u]; }
  bool contains_group() const { return in_family(group_->whole()); }
  std::vector<SubId> family() const;
  std::vector<SubId> opens(SubId h) const;
  bool explicit_input() const { return explicit_; }

  /// Conjugacy-class representatives of the family (least id), in class order.
  std::vector<SubId> object_reps() const;

  /// Every violated closure condition and axiom, each with a witness.
  ValidationReport validate() const;
  /// Throws InputError("InvalidSystem") naming the first violation.
  void require_valid() const;

  /// G_x in O(G_{f(x)}) for one point per source orbit.
  bool is_system_morphism(const GMap& f) const;

  MackeySystem conjugated(Elem g) const;
  friend bool operator==(const MackeySystem& a, const MackeySystem& b) {
    return a.group_ == b.group_ && a.family_ == b.family_ && a.opens_ == b.opens_;
  }

 private:
  GroupPtr group_;
  std::vector<bool> family_;
  std::vector<std::vector<bool>> opens_;
  bool explicit_ = false;
};

}  // namespace mackeylab
