#pragma once

// Exact linear algebra over the integers: echelon forms, Smith normal form,
// kernels, lattice membership and finitely presented abelian groups.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mackeylab/integer.hpp"

namespace mackeylab {

/// A * transform = echelon; the first `rank` columns of `echelon` are
/// nonzero with strictly increasing pivot rows, the remaining columns vanish.
struct ColumnEchelon {
  IntMatrix echelon;
  IntMatrix transform;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank = 0;
};

ColumnEchelon column_echelon(const IntMatrix& a, bool with_transform = true);

/// Basis (as columns) of the integer solutions of A x = 0.
IntMatrix kernel_basis(const IntMatrix& a);

/// Basis (as columns) of the lattice spanned by the columns of `generators`.
IntMatrix lattice_basis(const IntMatrix& generators);

/// Rank over the rationals.
std::size_t rank(const IntMatrix& a);

/// Rank over a 61-bit prime field. A cheap heuristic only; never used where
/// exactness matters.
std::size_t rank_mod_p(const IntMatrix& a);

/// Solves B c = v for a lattice basis B (full column rank).
class LatticeSolver {
 public:
  LatticeSolver() = default;
  explicit LatticeSolver(const IntMatrix& basis);

  std::size_t ambient_dimension() const noexcept { return ambient_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::optional<IntVector> solve(const IntVector& v) const;
  bool contains(const IntVector& v) const { return solve(v).has_value(); }
  /// Solves column by column; throws InvariantViolation when some column is
  /// outside the lattice.
  IntMatrix solve_columns(const IntMatrix& v) const;
  bool contains_columns(const IntMatrix& v) const;

 private:
  std::size_t ambient_ = 0;
  std::size_t dim_ = 0;
  IntMatrix upper_;      // dim x dim upper triangular
  IntMatrix row_ops_;    // ambient x ambient unimodular, row_ops * B = [upper; 0]
};

/// left * A * right = diag(diagonal) with d_1 | d_2 | ... and all d_i > 0.
struct SmithForm {
  std::vector<Int> diagonal;
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix right;
  IntMatrix right_inverse;
};

enum class SmithTransforms { None, Left, Right, All };

SmithForm smith_normal_form(const IntMatrix& a, SmithTransforms which = SmithTransforms::All);

/// Finitely generated abelian group Z^rank + Z/t_1 + ... with t_1 | t_2 | ...
struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<Int> torsion;

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  std::size_t generator_count() const { return rank + torsion.size(); }
  std::string to_string() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

AbelianGroup make_group(std::size_t rank, std::vector<long> torsion = {});

/// Z^generators / (column span of relations).
AbelianGroup cokernel_group(std::size_t generators, const IntMatrix& relations);

/// outer / inner, where inner (given by generators) lies in the lattice
/// spanned by the basis `outer`.
AbelianGroup lattice_quotient(const IntMatrix& outer_basis, const IntMatrix& inner_generators);

/// Z^generators / im(relations); relations has `generators` rows.
struct Presentation {
  std::size_t generators = 0;
  IntMatrix relations;

  Presentation() : relations(0, 0) {}
  explicit Presentation(std::size_t gens) : generators(gens), relations(gens, 0) {}
  Presentation(std::size_t gens, IntMatrix rel);

  bool is_free() const { return relations.cols() == 0 || relations.is_zero(); }
  AbelianGroup group() const { return cokernel_group(generators, relations); }
  /// True when every column of `v` lies in the relation lattice.
  bool vanishes(const IntMatrix& v) const;
  bool vanishes(const IntVector& v) const;
  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.generators == b.generators && a.relations == b.relations;
  }
};

/// A presentation in Smith form with maps between old and new generators:
/// to_new * to_old = identity, and to_old * to_new agrees with the identity
/// modulo the old relations.
struct PresentationChange {
  Presentation simplified;
  IntMatrix to_new;
  IntMatrix to_old;
};

PresentationChange simplify(const Presentation& p);

/// Lattice {v : map * v in im(target_relations)} as a basis of columns.
IntMatrix preimage_lattice(const IntMatrix& map, const IntMatrix& target_relations);

/// Cohomology at the middle of  C_prev --incoming--> C --outgoing--> C_next,
/// all finitely presented. Matrices act on generator coordinates.
AbelianGroup cohomology(const IntMatrix& incoming, const Presentation& middle, const IntMatrix& outgoing,
                        const Presentation& next);

/// Exactness of C_prev -> C -> C_next at C (given d∘d = 0 modulo relations).
bool is_exact_at(const IntMatrix& incoming, const Presentation& middle, const IntMatrix& outgoing,
                 const Presentation& next);

}  // namespace mackeylab
