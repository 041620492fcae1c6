#pragma once

// Contravariant modules over a finite skeleton whose hom objects are free
// abelian on given bases. M(phi): M(y) -> M(x) for phi in hom(x, y), so
// M(f o g) = M(g) M(f).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mackeylab/linalg.hpp"

namespace mackeylab {

class SkeletonCategory {
 public:
  /// coefficients of f o g in hom(x, z), for f in hom(y, z), g in hom(x, y)
  using ComposeFn = std::function<IntVector(std::size_t x, std::size_t y, std::size_t z, std::size_t f, std::size_t g)>;

  SkeletonCategory(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> ranks,
                   std::vector<std::size_t> identities, const ComposeFn& compose);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t x) const { return labels_.at(x); }
  std::size_t rank(std::size_t x, std::size_t y) const { return ranks_[x][y]; }
  std::size_t identity(std::size_t x) const { return identities_[x]; }
  const IntVector& compose(std::size_t x, std::size_t y, std::size_t z, std::size_t f, std::size_t g) const;

  /// Global numbering of basis morphisms, ordered by (x, y, i).
  std::size_t morphism_count() const { return offsets_.back(); }
  std::size_t morphism_index(std::size_t x, std::size_t y, std::size_t i) const { return offsets_[x * size() + y] + i; }
  struct MorphismRef {
    std::size_t source, target, index;
  };
  MorphismRef morphism(std::size_t global) const;
  std::size_t find_object(const std::string& label) const;

  /// Associativity on all composable basis triples and two-sided units;
  /// throws InvariantViolation.
  void check_axioms() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> ranks_;
  std::vector<std::size_t> identities_;
  std::vector<std::vector<IntVector>> table_;  // [(x*n+y)*n+z][f * rank(x,y) + g]
  std::vector<std::size_t> offsets_;
};

using CatPtr = std::shared_ptr<const SkeletonCategory>;

class CatModule {
 public:
  using Actions = std::vector<std::vector<std::vector<IntMatrix>>>;  // [x][y][i]: gens(x) x gens(y)

  CatModule() = default;
  CatModule(CatPtr cat, std::vector<Presentation> values, Actions actions);
  static CatModule zero(CatPtr cat);

  const CatPtr& category() const { return cat_; }
  const Presentation& value(std::size_t x) const { return values_.at(x); }
  std::size_t generators(std::size_t x) const { return values_.at(x).generators; }
  const IntMatrix& action(std::size_t x, std::size_t y, std::size_t i) const { return actions_[x][y][i]; }
  /// M(sum c_i phi_i)
  IntMatrix action_of(std::size_t x, std::size_t y, const IntVector& coeffs) const;
  AbelianGroup group(std::size_t x) const { return values_.at(x).group(); }
  bool is_zero() const;
  std::size_t total_generators() const;
  const std::vector<Presentation>& values() const { return values_; }
  const Actions& actions() const { return actions_; }

  /// Shapes, relation preservation, identities and contravariant composition;
  /// throws InvariantViolation with a witness.
  void check() const;

 private:
  CatPtr cat_;
  std::vector<Presentation> values_;
  Actions actions_;
};

using ModulePtr = std::shared_ptr<const CatModule>;

/// Free module on a list of generator objects: value at x is the direct sum
/// of Z[hom(x, y_j)], blocks in generator order.
struct FreeModule {
  std::vector<std::size_t> generators;
  std::vector<std::vector<std::size_t>> offsets;  // [x][j]: first coordinate of block j in value(x)
  ModulePtr module;

  /// Coordinate of the identity of generator j at its own object.
  std::size_t generator_coordinate(std::size_t j) const;
};

FreeModule free_module(const CatPtr& cat, const std::vector<std::size_t>& generators);

struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  std::vector<IntMatrix> components;  // per object: gens(target) x gens(source)

  /// Throws InvariantViolation("NotNatural") naming the failing square.
  void check() const;
  bool is_natural() const;
  bool is_surjective() const;
  bool is_zero() const;
};

ModuleMap identity_map(const ModulePtr& m);
ModuleMap zero_map(const ModulePtr& source, const ModulePtr& target);
/// f o g
ModuleMap compose(const ModuleMap& f, const ModuleMap& g);
/// Map out of a free module sending generator j to images[j] in target(y_j).
ModuleMap yoneda_map(const FreeModule& free, const ModulePtr& target, const std::vector<IntVector>& images);
/// Equal as maps, i.e. componentwise modulo the target relations.
bool maps_equal(const ModuleMap& f, const ModuleMap& g);

struct SubmoduleResult {
  ModulePtr module;
  ModuleMap map;  // inclusion (kernel) or projection (cokernel)
};

SubmoduleResult kernel(const ModuleMap& f);
SubmoduleResult cokernel(const ModuleMap& f);
ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b);

enum class CoverStrategy {
  Greedy,  // pick generators by largest gain in image rank, then prune
  Naive,   // one generator per presentation generator per object
};

struct ResolveOptions {
  std::size_t max_rank = 5000;
  CoverStrategy strategy = CoverStrategy::Greedy;
};

struct Cover {
  FreeModule free;
  ModuleMap map;
};

Cover free_cover(const ModulePtr& m, const ResolveOptions& opts = {});

struct Resolution {
  ModulePtr target;
  std::vector<FreeModule> modules;       // P_0 .. P_n
  std::vector<ModuleMap> differentials;  // differentials[k-1] : P_k -> P_{k-1}
  ModuleMap augmentation;                // P_0 -> M
  std::vector<ModulePtr> syzygies;       // syzygies[k] = ker(P_k -> P_{k-1} or M)
  bool terminated = false;               // some syzygy vanished: P_{n+1} = 0

  std::size_t length() const { return modules.size() - 1; }
  /// d o d = 0 and exactness at every object and step; throws InvariantViolation.
  void check() const;
};

/// Builds P_0 .. P_steps, stopping early when a syzygy vanishes.
Resolution resolve(const ModulePtr& m, std::size_t steps, const ResolveOptions& opts = {});

struct HomComplexTerm {
  Presentation group;  // Hom(P_k, N) as the sum of N(y_g)
  IntMatrix incoming;  // Hom(P_{k-1}, N) -> Hom(P_k, N)
};

/// Hom(P_k, N) and its incoming differential for k = 0..length.
std::vector<HomComplexTerm> hom_complex(const Resolution& r, const ModulePtr& n);

struct ExtResult {
  std::size_t degree = 0;
  AbelianGroup group;
};

/// Cohomology of Hom(P_*, N) at degree k; the resolution must reach P_{k+1}
/// or be terminated.
ExtResult ext_from(const Resolution& r, const ModulePtr& n, std::size_t k);
ExtResult ext(const ModulePtr& m, const ModulePtr& n, std::size_t k, const ResolveOptions& opts = {});

struct HomResult {
  AbelianGroup group;
  std::vector<ModuleMap> generators;  // torsion generators first (in torsion order), then free ones
};

/// Hom(M, N) by solving naturality directly.
HomResult hom(const ModulePtr& m, const ModulePtr& n);

struct ProjectiveDimension {
  std::size_t lower = 0;
  std::optional<std::size_t> upper;  // none: unbounded within the configured depth
  bool exact() const { return upper && *upper == lower; }
  std::string to_string() const;
};

/// Certified bounds: Ext^k(M, syzygy_k) != 0 iff pd >= k, and a terminating
/// resolution bounds pd from above.
ProjectiveDimension projective_dimension(const ModulePtr& m, std::size_t depth, const ResolveOptions& opts = {});

}  // namespace mackeylab
