#pragma once

// The functor sigma from the orbit category to the Mackey category, sending
// a G-map alpha: G/S -> G/K to the span G/S <-1- G/S -alpha-> G/K, and the
// induced restriction and induction of modules.

#include <memory>
#include <string>
#include <vector>

#include "mackeylab/bredon.hpp"
#include "mackeylab/span.hpp"

namespace mackeylab {

/// Induced module with the bookkeeping needed to map into and out of it.
/// The value at x is a simplification of the coend presentation whose
/// generators are a (x) g for a in the basis of [x, K] and g a generator of T(K).
struct Induced {
  ModulePtr source;  // T
  ModulePtr module;  // ind T
  std::vector<Presentation> coend;                   // per Mackey object, before simplification
  std::vector<PresentationChange> change;            // coend -> simplified
  std::vector<std::vector<std::size_t>> offsets;     // [x][K]: first coend coordinate of block K

  /// Coordinates in module->value(x) of (basis span j of [x, K]) (x) v.
  IntVector tensor(std::size_t x, std::size_t k, std::size_t j, const IntVector& v) const;
};

struct AdjunctionReport {
  AbelianGroup left;   // Hom(ind T, M)
  AbelianGroup right;  // Hom(T, res M)
  bool unit_natural = false;
  bool counit_natural = false;
  bool round_trips = false;  // both composites of the adjunction bijections are identities
  bool ok() const { return left == right && unit_natural && counit_natural && round_trips; }
};

class Transfer {
 public:
  /// Every G-map between objects must be a system morphism; throws
  /// InputError("NotAdmissible") otherwise.
  explicit Transfer(MackeySystem system);

  const OrbitPtr& orbit() const { return orbit_; }
  const MackeyPtr& mackey() const { return mackey_; }

  /// sigma of basis map i in hom_O(x, y), over the basis of [x, y].
  const IntVector& sigma(std::size_t x, std::size_t y, std::size_t i) const { return sigma_[x][y][i]; }
  /// sigma(f o g) = sigma(f) o sigma(g) on all composable basis pairs; throws InvariantViolation.
  void check_functor() const;

  ModulePtr restrict(const ModulePtr& m) const;
  ModuleMap restrict(const ModuleMap& f) const;

  /// Coend [-, sigma(?)] (x)_C T(?), relations a (x) alpha^*(m) ~ alpha_*(a) (x) m.
  Induced induce(const ModulePtr& t) const;
  ModuleMap induce(const ModuleMap& f, const Induced& source, const Induced& target) const;
  /// Closed form: at G/H, the sum over H-classes of L in O(H) of Z (x)_{N_H(L)/L} T(G/L).
  std::vector<AbelianGroup> induce_closed_form(const ModulePtr& t) const;

  /// T -> res ind T, m |-> [id] (x) m.
  ModuleMap unit(const Induced& ind) const;
  /// ind res M -> M, a (x) m |-> M(a) m; `ind` must be induce(restrict(M)).
  ModuleMap counit(const ModulePtr& m, const Induced& ind) const;
  AdjunctionReport adjunction_check(const ModulePtr& t, const ModulePtr& m) const;

  /// ind Z(-) -> B(-), a (x) 1 |-> [G/K <-1- G/K -> *] o a; `ind` must be induce(constant_module()).
  ModuleMap burnside_comparison(const Induced& ind) const;

  struct InducedComplex {
    std::vector<Induced> terms;
    std::vector<ModuleMap> differentials;  // differentials[k-1]: ind P_k -> ind P_{k-1}
    ModuleMap augmentation;                // ind P_0 -> B
    bool exact = false;
    std::string failure;  // first failing object and degree
  };
  /// ind of a free resolution of Z(-), augmented to B(-) and checked for exactness objectwise.
  InducedComplex induce_resolution(const Resolution& r) const;

  struct ExtPair {
    AbelianGroup mackey;  // Ext^k(B, M)
    AbelianGroup bredon;  // Ext^k(Z, res M)
  };
  ExtPair compare_ext(const ModulePtr& m, std::size_t k, const ResolveOptions& opts = {}) const;

 private:
  MackeySystem system_;
  OrbitPtr orbit_;
  MackeyPtr mackey_;
  std::vector<std::vector<std::vector<IntVector>>> sigma_;
};

/// Whether f is an isomorphism at every object (kernel and cokernel vanish).
bool is_isomorphism(const ModuleMap& f);

}  // namespace mackeylab
