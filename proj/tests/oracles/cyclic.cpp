#include "oracles/cyclic.hpp"

#include "oracles/smith.hpp"

namespace oracle {

using mackeylab::Int;
using mackeylab::IntMatrix;

namespace {

// differential from degree k-1 to degree k, k >= 1
IntMatrix delta(const IntMatrix& t, long n, std::size_t k) {
  const std::size_t m = t.rows();
  IntMatrix id = IntMatrix::identity(m);
  if (k % 2 == 1) return t - id;
  IntMatrix norm(m, m), p = id;
  for (long i = 0; i < n; ++i) {
    norm = norm + p;
    p = p * t;
  }
  return norm;
}

}  // namespace

mackeylab::AbelianGroup cyclic_cohomology(const IntMatrix& t, long n, std::size_t k) {
  const std::size_t m = t.rows();
  auto out_inv = determinantal_invariants(delta(t, n, k + 1));
  std::vector<Int> in_inv;
  if (k > 0) in_inv = determinantal_invariants(delta(t, n, k));
  mackeylab::AbelianGroup g;
  g.rank = m - out_inv.size() - in_inv.size();
  for (const auto& d : in_inv)
    if (abs(d) > 1) g.torsion.push_back(abs(d));
  return g;
}

}  // namespace oracle
