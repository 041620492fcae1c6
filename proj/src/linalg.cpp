#include "mackeylab/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "mackeylab/error.hpp"

namespace mackeylab {

namespace {

using Column = IntVector;

int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// col_dst -= q * col_src, restricted to rows [from, end).
void sub_mul(Column& dst, const Column& src, const Int& q, std::size_t from) {
  for (std::size_t r = from; r < dst.size(); ++r)
    if (sgn(src[r]) != 0) mpz_submul(dst[r].get_mpz_t(), q.get_mpz_t(), src[r].get_mpz_t());
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& a, bool with_transform) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<Column> cols = a.column_vectors();
  std::vector<Column> t;
  if (with_transform) {
    t.reserve(n);
    for (std::size_t j = 0; j < n; ++j) t.push_back(unit_vector(n, j));
  }
  ColumnEchelon out;
  std::size_t p = 0;
  Int q;
  for (std::size_t i = 0; i < m && p < n; ++i) {
    bool pivot = false;
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = p; j < n; ++j) {
        if (sgn(cols[j][i]) == 0) continue;
        if (best == n || cmpabs(cols[j][i], cols[best][i]) < 0) best = j;
      }
      if (best == n) break;
      pivot = true;
      if (best != p) {
        std::swap(cols[best], cols[p]);
        if (with_transform) std::swap(t[best], t[p]);
      }
      bool clean = true;
      for (std::size_t j = p + 1; j < n; ++j) {
        if (sgn(cols[j][i]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), cols[j][i].get_mpz_t(), cols[p][i].get_mpz_t());
        sub_mul(cols[j], cols[p], q, i);
        if (with_transform) sub_mul(t[j], t[p], q, 0);
        if (sgn(cols[j][i]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (pivot) {
      out.pivot_rows.push_back(i);
      ++p;
    }
  }
  out.rank = p;
  out.echelon = IntMatrix::from_columns(m, cols);
  if (with_transform) out.transform = IntMatrix::from_columns(n, t);
  return out;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return IntMatrix::identity(n);
  ColumnEchelon e = column_echelon(a, true);
  std::vector<std::size_t> idx;
  for (std::size_t j = e.rank; j < n; ++j) idx.push_back(j);
  return e.transform.select_columns(idx);
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  ColumnEchelon e = column_echelon(generators, false);
  std::vector<std::size_t> idx(e.rank);
  for (std::size_t j = 0; j < e.rank; ++j) idx[j] = j;
  return e.echelon.select_columns(idx);
}

std::size_t rank(const IntMatrix& a) { return column_echelon(a, false).rank; }

std::size_t rank_mod_p(const IntMatrix& a) {
  constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<std::uint64_t>> rows(m, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int r;
      mpz_fdiv_r_ui(r.get_mpz_t(), a(i, j).get_mpz_t(), static_cast<unsigned long>(p));
      rows[i][j] = r.get_ui();
    }
  auto mulmod = [](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  std::size_t rk = 0;
  for (std::size_t j = 0; j < n && rk < m; ++j) {
    std::size_t piv = m;
    for (std::size_t i = rk; i < m; ++i)
      if (rows[i][j]) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    std::swap(rows[piv], rows[rk]);
    std::uint64_t inv = powmod(rows[rk][j], p - 2);
    for (std::size_t i = rk + 1; i < m; ++i) {
      if (!rows[i][j]) continue;
      std::uint64_t f = mulmod(rows[i][j], inv);
      for (std::size_t k = j; k < n; ++k) {
        std::uint64_t sub = mulmod(f, rows[rk][k]);
        rows[i][k] = rows[i][k] >= sub ? rows[i][k] - sub : rows[i][k] + p - sub;
      }
    }
    ++rk;
  }
  return rk;
}

LatticeSolver::LatticeSolver(const IntMatrix& basis) : ambient_(basis.rows()), dim_(basis.cols()) {
  ColumnEchelon e = column_echelon(basis.transpose(), true);
  if (e.rank != dim_) throw InvariantViolation("LatticeSolver: basis is not of full column rank");
  upper_ = IntMatrix(dim_, dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) upper_(r, c) = e.echelon(c, r);
  row_ops_ = e.transform.transpose();
}

std::optional<IntVector> LatticeSolver::solve(const IntVector& v) const {
  if (v.size() != ambient_) throw InvariantViolation("LatticeSolver: dimension mismatch");
  IntVector w = row_ops_ * v;
  for (std::size_t r = dim_; r < ambient_; ++r)
    if (sgn(w[r]) != 0) return std::nullopt;
  IntVector x(dim_);
  Int s;
  for (std::size_t rr = dim_; rr-- > 0;) {
    s = w[rr];
    for (std::size_t c = rr + 1; c < dim_; ++c)
      if (sgn(upper_(rr, c)) != 0) s -= upper_(rr, c) * x[c];
    if (!mpz_divisible_p(s.get_mpz_t(), upper_(rr, rr).get_mpz_t())) return std::nullopt;
    mpz_divexact(x[rr].get_mpz_t(), s.get_mpz_t(), upper_(rr, rr).get_mpz_t());
  }
  return x;
}

IntMatrix LatticeSolver::solve_columns(const IntMatrix& v) const {
  IntMatrix out(dim_, v.cols());
  for (std::size_t j = 0; j < v.cols(); ++j) {
    auto c = solve(v.column(j));
    if (!c) throw InvariantViolation("LatticeSolver: vector " + to_string(v.column(j)) + " is outside the lattice");
    out.set_column(j, *c);
  }
  return out;
}

bool LatticeSolver::contains_columns(const IntMatrix& v) const {
  for (std::size_t j = 0; j < v.cols(); ++j)
    if (!contains(v.column(j))) return false;
  return true;
}

namespace {

class SmithWorker {
 public:
  SmithWorker(const IntMatrix& a, bool want_left, bool want_right)
      : a_(a), want_left_(want_left), want_right_(want_right) {
    if (want_left_) l_ = li_ = IntMatrix::identity(a.rows());
    if (want_right_) r_ = ri_ = IntMatrix::identity(a.cols());
  }

  SmithForm run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    const std::size_t lim = std::min(m, n);
    std::size_t t = 0;
    for (; t < lim; ++t) {
      auto [pi, pj] = min_entry(t, t);
      if (pi == m) break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        if (!clear_column(t)) continue;
        if (!clear_row(t)) continue;
        auto bad = non_divisible(t);
        if (bad == m) break;
        row_add(t, bad, 1);
      }
      if (sgn(a_(t, t)) < 0) row_neg(t);
    }
    SmithForm out;
    for (std::size_t k = 0; k < t; ++k) out.diagonal.push_back(a_(k, k));
    if (want_left_) {
      out.left = std::move(l_);
      out.left_inverse = std::move(li_);
    }
    if (want_right_) {
      out.right = std::move(r_);
      out.right_inverse = std::move(ri_);
    }
    return out;
  }

 private:
  std::pair<std::size_t, std::size_t> min_entry(std::size_t r0, std::size_t c0) const {
    std::size_t bi = a_.rows(), bj = a_.cols();
    for (std::size_t i = r0; i < a_.rows(); ++i)
      for (std::size_t j = c0; j < a_.cols(); ++j) {
        if (sgn(a_(i, j)) == 0) continue;
        if (bi == a_.rows() || cmpabs(a_(i, j), a_(bi, bj)) < 0) {
          bi = i;
          bj = j;
          if (a_(i, j) == 1 || a_(i, j) == -1) return {bi, bj};
        }
      }
    return {bi, bj};
  }

  // Returns true when column t is clear below the pivot.
  bool clear_column(std::size_t t) {
    bool clean = true;
    Int q;
    std::size_t best = a_.rows();
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (sgn(a_(i, t)) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
      if (sgn(q) != 0) row_add(i, t, -q);
      if (sgn(a_(i, t)) != 0) {
        clean = false;
        if (best == a_.rows() || cmpabs(a_(i, t), a_(best, t)) < 0) best = i;
      }
    }
    if (!clean) row_swap(t, best);
    return clean;
  }

  bool clear_row(std::size_t t) {
    bool clean = true;
    Int q;
    std::size_t best = a_.cols();
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (sgn(a_(t, j)) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
      if (sgn(q) != 0) col_add(j, t, -q);
      if (sgn(a_(t, j)) != 0) {
        clean = false;
        if (best == a_.cols() || cmpabs(a_(t, j), a_(t, best)) < 0) best = j;
      }
    }
    if (!clean) col_swap(t, best);
    return clean;
  }

  std::size_t non_divisible(std::size_t t) const {
    if (a_(t, t) == 1 || a_(t, t) == -1) return a_.rows();
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      for (std::size_t j = t + 1; j < a_.cols(); ++j)
        if (sgn(a_(i, j)) != 0 && !mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) return i;
    return a_.rows();
  }

  static void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(src, j)) != 0) mpz_addmul(m(dst, j).get_mpz_t(), q.get_mpz_t(), m(src, j).get_mpz_t());
  }
  static void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (sgn(m(i, src)) != 0) mpz_addmul(m(i, dst).get_mpz_t(), q.get_mpz_t(), m(i, src).get_mpz_t());
  }
  static void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
  }
  static void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
  }

  // row_dst += q * row_src
  void row_add(std::size_t dst, std::size_t src, const Int& q) {
    add_row(a_, dst, src, q);
    if (want_left_) {
      add_row(l_, dst, src, q);
      add_col(li_, src, dst, -q);
    }
  }
  void row_swap(std::size_t x, std::size_t y) {
    swap_rows(a_, x, y);
    if (want_left_) {
      swap_rows(l_, x, y);
      swap_cols(li_, x, y);
    }
  }
  void row_neg(std::size_t x) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(x, j) = -a_(x, j);
    if (want_left_) {
      for (std::size_t j = 0; j < l_.cols(); ++j) l_(x, j) = -l_(x, j);
      for (std::size_t i = 0; i < li_.rows(); ++i) li_(i, x) = -li_(i, x);
    }
  }
  // col_dst += q * col_src
  void col_add(std::size_t dst, std::size_t src, const Int& q) {
    add_col(a_, dst, src, q);
    if (want_right_) {
      add_col(r_, dst, src, q);
      add_row(ri_, src, dst, -q);
    }
  }
  void col_swap(std::size_t x, std::size_t y) {
    swap_cols(a_, x, y);
    if (want_right_) {
      swap_cols(r_, x, y);
      swap_rows(ri_, x, y);
    }
  }

  IntMatrix a_;
  bool want_left_, want_right_;
  IntMatrix l_, li_, r_, ri_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a, SmithTransforms which) {
  bool left = which == SmithTransforms::Left || which == SmithTransforms::All;
  bool right = which == SmithTransforms::Right || which == SmithTransforms::All;
  return SmithWorker(a, left, right).run();
}

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

AbelianGroup make_group(std::size_t rank, std::vector<long> torsion) {
  AbelianGroup g;
  g.rank = rank;
  for (long t : torsion) g.torsion.emplace_back(t);
  return g;
}

AbelianGroup cokernel_group(std::size_t generators, const IntMatrix& relations) {
  AbelianGroup g;
  if (relations.cols() == 0 || relations.rows() == 0) {
    g.rank = generators;
    return g;
  }
  if (relations.rows() != generators) throw InvariantViolation("cokernel_group: relation rows must match generators");
  // Column echelon first: it shrinks wide relation matrices before the
  // quadratic divisibility fix-up of the Smith form.
  IntMatrix reduced = lattice_basis(relations);
  SmithForm s = smith_normal_form(reduced, SmithTransforms::None);
  g.rank = generators - s.diagonal.size();
  for (const auto& d : s.diagonal)
    if (d != 1) g.torsion.push_back(d);
  return g;
}

AbelianGroup lattice_quotient(const IntMatrix& outer_basis, const IntMatrix& inner_generators) {
  if (outer_basis.cols() == 0) return {};
  LatticeSolver solver(outer_basis);
  IntMatrix coords = solver.solve_columns(inner_generators);
  return cokernel_group(outer_basis.cols(), coords);
}

Presentation::Presentation(std::size_t gens, IntMatrix rel) : generators(gens), relations(std::move(rel)) {
  if (relations.rows() != generators) {
    if (relations.cols() == 0)
      relations = IntMatrix(generators, 0);
    else
      throw InputError("ShapeMismatch", "relation matrix has " + std::to_string(relations.rows()) +
                                            " rows for " + std::to_string(generators) + " generators");
  }
}

bool Presentation::vanishes(const IntVector& v) const {
  if (is_zero(v)) return true;
  if (relations.cols() == 0) return false;
  IntMatrix basis = lattice_basis(relations);
  if (basis.cols() == 0) return false;
  return LatticeSolver(basis).contains(v);
}

bool Presentation::vanishes(const IntMatrix& v) const {
  if (v.is_zero()) return true;
  if (relations.cols() == 0) return false;
  IntMatrix basis = lattice_basis(relations);
  if (basis.cols() == 0) return false;
  return LatticeSolver(basis).contains_columns(v);
}

PresentationChange simplify(const Presentation& p) {
  const std::size_t g = p.generators;
  PresentationChange out;
  if (p.is_free()) {
    out.simplified = Presentation(g);
    out.to_new = IntMatrix::identity(g);
    out.to_old = IntMatrix::identity(g);
    return out;
  }
  SmithForm s = smith_normal_form(p.relations, SmithTransforms::Left);
  std::vector<std::size_t> keep;
  std::vector<Int> torsion;
  for (std::size_t i = 0; i < s.diagonal.size(); ++i)
    if (s.diagonal[i] != 1) {
      keep.push_back(i);
      torsion.push_back(s.diagonal[i]);
    }
  for (std::size_t i = s.diagonal.size(); i < g; ++i) keep.push_back(i);
  out.to_new = s.left.select_rows(keep);
  out.to_old = s.left_inverse.select_columns(keep);
  IntMatrix rel(keep.size(), torsion.size());
  for (std::size_t k = 0; k < torsion.size(); ++k) rel(k, k) = torsion[k];
  out.simplified = Presentation(keep.size(), std::move(rel));
  return out;
}

IntMatrix preimage_lattice(const IntMatrix& map, const IntMatrix& target_relations) {
  const std::size_t c = map.cols();
  if (target_relations.cols() == 0 || target_relations.is_zero()) return kernel_basis(map);
  IntMatrix neg(target_relations.rows(), target_relations.cols());
  for (std::size_t i = 0; i < neg.rows(); ++i)
    for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -target_relations(i, j);
  IntMatrix k = kernel_basis(IntMatrix::hstack(map, neg));
  std::vector<std::size_t> top(c);
  for (std::size_t i = 0; i < c; ++i) top[i] = i;
  return lattice_basis(k.select_rows(top));
}

AbelianGroup cohomology(const IntMatrix& incoming, const Presentation& middle, const IntMatrix& outgoing,
                        const Presentation& next) {
  const std::size_t c = middle.generators;
  if (incoming.rows() != c || outgoing.cols() != c || outgoing.rows() != next.generators)
    throw InvariantViolation("cohomology: shape mismatch");
  IntMatrix cycles = preimage_lattice(outgoing, next.relations);
  IntMatrix boundaries = IntMatrix::hstack(incoming, middle.relations);
  return lattice_quotient(cycles, boundaries);
}

bool is_exact_at(const IntMatrix& incoming, const Presentation& middle, const IntMatrix& outgoing,
                 const Presentation& next) {
  return cohomology(incoming, middle, outgoing, next).is_zero();
}

}  // namespace mackeylab
