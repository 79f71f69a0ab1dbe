#include "ncg/cyclic.hpp"

#include <limits>

namespace ncg {

size_t raw_power(size_t base, size_t legs) {
  size_t out = 1;
  for (size_t i = 0; i < legs; ++i) {
    if (base != 0 && out > std::numeric_limits<size_t>::max() / base) return std::numeric_limits<size_t>::max();
    out *= base;
  }
  return out;
}

CircularSpace::CircularSpace(const Algebra& b, const Subalgebra& t, size_t n, size_t guard)
    : b_(b), t_(t), n_(n) {
  if (t.incl.rows() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "T is not a subalgebra of B");
  const size_t raw = raw_power(b.dim(), n + 1);
  if (raw > guard)
    throw Error(ErrorKind::MemoryGuardExceeded, "circular space of degree " + std::to_string(n) + " needs " +
                                                    (raw == std::numeric_limits<size_t>::max() ? std::string("overflow")
                                                                                               : std::to_string(raw)) +
                                                    " raw coordinates, guard " + std::to_string(guard));
  const size_t m = b.dim(), legs = n + 1;
  // Relations vanish when T is spanned by the unit.
  std::vector<SparseVec> rel;
  if (t.alg.dim() > 1) {
    std::vector<Matrix> right_t, left_t;
    for (size_t s = 0; s < t.alg.dim(); ++s) {
      const Vec ts = t.incl.col(s).to_dense(m);
      right_t.push_back(b.right_mult(ts));
      left_t.push_back(b.left_mult(ts));
    }
    for_each_tuple(std::vector<size_t>(legs, m), [&](const Tuple& tup) {
      for (size_t s = 0; s < t.alg.dim(); ++s)
        for (size_t i = 0; i < legs; ++i) {
          const size_t j = (i + 1) % legs;
          Accumulator acc;
          Tuple u = tup;
          for (const auto& [x, c] : right_t[s].col(tup[i]).entries()) {
            u[i] = x;
            acc.add(flat(u), c);
          }
          u = tup;
          for (const auto& [x, c] : left_t[s].col(tup[j]).entries()) {
            u[j] = x;
            acc.add(flat(u), -c);
          }
          SparseVec v = acc.take();
          if (!v.empty()) rel.push_back(std::move(v));
        }
    });
  }
  q_ = rel.empty() ? Quotient::identity(raw) : Quotient(raw, rel);
}

uint32_t CircularSpace::flat(const Tuple& t) const {
  uint64_t i = 0;
  for (uint32_t x : t) i = i * b_.dim() + x;
  return static_cast<uint32_t>(i);
}

Tuple CircularSpace::unflat(uint32_t i) const {
  Tuple t(legs());
  for (size_t k = legs(); k-- > 0;) {
    t[k] = static_cast<uint32_t>(i % b_.dim());
    i /= static_cast<uint32_t>(b_.dim());
  }
  return t;
}

SparseVec CircularSpace::project(const Tuple& t) const { return q_.project_index(flat(t)); }

SparseVec CircularSpace::project(const Raw& r) const {
  Accumulator acc;
  for (const auto& term : r) acc.add(project(term.t), term.c);
  return acc.take();
}

SparseVec CircularSpace::embed(const std::vector<Vec>& parts) const {
  if (parts.size() != legs()) throw Error(ErrorKind::DimensionMismatch, "circular embed arity");
  Raw r{RawTerm{Tuple{}, b_.one()}};
  for (const Vec& p : parts) {
    Raw next;
    for (const auto& term : r)
      for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        Tuple u = term.t;
        u.push_back(static_cast<uint32_t>(i));
        next.push_back({std::move(u), term.c * p[i]});
      }
    r = std::move(next);
  }
  return project(r);
}

namespace {

Scalar sign(size_t n, uint32_t modulus) { return Scalar(mpq_class(n % 2 ? -1 : 1), modulus); }

Raw rotate(const Tuple& t, const Scalar& c) {
  Tuple u(t.size());
  u[0] = t.back();
  for (size_t i = 0; i + 1 < t.size(); ++i) u[i + 1] = t[i];
  return raw_unit(std::move(u), c);
}

Raw raw_tau(const Tuple& t, const Algebra& b) { return rotate(t, sign(t.size() - 1, b.modulus())); }

Raw raw_dprime(const Tuple& t, const Algebra& b) {
  Raw out;
  for (size_t i = 0; i + 1 < t.size(); ++i) raw_add(out, raw_multiply_legs(raw_unit(t), i, b), sign(i, b.modulus()));
  return out;
}

Raw raw_d(const Tuple& t, const Algebra& b) {
  Raw out = raw_dprime(t, b);
  const size_t n = t.size() - 1;
  raw_add(out, raw_multiply_legs(rotate(t, b.one()), 0, b), sign(n, b.modulus()));
  return out;
}

Matrix operator_matrix(const CircularSpace& src, const CircularSpace& dst, const std::function<Raw(const Tuple&)>& f) {
  Matrix m(dst.dim(), src.dim());
  for (size_t q = 0; q < src.dim(); ++q) m.set_col(q, dst.project(f(src.representative(static_cast<uint32_t>(q)))));
  return m;
}

// Applies f to every relation basis vector and checks the image vanishes.
void check_relations(Report& rep, const std::string& name, const CircularSpace& src, const CircularSpace& dst,
                     const std::function<Raw(const Tuple&)>& f) {
  for (size_t k = 0; k < src.quotient().relations().dim(); ++k) {
    Accumulator acc;
    for (const auto& [j, c] : src.quotient().relations().basis()[k].entries()) acc.add(dst.project(f(src.unflat(j))), c);
    if (!acc.take().empty()) {
      rep.add(name + " well-defined", "relation " + std::to_string(k));
      return;
    }
  }
}

}  // namespace

CyclicOperators cyclic_operators(const CircularSpace& cur, const CircularSpace* prev) {
  const Algebra& b = cur.b();
  CyclicOperators ops;
  ops.tau = operator_matrix(cur, cur, [&](const Tuple& t) { return raw_tau(t, b); });
  const Matrix id = Matrix::identity(cur.dim());
  ops.tautilde = id - ops.tau;
  ops.N = id;
  Matrix power = id;
  for (size_t i = 1; i <= cur.degree(); ++i) {
    power = ops.tau * power;
    ops.N = ops.N + power;
  }
  if (cur.degree() == 0 || !prev) {
    ops.dprime = Matrix(0, cur.dim());
    ops.d = Matrix(0, cur.dim());
  } else {
    ops.dprime = operator_matrix(cur, *prev, [&](const Tuple& t) { return raw_dprime(t, b); });
    ops.d = operator_matrix(cur, *prev, [&](const Tuple& t) { return raw_d(t, b); });
  }
  return ops;
}

Report check_well_defined(const CircularSpace& cur, const CircularSpace* prev) {
  const Algebra& b = cur.b();
  Report rep;
  check_relations(rep, "tau", cur, cur, [&](const Tuple& t) { return raw_tau(t, b); });
  if (cur.degree() > 0 && prev) {
    check_relations(rep, "dprime", cur, *prev, [&](const Tuple& t) { return raw_dprime(t, b); });
    check_relations(rep, "d", cur, *prev, [&](const Tuple& t) { return raw_d(t, b); });
  }
  return rep;
}

size_t TotalComplex::tot_dim(size_t n) const {
  size_t s = 0;
  for (size_t p = 0; p <= n; ++p) s += spaces[n - p].dim();
  return s;
}

size_t TotalComplex::offset(size_t n, size_t p) const {
  size_t s = 0;
  for (size_t r = 0; r < p; ++r) s += spaces[n - r].dim();
  return s;
}

SparseVec TotalComplex::place(size_t n, size_t p, const SparseVec& blk) const {
  const uint32_t off = static_cast<uint32_t>(offset(n, p));
  SparseVec out;
  for (const auto& [i, x] : blk.entries()) out.push(i + off, x);
  return out;
}

SparseVec TotalComplex::block(size_t n, size_t p, const SparseVec& chain) const {
  const size_t off = offset(n, p), len = spaces[n - p].dim();
  SparseVec out;
  for (const auto& [i, x] : chain.entries())
    if (i >= off && i < off + len) out.push(static_cast<uint32_t>(i - off), x);
  return out;
}

TotalComplex build_total_complex(const Algebra& b, const Subalgebra& t, size_t max_degree, size_t guard) {
  TotalComplex tc;
  tc.max_degree = max_degree;
  const size_t top = max_degree + 1;
  // Tot_top holds every circular power up to top, each once per column.
  size_t total = 0;
  for (size_t q = 0; q <= top; ++q) {
    const size_t raw = raw_power(b.dim(), q + 1);
    if (raw > guard || total > guard) {
      total = guard + 1;
      break;
    }
    total += raw;
  }
  if (total > guard)
    throw Error(ErrorKind::MemoryGuardExceeded,
                "total complex to degree " + std::to_string(top) + " exceeds guard " + std::to_string(guard));
  for (size_t q = 0; q <= top; ++q) tc.spaces.emplace_back(b, t, q, guard);
  for (size_t q = 0; q <= top; ++q) tc.ops.push_back(cyclic_operators(tc.spaces[q], q ? &tc.spaces[q - 1] : nullptr));

  tc.d.push_back(Matrix(0, tc.tot_dim(0)));
  for (size_t n = 1; n <= top; ++n) {
    Matrix dn(tc.tot_dim(n - 1), tc.tot_dim(n));
    for (size_t p = 0; p <= n; ++p) {
      const size_t q = n - p;
      const CyclicOperators& o = tc.ops[q];
      for (size_t col = 0; col < tc.spaces[q].dim(); ++col) {
        Accumulator acc;
        if (q > 0) {
          const SparseVec v = p % 2 == 0 ? o.d.col(col) : o.dprime.col(col).scaled(Scalar(-1));
          acc.add(tc.place(n - 1, p, v));
        }
        if (p > 0) {
          const SparseVec h = p % 2 == 1 ? o.tautilde.col(col) : o.N.col(col);
          acc.add(tc.place(n - 1, p - 1, h));
        }
        dn.set_col(tc.offset(n, p) + col, acc.take());
      }
    }
    tc.d.push_back(std::move(dn));
  }
  return tc;
}

Report verify_total_complex(const TotalComplex& tc) {
  Report rep;
  for (size_t q = 0; q < tc.spaces.size(); ++q)
    rep.merge(check_well_defined(tc.spaces[q], q ? &tc.spaces[q - 1] : nullptr), "q=" + std::to_string(q) + " ");
  for (size_t n = 2; n < tc.d.size(); ++n)
    if (!(tc.d[n - 1] * tc.d[n]).is_zero()) rep.add("d∘d = 0", "n=" + std::to_string(n));
  for (size_t q = 0; q < tc.ops.size(); ++q) {
    const CyclicOperators& o = tc.ops[q];
    Matrix power = Matrix::identity(tc.spaces[q].dim());
    for (size_t i = 0; i <= q; ++i) power = o.tau * power;
    if (power != Matrix::identity(tc.spaces[q].dim())) rep.add("tau^(n+1) = id", "q=" + std::to_string(q));
    if (!(o.N * o.tautilde).is_zero() || !(o.tautilde * o.N).is_zero()) rep.add("N tautilde = 0", "q=" + std::to_string(q));
  }
  return rep;
}

Homology homology(const TotalComplex& tc, size_t n) {
  if (n > tc.max_degree)
    throw Error(ErrorKind::DegreeOutOfRange,
                "degree " + std::to_string(n) + " above max_degree " + std::to_string(tc.max_degree));
  Homology h;
  h.degree = n;
  const size_t dim = tc.tot_dim(n);
  h.cycles = n == 0 ? Subspace::full(dim) : kernel(tc.d[n]);
  h.boundaries = image(tc.d[n + 1]);
  h.boundary_rows = Echelon(dim);
  for (const auto& v : h.boundaries.basis()) h.boundary_rows.insert(v);
  h.boundary_rows.finalize();
  std::vector<SparseVec> nf;
  for (const auto& z : h.cycles.basis()) nf.push_back(h.boundary_rows.reduce(z));
  h.normal = Subspace::span(dim, nf);
  return h;
}

bool is_cycle(const TotalComplex& tc, size_t n, const SparseVec& chain) {
  return n == 0 || tc.d.at(n).apply(chain).empty();
}

bool is_boundary(const Homology& h, const SparseVec& chain) { return h.boundary_rows.contains(chain); }

SparseVec normal_form(const Homology& h, const SparseVec& chain) { return h.boundary_rows.reduce(chain); }

Vec class_of(const TotalComplex& tc, const Homology& h, const SparseVec& chain) {
  if (!is_cycle(tc, h.degree, chain)) throw Error(ErrorKind::NotACycle, "d(chain) ≠ 0 in degree " + std::to_string(h.degree));
  auto c = h.normal.membership(normal_form(h, chain));
  if (!c) throw Error(ErrorKind::NotACycle, "normal form outside the cycle space");
  return *c;
}

bool classes_equal(const Homology& h, const SparseVec& a, const SparseVec& b) { return is_boundary(h, a - b); }

LambdaMap lambda_projection(const TotalComplex& over_k, const TotalComplex& over_t) {
  if (over_k.max_degree != over_t.max_degree) throw Error(ErrorKind::DegreeMismatch, "λ between complexes of different depth");
  LambdaMap l;
  for (size_t n = 0; n < over_k.d.size(); ++n) {
    Matrix m(over_t.tot_dim(n), over_k.tot_dim(n));
    for (size_t p = 0; p <= n; ++p) {
      const CircularSpace &src = over_k.spaces[n - p], &dst = over_t.spaces[n - p];
      for (size_t q = 0; q < src.dim(); ++q)
        m.set_col(over_k.offset(n, p) + q, over_t.place(n, p, dst.project(src.representative(static_cast<uint32_t>(q)))));
    }
    l.chain.push_back(std::move(m));
  }
  for (size_t n = 1; n < l.chain.size(); ++n)
    if (over_t.d[n] * l.chain[n] != l.chain[n - 1] * over_k.d[n]) l.checks.add("λ chain map", "n=" + std::to_string(n));
  return l;
}

Matrix lambda_on_homology(const TotalComplex& over_k, const TotalComplex& over_t, const LambdaMap& l,
                          const Homology& hk, const Homology& ht) {
  if (hk.degree != ht.degree) throw Error(ErrorKind::DegreeMismatch, "λ_* degrees");
  (void)over_k;
  Matrix m(ht.dim(), hk.dim());
  for (size_t i = 0; i < hk.dim(); ++i)
    m.set_col(i, SparseVec::from_dense(class_of(over_t, ht, l.chain[hk.degree].apply(hk.representatives()[i]))));
  return m;
}

}  // namespace ncg
