#include "ncg/solver.hpp"

#include <unordered_map>

namespace ncg {

void append_flat(std::vector<SparseVec::Entry>& out, size_t offset, const Matrix& m) {
  for (size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, x] : m.col(j).entries()) out.emplace_back(static_cast<uint32_t>(offset + j * m.rows() + i), x);
}

SparseVec flatten(const std::vector<Matrix>& blocks) {
  std::vector<SparseVec::Entry> e;
  size_t off = 0;
  for (const auto& b : blocks) {
    append_flat(e, off, b);
    off += b.rows() * b.cols();
  }
  return SparseVec::from_entries(std::move(e));
}

Constraint intertwines(std::vector<Matrix> src_actions, std::vector<Matrix> dst_actions) {
  if (src_actions.size() != dst_actions.size()) throw Error(ErrorKind::ActionMismatch, "intertwiner action counts");
  return [src = std::move(src_actions), dst = std::move(dst_actions)](const Matrix& x) {
    std::vector<Matrix> blocks;
    blocks.reserve(src.size());
    for (size_t s = 0; s < src.size(); ++s) blocks.push_back(x * src[s] - dst[s] * x);
    return flatten(blocks);
  };
}

Constraint prescribed(Matrix inputs, Matrix values) {
  return [in = std::move(inputs), val = std::move(values)](const Matrix& x) { return flatten({x * in - val}); };
}

Constraint sandwiched(Matrix pre, Matrix post, Matrix target) {
  return [pre = std::move(pre), post = std::move(post), t = std::move(target)](const Matrix& x) {
    return flatten({pre * x * post - t});
  };
}

Matrix AffineSolutionSet::point(const Vec& coeffs) const {
  if (coeffs.size() != homogeneous.size()) throw Error(ErrorKind::DimensionMismatch, "affine point coefficients");
  Matrix m = particular;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) m = m + homogeneous[i].scaled(coeffs[i]);
  return m;
}

namespace {

Matrix unflatten(const Vec& v, size_t rows, size_t cols) {
  Matrix m(rows, cols);
  for (size_t j = 0; j < cols; ++j) {
    SparseVec c;
    for (size_t i = 0; i < rows; ++i)
      if (!v[i * cols + j].is_zero()) c.push(static_cast<uint32_t>(i), v[i * cols + j]);
    m.set_col(j, std::move(c));
  }
  return m;
}

}  // namespace

std::optional<AffineSolutionSet> equivariant_hom_space(size_t rows, size_t cols,
                                                       const std::vector<Constraint>& constraints) {
  // Unknown u = a*cols + b addresses x(a, b). Each constraint is evaluated at
  // zero and at every unit matrix, which recovers its coefficient rows.
  const size_t n = rows * cols;
  std::vector<SparseVec> r0;
  Matrix zero(rows, cols);
  for (const auto& c : constraints) r0.push_back(c(zero));

  std::unordered_map<uint64_t, std::vector<SparseVec::Entry>> eqs;
  for (size_t a = 0; a < rows; ++a)
    for (size_t b = 0; b < cols; ++b) {
      Matrix e(rows, cols);
      e.set(a, b, Scalar(1));
      const auto u = static_cast<uint32_t>(a * cols + b);
      for (size_t c = 0; c < constraints.size(); ++c) {
        SparseVec r = constraints[c](e) - r0[c];
        for (const auto& [i, x] : r.entries()) eqs[(static_cast<uint64_t>(c) << 32) | i].emplace_back(u, x);
      }
    }
  for (size_t c = 0; c < constraints.size(); ++c)
    for (const auto& [i, x] : r0[c].entries()) eqs[(static_cast<uint64_t>(c) << 32) | i].emplace_back(static_cast<uint32_t>(n), -x);

  std::vector<SparseVec> system;
  system.reserve(eqs.size());
  for (auto& [k, e] : eqs) system.push_back(SparseVec::from_entries(std::move(e)));
  RrefResult res = rref_rows(std::move(system), n, 1);
  if (!res.particular) return std::nullopt;

  AffineSolutionSet out;
  out.rows = rows;
  out.cols = cols;
  out.particular = unflatten((*res.particular)[0], rows, cols);
  for (const auto& k : res.kernel.basis()) out.homogeneous.push_back(unflatten(k.to_dense(n), rows, cols));
  return out;
}

bool satisfies(const Matrix& x, const std::vector<Constraint>& constraints) {
  for (const auto& c : constraints)
    if (!c(x).empty()) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<Matrix>& actions_of(const Bimodule& m, Side side) {
  return side == Side::Left ? m.left_action : m.right_action;
}

const Algebra& algebra_of(const Bimodule& m, Side side) { return side == Side::Left ? m.left : m.right; }

// S-span of the given elements of M.
Subspace module_span(const Bimodule& m, Side side, const std::vector<Vec>& gens) {
  std::vector<SparseVec> v;
  for (const auto& g : gens)
    for (const auto& act : actions_of(m, side)) v.push_back(act.apply(SparseVec::from_dense(g)));
  return Subspace::span(m.dim, v);
}

std::optional<DualBasis> try_section(const Bimodule& m, Side side, const std::vector<Vec>& gens) {
  const Algebra& s = algebra_of(m, side);
  const size_t ds = s.dim(), n = gens.size(), dm = m.dim;
  // π: S^n -> M, (s_i) ↦ Σ s_i w_i (or Σ w_i s_i).
  Matrix pi(dm, n * ds);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < ds; ++k) pi.set_col(i * ds + k, actions_of(m, side)[k].apply(SparseVec::from_dense(gens[i])));
  std::vector<Matrix> on_free;
  for (size_t k = 0; k < ds; ++k) {
    Matrix mult = side == Side::Left ? s.left_mult_basis(k) : s.right_mult_basis(k);
    Matrix blk(n * ds, n * ds);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < ds; ++j) {
        SparseVec c;
        for (const auto& [r, x] : mult.col(j).entries()) c.push(static_cast<uint32_t>(i * ds + r), x);
        blk.set_col(i * ds + j, c);
      }
    on_free.push_back(blk);
  }
  std::vector<Constraint> cons{intertwines(actions_of(m, side), on_free),
                               sandwiched(pi, Matrix::identity(dm), Matrix::identity(dm))};
  auto sol = equivariant_hom_space(n * ds, dm, cons);
  if (!sol) return std::nullopt;
  DualBasis d;
  d.w = gens;
  for (size_t i = 0; i < n; ++i) {
    Matrix chi(ds, dm);
    for (size_t x = 0; x < dm; ++x) {
      SparseVec c;
      for (const auto& [r, v] : sol->particular.col(x).entries())
        if (r >= i * ds && r < (i + 1) * ds) c.push(static_cast<uint32_t>(r - i * ds), v);
      chi.set_col(x, c);
    }
    d.chi.push_back(chi);
  }
  return d;
}

}  // namespace

ProjectivityResult projective_dual_basis(const Bimodule& m, Side side) {
  ProjectivityResult res;
  const Algebra& s = algebra_of(m, side);
  // Greedy generators: a basis vector joins when it is outside the span so far.
  std::vector<Vec> gens;
  Subspace span(m.dim);
  for (size_t j = 0; j < m.dim && span.dim() < m.dim; ++j) {
    Vec e = unit_vec(m.dim, j);
    if (span.contains(SparseVec::from_dense(e))) continue;
    gens.push_back(e);
    span = module_span(m, side, gens);
  }
  res.basis = try_section(m, side, gens);
  if (!res.basis && gens.size() < m.dim) {
    std::vector<Vec> all;
    for (size_t j = 0; j < m.dim; ++j) all.push_back(unit_vec(m.dim, j));
    res.basis = try_section(m, side, all);
  }
  res.projective = res.basis.has_value();

  // Trace ideal: images of all S-linear functionals M -> S.
  std::vector<Matrix> on_s;
  for (size_t k = 0; k < s.dim(); ++k) on_s.push_back(side == Side::Left ? s.left_mult_basis(k) : s.right_mult_basis(k));
  auto duals = equivariant_hom_space(s.dim(), m.dim, {intertwines(actions_of(m, side), on_s)});
  std::vector<SparseVec> images;
  if (duals)
    for (const auto& f : duals->homogeneous)
      for (size_t x = 0; x < m.dim; ++x) images.push_back(f.col(x));
  res.generator = m.dim > 0 && Subspace::span(s.dim(), images).dim() == s.dim();
  res.faithfully_flat = res.projective && res.generator;
  return res;
}

Report verify_dual_basis(const Bimodule& m, Side side, const DualBasis& d) {
  Report rep;
  const auto& act = actions_of(m, side);
  for (size_t x = 0; x < m.dim; ++x) {
    Vec sum(m.dim);
    for (size_t i = 0; i < d.w.size(); ++i) {
      const SparseVec& coeff = d.chi[i].col(x);
      for (const auto& [k, c] : coeff.entries()) sum = sum + c * act[k].apply(d.w[i]);
    }
    if (sum != unit_vec(m.dim, x)) rep.add("dual basis expansion", "x=" + std::to_string(x));
  }
  return rep;
}

}  // namespace ncg
