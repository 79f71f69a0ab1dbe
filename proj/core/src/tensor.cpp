#include "ncg/tensor.hpp"

#include <map>

namespace ncg {

Raw raw_unit(Tuple t, const Scalar& c) { return Raw{RawTerm{std::move(t), c}}; }

Raw raw_from_vec(const SparseVec& v) {
  Raw r;
  r.reserve(v.nnz());
  for (const auto& [i, x] : v.entries()) r.push_back({Tuple{i}, x});
  return r;
}

void raw_add(Raw& into, const Raw& r, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& term : r) into.push_back({term.t, term.c * c});
}

Raw raw_scaled(const Raw& r, const Scalar& c) {
  Raw out;
  raw_add(out, r, c);
  return out;
}

Raw raw_concat(const Raw& a, const Raw& b) {
  Raw out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      Tuple t = x.t;
      t.insert(t.end(), y.t.begin(), y.t.end());
      out.push_back({std::move(t), x.c * y.c});
    }
  return out;
}

Raw raw_apply_leg(const Raw& r, size_t leg, const Matrix& m) {
  Raw out;
  for (const auto& term : r) {
    for (const auto& [i, x] : m.col(term.t[leg]).entries()) {
      Tuple t = term.t;
      t[leg] = i;
      out.push_back({std::move(t), term.c * x});
    }
  }
  return out;
}

Raw raw_multiply_legs(const Raw& r, size_t leg, const Algebra& a) {
  Raw out;
  for (const auto& term : r) {
    const SparseVec& p = a.product(term.t[leg], term.t[leg + 1]);
    for (const auto& [k, x] : p.entries()) {
      Tuple t;
      t.reserve(term.t.size() - 1);
      t.insert(t.end(), term.t.begin(), term.t.begin() + static_cast<long>(leg));
      t.push_back(k);
      t.insert(t.end(), term.t.begin() + static_cast<long>(leg) + 2, term.t.end());
      out.push_back({std::move(t), term.c * x});
    }
  }
  return out;
}

Raw raw_expand_leg(const Raw& r, size_t leg, const std::function<Raw(uint32_t)>& f) {
  Raw out;
  for (const auto& term : r) {
    Raw sub = f(term.t[leg]);
    for (const auto& s : sub) {
      Tuple t;
      t.reserve(term.t.size() + s.t.size() - 1);
      t.insert(t.end(), term.t.begin(), term.t.begin() + static_cast<long>(leg));
      t.insert(t.end(), s.t.begin(), s.t.end());
      t.insert(t.end(), term.t.begin() + static_cast<long>(leg) + 1, term.t.end());
      out.push_back({std::move(t), term.c * s.c});
    }
  }
  return out;
}

Raw raw_replace_legs(const Raw& r, size_t leg, size_t width, const std::function<Raw(const Tuple&)>& f) {
  Raw out;
  for (const auto& term : r) {
    Tuple legs(term.t.begin() + static_cast<long>(leg), term.t.begin() + static_cast<long>(leg + width));
    for (const auto& s : f(legs)) {
      Tuple t;
      t.reserve(term.t.size() + s.t.size() - width);
      t.insert(t.end(), term.t.begin(), term.t.begin() + static_cast<long>(leg));
      t.insert(t.end(), s.t.begin(), s.t.end());
      t.insert(t.end(), term.t.begin() + static_cast<long>(leg + width), term.t.end());
      out.push_back({std::move(t), term.c * s.c});
    }
  }
  return out;
}

Raw raw_insert_leg(const Raw& r, size_t pos, uint32_t idx) {
  Raw out = r;
  for (auto& term : out) term.t.insert(term.t.begin() + static_cast<long>(pos), idx);
  return out;
}

// ---------------------------------------------------------------------------

TensorSpace::TensorSpace(const Bimodule& first, size_t guard) : guard_(guard) {
  if (first.dim > guard) throw Error(ErrorKind::MemoryGuardExceeded, first.name + " dimension " + std::to_string(first.dim));
  auto lv = std::make_shared<Level>();
  lv->factor = first;
  lv->q = Quotient::identity(first.dim);
  lv->prev_dim = 1;
  levels_.push_back(std::move(lv));
}

size_t TensorSpace::dim() const { return levels_.empty() ? 0 : levels_.back()->q.dim(); }

size_t TensorSpace::raw_size() const {
  size_t n = 1;
  for (const auto& l : levels_) n *= l->factor.dim;
  return n;
}

TensorSpace TensorSpace::then(const Bimodule& next, const Algebra& over, const Matrix& into_left,
                              const Matrix& into_right) const {
  const Algebra& last_right = right_algebra();
  if (into_left.rows() != last_right.dim() || into_left.cols() != over.dim() ||
      into_right.rows() != next.left.dim() || into_right.cols() != over.dim())
    throw Error(ErrorKind::ActionMismatch, "balancing maps for " + over.name() + " into " + last_right.name() + " and " +
                                               next.left.name());
  const size_t prev = dim();
  const size_t f = next.dim;
  const size_t ambient = prev * f;
  if (prev != 0 && ambient / prev != f) throw Error(ErrorKind::MemoryGuardExceeded, "tensor dimension overflow");
  if (ambient > guard_)
    throw Error(ErrorKind::MemoryGuardExceeded,
                "tensor level of dimension " + std::to_string(ambient) + " exceeds guard " + std::to_string(guard_));

  std::vector<SparseVec> rels;
  // Over a one-dimensional algebra the relations vanish for unital actions.
  if (over.dim() > 1) {
    for (size_t t = 0; t < over.dim(); ++t) {
      Matrix rt(prev, prev);
      for (const auto& [k, x] : into_left.col(t).entries()) rt = rt + right_action(k).scaled(x);
      Matrix lt = next.left_by(into_right.col(t).to_dense(next.left.dim()));
      for (size_t v = 0; v < prev; ++v)
        for (size_t g = 0; g < f; ++g) {
          std::vector<SparseVec::Entry> e;
          for (const auto& [v2, x] : rt.col(v).entries()) e.emplace_back(static_cast<uint32_t>(v2 * f + g), x);
          for (const auto& [g2, x] : lt.col(g).entries()) e.emplace_back(static_cast<uint32_t>(v * f + g2), -x);
          SparseVec rel = SparseVec::from_entries(std::move(e));
          if (!rel.empty()) rels.push_back(std::move(rel));
        }
    }
  }
  TensorSpace out = *this;
  auto lv = std::make_shared<Level>();
  lv->factor = next;
  lv->q = rels.empty() ? Quotient::identity(ambient) : Quotient(ambient, rels);
  lv->prev_dim = prev;
  out.levels_.push_back(std::move(lv));
  return out;
}

TensorSpace TensorSpace::then(const Bimodule& next) const {
  const Algebra& r = right_algebra();
  if (!r.same_structure(next.left))
    throw Error(ErrorKind::ActionMismatch, "right algebra " + r.name() + " differs from left algebra " + next.left.name());
  Matrix id = Matrix::identity(r.dim());
  return then(next, r, id, id);
}

TensorSpace TensorSpace::then_k(const Bimodule& next) const {
  Algebra k = Algebra::ground(right_algebra().modulus());
  return then(next, k, unit_map(right_algebra()), unit_map(next.left));
}

SparseVec TensorSpace::project(const Tuple& t) const {
  if (t.size() != levels_.size()) throw Error(ErrorKind::DimensionMismatch, "tuple arity");
  if (t[0] >= levels_[0]->factor.dim) throw Error(ErrorKind::DimensionMismatch, "tuple index");
  SparseVec cur = SparseVec::unit(t[0]);
  for (size_t k = 1; k < levels_.size(); ++k) {
    const Level& lv = *levels_[k];
    const size_t f = lv.factor.dim;
    if (t[k] >= f) throw Error(ErrorKind::DimensionMismatch, "tuple index");
    if (cur.nnz() == 1) {
      const auto& [v, x] = cur.entries()[0];
      SparseVec p = lv.q.project_index(static_cast<uint32_t>(v * f + t[k]));
      cur = x.is_one() ? std::move(p) : p.scaled(x);
      continue;
    }
    Accumulator acc;
    for (const auto& [v, x] : cur.entries()) acc.add(lv.q.project_index(static_cast<uint32_t>(v * f + t[k])), x);
    cur = acc.take();
  }
  return cur;
}

SparseVec TensorSpace::project(const Raw& r) const {
  Accumulator acc;
  for (const auto& term : r) acc.add(project(term.t), term.c);
  return acc.take();
}

Tuple TensorSpace::representative(uint32_t q) const {
  Tuple t(levels_.size());
  uint32_t cur = q;
  for (size_t k = levels_.size(); k-- > 1;) {
    const Level& lv = *levels_[k];
    uint32_t j = lv.q.representative(cur);
    t[k] = static_cast<uint32_t>(j % lv.factor.dim);
    cur = static_cast<uint32_t>(j / lv.factor.dim);
  }
  t[0] = cur;
  return t;
}

Raw TensorSpace::lift(const SparseVec& coords) const {
  Raw r;
  r.reserve(coords.nnz());
  for (const auto& [q, x] : coords.entries()) r.push_back({representative(q), x});
  return r;
}

SparseVec TensorSpace::embed(const std::vector<Vec>& parts) const {
  if (parts.size() != levels_.size()) throw Error(ErrorKind::DimensionMismatch, "embed arity");
  SparseVec cur = SparseVec::from_dense(parts[0]);
  for (size_t k = 1; k < levels_.size(); ++k) {
    const Level& lv = *levels_[k];
    const size_t f = lv.factor.dim;
    if (parts[k].size() != f) throw Error(ErrorKind::DimensionMismatch, "embed factor");
    Accumulator acc;
    for (const auto& [v, x] : cur.entries())
      for (size_t g = 0; g < f; ++g)
        if (!parts[k][g].is_zero()) acc.add(lv.q.project_index(static_cast<uint32_t>(v * f + g)), x * parts[k][g]);
    cur = acc.take();
  }
  return cur;
}

Matrix TensorSpace::left_action(size_t s) const {
  Matrix cur = levels_[0]->factor.left_action.at(s);
  for (size_t k = 1; k < levels_.size(); ++k) {
    const Level& lv = *levels_[k];
    const size_t f = lv.factor.dim;
    Matrix next(lv.q.dim(), lv.q.dim());
    for (uint32_t q = 0; q < lv.q.dim(); ++q) {
      uint32_t j = lv.q.representative(q);
      uint32_t v = static_cast<uint32_t>(j / f), g = static_cast<uint32_t>(j % f);
      Accumulator acc;
      for (const auto& [v2, x] : cur.col(v).entries()) acc.add(lv.q.project_index(static_cast<uint32_t>(v2 * f + g)), x);
      next.set_col(q, acc.take());
    }
    cur = std::move(next);
  }
  return cur;
}

Matrix TensorSpace::right_action(size_t t) const {
  const Level& lv = *levels_.back();
  const Matrix& rt = lv.factor.right_action.at(t);
  if (levels_.size() == 1) return rt;
  const size_t f = lv.factor.dim;
  Matrix out(lv.q.dim(), lv.q.dim());
  for (uint32_t q = 0; q < lv.q.dim(); ++q) {
    uint32_t j = lv.q.representative(q);
    uint32_t v = static_cast<uint32_t>(j / f), g = static_cast<uint32_t>(j % f);
    Accumulator acc;
    for (const auto& [g2, x] : rt.col(g).entries()) acc.add(lv.q.project_index(static_cast<uint32_t>(v * f + g2)), x);
    out.set_col(q, acc.take());
  }
  return out;
}

Matrix TensorSpace::left_by(const Vec& s) const {
  Matrix r(dim(), dim());
  for (size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) r = r + left_action(i).scaled(s[i]);
  return r;
}

Matrix TensorSpace::right_by(const Vec& t) const {
  Matrix r(dim(), dim());
  for (size_t i = 0; i < t.size(); ++i)
    if (!t[i].is_zero()) r = r + right_action(i).scaled(t[i]);
  return r;
}

Bimodule TensorSpace::as_bimodule(std::string name) const {
  Bimodule m{std::move(name), left_algebra(), right_algebra(), dim(), {}, {}};
  for (size_t s = 0; s < m.left.dim(); ++s) m.left_action.push_back(left_action(s));
  for (size_t t = 0; t < m.right.dim(); ++t) m.right_action.push_back(right_action(t));
  return m;
}

Matrix matrix_from_raw(const TensorSpace& src, const TensorSpace& dst, const std::function<Raw(const Tuple&)>& f) {
  Matrix m(dst.dim(), src.dim());
  for (uint32_t q = 0; q < src.dim(); ++q) m.set_col(q, dst.project(f(src.representative(q))));
  return m;
}

void for_each_tuple(const std::vector<size_t>& sizes, const std::function<void(const Tuple&)>& f) {
  for (size_t s : sizes)
    if (s == 0) return;
  Tuple t(sizes.size(), 0);
  while (true) {
    f(t);
    size_t k = sizes.size();
    while (k > 0) {
      --k;
      if (++t[k] < sizes[k]) break;
      t[k] = 0;
      if (k == 0) return;
    }
    if (sizes.empty()) return;
  }
}

Report check_descends(const TensorSpace& src, const TensorSpace& dst, const std::function<Raw(const Tuple&)>& f,
                      const Matrix& induced, size_t limit) {
  Report rep;
  if (src.raw_size() > limit) return rep;
  std::vector<size_t> sizes;
  for (size_t i = 0; i < src.arity(); ++i) sizes.push_back(src.factor(i).dim);
  for_each_tuple(sizes, [&](const Tuple& t) {
    if (rep.residuals().size() >= 8) return;
    if (dst.project(f(t)) != induced.apply(src.project(t))) {
      std::string loc = "(";
      for (size_t i = 0; i < t.size(); ++i) loc += (i ? "," : "") + std::to_string(t[i]);
      rep.add("well-defined on balanced tensor", loc + ")");
    }
  });
  return rep;
}

TensorSpace tensor_over(const Bimodule& m, const Bimodule& n, const Algebra& over, const Matrix& into_m,
                        const Matrix& into_n, size_t guard) {
  return TensorSpace(m, guard).then(n, over, into_m, into_n);
}

TensorSpace tensor_power(const Algebra& a, const Algebra& t, const Matrix& incl, size_t copies, size_t guard) {
  Bimodule reg = regular_bimodule(a);
  TensorSpace s(reg, guard);
  for (size_t i = 1; i < copies; ++i) s = s.then(reg, t, incl, incl);
  return s;
}

}  // namespace ncg
