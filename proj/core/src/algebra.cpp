#include "ncg/algebra.hpp"

#include <sstream>

namespace ncg {

namespace {

std::string loc(std::initializer_list<size_t> idx) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t i : idx) {
    if (!first) os << ",";
    os << i;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

Algebra::Algebra(std::string name, std::vector<SparseVec> products, Vec unit)
    : name_(std::move(name)), dim_(unit.size()), prod_(std::move(products)), unit_(std::move(unit)) {
  if (prod_.size() != dim_ * dim_) throw Error(ErrorKind::DimensionMismatch, "structure constants of " + name_);
  for (const auto& p : prod_)
    if (!p.empty() && p.entries().back().first >= dim_) throw Error(ErrorKind::DimensionMismatch, "product coordinate");
  for (const auto& u : unit_)
    if (u.modulus() != 0) modulus_ = u.modulus();
  for (const auto& p : prod_)
    for (const auto& [i, x] : p.entries())
      if (x.modulus() != 0) modulus_ = x.modulus();
}

Algebra Algebra::from_table(std::string name, const std::vector<std::vector<Vec>>& mult, Vec unit) {
  size_t n = unit.size();
  if (mult.size() != n) throw Error(ErrorKind::DimensionMismatch, "mult rows");
  std::vector<SparseVec> prod;
  prod.reserve(n * n);
  for (size_t i = 0; i < n; ++i) {
    if (mult[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "mult columns");
    for (size_t j = 0; j < n; ++j) {
      if (mult[i][j].size() != n) throw Error(ErrorKind::DimensionMismatch, "mult vector");
      prod.push_back(SparseVec::from_dense(mult[i][j]));
    }
  }
  return Algebra(std::move(name), std::move(prod), std::move(unit));
}

Algebra Algebra::ground(uint32_t modulus, std::string name) {
  Scalar one(mpq_class(1), modulus);
  Algebra a(std::move(name), {SparseVec::unit(0, one)}, Vec{one});
  a.modulus_ = modulus;
  return a;
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "mul in " + name_);
  Vec r(dim_);
  for (size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < dim_; ++j) {
      if (b[j].is_zero()) continue;
      Scalar c = a[i] * b[j];
      for (const auto& [k, x] : product(i, j).entries()) r[k] += c * x;
    }
  }
  return r;
}

Matrix Algebra::left_mult_basis(size_t i) const {
  Matrix m(dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) m.set_col(j, product(i, j));
  return m;
}

Matrix Algebra::right_mult_basis(size_t i) const {
  Matrix m(dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) m.set_col(j, product(j, i));
  return m;
}

Matrix Algebra::left_mult(const Vec& a) const {
  Matrix m(dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) m.set_col(j, SparseVec::from_dense(mul(a, basis(j))));
  return m;
}

Matrix Algebra::right_mult(const Vec& a) const {
  Matrix m(dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) m.set_col(j, SparseVec::from_dense(mul(basis(j), a)));
  return m;
}

bool Algebra::same_structure(const Algebra& o) const {
  return dim_ == o.dim_ && prod_ == o.prod_ && unit_ == o.unit_;
}

Algebra Algebra::renamed(std::string name) const {
  Algebra a = *this;
  a.name_ = std::move(name);
  return a;
}

Report validate_algebra(const Algebra& a) {
  Report rep;
  const size_t n = a.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        Vec lhs = a.mul(a.mul(a.basis(i), a.basis(j)), a.basis(k));
        Vec rhs = a.mul(a.basis(i), a.mul(a.basis(j), a.basis(k)));
        if (lhs != rhs) rep.add("associativity", loc({i, j, k}));
      }
  for (size_t i = 0; i < n; ++i) {
    if (a.mul(a.unit(), a.basis(i)) != a.basis(i)) rep.add("left unit", loc({i}));
    if (a.mul(a.basis(i), a.unit()) != a.basis(i)) rep.add("right unit", loc({i}));
  }
  return rep;
}

Report validate_morphism(const Algebra& src, const Algebra& dst, const Matrix& m) {
  Report rep;
  if (m.rows() != dst.dim() || m.cols() != src.dim()) {
    rep.add("morphism shape", loc({m.rows(), m.cols()}));
    return rep;
  }
  for (size_t i = 0; i < src.dim(); ++i)
    for (size_t j = 0; j < src.dim(); ++j) {
      Vec lhs = m.apply(src.mul(src.basis(i), src.basis(j)));
      Vec rhs = dst.mul(m.apply(src.basis(i)), m.apply(src.basis(j)));
      if (lhs != rhs) rep.add("multiplicative", loc({i, j}));
    }
  if (m.apply(src.unit()) != dst.unit()) rep.add("unital", "(unit)");
  return rep;
}

Matrix unit_map(const Algebra& a) {
  Matrix m(a.dim(), 1);
  m.set_col(0, SparseVec::from_dense(a.unit()));
  return m;
}

Algebra tensor_algebra(const Algebra& a, const Algebra& b, std::string name) {
  const size_t na = a.dim(), nb = b.dim(), n = na * nb;
  std::vector<SparseVec> prod;
  prod.reserve(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const SparseVec& pa = a.product(i / nb, j / nb);
      const SparseVec& pb = b.product(i % nb, j % nb);
      std::vector<SparseVec::Entry> e;
      for (const auto& [x, cx] : pa.entries())
        for (const auto& [y, cy] : pb.entries()) e.emplace_back(static_cast<uint32_t>(x * nb + y), cx * cy);
      prod.push_back(SparseVec::from_entries(std::move(e)));
    }
  Vec unit(n);
  for (size_t x = 0; x < na; ++x)
    for (size_t y = 0; y < nb; ++y) unit[x * nb + y] = a.unit()[x] * b.unit()[y];
  return Algebra(std::move(name), std::move(prod), std::move(unit));
}

Algebra product_algebra(const Algebra& a, const Algebra& b, std::string name) {
  const size_t na = a.dim(), nb = b.dim(), n = na + nb;
  std::vector<SparseVec> prod(n * n);
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < na; ++j) prod[i * n + j] = a.product(i, j);
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nb; ++j) {
      SparseVec s;
      for (const auto& [k, x] : b.product(i, j).entries()) s.push(static_cast<uint32_t>(k + na), x);
      prod[(i + na) * n + (j + na)] = s;
    }
  Vec unit(n);
  for (size_t i = 0; i < na; ++i) unit[i] = a.unit()[i];
  for (size_t i = 0; i < nb; ++i) unit[na + i] = b.unit()[i];
  return Algebra(std::move(name), std::move(prod), std::move(unit));
}

Algebra matrix_algebra(size_t n, uint32_t modulus, std::string name) {
  // Basis E_ij at index i*n + j.
  const size_t d = n * n;
  Scalar one(mpq_class(1), modulus);
  std::vector<SparseVec> prod(d * d);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t l = 0; l < n; ++l) prod[(i * n + j) * d + (j * n + l)] = SparseVec::unit(static_cast<uint32_t>(i * n + l), one);
  Vec unit(d, Scalar(mpq_class(0), modulus));
  for (size_t i = 0; i < n; ++i) unit[i * n + i] = one;
  return Algebra(std::move(name), std::move(prod), std::move(unit));
}

Algebra cyclic_group_algebra(size_t n, uint32_t modulus, std::string name) {
  Scalar one(mpq_class(1), modulus);
  std::vector<SparseVec> prod(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) prod[i * n + j] = SparseVec::unit(static_cast<uint32_t>((i + j) % n), one);
  Vec unit(n, Scalar(mpq_class(0), modulus));
  unit[0] = one;
  return Algebra(std::move(name), std::move(prod), std::move(unit));
}

Algebra truncated_polynomial(size_t n, uint32_t modulus, std::string name) {
  Scalar one(mpq_class(1), modulus);
  std::vector<SparseVec> prod(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; i + j < n; ++j) prod[i * n + j] = SparseVec::unit(static_cast<uint32_t>(i + j), one);
  Vec unit(n, Scalar(mpq_class(0), modulus));
  unit[0] = one;
  return Algebra(std::move(name), std::move(prod), std::move(unit));
}

Algebra upper_triangular_algebra(size_t n, uint32_t modulus, std::string name) {
  std::vector<std::pair<size_t, size_t>> idx;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) idx.emplace_back(i, j);
  const size_t d = idx.size();
  Scalar one(mpq_class(1), modulus);
  std::vector<SparseVec> prod(d * d);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b)
      if (idx[a].second == idx[b].first)
        for (size_t c = 0; c < d; ++c)
          if (idx[c] == std::make_pair(idx[a].first, idx[b].second)) prod[a * d + b] = SparseVec::unit(static_cast<uint32_t>(c), one);
  Vec unit(d, Scalar(mpq_class(0), modulus));
  for (size_t c = 0; c < d; ++c)
    if (idx[c].first == idx[c].second) unit[c] = one;
  return Algebra(std::move(name), std::move(prod), std::move(unit));
}

Algebra opposite(const Algebra& a) {
  std::vector<SparseVec> prod(a.dim() * a.dim());
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = 0; j < a.dim(); ++j) prod[i * a.dim() + j] = a.product(j, i);
  return Algebra(a.name() + "^op", std::move(prod), a.unit());
}

Subalgebra subalgebra_from_span(const Algebra& a, const Subspace& s, std::string name) {
  if (s.ambient() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "subalgebra span");
  const size_t m = s.dim();
  std::vector<Vec> basis;
  for (const auto& b : s.basis()) basis.push_back(b.to_dense(a.dim()));
  std::vector<SparseVec> prod;
  prod.reserve(m * m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      auto c = s.membership(a.mul(basis[i], basis[j]));
      if (!c) throw Error(ErrorKind::ValidationError, name + " not closed under multiplication at " + loc({i, j}));
      prod.push_back(SparseVec::from_dense(*c));
    }
  auto u = s.membership(a.unit());
  if (!u) throw Error(ErrorKind::ValidationError, name + " does not contain the unit");
  Subalgebra sub{Algebra(std::move(name), std::move(prod), *u), Matrix(a.dim(), m), s};
  for (size_t i = 0; i < m; ++i) sub.incl.set_col(i, s.basis()[i]);
  return sub;
}

Subalgebra generated_subalgebra(const Algebra& a, const std::vector<Vec>& generators, std::string name) {
  std::vector<Vec> current{a.unit()};
  for (const auto& g : generators) current.push_back(g);
  Subspace s = Subspace::span_dense(a.dim(), current);
  // Close under multiplication until the span stops growing.
  while (true) {
    std::vector<Vec> basis;
    for (const auto& b : s.basis()) basis.push_back(b.to_dense(a.dim()));
    std::vector<Vec> all = basis;
    for (const auto& x : basis)
      for (const auto& y : basis) all.push_back(a.mul(x, y));
    Subspace next = Subspace::span_dense(a.dim(), all);
    if (next.dim() == s.dim()) break;
    s = next;
  }
  return subalgebra_from_span(a, s, std::move(name));
}

Subalgebra scalars_in(const Algebra& a) { return generated_subalgebra(a, {}, "k"); }

Matrix relative_inclusion(const Subalgebra& inner, const Subalgebra& outer) {
  Matrix m(outer.alg.dim(), inner.alg.dim());
  for (size_t j = 0; j < inner.alg.dim(); ++j) {
    auto c = outer.span.membership(inner.incl.col(j));
    if (!c) throw Error(ErrorKind::ValidationError, inner.alg.name() + " is not contained in " + outer.alg.name());
    m.set_col(j, SparseVec::from_dense(*c));
  }
  return m;
}

Matrix Bimodule::left_by(const Vec& s) const {
  if (s.size() != left_action.size()) throw Error(ErrorKind::DimensionMismatch, "left_by on " + name);
  Matrix r(dim, dim);
  for (size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) r = r + left_action[i].scaled(s[i]);
  return r;
}

Matrix Bimodule::right_by(const Vec& t) const {
  if (t.size() != right_action.size()) throw Error(ErrorKind::DimensionMismatch, "right_by on " + name);
  Matrix r(dim, dim);
  for (size_t i = 0; i < t.size(); ++i)
    if (!t[i].is_zero()) r = r + right_action[i].scaled(t[i]);
  return r;
}

Bimodule regular_bimodule(const Algebra& a) {
  Bimodule m{a.name(), a, a, a.dim(), {}, {}};
  for (size_t i = 0; i < a.dim(); ++i) {
    m.left_action.push_back(a.left_mult_basis(i));
    m.right_action.push_back(a.right_mult_basis(i));
  }
  return m;
}

Bimodule restrict_left(const Bimodule& m, const Algebra& new_left, const Matrix& into_left) {
  if (into_left.rows() != m.left.dim() || into_left.cols() != new_left.dim())
    throw Error(ErrorKind::ActionMismatch, "restriction map shape for " + m.name);
  Bimodule r = m;
  r.left = new_left;
  r.left_action.clear();
  for (size_t i = 0; i < new_left.dim(); ++i) r.left_action.push_back(m.left_by(into_left.col(i).to_dense(m.left.dim())));
  return r;
}

Bimodule restrict_right(const Bimodule& m, const Algebra& new_right, const Matrix& into_right) {
  if (into_right.rows() != m.right.dim() || into_right.cols() != new_right.dim())
    throw Error(ErrorKind::ActionMismatch, "restriction map shape for " + m.name);
  Bimodule r = m;
  r.right = new_right;
  r.right_action.clear();
  for (size_t i = 0; i < new_right.dim(); ++i)
    r.right_action.push_back(m.right_by(into_right.col(i).to_dense(m.right.dim())));
  return r;
}

Bimodule restrict_scalars(const Bimodule& m, const Algebra& new_left, const Matrix& into_left,
                          const Algebra& new_right, const Matrix& into_right) {
  return restrict_right(restrict_left(m, new_left, into_left), new_right, into_right);
}

Bimodule free_bimodule(const Algebra& s, size_t n) {
  const size_t d = s.dim();
  Bimodule m{s.name() + "^" + std::to_string(n), s, s, d * n, {}, {}};
  for (size_t i = 0; i < d; ++i) {
    Matrix l(d * n, d * n), r(d * n, d * n);
    Matrix ls = s.left_mult_basis(i), rs = s.right_mult_basis(i);
    for (size_t blk = 0; blk < n; ++blk)
      for (size_t j = 0; j < d; ++j) {
        SparseVec cl, cr;
        for (const auto& [k, x] : ls.col(j).entries()) cl.push(static_cast<uint32_t>(blk * d + k), x);
        for (const auto& [k, x] : rs.col(j).entries()) cr.push(static_cast<uint32_t>(blk * d + k), x);
        l.set_col(blk * d + j, cl);
        r.set_col(blk * d + j, cr);
      }
    m.left_action.push_back(l);
    m.right_action.push_back(r);
  }
  return m;
}

Report validate_bimodule(const Bimodule& m) {
  Report rep;
  const Algebra& s = m.left;
  const Algebra& t = m.right;
  if (m.left_action.size() != s.dim() || m.right_action.size() != t.dim()) {
    rep.add("action count", m.name);
    return rep;
  }
  for (const auto& a : m.left_action)
    if (a.rows() != m.dim || a.cols() != m.dim) {
      rep.add("left action shape", m.name);
      return rep;
    }
  for (const auto& a : m.right_action)
    if (a.rows() != m.dim || a.cols() != m.dim) {
      rep.add("right action shape", m.name);
      return rep;
    }
  Matrix id = Matrix::identity(m.dim);
  if (m.left_by(s.unit()) != id) rep.add("left unit", m.name);
  if (m.right_by(t.unit()) != id) rep.add("right unit", m.name);
  for (size_t i = 0; i < s.dim(); ++i)
    for (size_t j = 0; j < s.dim(); ++j)
      if (m.left_action[i] * m.left_action[j] != m.left_by(s.product(i, j).to_dense(s.dim())))
        rep.add("left representation", loc({i, j}));
  for (size_t i = 0; i < t.dim(); ++i)
    for (size_t j = 0; j < t.dim(); ++j)
      if (m.right_action[j] * m.right_action[i] != m.right_by(t.product(i, j).to_dense(t.dim())))
        rep.add("right representation", loc({i, j}));
  for (size_t i = 0; i < s.dim(); ++i)
    for (size_t j = 0; j < t.dim(); ++j)
      if (m.left_action[i] * m.right_action[j] != m.right_action[j] * m.left_action[i])
        rep.add("actions commute", loc({i, j}));
  return rep;
}

}  // namespace ncg
