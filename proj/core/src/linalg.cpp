#include "ncg/linalg.hpp"

#include <algorithm>

namespace ncg {

Vec zero_vec(size_t n) { return Vec(n); }

Vec unit_vec(size_t n, size_t i) {
  Vec v(n);
  v.at(i) = Scalar(1);
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector add");
  Vec r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sub");
  Vec r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator*(const Scalar& c, const Vec& a) {
  Vec r(a);
  for (auto& x : r) x *= c;
  return r;
}

SparseVec SparseVec::unit(uint32_t i, const Scalar& v) {
  SparseVec r;
  if (!v.is_zero()) r.e_.emplace_back(i, v);
  return r;
}

SparseVec SparseVec::from_dense(const Vec& v) {
  SparseVec r;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.e_.emplace_back(static_cast<uint32_t>(i), v[i]);
  return r;
}

SparseVec SparseVec::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVec r;
  for (auto& [i, v] : entries) {
    if (!r.e_.empty() && r.e_.back().first == i) {
      r.e_.back().second += v;
    } else {
      if (!r.e_.empty() && r.e_.back().second.is_zero()) r.e_.pop_back();
      r.e_.emplace_back(i, v);
    }
  }
  if (!r.e_.empty() && r.e_.back().second.is_zero()) r.e_.pop_back();
  return r;
}

Scalar SparseVec::get(uint32_t i) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), i, [](const Entry& a, uint32_t k) { return a.first < k; });
  if (it != e_.end() && it->first == i) return it->second;
  return Scalar();
}

Vec SparseVec::to_dense(size_t n) const {
  Vec v(n);
  for (const auto& [i, x] : e_) {
    if (i >= n) throw Error(ErrorKind::DimensionMismatch, "sparse index out of range");
    v[i] = x;
  }
  return v;
}

SparseVec SparseVec::scaled(const Scalar& c) const {
  SparseVec r;
  if (c.is_zero()) return r;
  r.e_.reserve(e_.size());
  // A rational scalar can vanish once coerced into F_p.
  for (const auto& [i, x] : e_) {
    Scalar y = x * c;
    if (!y.is_zero()) r.e_.emplace_back(i, std::move(y));
  }
  return r;
}

SparseVec SparseVec::axpy(const Scalar& c, const SparseVec& o) const {
  if (c.is_zero() || o.empty()) return *this;
  SparseVec r;
  r.e_.reserve(e_.size() + o.e_.size());
  size_t a = 0, b = 0;
  while (a < e_.size() || b < o.e_.size()) {
    if (b == o.e_.size() || (a < e_.size() && e_[a].first < o.e_[b].first)) {
      r.e_.push_back(e_[a++]);
    } else if (a == e_.size() || o.e_[b].first < e_[a].first) {
      r.e_.emplace_back(o.e_[b].first, o.e_[b].second * c);
      ++b;
    } else {
      Scalar s = e_[a].second + o.e_[b].second * c;
      if (!s.is_zero()) r.e_.emplace_back(e_[a].first, s);
      ++a;
      ++b;
    }
  }
  return r;
}

bool operator<(const SparseVec& a, const SparseVec& b) {
  size_t n = std::min(a.e_.size(), b.e_.size());
  for (size_t k = 0; k < n; ++k) {
    if (a.e_[k].first != b.e_[k].first) return a.e_[k].first < b.e_[k].first;
    if (a.e_[k].second != b.e_[k].second) return a.e_[k].second < b.e_[k].second;
  }
  return a.e_.size() < b.e_.size();
}

SparseVec Accumulator::take() {
  SparseVec r;
  for (auto& [i, v] : m_)
    if (!v.is_zero()) r.push(i, v);
  m_.clear();
  return r;
}

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.data_[i] = SparseVec::unit(static_cast<uint32_t>(i));
  return m;
}

Matrix Matrix::from_columns(size_t rows, std::vector<SparseVec> cols) {
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols.size();
  for (const auto& c : cols)
    if (!c.empty() && c.entries().back().first >= rows) throw Error(ErrorKind::DimensionMismatch, "column entry beyond rows");
  m.data_ = std::move(cols);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, size_t cols) {
  Matrix m(rows.size(), cols);
  std::vector<std::vector<SparseVec::Entry>> tmp(cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length");
    for (size_t j = 0; j < cols; ++j)
      if (!rows[i][j].is_zero()) tmp[j].emplace_back(static_cast<uint32_t>(i), rows[i][j]);
  }
  for (size_t j = 0; j < cols; ++j) m.data_[j] = SparseVec::from_entries(std::move(tmp[j]));
  return m;
}

void Matrix::set_col(size_t j, SparseVec v) {
  if (j >= cols_) throw Error(ErrorKind::DimensionMismatch, "column index");
  if (!v.empty() && v.entries().back().first >= rows_) throw Error(ErrorKind::DimensionMismatch, "column entry beyond rows");
  data_[j] = std::move(v);
}

void Matrix::set(size_t i, size_t j, const Scalar& v) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorKind::DimensionMismatch, "entry index");
  Scalar old = at(i, j);
  data_[j] = data_[j].axpy(Scalar(1), SparseVec::unit(static_cast<uint32_t>(i), v - old));
}

size_t Matrix::nnz() const {
  size_t n = 0;
  for (const auto& c : data_) n += c.nnz();
  return n;
}

SparseVec Matrix::apply(const SparseVec& v) const {
  if (v.empty()) return {};
  if (v.entries().back().first >= cols_) throw Error(ErrorKind::DimensionMismatch, "apply");
  if (v.nnz() == 1) return data_[v.entries()[0].first].scaled(v.entries()[0].second);
  Accumulator acc;
  for (const auto& [j, x] : v.entries()) acc.add(data_[j], x);
  return acc.take();
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "apply");
  Vec r(rows_);
  for (size_t j = 0; j < cols_; ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& [i, x] : data_[j].entries()) r[i] += x * v[j];
  }
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  Matrix r(rows_, o.cols_);
  for (size_t j = 0; j < o.cols_; ++j) r.data_[j] = apply(o.data_[j]);
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  Matrix r(rows_, cols_);
  for (size_t j = 0; j < cols_; ++j) r.data_[j] = data_[j] + o.data_[j];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  Matrix r(rows_, cols_);
  for (size_t j = 0; j < cols_; ++j) r.data_[j] = data_[j] - o.data_[j];
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(rows_, cols_);
  for (size_t j = 0; j < cols_; ++j) r.data_[j] = data_[j].scaled(c);
  return r;
}

std::vector<SparseVec> Matrix::row_vectors() const {
  std::vector<SparseVec> rows(rows_);
  for (size_t j = 0; j < cols_; ++j)
    for (const auto& [i, x] : data_[j].entries()) rows[i].push(static_cast<uint32_t>(j), x);
  return rows;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  r.data_ = row_vectors();
  return r;
}

std::vector<Vec> Matrix::dense_rows() const {
  std::vector<Vec> rows(rows_, Vec(cols_));
  for (size_t j = 0; j < cols_; ++j)
    for (const auto& [i, x] : data_[j].entries()) rows[i][j] = x;
  return rows;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const SparseVec& c) { return c.empty(); });
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

// ---------------------------------------------------------------------------

Echelon::Echelon(size_t ambient) : ambient_(ambient), pivot_row_(ambient, -1) {}

SparseVec Echelon::reduce_tracked(const SparseVec& v, std::vector<std::pair<size_t, Scalar>>* used) const {
  if (v.empty() || rows_.empty()) return v;
  if (!v.empty() && v.entries().back().first >= ambient_) throw Error(ErrorKind::DimensionMismatch, "echelon reduce");
  // Fast path: nothing to eliminate.
  bool any = false;
  for (const auto& [i, x] : v.entries())
    if (pivot_row_[i] >= 0) {
      any = true;
      break;
    }
  if (!any) return v;
  std::map<uint32_t, Scalar> w;
  for (const auto& [i, x] : v.entries()) w.emplace_hint(w.end(), i, x);
  auto it = w.begin();
  while (it != w.end()) {
    int32_t r = pivot_row_[it->first];
    if (r < 0) {
      ++it;
      continue;
    }
    uint32_t piv = it->first;
    Scalar c = it->second;
    if (used) used->emplace_back(static_cast<size_t>(r), c);
    for (const auto& [j, x] : rows_[r].entries()) {
      if (j == piv) continue;
      auto [jt, fresh] = w.try_emplace(j, -(c * x));
      if (!fresh) {
        jt->second -= c * x;
        if (jt->second.is_zero()) w.erase(jt);
      }
    }
    w.erase(piv);
    it = w.upper_bound(piv);
  }
  SparseVec out;
  for (auto& [i, x] : w) out.push(i, x);
  return out;
}

SparseVec Echelon::reduce(const SparseVec& v) const { return reduce_tracked(v, nullptr); }

bool Echelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  Scalar lead = r.entries()[0].second;
  if (!lead.is_one()) r = r.scaled(lead.inverse());
  pivot_row_[r.entries()[0].first] = static_cast<int32_t>(rows_.size());
  rows_.push_back(std::move(r));
  reduced_ = false;
  return true;
}

void Echelon::finalize() {
  if (reduced_) return;
  std::sort(rows_.begin(), rows_.end(),
            [](const SparseVec& a, const SparseVec& b) { return a.entries()[0].first < b.entries()[0].first; });
  for (size_t k = 0; k < rows_.size(); ++k) pivot_row_[rows_[k].entries()[0].first] = static_cast<int32_t>(k);
  for (size_t k = rows_.size(); k-- > 0;) {
    uint32_t piv = rows_[k].entries()[0].first;
    for (size_t s = 0; s < k; ++s) {
      Scalar c = rows_[s].get(piv);
      if (!c.is_zero()) rows_[s] = rows_[s].axpy(-c, rows_[k]);
    }
  }
  reduced_ = true;
}

std::vector<uint32_t> Echelon::pivots() const {
  std::vector<uint32_t> p;
  p.reserve(rows_.size());
  for (const auto& r : rows_) p.push_back(r.entries()[0].first);
  return p;
}

// ---------------------------------------------------------------------------

Subspace Subspace::span(size_t ambient, const std::vector<SparseVec>& vectors) {
  Echelon ech(ambient);
  for (const auto& v : vectors) ech.insert(v);
  ech.finalize();
  Subspace s(ambient);
  s.basis_ = ech.rows();
  s.pivots_ = ech.pivots();
  s.row_of_.assign(ambient, -1);
  for (size_t k = 0; k < s.pivots_.size(); ++k) s.row_of_[s.pivots_[k]] = static_cast<int32_t>(k);
  return s;
}

Subspace Subspace::span_dense(size_t ambient, const std::vector<Vec>& vectors) {
  std::vector<SparseVec> sv;
  sv.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw Error(ErrorKind::DimensionMismatch, "span vector length");
    sv.push_back(SparseVec::from_dense(v));
  }
  return span(ambient, sv);
}

Subspace Subspace::full(size_t ambient) {
  std::vector<SparseVec> units;
  for (size_t i = 0; i < ambient; ++i) units.push_back(SparseVec::unit(static_cast<uint32_t>(i)));
  return span(ambient, units);
}

std::optional<Vec> Subspace::membership(const SparseVec& v) const {
  if (!v.empty() && v.entries().back().first >= ambient_) throw Error(ErrorKind::DimensionMismatch, "membership");
  // Reduce by the canonical rows; coordinates are the pivot entries of v.
  Vec coords(basis_.size());
  SparseVec w = v;
  for (const auto& [i, x] : v.entries()) {
    int32_t r = row_of_.empty() ? -1 : row_of_[i];
    if (r >= 0) coords[r] = x;
  }
  for (size_t r = 0; r < basis_.size(); ++r)
    if (!coords[r].is_zero()) w = w.axpy(-coords[r], basis_[r]);
  if (!w.empty()) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::DimensionMismatch, "contains");
  return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const SparseVec& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::DimensionMismatch, "sum");
  std::vector<SparseVec> all = basis_;
  all.insert(all.end(), o.basis_.begin(), o.basis_.end());
  return span(ambient_, all);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::DimensionMismatch, "intersect");
  // Zassenhaus: rows (u|u) and (w|0); rows with vanishing first half span the
  // intersection in their second half.
  const auto n = static_cast<uint32_t>(ambient_);
  Echelon ech(2 * ambient_);
  for (const auto& u : basis_) {
    SparseVec row = u;
    for (const auto& [i, x] : u.entries()) row.push(i + n, x);
    ech.insert(row);
  }
  for (const auto& w : o.basis_) ech.insert(w);
  std::vector<SparseVec> out;
  for (const auto& r : ech.rows()) {
    if (r.entries()[0].first < n) continue;
    SparseVec v;
    for (const auto& [i, x] : r.entries()) v.push(i - n, x);
    out.push_back(v);
  }
  return span(ambient_, out);
}

SparseVec Subspace::combine(const Vec& coords) const {
  if (coords.size() != basis_.size()) throw Error(ErrorKind::DimensionMismatch, "combine");
  Accumulator acc;
  for (size_t r = 0; r < basis_.size(); ++r)
    if (!coords[r].is_zero()) acc.add(basis_[r], coords[r]);
  return acc.take();
}

// ---------------------------------------------------------------------------

Quotient::Quotient(size_t ambient, const std::vector<SparseVec>& relations) : ambient_(ambient) {
  rel_ = Subspace::span(ambient, relations);
  if (rel_.dim() == 0) {
    trivial_ = true;
    return;
  }
  trivial_ = false;
  coord_of_.assign(ambient, -1);
  for (size_t j = 0; j < ambient; ++j) {
    if (rel_.row_of_[j] >= 0) continue;
    coord_of_[j] = static_cast<int32_t>(rep_.size());
    rep_.push_back(static_cast<uint32_t>(j));
  }
}

Quotient Quotient::identity(size_t ambient) {
  Quotient q;
  q.ambient_ = ambient;
  q.rel_ = Subspace(ambient);
  q.trivial_ = true;
  return q;
}

SparseVec Quotient::project_index(uint32_t j) const {
  if (j >= ambient_) throw Error(ErrorKind::DimensionMismatch, "projection index");
  if (trivial_) return SparseVec::unit(j);
  if (coord_of_[j] >= 0) return SparseVec::unit(static_cast<uint32_t>(coord_of_[j]));
  const SparseVec& row = rel_.basis_[rel_.row_of_[j]];
  SparseVec out;
  for (const auto& [i, x] : row.entries())
    if (i != j) out.push(static_cast<uint32_t>(coord_of_[i]), -x);
  return out;
}

SparseVec Quotient::project(const SparseVec& v) const {
  if (trivial_) return v;
  Accumulator acc;
  for (const auto& [j, x] : v.entries()) acc.add(project_index(j), x);
  return acc.take();
}

SparseVec Quotient::lift(const SparseVec& coords) const {
  if (trivial_) return coords;
  SparseVec out;
  for (const auto& [q, x] : coords.entries()) out.push(rep_[q], x);
  return out;
}

Matrix Quotient::projection() const {
  Matrix m(dim(), ambient_);
  for (size_t j = 0; j < ambient_; ++j) m.set_col(j, project_index(static_cast<uint32_t>(j)));
  return m;
}

Matrix Quotient::section() const {
  Matrix m(ambient_, dim());
  for (size_t q = 0; q < dim(); ++q) m.set_col(q, SparseVec::unit(representative(static_cast<uint32_t>(q))));
  return m;
}

// ---------------------------------------------------------------------------

RrefResult rref_solve(const Matrix& m, const std::optional<Matrix>& b) {
  const size_t n = m.cols();
  const size_t extra = b ? b->cols() : 0;
  if (b && b->rows() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "rref_solve right-hand side");
  std::vector<SparseVec> rows = m.row_vectors();
  if (b) {
    auto brows = b->row_vectors();
    for (size_t i = 0; i < rows.size(); ++i)
      for (const auto& [j, x] : brows[i].entries()) rows[i].push(static_cast<uint32_t>(n + j), x);
  }
  return rref_rows(std::move(rows), n, extra);
}

RrefResult rref_rows(std::vector<SparseVec> rows, size_t n, size_t extra) {
  // Short rows first keeps fill-in low; the reduced form does not depend on
  // insertion order.
  std::sort(rows.begin(), rows.end(), [](const SparseVec& a, const SparseVec& b) {
    if (a.nnz() != b.nnz()) return a.nnz() < b.nnz();
    return a < b;
  });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  Echelon ech(n + extra);
  for (const auto& r : rows) ech.insert(r);
  ech.finalize();

  RrefResult res;
  bool consistent = true;
  std::vector<int32_t> is_pivot(n, -1);
  for (size_t k = 0; k < ech.rows().size(); ++k) {
    const auto& r = ech.rows()[k];
    uint32_t p = r.entries()[0].first;
    if (p >= n) {
      consistent = false;
      continue;
    }
    is_pivot[p] = static_cast<int32_t>(res.rref.size());
    res.pivot_cols.push_back(p);
    SparseVec left;
    for (const auto& [j, x] : r.entries())
      if (j < n) left.push(j, x);
    res.rref.push_back(left);
  }
  res.rank = res.pivot_cols.size();

  // Kernel from free columns.
  std::vector<std::vector<std::pair<uint32_t, Scalar>>> in_col(n);
  for (size_t k = 0; k < res.rref.size(); ++k)
    for (const auto& [j, x] : res.rref[k].entries())
      if (j != res.pivot_cols[k]) in_col[j].emplace_back(res.pivot_cols[k], x);
  std::vector<SparseVec> kern;
  for (uint32_t f = 0; f < n; ++f) {
    if (is_pivot[f] >= 0) continue;
    std::vector<SparseVec::Entry> e;
    e.emplace_back(f, Scalar(1));
    for (const auto& [p, x] : in_col[f]) e.emplace_back(p, -x);
    kern.push_back(SparseVec::from_entries(std::move(e)));
  }
  res.kernel = Subspace::span(n, kern);

  if (extra > 0 && consistent) {
    std::vector<Vec> sols(extra, Vec(n));
    for (size_t k = 0; k < ech.rows().size(); ++k) {
      const auto& r = ech.rows()[k];
      uint32_t p = r.entries()[0].first;
      for (const auto& [j, x] : r.entries())
        if (j >= n) sols[j - n][p] = x;
    }
    res.particular = std::move(sols);
  }
  return res;
}

size_t rank(const Matrix& m) {
  // Columns or rows, whichever is fewer to insert.
  Echelon ech(m.rows());
  for (size_t j = 0; j < m.cols(); ++j) ech.insert(m.col(j));
  return ech.rank();
}

Subspace kernel(const Matrix& m) { return rref_solve(m).kernel; }

Subspace image(const Matrix& m) {
  std::vector<SparseVec> cols;
  for (size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return Subspace::span(m.rows(), cols);
}

std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b) {
  Matrix bm(m.rows(), 1);
  bm.set_col(0, b);
  auto res = rref_solve(m, bm);
  if (!res.particular) return std::nullopt;
  return SparseVec::from_dense((*res.particular)[0]);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto res = rref_solve(m, Matrix::identity(m.rows()));
  if (res.rank != m.cols() || !res.particular) return std::nullopt;
  Matrix inv(m.cols(), m.rows());
  for (size_t j = 0; j < m.rows(); ++j) inv.set_col(j, SparseVec::from_dense((*res.particular)[j]));
  return inv;
}

}  // namespace ncg
