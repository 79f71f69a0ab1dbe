#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncg/error.hpp"
#include "ncg/scalar.hpp"

namespace ncg {

using Vec = std::vector<Scalar>;

Vec zero_vec(size_t n);
Vec unit_vec(size_t n, size_t i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& c, const Vec& a);

// Sorted (index, nonzero value) pairs.
class SparseVec {
 public:
  using Entry = std::pair<uint32_t, Scalar>;

  SparseVec() = default;
  static SparseVec unit(uint32_t i, const Scalar& v = Scalar(1));
  static SparseVec from_dense(const Vec& v);
  // Accepts unsorted input with repeats; combines and drops zeros.
  static SparseVec from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return e_; }
  size_t nnz() const { return e_.size(); }
  bool empty() const { return e_.empty(); }
  Scalar get(uint32_t i) const;
  Vec to_dense(size_t n) const;

  // Appends; caller keeps indices increasing and values nonzero.
  void push(uint32_t i, const Scalar& v) { e_.emplace_back(i, v); }

  SparseVec scaled(const Scalar& c) const;
  // this + c * o
  SparseVec axpy(const Scalar& c, const SparseVec& o) const;
  friend SparseVec operator+(const SparseVec& a, const SparseVec& b) { return a.axpy(Scalar(1), b); }
  friend SparseVec operator-(const SparseVec& a, const SparseVec& b) { return a.axpy(Scalar(-1), b); }
  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.e_ == b.e_; }
  friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }
  friend bool operator<(const SparseVec& a, const SparseVec& b);

 private:
  std::vector<Entry> e_;
};

// Ordered accumulator for building sparse vectors.
class Accumulator {
 public:
  void add(uint32_t i, const Scalar& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = m_.try_emplace(i, v);
    if (!fresh) it->second += v;
  }
  void add(const SparseVec& v, const Scalar& c = Scalar(1)) {
    for (const auto& [i, x] : v.entries()) add(i, c * x);
  }
  SparseVec take();

 private:
  std::map<uint32_t, Scalar> m_;
};

// Sparse column storage; entry (i, j) addresses row i, column j.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(cols) {}
  static Matrix identity(size_t n);
  static Matrix from_columns(size_t rows, std::vector<SparseVec> cols);
  // Dense row-major input.
  static Matrix from_rows(const std::vector<Vec>& rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const SparseVec& col(size_t j) const { return data_[j]; }
  void set_col(size_t j, SparseVec v);
  Scalar at(size_t i, size_t j) const { return data_[j].get(static_cast<uint32_t>(i)); }
  void set(size_t i, size_t j, const Scalar& v);
  size_t nnz() const;

  SparseVec apply(const SparseVec& v) const;
  Vec apply(const Vec& v) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;
  std::vector<SparseVec> row_vectors() const;
  std::vector<Vec> dense_rows() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> data_;
};

// Incrementally built row echelon form. Each row has its pivot at its
// smallest index with coefficient 1. Rows are reduced against earlier
// pivots on insertion; finalize() produces the unique reduced form.
class Echelon {
 public:
  explicit Echelon(size_t ambient);
  size_t ambient() const { return ambient_; }
  size_t rank() const { return rows_.size(); }

  // Returns true when v was independent of the current rows.
  bool insert(const SparseVec& v);
  // Eliminates all pivot entries of v.
  SparseVec reduce(const SparseVec& v) const;
  // Like reduce, also returns the multiplier of each row used.
  SparseVec reduce_tracked(const SparseVec& v, std::vector<std::pair<size_t, Scalar>>* used) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  // Back-substitutes to reduced row echelon form, rows sorted by pivot.
  void finalize();
  const std::vector<SparseVec>& rows() const { return rows_; }
  std::vector<uint32_t> pivots() const;
  int32_t row_of_pivot(uint32_t col) const { return pivot_row_[col]; }

 private:
  size_t ambient_;
  std::vector<SparseVec> rows_;
  std::vector<int32_t> pivot_row_;
  bool reduced_ = true;
};

// Canonical (reduced row echelon) basis of a subspace.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(size_t ambient) : ambient_(ambient) {}
  static Subspace span(size_t ambient, const std::vector<SparseVec>& vectors);
  static Subspace span_dense(size_t ambient, const std::vector<Vec>& vectors);
  static Subspace full(size_t ambient);

  size_t ambient() const { return ambient_; }
  size_t dim() const { return basis_.size(); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }

  // Coordinates of v in the canonical basis, or nothing when v is outside.
  std::optional<Vec> membership(const SparseVec& v) const;
  std::optional<Vec> membership(const Vec& v) const { return membership(SparseVec::from_dense(v)); }
  bool contains(const SparseVec& v) const { return membership(v).has_value(); }
  bool contains(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  Subspace sum(const Subspace& o) const;
  SparseVec combine(const Vec& coords) const;
  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

 private:
  size_t ambient_ = 0;
  std::vector<SparseVec> basis_;
  std::vector<uint32_t> pivots_;
  std::vector<int32_t> row_of_;  // pivot column -> row
  friend class Quotient;
};

// Ambient space modulo the span of relations. Quotient coordinates are the
// non-pivot ambient coordinates; the section sends a coordinate to its
// ambient unit vector.
class Quotient {
 public:
  Quotient() = default;
  Quotient(size_t ambient, const std::vector<SparseVec>& relations);
  static Quotient identity(size_t ambient);

  size_t ambient() const { return ambient_; }
  size_t dim() const { return trivial_ ? ambient_ : rep_.size(); }
  const Subspace& relations() const { return rel_; }

  SparseVec project_index(uint32_t j) const;
  SparseVec project(const SparseVec& v) const;
  uint32_t representative(uint32_t q) const { return trivial_ ? q : rep_[q]; }
  SparseVec lift(const SparseVec& coords) const;
  Matrix projection() const;
  Matrix section() const;

 private:
  size_t ambient_ = 0;
  bool trivial_ = true;
  Subspace rel_;
  std::vector<int32_t> coord_of_;
  std::vector<uint32_t> rep_;
};

struct RrefResult {
  std::vector<SparseVec> rref;   // nonzero rows of the reduced form
  size_t rank = 0;
  std::vector<uint32_t> pivot_cols;
  Subspace kernel;
  // One solution per column of b, free variables set to zero; absent when
  // any column is inconsistent.
  std::optional<std::vector<Vec>> particular;
};

RrefResult rref_solve(const Matrix& m, const std::optional<Matrix>& b = std::nullopt);
// Same on explicit rows over n unknowns; entries at indices n..n+extra-1
// form the right-hand sides.
RrefResult rref_rows(std::vector<SparseVec> rows, size_t n, size_t extra);
size_t rank(const Matrix& m);
Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);
// Some x with m x = b (free variables zero), or nothing.
std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b);
// Inverse of a square matrix, or nothing when singular.
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace ncg
