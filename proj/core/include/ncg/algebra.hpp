#pragma once

#include <string>
#include <vector>

#include "ncg/linalg.hpp"

namespace ncg {

// Finite-dimensional unital associative algebra given by structure
// constants: e_i e_j = product(i, j).
class Algebra {
 public:
  Algebra() = default;
  Algebra(std::string name, std::vector<SparseVec> products, Vec unit);
  // mult[i][j] is the coordinate vector of e_i e_j.
  static Algebra from_table(std::string name, const std::vector<std::vector<Vec>>& mult, Vec unit);
  static Algebra ground(uint32_t modulus = 0, std::string name = "k");

  const std::string& name() const { return name_; }
  size_t dim() const { return dim_; }
  uint32_t modulus() const { return modulus_; }
  const SparseVec& product(size_t i, size_t j) const { return prod_[i * dim_ + j]; }
  const Vec& unit() const { return unit_; }
  Vec basis(size_t i) const { return unit_vec(dim_, i); }
  Scalar one() const { return Scalar(mpq_class(1), modulus_); }
  Scalar zero() const { return Scalar(mpq_class(0), modulus_); }

  Vec mul(const Vec& a, const Vec& b) const;
  Matrix left_mult(const Vec& a) const;   // x -> a x
  Matrix right_mult(const Vec& a) const;  // x -> x a
  Matrix left_mult_basis(size_t i) const;
  Matrix right_mult_basis(size_t i) const;
  bool same_structure(const Algebra& o) const;
  Algebra renamed(std::string name) const;

 private:
  std::string name_;
  size_t dim_ = 0;
  uint32_t modulus_ = 0;
  std::vector<SparseVec> prod_;
  Vec unit_;
};

Report validate_algebra(const Algebra& a);
// Checks multiplicativity and unitality of a linear map src -> dst.
Report validate_morphism(const Algebra& src, const Algebra& dst, const Matrix& m);
// The map k -> a, 1 -> 1_a.
Matrix unit_map(const Algebra& a);

Algebra tensor_algebra(const Algebra& a, const Algebra& b, std::string name);
Algebra product_algebra(const Algebra& a, const Algebra& b, std::string name);
Algebra matrix_algebra(size_t n, uint32_t modulus, std::string name);
Algebra opposite(const Algebra& a);
// k[ℤ_n] with basis g_0..g_{n-1}, equivalently k[x]/(x^n - 1) with g_i = x^i.
Algebra cyclic_group_algebra(size_t n, uint32_t modulus, std::string name);
// k[x]/(x^n), basis 1, x, ..., x^{n-1}.
Algebra truncated_polynomial(size_t n, uint32_t modulus, std::string name);
// Upper triangular n x n matrices, basis E_ij (i <= j) in row-major order.
Algebra upper_triangular_algebra(size_t n, uint32_t modulus, std::string name);

// A subalgebra stored by its canonical basis inside an ambient algebra.
struct Subalgebra {
  Algebra alg;
  Matrix incl;     // ambient.dim x alg.dim, columns = canonical basis
  Subspace span;   // same basis as a subspace of the ambient
};

// Smallest unital subalgebra containing the generators.
Subalgebra generated_subalgebra(const Algebra& a, const std::vector<Vec>& generators, std::string name);
// Upgrades a subspace to a subalgebra; throws ValidationError when it is not
// closed under multiplication or misses the unit.
Subalgebra subalgebra_from_span(const Algebra& a, const Subspace& s, std::string name);
// The subalgebra span{1}.
Subalgebra scalars_in(const Algebra& a);
// Expresses the subalgebra `inner` of a as a subalgebra of `outer` (inner ⊆ outer ⊆ a).
Matrix relative_inclusion(const Subalgebra& inner, const Subalgebra& outer);

// Bimodule over (left, right). Left action matrices act on coordinate
// columns: s.m = left_action[s] m. Right: m.t = right_action[t] m.
struct Bimodule {
  std::string name;
  Algebra left, right;
  size_t dim = 0;
  std::vector<Matrix> left_action;
  std::vector<Matrix> right_action;

  Matrix left_by(const Vec& s) const;
  Matrix right_by(const Vec& t) const;
};

Bimodule regular_bimodule(const Algebra& a);
// Changes the acting algebras along algebra maps into the old ones.
Bimodule restrict_scalars(const Bimodule& m, const Algebra& new_left, const Matrix& into_left,
                          const Algebra& new_right, const Matrix& into_right);
Bimodule restrict_left(const Bimodule& m, const Algebra& new_left, const Matrix& into_left);
Bimodule restrict_right(const Bimodule& m, const Algebra& new_right, const Matrix& into_right);
// Free module S^n with S acting on both sides componentwise.
Bimodule free_bimodule(const Algebra& s, size_t n);
Report validate_bimodule(const Bimodule& m);

}  // namespace ncg
