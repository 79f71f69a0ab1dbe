#pragma once

#include <optional>
#include <vector>

#include "ncg/tensor.hpp"

namespace ncg {

// B^{⊛_T(n+1)}: (n+1)-fold tensor power of B over T with the last leg also
// balanced against the first, b₀⊗…⊗bₙt = tb₀⊗…⊗bₙ. Raw tuples are indexed
// leftmost slowest.
class CircularSpace {
 public:
  static constexpr size_t kDefaultGuard = 2'000'000;

  CircularSpace() = default;
  // `t` is a subalgebra of `b`. MemoryGuardExceeded when dim(B)^{n+1} > guard.
  CircularSpace(const Algebra& b, const Subalgebra& t, size_t n, size_t guard = kDefaultGuard);

  const Algebra& b() const { return b_; }
  const Subalgebra& t() const { return t_; }
  size_t degree() const { return n_; }
  size_t legs() const { return n_ + 1; }
  size_t dim() const { return q_.dim(); }
  size_t raw_size() const { return q_.ambient(); }
  const Quotient& quotient() const { return q_; }

  uint32_t flat(const Tuple& t) const;
  Tuple unflat(uint32_t i) const;
  SparseVec project(const Tuple& t) const;
  SparseVec project(const Raw& r) const;
  Tuple representative(uint32_t q) const { return unflat(q_.representative(q)); }
  SparseVec embed(const std::vector<Vec>& parts) const;

 private:
  Algebra b_;
  Subalgebra t_;
  size_t n_ = 0;
  Quotient q_;
};

// dim(B)^{legs}, saturating at SIZE_MAX.
size_t raw_power(size_t base, size_t legs);

// Operators on B^{⊛(n+1)}; dprime and d map into degree n−1 (empty at n = 0).
struct CyclicOperators {
  Matrix tau, tautilde, N, dprime, d;
};
// `prev` is the degree n−1 space (ignored when n = 0).
CyclicOperators cyclic_operators(const CircularSpace& cur, const CircularSpace* prev);
// Every operator sends the circular relations to relations.
Report check_well_defined(const CircularSpace& cur, const CircularSpace* prev);

// Truncated total complex of the cyclic bicomplex: C_{p,q} = B^{⊛(q+1)},
// even columns carry ∂, odd columns −∂′, horizontal maps τ̃ (odd → even)
// and N (even → odd). Tot_n = ⊕_{p+q=n} C_{p,q}, blocks ordered by p.
struct TotalComplex {
  size_t max_degree = 0;
  std::vector<CircularSpace> spaces;   // index q, up to max_degree + 1
  std::vector<CyclicOperators> ops;    // index q
  std::vector<Matrix> d;               // d[n]: Tot_n → Tot_{n−1}; d[0] has no rows

  size_t tot_dim(size_t n) const;
  size_t offset(size_t n, size_t p) const;
  // Places a block at (p, n−p) of Tot_n.
  SparseVec place(size_t n, size_t p, const SparseVec& block) const;
  SparseVec block(size_t n, size_t p, const SparseVec& chain) const;
};

TotalComplex build_total_complex(const Algebra& b, const Subalgebra& t, size_t max_degree,
                                 size_t guard = CircularSpace::kDefaultGuard);
// d∘d = 0 and well-definedness of every operator.
Report verify_total_complex(const TotalComplex& tc);

// HC_n as ker d_n / im d_{n+1}. Classes are identified by normal forms
// modulo the reduced boundary basis; `normal` has the canonical basis of
// all normal forms of cycles, which also serve as representatives.
struct Homology {
  size_t degree = 0;
  Subspace cycles, boundaries, normal;
  Echelon boundary_rows{0};

  size_t dim() const { return normal.dim(); }
  const std::vector<SparseVec>& representatives() const { return normal.basis(); }
};

// DegreeOutOfRange unless n ≤ max_degree.
Homology homology(const TotalComplex& tc, size_t n);
bool is_cycle(const TotalComplex& tc, size_t n, const SparseVec& chain);
bool is_boundary(const Homology& h, const SparseVec& chain);
SparseVec normal_form(const Homology& h, const SparseVec& chain);
// Class coordinates; NotACycle when the chain is not closed.
Vec class_of(const TotalComplex& tc, const Homology& h, const SparseVec& chain);
bool classes_equal(const Homology& h, const SparseVec& a, const SparseVec& b);

// λ: the complex of B over k onto the complex of B over T.
struct LambdaMap {
  std::vector<Matrix> chain;  // per total degree
  Report checks;              // chain-map identity d λ = λ d
};
LambdaMap lambda_projection(const TotalComplex& over_k, const TotalComplex& over_t);
// Matrix of λ_* from HC_n(B) class coordinates to HC_n(B|T) class coordinates.
Matrix lambda_on_homology(const TotalComplex& over_k, const TotalComplex& over_t, const LambdaMap& l,
                          const Homology& hk, const Homology& ht);

}  // namespace ncg
