#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ncg/algebra.hpp"

namespace ncg {

// A pure tensor of basis elements, one index per factor.
using Tuple = std::vector<uint32_t>;

struct RawTerm {
  Tuple t;
  Scalar c;
};

// Finite linear combination of pure basis tensors, before any balancing.
using Raw = std::vector<RawTerm>;

Raw raw_unit(Tuple t, const Scalar& c = Scalar(1));
Raw raw_from_vec(const SparseVec& v);
void raw_add(Raw& into, const Raw& r, const Scalar& c = Scalar(1));
Raw raw_scaled(const Raw& r, const Scalar& c);
// Tensor concatenation of legs.
Raw raw_concat(const Raw& a, const Raw& b);
// Replaces leg `leg` by the image column of m (m.rows() = new leg size).
Raw raw_apply_leg(const Raw& r, size_t leg, const Matrix& m);
// Replaces legs (leg, leg+1) by their product in a.
Raw raw_multiply_legs(const Raw& r, size_t leg, const Algebra& a);
// Replaces leg `leg` by the legs produced by f (which may be several).
Raw raw_expand_leg(const Raw& r, size_t leg, const std::function<Raw(uint32_t)>& f);
// Replaces legs leg..leg+width-1 by the legs produced by f.
Raw raw_replace_legs(const Raw& r, size_t leg, size_t width, const std::function<Raw(const Tuple&)>& f);
// Inserts a fixed index before position pos.
Raw raw_insert_leg(const Raw& r, size_t pos, uint32_t idx);

// Left-nested iterated balanced tensor product
//   ((M_0 ⊗_{T_1} M_1) ⊗_{T_2} M_2) ⊗ ...
// Each level is the quotient of (previous level) ⊗_k (next factor) by the
// balancing relations (v◁t)⊗f − v⊗(t▷f). Coordinates at every level are the
// canonical quotient coordinates; each coordinate has one raw tuple as its
// representative.
class TensorSpace {
 public:
  static constexpr size_t kDefaultGuard = 2'000'000;

  TensorSpace() = default;
  explicit TensorSpace(const Bimodule& first, size_t guard = kDefaultGuard);

  // this ⊗_over next. `into_left` maps `over` into the right algebra of the
  // last factor, `into_right` maps it into the left algebra of `next`.
  TensorSpace then(const Bimodule& next, const Algebra& over, const Matrix& into_left,
                   const Matrix& into_right) const;
  // Balanced over the common algebra (right of last factor = left of next).
  TensorSpace then(const Bimodule& next) const;
  // Over the ground field: no relations.
  TensorSpace then_k(const Bimodule& next) const;

  size_t dim() const;
  size_t arity() const { return levels_.size(); }
  size_t guard() const { return guard_; }
  const Bimodule& factor(size_t i) const { return levels_[i]->factor; }
  const Algebra& left_algebra() const { return levels_.front()->factor.left; }
  const Algebra& right_algebra() const { return levels_.back()->factor.right; }
  // Dimension of the unbalanced product.
  size_t raw_size() const;

  SparseVec project(const Tuple& t) const;
  SparseVec project(const Raw& r) const;
  Tuple representative(uint32_t q) const;
  Raw lift(const SparseVec& coords) const;
  // Pure tensor of arbitrary factor vectors.
  SparseVec embed(const std::vector<Vec>& parts) const;

  // Outer actions on coordinates.
  Matrix left_action(size_t s) const;
  Matrix right_action(size_t t) const;
  Matrix left_by(const Vec& s) const;
  Matrix right_by(const Vec& t) const;
  Bimodule as_bimodule(std::string name) const;

  // Relation span of the last level, for diagnostics.
  const Quotient& last_quotient() const { return levels_.back()->q; }

 private:
  struct Level {
    Bimodule factor;
    Quotient q;
    size_t prev_dim = 1;
  };
  std::vector<std::shared_ptr<const Level>> levels_;
  size_t guard_ = kDefaultGuard;
};

// Column q of the result is dst.project(f(src.representative(q))).
Matrix matrix_from_raw(const TensorSpace& src, const TensorSpace& dst, const std::function<Raw(const Tuple&)>& f);

// Checks that f descends to the balanced quotient: for every raw tuple x of
// src, dst.project(f(x)) equals the induced matrix applied to src.project(x).
// Gives up (returns true) when src has more than `limit` raw tuples.
Report check_descends(const TensorSpace& src, const TensorSpace& dst, const std::function<Raw(const Tuple&)>& f,
                      const Matrix& induced, size_t limit = 200'000);

// Iterates all raw tuples with the given leg sizes, leftmost slowest.
void for_each_tuple(const std::vector<size_t>& sizes, const std::function<void(const Tuple&)>& f);

// M ⊗_T N for subalgebra T of a common algebra, all in one call.
TensorSpace tensor_over(const Bimodule& m, const Bimodule& n, const Algebra& over, const Matrix& into_m,
                        const Matrix& into_n, size_t guard = TensorSpace::kDefaultGuard);

// A ⊗_T A ⊗_T ... (copies of the regular bimodule of a) balanced over the
// subalgebra with inclusion `incl`.
TensorSpace tensor_power(const Algebra& a, const Algebra& t, const Matrix& incl, size_t copies,
                         size_t guard = TensorSpace::kDefaultGuard);

}  // namespace ncg
