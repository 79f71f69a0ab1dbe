#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ncg/algebra.hpp"

namespace ncg {

// A residual that must vanish; affine in the unknown matrix.
using Constraint = std::function<SparseVec(const Matrix& x)>;

// Appends the entries of m, shifted by offset, in column-major order.
void append_flat(std::vector<SparseVec::Entry>& out, size_t offset, const Matrix& m);
SparseVec flatten(const std::vector<Matrix>& blocks);

// x L_src[s] - L_dst[s] x for each s.
Constraint intertwines(std::vector<Matrix> src_actions, std::vector<Matrix> dst_actions);
// x * inputs - values.
Constraint prescribed(Matrix inputs, Matrix values);
// pre * x * post - target.
Constraint sandwiched(Matrix pre, Matrix post, Matrix target);

struct AffineSolutionSet {
  size_t rows = 0, cols = 0;
  Matrix particular;
  std::vector<Matrix> homogeneous;  // canonical basis of the solutions of the linear part

  size_t dim() const { return homogeneous.size(); }
  Matrix point(const Vec& coeffs) const;
};

// All rows x cols matrices satisfying every constraint. Nothing when the
// system is inconsistent. The particular solution has all free variables
// zero, so it is deterministic.
std::optional<AffineSolutionSet> equivariant_hom_space(size_t rows, size_t cols,
                                                       const std::vector<Constraint>& constraints);
bool satisfies(const Matrix& x, const std::vector<Constraint>& constraints);

enum class Side { Left, Right };

// Finite dual basis of a one-sided module: left modules satisfy
// x = Σ χ_i(x)·w_i, right modules x = Σ w_i·χ_i(x).
struct DualBasis {
  std::vector<Vec> w;
  std::vector<Matrix> chi;  // S.dim x M.dim, S-linear
};

struct ProjectivityResult {
  std::optional<DualBasis> basis;
  bool projective = false;
  bool generator = false;
  bool faithfully_flat = false;
};

// The acting algebra S is m.left for Side::Left and m.right for Side::Right.
ProjectivityResult projective_dual_basis(const Bimodule& m, Side side);
// Checks x = Σ χ_i(x)·w_i (or the right-handed form) on every basis x.
Report verify_dual_basis(const Bimodule& m, Side side, const DualBasis& d);

}  // namespace ncg
