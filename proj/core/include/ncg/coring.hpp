#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncg/solver.hpp"
#include "ncg/tensor.hpp"

namespace ncg {

// R-coring: R-R bimodule C with Δ: C → C ⊗_R C and ε: C → R.
struct Coring {
  std::string name;
  Algebra base;
  Bimodule carrier;
  TensorSpace cc;  // C ⊗_R C
  Matrix delta;    // cc.dim x C.dim
  Matrix eps;      // R.dim x C.dim

  size_t dim() const { return carrier.dim; }
  // c·r and r·c on C.
  Matrix right_by(const Vec& r) const { return carrier.right_by(r); }
  Matrix left_by(const Vec& r) const { return carrier.left_by(r); }
};

Coring make_coring(std::string name, const Bimodule& carrier, Matrix delta, Matrix eps);
// C = R with Δ the canonical isomorphism R ≅ R ⊗_R R and ε = id.
Coring trivial_coring(const Algebra& r, std::string name = "C");
// k[G] for G = ℤ_n with group-like basis over the ground field.
Coring group_coalgebra(size_t n, uint32_t modulus, std::string name = "C");
// Sweedler coring A ⊗_B A over R = A: Δ(a⊗a') = (a⊗1)⊗_A(1⊗a'), ε(a⊗a') = aa'.
Coring sweedler_coring(const Algebra& a, const Subalgebra& b, std::string name = "C");

Report validate_coring(const Coring& c);

// Right comodule: right R-module M with ρ: M → M ⊗_R C.
struct RightComodule {
  std::string name;
  Bimodule carrier;  // right algebra R
  TensorSpace mc;    // M ⊗_R C
  Matrix coaction;   // mc.dim x M.dim
};

// Left comodule: left R-module W with ρ: W → C ⊗_R W.
struct LeftComodule {
  std::string name;
  Bimodule carrier;  // left algebra R
  TensorSpace cm;    // C ⊗_R W
  Matrix coaction;   // cm.dim x W.dim
};

RightComodule make_right_comodule(std::string name, const Bimodule& carrier, const Coring& c, Matrix coaction);
LeftComodule make_left_comodule(std::string name, const Bimodule& carrier, const Coring& c, Matrix coaction);
// C over itself through Δ, on either side.
RightComodule regular_right_comodule(const Coring& c);
LeftComodule regular_left_comodule(const Coring& c);

Report validate_comodule(const RightComodule& m, const Coring& c);
Report validate_comodule(const LeftComodule& m, const Coring& c);

// Δ(e) = e⊗e and ε(e) = 1.
Report verify_grouplike(const Coring& c, const Vec& e);
// Exhaustive search, only over F_p when p^dim(C) <= 2^16.
std::optional<std::vector<Vec>> search_grouplikes(const Coring& c);

// {m : ρ(m) = m⊗e} and {w : ρ(w) = e⊗w}.
Subspace coinvariants(const RightComodule& m, const Vec& e);
Subspace coinvariants(const LeftComodule& w, const Vec& e);
// Coinvariants of R itself, computed through the right coaction r ↦ e·r and
// the left coaction r ↦ r·e; throws CoinvariantMismatch if they differ.
Subspace base_coinvariants(const Coring& c, const Vec& e);

// Left dual ring *C = Hom_R-(C, R), (ff')(c) = Σ f'(c₍₁₎ f(c₍₂₎)).
struct DualRing {
  Algebra alg;
  std::vector<Matrix> functionals;  // basis, each R.dim x C.dim
  Matrix unit_map;                  // R → *C, r ↦ [c ↦ ε(c r)]
  std::optional<Vec> coordinates(const Matrix& f) const;
};

DualRing dual_ring(const Coring& c);
// m·f = Σ m₍₀₎ f(m₍₁₎), as a bimodule over (k, *C).
Bimodule module_of_comodule(const RightComodule& m, const DualRing& d);
// Checks that f: M → N is right C-colinear.
Report verify_colinear(const RightComodule& m, const RightComodule& n, const Matrix& f, const Coring& c);

// Separability idempotent ζ ∈ A ⊗_R A: aζ = ζa and μ(ζ) = 1.
struct Separability {
  TensorSpace aa;
  Vec zeta;  // coordinates in aa
  AffineSolutionSet space;
};
std::optional<Separability> separability_idempotent(const Algebra& a, const Algebra& r, const Matrix& eta);
// Φ(f)(m) = Σ f(m e_l) f_l for ζ = Σ e_l ⊗ f_l in R ⊗_k R.
Matrix separability_retraction(const Separability& sep, const Bimodule& m, const Bimodule& n, const Matrix& f);

// Cointegral δ: C ⊗_R C → R.
struct Cointegral {
  Matrix delta;  // R.dim x cc.dim
  AffineSolutionSet space;
};
std::optional<Cointegral> cointegral(const Coring& c);
// Φ(f) = (N⊗δ)∘(ρ^N⊗C)∘(f⊗C)∘ρ^M.
Matrix cointegral_retraction(const Cointegral& d, const Coring& c, const RightComodule& m, const RightComodule& n,
                             const Matrix& f);

// Coidempotent matrix (e_ij) over C: Δ(e_ij) = Σ_k e_ik ⊗ e_kj.
struct Coidempotent {
  std::string name;
  size_t n = 0;
  std::vector<Vec> entries;  // (i, j) at i*n + j, C coordinates

  const Vec& at(size_t i, size_t j) const { return entries[i * n + j]; }
  Vec& at(size_t i, size_t j) { return entries[i * n + j]; }
};

Report validate_coidempotent(const Coring& c, const Coidempotent& e);
// Counit matrix p_ij = ε(e_ij), entries in R.
std::vector<Vec> counit_matrix(const Coring& c, const Coidempotent& e);
Coidempotent coidempotent_from_comodule(const LeftComodule& w, const DualBasis& d, const Coring& c,
                                        std::string name = "e");
// W = R^(I) p (row vectors) with ρ((Σ r_i p_ij)_j) = Σ r_i e_ik ⊗ (p_kj)_j.
LeftComodule comodule_from_coidempotent(const Coring& c, const Coidempotent& e);
// The same W with its generators w_i (rows of p), ρ(w_i) = Σ e_ij ⊗ w_j.
struct GeneratedComodule {
  LeftComodule w;
  std::vector<Vec> generators;  // carrier coordinates
};
GeneratedComodule comodule_with_generators(const Coring& c, const Coidempotent& e);
// V = p R^(I) (column vectors) with ρ(v) = Σ u_k ⊗ e_kj v_j.
RightComodule right_comodule_from_coidempotent(const Coring& c, const Coidempotent& e);
Coidempotent direct_sum(const Coidempotent& a, const Coidempotent& b, const Coring& c);

// M □_C W ⊆ M ⊗_R W. When `acting` is a subalgebra of M's left algebra
// (B inside A for an entwined extension), its action is restricted to the
// cotensor product; ValidationError if the subspace is not closed.
struct Cotensor {
  TensorSpace mw;
  Subspace sub;
  std::vector<Matrix> left_action;  // on sub coordinates, one per basis of acting
  Bimodule as_left_module(const Algebra& acting, const Algebra& ground) const;
};
Cotensor cotensor(const RightComodule& m, const LeftComodule& w, const Coring& c, const Subalgebra* acting = nullptr);

// Is there an invertible colinear map between the two left comodules?
bool comodules_isomorphic(const LeftComodule& a, const LeftComodule& b, const Coring& c);

}  // namespace ncg
