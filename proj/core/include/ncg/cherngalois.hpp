#pragma once

#include <string>
#include <vector>

#include "ncg/connect.hpp"
#include "ncg/cyclic.hpp"

namespace ncg {

// T (given inside A) re-expressed as a subalgebra of B.
Subalgebra t_inside_b(const EntwinedExtension& x, const Subalgebra& t);
// ι: B^{⊛T(l+1)} → A^{⊛T(l+1)} induced by B ⊆ A.
Matrix circular_inclusion(const CircularSpace& b_side, const CircularSpace& a_side, const Matrix& b_in_a);

// (−1)^{⌊l/2⌋} l!/⌊l/2⌋!
Scalar chern_coefficient(size_t l, uint32_t modulus = 0);

struct ChgComponents {
  std::vector<CircularSpace> a_spaces, b_spaces;  // index l
  std::vector<SparseVec> a_comps;                 // c͠hg_l in A^{⊛T(l+1)}
  std::vector<SparseVec> comps;                   // pulled back to B^{⊛T(l+1)}
  std::vector<std::string> warnings;
};

// c͠hg_l(e) on the A side for l = 0..max_l, by sweeping over chains of
// adjacent connection terms.
std::vector<SparseVec> chg_in_a(const EntwinedExtension& x, const StrongConnection& sc, const Coidempotent& e,
                                const std::vector<CircularSpace>& a_spaces);
// Computes, pulls back through ι and certifies degree 0 against ker υ_T.
// IotaNotInjective when ι has a kernel, MembershipFailure when a component
// is not in the image of ι or degree 0 is not in ker υ_T.
ChgComponents chg_components(const EntwinedExtension& x, const StrongConnection& sc, const Coidempotent& e,
                             size_t max_l, size_t guard = CircularSpace::kDefaultGuard);

struct ChernCycle {
  size_t n = 0;
  SparseVec cycle;  // in Tot_{2n}
  Vec coords;       // class in HC_{2n}
  std::vector<std::string> warnings;
};
// ⊕_l coefficient(l)·comps[l] at (2n−l, l). `tc` must be built over the same
// B and T as the components with max_degree ≥ 2n. NotACycle if d ≠ 0.
ChernCycle assemble_and_class(const std::vector<SparseVec>& comps, size_t n, const TotalComplex& tc);

// Γ = A □_C W with its left B-action.
struct AssociatedModule {
  Cotensor gamma;
  size_t dim_a_over_b_gamma = 0, dim_a_over_r_w = 0;
  bool identity_expected = false;  // Galois with A projective over B
  Report checks;
};
AssociatedModule associated_module(const EntwinedExtension& x, const LeftComodule& w);

// x = Σ_p x_p ξ_p(x) on the right T-span X of the first legs of ℓ(e_ij).
struct LocalDualSystem {
  Subspace span;              // X inside A
  std::vector<Vec> x;         // x_p ∈ A
  std::vector<Matrix> xi;     // ξ_p: A → T, right T-linear, T.dim x A.dim
};
LocalDualSystem local_dual_system(const EntwinedExtension& x, const StrongConnection& sc, const Coidempotent& e);
Report verify_local_dual_system(const StrongConnection& sc, const LocalDualSystem& d);

// E_{(i,p),(j,q)} = φ(ℓ_p(e_ij) x_q) with ℓ_p = (ξ_p ⊗_T A)∘ℓ_T.
struct IdempotentE {
  size_t size = 0;             // |I|·|P|, index (i,p) = i·|P| + p
  std::vector<Vec> entries;    // B coordinates, row-major
  std::vector<SparseVec> gamma;  // γ_ip in the coordinates of Γ's ambient A ⊗_R W
  Report checks;               // γ_ip ∈ Γ, Σ Eγ = γ, Θ bijective

  const Vec& at(size_t a, size_t b) const { return entries[a * size + b]; }
};
// `phi` is a left B-linear, right T-linear retraction A → B in B coordinates.
// NotIdempotent when E² ≠ E.
IdempotentE idempotent_E(const EntwinedExtension& x, const StrongConnection& sc, const Coidempotent& e,
                         const LocalDualSystem& d, const Matrix& phi);

// E² = E over B; reports the first failing entry.
Report check_idempotent(const Algebra& b, const std::vector<Vec>& f, size_t size);
// c͠h_l(F) = Σ f_{i₁i₂} ⊛ … ⊛ f_{i_{l+1}i₁} for l = 0..max_l; NotIdempotent unless F² = F.
std::vector<SparseVec> ch_components(const std::vector<Vec>& f, size_t size, const std::vector<CircularSpace>& b_spaces);

// c͠h_l(E) = c͠hg_l(e) componentwise.
Report compare_chg_ch(const std::vector<SparseVec>& chg, const std::vector<SparseVec>& ch);

}  // namespace ncg
