#pragma once

#include <optional>
#include <string>

#include "ncg/coring.hpp"

namespace ncg {

// Right entwining structure (A, C, ψ)_R with ψ: C ⊗_R A → A ⊗_R C.
struct Entwining {
  Algebra a;
  Matrix eta;      // R → A, A.dim x R.dim
  Coring coring;
  Bimodule a_over_r;  // A as an R-R bimodule through η
  TensorSpace ca;     // C ⊗_R A
  TensorSpace ac;     // A ⊗_R C
  Matrix psi;         // ac.dim x ca.dim
  std::optional<Matrix> psi_inv;
  std::vector<Matrix> ac_left;   // a·(a'⊗c) for basis a
  std::vector<Matrix> ca_right;  // (c⊗a')·a for basis a

  const Algebra& base() const { return coring.base; }
  // a ⊗ c and c ⊗ a from factor vectors.
  SparseVec ac_pure(const Vec& a_part, const Vec& c_part) const { return ac.embed({a_part, c_part}); }
  SparseVec ca_pure(const Vec& c_part, const Vec& a_part) const { return ca.embed({c_part, a_part}); }
};

Entwining make_entwining(const Algebra& a, const Matrix& eta, const Coring& c, Matrix psi);
// ψ left as a zero matrix of the right shape, to be filled in.
Entwining make_entwining(const Algebra& a, const Matrix& eta, const Coring& c);
// C = R trivial coring, ψ(r⊗a) = ra⊗1.
Entwining trivial_entwining(const Algebra& a, const Algebra& r, const Matrix& eta);
// An A-coring C entwined with A = R itself: ψ(c⊗a) = 1⊗ca.
Entwining self_entwining(const Coring& c);

Report validate_entwining(const Entwining& e);
// Installs ψ⁻¹ after checking the left entwining axioms; NotBijective when ψ
// is not invertible, CompatibilityFailure when ψ⁻¹ fails an axiom.
Entwining invert_entwining(const Entwining& e);
Report validate_left_entwining(const Entwining& e);

// (A ⊗_R C)_ψ as an A-coring, and (C ⊗_R A)_{ψ⁻¹}.
Coring associated_coring(const Entwining& e);
Coring associated_left_coring(const Entwining& e);
// Converse: ψ(c⊗a) = (1⊗c)a from an A-coring D on the carrier A ⊗_R C.
// CompatibilityFailure when the right R-actions of D and A ⊗_R C differ.
Entwining entwining_from_coring(const Algebra& a, const Matrix& eta, const Coring& c, const Coring& d);
// ψ as a map of A-corings (C⊗A)_{ψ⁻¹} → (A⊗C)_ψ.
Report verify_coring_isomorphism(const Entwining& e);

// Right A-module and right C-comodule on the same space.
struct EntwinedModule {
  std::string name;
  Bimodule carrier;        // right algebra A
  RightComodule comodule;  // carrier restricted to R
};

EntwinedModule make_entwined_module(std::string name, const Bimodule& carrier, const Entwining& e, Matrix coaction);
// A ⊗_R C with right action a ψ(c⊗a') and coaction A ⊗ Δ.
EntwinedModule cofree_module(const Entwining& e);
// Compatibility ρ^M∘ϱ_M = (ϱ_M⊗C)∘(M⊗ψ)∘(ρ^M⊗A), plus the comodule laws
// over the associated coring through M ⊗_A (A ⊗_R C) ≅ M ⊗_R C.
Report validate_entwined_module(const EntwinedModule& m, const Entwining& e);

struct EntwinedExtension {
  Entwining e;     // with ψ⁻¹
  Matrix rho;      // A → A ⊗_R C
  Vec grouplike;   // ρ(1_A) in ac coordinates
  Matrix lrho;     // A → C ⊗_R A, a ↦ ψ⁻¹(a ρ(1_A))
  Subalgebra b;    // coinvariants
  Subalgebra t;    // T ⊆ B
  Report checks;   // empty for a genuine extension
  bool entwined = true;
  std::optional<Vec> coring_grouplike;  // e ∈ C when ρ(a) = ψ(e⊗a)

  EntwinedModule as_module() const;
  RightComodule right_comodule() const;
  LeftComodule left_comodule() const;
};

// Strict: throws NotEntwinedModule or CoinvariantMismatch.
EntwinedExtension make_extension(const Entwining& e, const Matrix& rho);
// ρ^A(a) = ψ(e⊗a); checks e grouplike first (ValidationError).
EntwinedExtension extension_from_grouplike(const Entwining& e, const Vec& g);
// Keeps going when A is not an entwined module: B is the kernel of
// b ↦ ρ(b) − bρ(1), and `checks` lists what failed.
EntwinedExtension pre_extension(const Entwining& e, const Matrix& rho);
// Replaces T, verifying T ⊆ B (ValidationError otherwise).
EntwinedExtension with_t(EntwinedExtension x, const Subalgebra& t);

struct CanonicalMaps {
  TensorSpace att;  // A ⊗_T A
  TensorSpace abb;  // A ⊗_B A
  Matrix can_t;     // A ⊗_T A → A ⊗_R C
  Matrix can_b;     // A ⊗_B A → A ⊗_R C
  bool galois = false;
  std::optional<Matrix> can_inv;
  Report inverse_checks;
};

// Maps on A ⊗_X A, a⊗a' ↦ a ρ(a'), for a subalgebra X of B.
Matrix canonical_map(const EntwinedExtension& x, const TensorSpace& axa);
CanonicalMaps canonical_maps(const EntwinedExtension& x);

}  // namespace ncg
