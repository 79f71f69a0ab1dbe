#pragma once

#include <optional>

#include "ncg/entwine.hpp"

namespace ncg {

// Strong T-connection ℓ: C → A ⊗_T A.
struct StrongConnection {
  Subalgebra t;
  TensorSpace att;  // A ⊗_T A
  Matrix ell;       // att.dim x C.dim
};

// Blocks "right colinearity", "left colinearity" (each including the
// matching R-linearity) and "splitting" (c͠an_T ℓ(c) = 1⊗c).
Report verify_strong_connection(const EntwinedExtension& x, const StrongConnection& sc);

struct ConnectionSpace {
  StrongConnection particular;
  AffineSolutionSet space;
};

// Poses all defining conditions as one linear system. Nothing means no
// strong T-connection exists.
std::optional<ConnectionSpace> solve_strong_connection(const EntwinedExtension& x, const Subalgebra& t);
// The translation map ϖ(c) = can⁻¹(1⊗c) as a strong B-connection; NotGalois otherwise.
StrongConnection connection_from_galois(const EntwinedExtension& x);

// Left T-linear right C-colinear section ξ: A → T ⊗_{T'} A of the product.
struct Section {
  Subalgebra t, t_prime;
  TensorSpace tta;  // T ⊗_{T'} A
  Matrix xi;        // tta.dim x A.dim
};
Report verify_section(const EntwinedExtension& x, const Section& s);
// ξ(a) = Σ e_l ⊗ f_l a for a separability idempotent Σ e_l ⊗ f_l of T over T'.
Section section_from_idempotent(const EntwinedExtension& x, const Subalgebra& t, const Subalgebra& t_prime,
                                const Vec& zeta);
// ℓ' = (A ⊗_T ξ)∘ℓ; NotASection when ξ fails verify_section.
StrongConnection restrict_connection(const EntwinedExtension& x, const StrongConnection& sc, const Section& s);

// Ω¹B = ker(μ: B ⊗_T B → B) with d(b) = 1⊗b − b⊗1.
struct DifferentialForms {
  TensorSpace btb;
  Subspace omega1;
  Matrix d;  // btb.dim x B.dim
};
DifferentialForms differential_forms(const Subalgebra& b, const Subalgebra& t);

struct SectionData {
  TensorSpace bta;      // B ⊗_T A
  Matrix into_att;      // B ⊗_T A → A ⊗_T A
  Matrix sigma;         // A → B ⊗_T A
  Matrix sigma_in_att;  // A → A ⊗_T A
  Matrix nabla;         // A → B ⊗_T A, a ↦ 1⊗a − σ(a)
  Report checks;        // left B-linearity, colinearity, μσ = id, Leibniz
};
// σ_T(a) = Σ a₍₀₎ ℓ(a₍₁₎). ImageNotCoinvariant when σ leaves B ⊗_T A.
SectionData section_from_connection(const EntwinedExtension& x, const StrongConnection& sc);
// The section viewed as ξ: A → B ⊗_T A, for restricting the translation map.
Section section_of(const EntwinedExtension& x, const StrongConnection& sc, const SectionData& s);

struct TotalIntegral {
  Matrix j;  // A.dim x C.dim
  Matrix h;  // A.dim x ac.dim (right) or ca.dim (left)
  Report checks;
};
struct TotalIntegralResult {
  std::optional<TotalIntegral> integral;
  bool relative_injective = false;
  // Galois with a left B-linear retraction A → B.
  bool split_sufficient = false;
};
// Needs a grouplike-induced extension.
TotalIntegralResult total_integral(const EntwinedExtension& x, Side side = Side::Right);

struct Splitting {
  bool sigma_one_in_btb = false;
  bool ell_e_in_btb = false;
  Matrix phi;  // A → B in B coordinates
  Report checks;
};
// φ = μ_B∘(B⊗_T f)∘σ_T for a right T-linear retraction f: A → B (B coordinates).
// MembershipFailure when σ(1) or ℓ(e) is outside B ⊗_T B.
Splitting normalization_and_splitting(const EntwinedExtension& x, const StrongConnection& sc, const Matrix& f);
// Some right T-linear retraction A → B, or nothing.
std::optional<Matrix> retraction_onto_b(const EntwinedExtension& x, const Subalgebra& t);

struct TFlatness {
  bool flat = false;        // A and B projective on both sides over T
  bool injective = false;   // B/[B,T] → ker υ_T
  bool surjective = false;
  bool t_flat = false;
  size_t quotient_b = 0, quotient_a = 0, kernel_dim = 0;
  Quotient a_mod;           // A/[A,T]
  Matrix upsilon;           // A/[A,T] → D/[D,T]
  Subspace kernel;          // ker υ_T in A/[A,T] coordinates
  Report checks;            // υ_T([b]) = 0
};
TFlatness tflatness_check(const EntwinedExtension& x, const Subalgebra& t);

// Σ ℓ(c₍₁₎)ℓ(c₍₂₎) lies in the image of A ⊗_T B ⊗_T A for every basis c.
Report middle_leg_check(const EntwinedExtension& x, const StrongConnection& sc);

}  // namespace ncg
