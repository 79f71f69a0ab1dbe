#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncg/cherngalois.hpp"

namespace ncg {

// A ready-made entwined extension with its named subalgebras, coidempotents
// and strong connections.
struct Fixture {
  std::string name;
  FieldSpec field;
  EntwinedExtension x;
  std::map<std::string, Subalgebra> subalgebras;  // always has "B" and "k"
  std::map<std::string, Coidempotent> coidempotents;
  std::map<std::string, StrongConnection> connections;
};

// FIX-TRIV, FIX-Z2, FIX-SW, FIX-NC, FIX-SEP, FIX-FP; UnknownFixture otherwise.
Fixture make_fixture(const std::string& name);
const std::vector<std::string>& fixture_names();

// ℚ[x]/(x²−1) (or F_p) graded by ℤ₂: ψ(g_i ⊗ x^j) = x^j ⊗ g_{i+j}.
Entwining graded_entwining(uint32_t modulus = 0);
// ρ(x^j) = x^j ⊗ g_j; with `corrupt`, ρ(x) = x ⊗ g₀.
Matrix graded_coaction(const Entwining& e, bool corrupt = false);
// The same grading on ℚ[x]/(x²): an entwined extension that is not Galois.
EntwinedExtension nilpotent_graded_extension();
// M₂(ℚ) graded by ℤ₂ with the diagonal in degree 0: B = diagonal, and the
// strong ℚ-connections form a 4-dimensional affine space.
EntwinedExtension graded_matrix_extension();
// A = T₂ ⊗ ℚ[x]/(x²−1) with B = T₂ ⊗ 1.
Algebra triangular_group_algebra();
// k[ℤ_n] ⊗ R as an R-coring with grouplike basis g_i over R.
Coring group_coring(const Algebra& r, size_t n, std::string name = "C");

}  // namespace ncg
