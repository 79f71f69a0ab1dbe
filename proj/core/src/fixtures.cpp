#include "ncg/fixtures.hpp"

namespace ncg {

namespace {

Coidempotent one_by_one(std::string name, Vec entry) { return Coidempotent{std::move(name), 1, {std::move(entry)}}; }

Fixture finish(std::string name, FieldSpec field, EntwinedExtension x) {
  Fixture f{std::move(name), field, std::move(x), {}, {}, {}};
  f.subalgebras.emplace("B", f.x.b);
  f.subalgebras.emplace("k", scalars_in(f.x.e.a));
  return f;
}

void add_translation_map(Fixture& f, const std::string& name) { f.connections.emplace(name, connection_from_galois(f.x)); }

Fixture graded_fixture(std::string name, uint32_t p) {
  Entwining e = graded_entwining(p);
  EntwinedExtension x = extension_from_grouplike(e, unit_vec(2, 0));
  Fixture f = finish(std::move(name), p ? FieldSpec::prime(p) : FieldSpec::rationals(), std::move(x));
  const Scalar one(mpq_class(1), p);
  for (size_t i = 0; i < 2; ++i) {
    Vec g = zero_vec(2);
    g[i] = one;
    f.coidempotents.emplace("e" + std::to_string(i), one_by_one("e" + std::to_string(i), g));
  }
  add_translation_map(f, "ell");
  return f;
}

Fixture trivial_fixture() {
  Algebra a = Algebra::ground(0, "A");
  Entwining e = trivial_entwining(a, Algebra::ground(0), unit_map(a));
  Fixture f = finish("FIX-TRIV", FieldSpec::rationals(), extension_from_grouplike(e, Vec{Scalar(1)}));
  f.coidempotents.emplace("e", one_by_one("e", Vec{Scalar(1)}));
  add_translation_map(f, "ell");
  return f;
}

Fixture sweedler_fixture() {
  Algebra a = cyclic_group_algebra(2, 0, "A");
  Subalgebra b = scalars_in(a);
  Coring c = sweedler_coring(a, b);
  TensorSpace ab = tensor_power(a, b.alg, b.incl, 2);
  Vec one = ab.embed({a.unit(), a.unit()}).to_dense(ab.dim());
  Fixture f = finish("FIX-SW", FieldSpec::rationals(), extension_from_grouplike(self_entwining(c), one));
  f.coidempotents.emplace("e", one_by_one("e", one));
  add_translation_map(f, "varpi");
  return f;
}

Fixture noncommutative_fixture() {
  Algebra a = triangular_group_algebra();
  Subalgebra b = generated_subalgebra(a, {a.basis(0), a.basis(2), a.basis(4)}, "B");
  Coring c = sweedler_coring(a, b);
  TensorSpace ab = tensor_power(a, b.alg, b.incl, 2);
  Vec one = ab.embed({a.unit(), a.unit()}).to_dense(ab.dim());
  Fixture f = finish("FIX-NC", FieldSpec::rationals(), extension_from_grouplike(self_entwining(c), one));
  f.subalgebras.emplace("D", generated_subalgebra(a, {a.basis(0), a.basis(4)}, "D"));
  // E₁₁ ⊗_B 1: grouplike because E₁₁ ∈ B is idempotent.
  f.coidempotents.emplace("e", one_by_one("e", ab.embed({a.basis(0), a.unit()}).to_dense(ab.dim())));
  f.coidempotents.emplace("one", one_by_one("one", one));
  add_translation_map(f, "varpi");
  return f;
}

Fixture separable_fixture() {
  Algebra r = product_algebra(Algebra::ground(0), Algebra::ground(0), "R");
  Algebra a = tensor_algebra(cyclic_group_algebra(2, 0, "Z2"), r, "A");
  const size_t dr = r.dim();
  Matrix eta(a.dim(), dr);
  for (size_t s = 0; s < dr; ++s) eta.set(s, s, Scalar(1));
  Coring c = group_coring(r, 2);
  Bimodule a_over_r = restrict_scalars(regular_bimodule(a), r, eta, r, eta);
  const size_t d_ca = TensorSpace(c.carrier).then(a_over_r).dim(), d_ac = TensorSpace(a_over_r).then(c.carrier).dim();
  Entwining e = make_entwining(a, eta, c, Matrix(d_ac, d_ca));
  // ψ(g_i e_s ⊗ a) = e_s a ⊗ g_{i+deg a} on homogeneous basis elements.
  e.psi = matrix_from_raw(e.ca, e.ac, [&](const Tuple& t) {
    const size_t i = t[0] / dr, s = t[0] % dr, j = t[1] / dr;
    Vec sa = a.mul(eta.col(s).to_dense(a.dim()), a.basis(t[1]));
    Vec g = zero_vec(c.dim());
    for (size_t u = 0; u < dr; ++u) g[((i + j) % 2) * dr + u] = r.unit()[u];
    return e.ac.lift(e.ac.embed({sa, g}));
  });
  Vec g0 = zero_vec(c.dim());
  for (size_t u = 0; u < dr; ++u) g0[u] = r.unit()[u];
  Fixture f = finish("FIX-SEP", FieldSpec::rationals(), extension_from_grouplike(e, g0));
  // e₁g₁: a grouplike over R whose counit e₁ is a proper idempotent.
  f.coidempotents.emplace("e", one_by_one("e", unit_vec(c.dim(), dr)));
  Vec g1 = zero_vec(c.dim());
  for (size_t u = 0; u < dr; ++u) g1[dr + u] = r.unit()[u];
  f.coidempotents.emplace("g1", one_by_one("g1", g1));
  add_translation_map(f, "ell_B");
  // Restriction to k through the separability idempotent of B ≅ R.
  const Subalgebra& b = f.x.b;
  Subalgebra k = f.subalgebras.at("k");
  auto sep = separability_idempotent(b.alg, Algebra::ground(0), unit_map(b.alg));
  if (!sep) throw Error(ErrorKind::ValidationError, "FIX-SEP base is not separable");
  Section xi = section_from_idempotent(f.x, b, k, sep->zeta);
  f.connections.emplace("ell_k", restrict_connection(f.x, f.connections.at("ell_B"), xi));
  return f;
}

}  // namespace

Entwining graded_entwining(uint32_t modulus) {
  Algebra a = cyclic_group_algebra(2, modulus, "A");
  Coring c = group_coalgebra(2, modulus);
  Entwining e = make_entwining(a, unit_map(a), c, Matrix(4, 4));
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      const SparseVec src = e.ca_pure(unit_vec(2, i), a.basis(j));
      e.psi.set_col(src.entries().at(0).first, e.ac_pure(a.basis(j), unit_vec(2, (i + j) % 2)));
    }
  return invert_entwining(e);
}

Matrix graded_coaction(const Entwining& e, bool corrupt) {
  Matrix rho(e.ac.dim(), 2);
  rho.set_col(0, e.ac_pure(e.a.basis(0), unit_vec(2, 0)));
  rho.set_col(1, e.ac_pure(e.a.basis(1), unit_vec(2, corrupt ? 0 : 1)));
  return rho;
}

EntwinedExtension nilpotent_graded_extension() {
  Algebra a = truncated_polynomial(2, 0, "A");
  Coring c = group_coalgebra(2, 0);
  Entwining e = make_entwining(a, unit_map(a), c, Matrix(4, 4));
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      const SparseVec src = e.ca_pure(unit_vec(2, i), a.basis(j));
      e.psi.set_col(src.entries().at(0).first, e.ac_pure(a.basis(j), unit_vec(2, (i + j) % 2)));
    }
  return extension_from_grouplike(invert_entwining(e), unit_vec(2, 0));
}

EntwinedExtension graded_matrix_extension() {
  Algebra a = matrix_algebra(2, 0, "M2");
  Coring c = group_coalgebra(2, 0);
  Entwining e = make_entwining(a, unit_map(a), c, Matrix(8, 8));
  // E₁₁, E₁₂, E₂₁, E₂₂ in degrees 0, 1, 1, 0.
  const size_t degree[4] = {0, 1, 1, 0};
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 4; ++j) {
      const SparseVec src = e.ca_pure(unit_vec(2, i), a.basis(j));
      e.psi.set_col(src.entries().at(0).first, e.ac_pure(a.basis(j), unit_vec(2, (i + degree[j]) % 2)));
    }
  return extension_from_grouplike(invert_entwining(e), unit_vec(2, 0));
}

Algebra triangular_group_algebra() {
  return tensor_algebra(upper_triangular_algebra(2, 0, "T2"), cyclic_group_algebra(2, 0, "Z2"), "A");
}

Coring group_coring(const Algebra& r, size_t n, std::string name) {
  const size_t dr = r.dim();
  Bimodule carrier = free_bimodule(r, n);
  carrier.name = name;
  TensorSpace cc = TensorSpace(carrier).then(carrier);
  Matrix delta(cc.dim(), carrier.dim), eps(dr, carrier.dim);
  const Vec one = r.unit();
  for (size_t i = 0; i < n; ++i)
    for (size_t s = 0; s < dr; ++s) {
      Vec gi = zero_vec(carrier.dim), gis = zero_vec(carrier.dim);
      for (size_t u = 0; u < dr; ++u) gi[i * dr + u] = one[u];
      gis[i * dr + s] = r.one();
      delta.set_col(i * dr + s, cc.embed({gis, gi}));
      eps.set_col(i * dr + s, SparseVec::unit(static_cast<uint32_t>(s), r.one()));
    }
  return make_coring(std::move(name), carrier, delta, eps);
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"FIX-TRIV", "FIX-Z2", "FIX-SW", "FIX-NC", "FIX-SEP", "FIX-FP"};
  return names;
}

Fixture make_fixture(const std::string& name) {
  if (name == "FIX-TRIV") return trivial_fixture();
  if (name == "FIX-Z2") return graded_fixture(name, 0);
  if (name == "FIX-SW") return sweedler_fixture();
  if (name == "FIX-NC") return noncommutative_fixture();
  if (name == "FIX-SEP") return separable_fixture();
  if (name == "FIX-FP") return graded_fixture(name, 5);
  throw Error(ErrorKind::UnknownFixture, name);
}

}  // namespace ncg
