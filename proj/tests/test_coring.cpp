#include <gtest/gtest.h>

#include <random>

#include "ncg/coring.hpp"

using namespace ncg;

namespace {

Vec q(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Algebra k() { return Algebra::ground(0); }
Algebra qxq() { return product_algebra(k(), k(), "QxQ"); }

bool mentions(const Report& r, const std::string& word) {
  for (const auto& x : r.residuals())
    if (x.check.find(word) != std::string::npos) return true;
  return false;
}

// A = ℚ[x]/(x²−1) as a right ℚ[ℤ₂]-comodule, x^j ↦ x^j ⊗ g_{j+s}.
RightComodule graded_algebra(const Coring& c, size_t shift) {
  Algebra a = cyclic_group_algebra(2, 0, "A");
  Bimodule carrier = restrict_right(regular_bimodule(a), k(), unit_map(a));
  TensorSpace mc = TensorSpace(carrier).then(c.carrier);
  Matrix rho(mc.dim(), 2);
  for (size_t j = 0; j < 2; ++j) rho.set_col(j, mc.embed({unit_vec(2, j), unit_vec(2, (j + shift * j) % 2)}));
  return make_right_comodule("A", carrier, c, rho);
}

// 1-dim left comodule k·g_i.
LeftComodule line(const Coring& c, size_t i) {
  Bimodule w{"W", k(), k(), 1, {Matrix::identity(1)}, {Matrix::identity(1)}};
  TensorSpace cm = TensorSpace(c.carrier).then(w);
  Matrix rho(cm.dim(), 1);
  rho.set_col(0, cm.embed({unit_vec(2, i), q({1})}));
  return make_left_comodule("W", w, c, rho);
}

Coidempotent one_by_one(const Vec& e) { return Coidempotent{"e", 1, {e}}; }

}  // namespace

TEST(Coring, TrivialCoringIsValid) {
  EXPECT_TRUE(validate_coring(trivial_coring(k())).ok());
  Coring c = trivial_coring(qxq());
  EXPECT_EQ(c.cc.dim(), 2u);
  EXPECT_TRUE(validate_coring(c).ok());
}

TEST(Coring, GroupCoalgebraIsValid) {
  EXPECT_TRUE(validate_coring(group_coalgebra(2, 0)).ok());
  EXPECT_TRUE(validate_coring(group_coalgebra(3, 5)).ok());
}

TEST(Coring, CorruptedCounitIsReported) {
  Coring c = group_coalgebra(2, 0);
  c.eps.set(0, 1, Scalar(0));
  Report r = validate_coring(c);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "counit"));
  EXPECT_FALSE(mentions(r, "coassociativity"));
}

TEST(Coring, CorruptedComultiplicationBreaksCoassociativity) {
  Coring c = group_coalgebra(2, 0);
  c.delta.set_col(1, c.cc.embed({q({0, 1}), q({1, 1})}));
  EXPECT_TRUE(mentions(validate_coring(c), "coassociativity"));
}

TEST(Coring, SweedlerCoringIsValidWithGrouplikeOne) {
  Algebra a = cyclic_group_algebra(2, 0, "A");
  Coring c = sweedler_coring(a, scalars_in(a));
  EXPECT_EQ(c.dim(), 4u);
  EXPECT_TRUE(validate_coring(c).ok());
  TensorSpace ab = tensor_power(a, k(), unit_map(a), 2);
  Vec one = ab.embed({a.unit(), a.unit()}).to_dense(4);
  EXPECT_TRUE(verify_grouplike(c, one).ok());
  // x⊗x is grouplike too; x⊗1 is not.
  EXPECT_TRUE(verify_grouplike(c, ab.embed({q({0, 1}), q({0, 1})}).to_dense(4)).ok());
  EXPECT_FALSE(verify_grouplike(c, ab.embed({q({0, 1}), q({1, 0})}).to_dense(4)).ok());
}

TEST(Grouplike, GroupElementsAndSums) {
  Coring c = group_coalgebra(2, 0);
  EXPECT_TRUE(verify_grouplike(c, q({1, 0})).ok());
  EXPECT_TRUE(verify_grouplike(c, q({0, 1})).ok());
  Report r = verify_grouplike(c, q({1, 1}));
  EXPECT_TRUE(mentions(r, "comultiplication"));
  EXPECT_TRUE(verify_grouplike(trivial_coring(k()), q({1})).ok());
}

TEST(Grouplike, ExhaustiveSearchOverSmallPrimeField) {
  // Grouplikes of F_p[ℤ₃] are exactly the group elements.
  Coring c = group_coalgebra(3, 5);
  auto found = search_grouplikes(c);
  ASSERT_TRUE(found);
  EXPECT_EQ(found->size(), 3u);
  EXPECT_FALSE(search_grouplikes(group_coalgebra(2, 0)).has_value());
}

TEST(Comodule, RegularComodulesAreValid) {
  Coring c = group_coalgebra(2, 0);
  EXPECT_TRUE(validate_comodule(regular_right_comodule(c), c).ok());
  EXPECT_TRUE(validate_comodule(regular_left_comodule(c), c).ok());
  Coring t = trivial_coring(qxq());
  EXPECT_TRUE(validate_comodule(regular_right_comodule(t), t).ok());
}

TEST(Comodule, GradedAlgebraCoactions) {
  Coring c = group_coalgebra(2, 0);
  EXPECT_TRUE(validate_comodule(graded_algebra(c, 0), c).ok());
  // x ↦ x⊗g₀ is still a comodule.
  EXPECT_TRUE(validate_comodule(graded_algebra(c, 1), c).ok());
}

TEST(Comodule, BrokenCoactionIsReported) {
  Coring c = group_coalgebra(2, 0);
  RightComodule m = graded_algebra(c, 0);
  m.coaction.set_col(1, m.mc.embed({q({0, 1}), q({1, 1})}));
  Report r = validate_comodule(m, c);
  EXPECT_TRUE(mentions(r, "counit"));
}

TEST(Coinvariants, Examples) {
  Coring t = trivial_coring(qxq());
  EXPECT_EQ(coinvariants(regular_right_comodule(t), t.base.unit()).dim(), 2u);
  EXPECT_EQ(base_coinvariants(t, t.base.unit()).dim(), 2u);

  Coring c = group_coalgebra(2, 0);
  Subspace b = coinvariants(graded_algebra(c, 0), q({1, 0}));
  EXPECT_EQ(b, Subspace::span_dense(2, {q({1, 0})}));
  EXPECT_EQ(coinvariants(graded_algebra(c, 0), q({0, 1})), Subspace::span_dense(2, {q({0, 1})}));
  EXPECT_EQ(coinvariants(line(c, 1), q({0, 1})).dim(), 1u);
  EXPECT_EQ(coinvariants(line(c, 1), q({1, 0})).dim(), 0u);
}

TEST(DualRing, TrivialCoringGivesBase) {
  DualRing d = dual_ring(trivial_coring(qxq()));
  EXPECT_EQ(d.alg.dim(), 2u);
  EXPECT_TRUE(validate_algebra(d.alg).ok());
  EXPECT_EQ(d.unit_map.cols(), 2u);
  EXPECT_EQ(rank(d.unit_map), 2u);
}

TEST(DualRing, GroupCoalgebraGivesProductOfFields) {
  Coring c = group_coalgebra(2, 0);
  DualRing d = dual_ring(c);
  ASSERT_EQ(d.alg.dim(), 2u);
  EXPECT_TRUE(validate_algebra(d.alg).ok());
  // Dual basis functionals are orthogonal idempotents summing to ε.
  EXPECT_EQ(d.alg.mul(q({1, 0}), q({1, 0})), q({1, 0}));
  EXPECT_EQ(d.alg.mul(q({0, 1}), q({0, 1})), q({0, 1}));
  EXPECT_EQ(d.alg.mul(q({1, 0}), q({0, 1})), q({0, 0}));
  EXPECT_EQ(d.alg.unit(), q({1, 1}));
  EXPECT_TRUE(d.alg.same_structure(qxq()));
}

TEST(DualRing, ColinearMapsAreDualLinear) {
  Coring c = group_coalgebra(2, 0);
  DualRing d = dual_ring(c);
  RightComodule a = graded_algebra(c, 0);
  RightComodule cc = regular_right_comodule(c);
  Matrix f = Matrix::identity(2);  // x^j ↦ g_j
  ASSERT_TRUE(verify_colinear(a, cc, f, c).ok());
  Bimodule ma = module_of_comodule(a, d), mc = module_of_comodule(cc, d);
  EXPECT_TRUE(validate_bimodule(ma).ok());
  for (size_t s = 0; s < d.alg.dim(); ++s) EXPECT_EQ(f * ma.right_action[s], mc.right_action[s] * f);
  // Swapping the grading is not colinear.
  Matrix swap = Matrix::from_rows({q({0, 1}), q({1, 0})}, 2);
  EXPECT_FALSE(verify_colinear(a, cc, swap, c).ok());
}

TEST(Separability, ProductOfFields) {
  Algebra r = qxq();
  auto sep = separability_idempotent(r, k(), unit_map(r));
  ASSERT_TRUE(sep);
  EXPECT_EQ(sep->space.dim(), 0u);
  Vec expected = (sep->aa.embed({q({1, 0}), q({1, 0})}) + sep->aa.embed({q({0, 1}), q({0, 1})})).to_dense(4);
  EXPECT_EQ(sep->zeta, expected);
}

TEST(Separability, MatrixAlgebraSeparableDualNumbersNot) {
  Algebra m2 = matrix_algebra(2, 0, "M2");
  EXPECT_TRUE(separability_idempotent(m2, k(), unit_map(m2)).has_value());
  Algebra dual = truncated_polynomial(2, 0, "D");
  EXPECT_FALSE(separability_idempotent(dual, k(), unit_map(dual)).has_value());
}

TEST(Separability, RetractionProjectsOntoLinearMaps) {
  Algebra r = qxq();
  auto sep = separability_idempotent(r, k(), unit_map(r));
  ASSERT_TRUE(sep);
  Bimodule m = restrict_left(regular_bimodule(r), k(), unit_map(r));
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix f(2, 2);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) f.set(i, j, Scalar(val(rng)));
    Matrix g = separability_retraction(*sep, m, m, f);
    for (size_t s = 0; s < 2; ++s) EXPECT_EQ(g * m.right_action[s], m.right_action[s] * g);
    EXPECT_EQ(separability_retraction(*sep, m, m, g), g);
  }
}

TEST(Cointegral, GroupCoalgebra) {
  Coring c = group_coalgebra(2, 0);
  auto d = cointegral(c);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->space.dim(), 0u);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      EXPECT_EQ(d->delta.apply(c.cc.embed({unit_vec(2, i), unit_vec(2, j)})).to_dense(1), i == j ? q({1}) : q({0}));
}

TEST(Cointegral, TrivialCoringUsesCounit) {
  Algebra r = qxq();
  Coring c = trivial_coring(r);
  auto d = cointegral(c);
  ASSERT_TRUE(d);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      EXPECT_EQ(d->delta.apply(c.cc.embed({r.basis(i), r.basis(j)})).to_dense(2), r.mul(r.basis(i), r.basis(j)));
  RightComodule m = regular_right_comodule(c);
  Matrix f = r.left_mult(q({2, 3}));
  EXPECT_EQ(cointegral_retraction(*d, c, m, m, f), f);
}

TEST(Cointegral, RetractionLandsInColinearMaps) {
  Coring c = group_coalgebra(2, 0);
  auto d = cointegral(c);
  ASSERT_TRUE(d);
  RightComodule a = graded_algebra(c, 0), cc = regular_right_comodule(c);
  Matrix f = Matrix::from_rows({q({1, 2}), q({-3, 5})}, 2);
  Matrix g = cointegral_retraction(*d, c, a, cc, f);
  EXPECT_TRUE(verify_colinear(a, cc, g, c).ok());
  EXPECT_EQ(g, Matrix::from_rows({q({1, 0}), q({0, 5})}, 2));
  EXPECT_EQ(cointegral_retraction(*d, c, a, cc, g), g);
}

TEST(Coidempotent, FromComoduleExamples) {
  Coring t = trivial_coring(k());
  LeftComodule r = regular_left_comodule(t);
  auto pd = projective_dual_basis(r.carrier, Side::Left);
  ASSERT_TRUE(pd.basis);
  Coidempotent e = coidempotent_from_comodule(r, *pd.basis, t);
  ASSERT_EQ(e.n, 1u);
  EXPECT_EQ(e.at(0, 0), q({1}));

  Coring c = group_coalgebra(2, 0);
  LeftComodule w = line(c, 1);
  auto wd = projective_dual_basis(w.carrier, Side::Left);
  ASSERT_TRUE(wd.basis);
  Coidempotent g1 = coidempotent_from_comodule(w, *wd.basis, c);
  ASSERT_EQ(g1.n, 1u);
  EXPECT_EQ(g1.at(0, 0), q({0, 1}));

  LeftComodule whole = regular_left_comodule(c);
  auto cd = projective_dual_basis(whole.carrier, Side::Left);
  ASSERT_TRUE(cd.basis);
  Coidempotent diag = coidempotent_from_comodule(whole, *cd.basis, c);
  ASSERT_EQ(diag.n, 2u);
  EXPECT_EQ(diag.at(0, 0), q({1, 0}));
  EXPECT_EQ(diag.at(1, 1), q({0, 1}));
  EXPECT_EQ(diag.at(0, 1), q({0, 0}));
  EXPECT_EQ(diag.at(1, 0), q({0, 0}));
}

TEST(Coidempotent, ValidationAndCounitMatrix) {
  Coring c = group_coalgebra(2, 0);
  EXPECT_TRUE(validate_coidempotent(c, one_by_one(q({0, 1}))).ok());
  EXPECT_FALSE(validate_coidempotent(c, one_by_one(q({1, 1}))).ok());
  EXPECT_EQ(counit_matrix(c, one_by_one(q({0, 1})))[0], q({1}));
  EXPECT_THROW(comodule_from_coidempotent(c, one_by_one(q({1, 1}))), Error);
}

TEST(Coidempotent, ComoduleRoundtrip) {
  Coring c = group_coalgebra(2, 0);
  LeftComodule w = comodule_from_coidempotent(c, one_by_one(q({0, 1})));
  ASSERT_EQ(w.carrier.dim, 1u);
  EXPECT_TRUE(validate_comodule(w, c).ok());
  EXPECT_EQ(w.coaction.apply(SparseVec::unit(0)), w.cm.embed({q({0, 1}), q({1})}));
  EXPECT_TRUE(comodules_isomorphic(w, line(c, 1), c));
  EXPECT_FALSE(comodules_isomorphic(w, line(c, 0), c));

  auto d = projective_dual_basis(w.carrier, Side::Left);
  ASSERT_TRUE(d.basis);
  Coidempotent again = coidempotent_from_comodule(w, *d.basis, c);
  EXPECT_TRUE(comodules_isomorphic(comodule_from_coidempotent(c, again), w, c));

  Coring t = trivial_coring(qxq());
  LeftComodule r = comodule_from_coidempotent(t, one_by_one(q({1, 1})));
  EXPECT_EQ(r.carrier.dim, 2u);
  EXPECT_TRUE(comodules_isomorphic(r, regular_left_comodule(t), t));
}

TEST(Coidempotent, ProperIdempotentOverProductBase) {
  // e = (e₁) in the trivial coring over ℚ×ℚ gives W = ℚ×0.
  Coring t = trivial_coring(qxq());
  LeftComodule w = comodule_from_coidempotent(t, one_by_one(q({1, 0})));
  EXPECT_EQ(w.carrier.dim, 1u);
  EXPECT_TRUE(validate_comodule(w, t).ok());
  RightComodule v = right_comodule_from_coidempotent(t, one_by_one(q({1, 0})));
  EXPECT_EQ(v.carrier.dim, 1u);
  EXPECT_TRUE(validate_comodule(v, t).ok());
}

TEST(Coidempotent, DirectSums) {
  Coring c = group_coalgebra(2, 0);
  Coidempotent s = direct_sum(one_by_one(q({1, 0})), one_by_one(q({0, 1})), c);
  ASSERT_EQ(s.n, 2u);
  EXPECT_EQ(s.at(0, 0), q({1, 0}));
  EXPECT_EQ(s.at(1, 1), q({0, 1}));
  EXPECT_EQ(s.at(0, 1), q({0, 0}));
  LeftComodule w = comodule_from_coidempotent(c, s);
  EXPECT_EQ(w.carrier.dim, 2u);
  EXPECT_TRUE(comodules_isomorphic(w, regular_left_comodule(c), c));
  Coidempotent empty{"0", 0, {}};
  EXPECT_EQ(direct_sum(empty, one_by_one(q({0, 1})), c).n, 1u);
  RightComodule v = right_comodule_from_coidempotent(c, s);
  EXPECT_TRUE(validate_comodule(v, c).ok());
}

TEST(Cotensor, GradedAlgebraComponents) {
  Coring c = group_coalgebra(2, 0);
  RightComodule a = graded_algebra(c, 0);
  Cotensor g1 = cotensor(a, line(c, 1), c);
  ASSERT_EQ(g1.sub.dim(), 1u);
  EXPECT_EQ(g1.sub.basis()[0], g1.mw.embed({q({0, 1}), q({1})}));
  Cotensor g0 = cotensor(a, line(c, 0), c);
  ASSERT_EQ(g0.sub.dim(), 1u);
  EXPECT_EQ(g0.sub.basis()[0], g0.mw.embed({q({1, 0}), q({1})}));
  EXPECT_TRUE(g1.left_action.empty());
  // The coinvariants ℚ·1 act; x does not preserve A□W.
  Algebra alg = cyclic_group_algebra(2, 0, "A");
  Subalgebra b = scalars_in(alg);
  EXPECT_EQ(cotensor(a, line(c, 1), c, &b).left_action.size(), 1u);
  Subalgebra all = generated_subalgebra(alg, {q({0, 1})}, "A");
  EXPECT_THROW(cotensor(a, line(c, 1), c, &all), Error);
}

TEST(Cotensor, TrivialCoringGivesModuleItself) {
  Coring t = trivial_coring(k());
  Cotensor m = cotensor(regular_right_comodule(t), regular_left_comodule(t), t);
  EXPECT_EQ(m.sub.dim(), 1u);
}

TEST(Cotensor, RespectsDirectSums) {
  Coring c = group_coalgebra(2, 0);
  RightComodule cc = regular_right_comodule(c);
  Coidempotent s = direct_sum(one_by_one(q({1, 0})), one_by_one(q({0, 1})), c);
  size_t whole = cotensor(cc, comodule_from_coidempotent(c, s), c).sub.dim();
  size_t parts = cotensor(cc, line(c, 0), c).sub.dim() + cotensor(cc, line(c, 1), c).sub.dim();
  EXPECT_EQ(whole, parts);
  EXPECT_EQ(whole, 2u);
}
