#include <gtest/gtest.h>

#include "ncg/fixtures.hpp"

using namespace ncg;

namespace {

const Fixture& fixture(const std::string& name) {
  static std::map<std::string, Fixture> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_fixture(name)).first;
  return it->second;
}

// The first form of the formula, expanded over every index tuple with raw
// tensor products: e⁽²⁾ ℓ(e') ⋯ ℓ(e'') e⁽¹⁾.
SparseVec brute_force_chg(const StrongConnection& sc, const Coidempotent& e, const CircularSpace& cs) {
  const Algebra& a = cs.b();
  const size_t legs = cs.legs();
  auto ell = [&](size_t i, size_t j) { return sc.att.lift(sc.ell.apply(SparseVec::from_dense(e.at(i, j)))); };
  Accumulator acc;
  for_each_tuple(std::vector<size_t>(legs, e.n), [&](const Tuple& idx) {
    for (const RawTerm& outer : ell(idx[0], idx[1 % legs])) {
      Raw r = raw_unit(Tuple{outer.t[1]}, outer.c);
      for (size_t k = 1; k < legs; ++k) {
        const size_t m = r.empty() ? 0 : r[0].t.size();
        r = raw_multiply_legs(raw_concat(r, ell(idx[k], idx[(k + 1) % legs])), m - 1, a);
      }
      const size_t m = r.empty() ? 0 : r[0].t.size();
      r = raw_multiply_legs(raw_concat(r, raw_unit(Tuple{outer.t[0]})), m - 1, a);
      acc.add(cs.project(r));
    }
  });
  return acc.take();
}

struct Case {
  std::string fixture, coidempotent, connection;
  size_t max_l;
};

std::vector<Case> all_cases() {
  std::vector<Case> out;
  for (const auto& name : fixture_names()) {
    const Fixture& f = fixture(name);
    for (const auto& [ename, e] : f.coidempotents)
      for (const auto& [cname, l] : f.connections) out.push_back({name, ename, cname, name == "FIX-NC" ? 2u : 4u});
  }
  return out;
}

SparseVec ones(const CircularSpace& cs) {
  return cs.embed(std::vector<Vec>(cs.legs(), cs.b().unit()));
}

Matrix retraction_phi(const Fixture& f, const StrongConnection& l) {
  auto ret = retraction_onto_b(f.x, l.t);
  if (!ret) throw std::runtime_error("no retraction");
  return normalization_and_splitting(f.x, l, *ret).phi;
}

}  // namespace

TEST(ChernCoefficient, Table) {
  std::vector<Scalar> got;
  for (size_t l = 0; l <= 4; ++l) got.push_back(chern_coefficient(l));
  EXPECT_EQ(got, (std::vector<Scalar>{1, 1, -2, -6, 12}));
  EXPECT_TRUE(chern_coefficient(2, 2).is_zero());
  EXPECT_FALSE(chern_coefficient(1, 2).is_zero());
}

TEST(ChgComponents, TrivialIsAllOnes) {
  const Fixture& f = fixture("FIX-TRIV");
  ChgComponents c = chg_components(f.x, f.connections.at("ell"), f.coidempotents.at("e"), 4);
  for (size_t l = 0; l <= 4; ++l) EXPECT_EQ(c.comps[l], ones(c.b_spaces[l])) << l;
}

TEST(ChgComponents, GradedOddGrouplikeGivesOnes) {
  const Fixture& f = fixture("FIX-Z2");
  ChgComponents c = chg_components(f.x, f.connections.at("ell"), f.coidempotents.at("e1"), 4);
  EXPECT_TRUE(c.warnings.empty());
  // [x·x] = [1]
  EXPECT_EQ(c.a_comps[0], c.a_spaces[0].embed({Vec{Scalar(1), Scalar(0)}}));
  for (size_t l = 0; l <= 4; ++l) EXPECT_EQ(c.comps[l], ones(c.b_spaces[l])) << l;
}

TEST(ChgComponents, SweepMatchesBruteForceEverywhere) {
  for (const Case& k : all_cases()) {
    const Fixture& f = fixture(k.fixture);
    const StrongConnection& l = f.connections.at(k.connection);
    const Coidempotent& e = f.coidempotents.at(k.coidempotent);
    std::vector<CircularSpace> spaces;
    for (size_t d = 0; d <= k.max_l; ++d) spaces.emplace_back(f.x.e.a, l.t, d);
    std::vector<SparseVec> fast = chg_in_a(f.x, l, e, spaces);
    for (size_t d = 0; d <= k.max_l; ++d)
      EXPECT_EQ(fast[d], brute_force_chg(l, e, spaces[d])) << k.fixture << " " << k.coidempotent << " " << k.connection
                                                            << " l=" << d;
  }
}

TEST(ChgComponents, CyclicRelationsOnEveryFixture) {
  for (const Case& k : all_cases()) {
    const Fixture& f = fixture(k.fixture);
    ChgComponents c = chg_components(f.x, f.connections.at(k.connection), f.coidempotents.at(k.coidempotent), k.max_l);
    const std::string where = k.fixture + " " + k.coidempotent + " " + k.connection;
    for (size_t l = 0; l <= k.max_l; ++l) {
      CyclicOperators o = cyclic_operators(c.b_spaces[l], l ? &c.b_spaces[l - 1] : nullptr);
      const SparseVec& x = c.comps[l];
      EXPECT_EQ(o.tau.apply(x), x.scaled(Scalar(l % 2 ? -1 : 1))) << where << " l=" << l;
      if (l % 2 == 0) {
        EXPECT_EQ(o.N.apply(x), x.scaled(Scalar(static_cast<long>(l + 1)))) << where << " l=" << l;
        if (l > 0) EXPECT_EQ(o.d.apply(x), c.comps[l - 1]) << where << " l=" << l;
      } else {
        EXPECT_EQ(o.tautilde.apply(x), x.scaled(Scalar(2))) << where << " l=" << l;
        EXPECT_EQ(o.dprime.apply(x), c.comps[l - 1]) << where << " l=" << l;
      }
    }
  }
}

TEST(ChgComponents, NoncommutativeDegreeZero) {
  const Fixture& f = fixture("FIX-NC");
  ChgComponents c = chg_components(f.x, f.connections.at("varpi"), f.coidempotents.at("e"), 2);
  // B over itself: every circular power is B/[B,B] = span{[E₁₁], [E₂₂]}.
  for (size_t l = 0; l <= 2; ++l) EXPECT_EQ(c.b_spaces[l].dim(), 2u);
  // e = E₁₁ ⊗_B 1 contributes [E₁₁].
  EXPECT_EQ(c.comps[0], c.b_spaces[0].embed({f.x.b.alg.basis(0)}));
}

TEST(ChernCycle, TrivialDegreeZeroClass) {
  const Fixture& f = fixture("FIX-TRIV");
  ChgComponents c = chg_components(f.x, f.connections.at("ell"), f.coidempotents.at("e"), 0);
  TotalComplex tc = build_total_complex(f.x.b.alg, t_inside_b(f.x, f.connections.at("ell").t), 0);
  ChernCycle z = assemble_and_class(c.comps, 0, tc);
  EXPECT_EQ(z.coords, Vec{Scalar(1)});
}

TEST(ChernCycle, GradedDegreeTwoCycle) {
  const Fixture& f = fixture("FIX-Z2");
  const StrongConnection& l = f.connections.at("ell");
  ChgComponents c = chg_components(f.x, l, f.coidempotents.at("e1"), 2);
  TotalComplex tc = build_total_complex(f.x.b.alg, t_inside_b(f.x, l.t), 2);
  ChernCycle z = assemble_and_class(c.comps, 1, tc);
  // Coefficients +1, +1, −2 at (2,0), (1,1), (0,2).
  EXPECT_EQ(tc.block(2, 2, z.cycle), c.comps[0]);
  EXPECT_EQ(tc.block(2, 1, z.cycle), c.comps[1]);
  EXPECT_EQ(tc.block(2, 0, z.cycle), c.comps[2].scaled(Scalar(-2)));
  EXPECT_TRUE(tc.d[2].apply(z.cycle).empty());
  EXPECT_EQ(z.coords.size(), 1u);
  EXPECT_FALSE(z.coords[0].is_zero());
}

TEST(ChernCycle, BrokenComponentsAreNotACycle) {
  const Fixture& f = fixture("FIX-Z2");
  const StrongConnection& l = f.connections.at("ell");
  ChgComponents c = chg_components(f.x, l, f.coidempotents.at("e1"), 2);
  TotalComplex tc = build_total_complex(f.x.b.alg, t_inside_b(f.x, l.t), 2);
  std::vector<SparseVec> bad = c.comps;
  bad[1] = bad[1].scaled(Scalar(3));
  try {
    assemble_and_class(bad, 1, tc);
    FAIL() << "expected NotACycle";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotACycle);
  }
}

TEST(ChernCycle, CharacteristicTwoWarns) {
  Algebra f2 = Algebra::ground(2, "F2");
  TotalComplex tc = build_total_complex(f2, scalars_in(f2), 2);
  std::vector<SparseVec> comps;
  for (size_t l = 0; l <= 2; ++l) comps.push_back(ones(tc.spaces[l]));
  ChernCycle z = assemble_and_class(comps, 1, tc);
  EXPECT_FALSE(z.warnings.empty());
}

TEST(ChernCycle, AllFixturesCloseInDegreesZeroAndTwo) {
  for (const Case& k : all_cases()) {
    const Fixture& f = fixture(k.fixture);
    const StrongConnection& l = f.connections.at(k.connection);
    ChgComponents c = chg_components(f.x, l, f.coidempotents.at(k.coidempotent), 2);
    TotalComplex tc = build_total_complex(f.x.b.alg, t_inside_b(f.x, l.t), 2);
    EXPECT_NO_THROW(assemble_and_class(c.comps, 0, tc)) << k.fixture;
    EXPECT_NO_THROW(assemble_and_class(c.comps, 1, tc)) << k.fixture;
  }
}

TEST(AssociatedModule, GradedLines) {
  const Fixture& f = fixture("FIX-Z2");
  const Coring& c = f.x.e.coring;
  for (const auto& [name, grade] : std::vector<std::pair<std::string, size_t>>{{"e0", 0}, {"e1", 1}}) {
    GeneratedComodule w = comodule_with_generators(c, f.coidempotents.at(name));
    AssociatedModule g = associated_module(f.x, w.w);
    ASSERT_EQ(g.gamma.sub.dim(), 1u) << name;
    // Γ = ℚ·x^grade ⊗ w
    EXPECT_TRUE(g.gamma.sub.contains(g.gamma.mw.embed({f.x.e.a.basis(grade), w.generators[0]}))) << name;
    EXPECT_TRUE(g.checks.ok()) << name;
    EXPECT_TRUE(g.identity_expected);
  }
}

TEST(AssociatedModule, CofreeOnTrivial) {
  const Fixture& f = fixture("FIX-TRIV");
  AssociatedModule g = associated_module(f.x, regular_left_comodule(f.x.e.coring));
  EXPECT_EQ(g.gamma.sub.dim(), f.x.e.a.dim());
  EXPECT_TRUE(g.checks.ok());
}

TEST(LocalDualSystem, GroundFieldAndGraded) {
  const Fixture& f = fixture("FIX-Z2");
  const StrongConnection& l = f.connections.at("ell");
  Coidempotent both = direct_sum(f.coidempotents.at("e0"), f.coidempotents.at("e1"), f.x.e.coring);
  LocalDualSystem d = local_dual_system(f.x, l, both);
  EXPECT_EQ(d.span.dim(), 2u);
  EXPECT_LE(d.x.size(), 2u);
  EXPECT_TRUE(verify_local_dual_system(l, d).ok());
  LocalDualSystem t = local_dual_system(fixture("FIX-TRIV").x, fixture("FIX-TRIV").connections.at("ell"),
                                        fixture("FIX-TRIV").coidempotents.at("e"));
  EXPECT_EQ(t.x.size(), 1u);
}

TEST(LocalDualSystem, NoncommutativeOverB) {
  const Fixture& f = fixture("FIX-NC");
  const StrongConnection& l = f.connections.at("varpi");
  LocalDualSystem d = local_dual_system(f.x, l, f.coidempotents.at("e"));
  EXPECT_TRUE(verify_local_dual_system(l, d).ok());
}

TEST(IdempotentE, TrivialIsOne) {
  const Fixture& f = fixture("FIX-TRIV");
  const StrongConnection& l = f.connections.at("ell");
  const Coidempotent& e = f.coidempotents.at("e");
  IdempotentE m = idempotent_E(f.x, l, e, local_dual_system(f.x, l, e), retraction_phi(f, l));
  ASSERT_EQ(m.size, 1u);
  EXPECT_EQ(m.at(0, 0), Vec{Scalar(1)});
  EXPECT_TRUE(m.checks.ok());
}

TEST(IdempotentE, GradedOddIsRankOne) {
  const Fixture& f = fixture("FIX-Z2");
  const StrongConnection& l = f.connections.at("ell");
  const Coidempotent& e = f.coidempotents.at("e1");
  IdempotentE m = idempotent_E(f.x, l, e, local_dual_system(f.x, l, e), retraction_phi(f, l));
  std::vector<Vec> rows;
  for (size_t r = 0; r < m.size; ++r) {
    Vec row;
    for (size_t c = 0; c < m.size; ++c) row.push_back(m.at(r, c)[0]);
    rows.push_back(row);
  }
  EXPECT_EQ(rank(Matrix::from_rows(rows, m.size)), 1u);
  EXPECT_TRUE(m.checks.ok());
}

TEST(IdempotentE, ChernMatchesChernGaloisOnEveryFixture) {
  for (const Case& k : all_cases()) {
    const Fixture& f = fixture(k.fixture);
    const StrongConnection& l = f.connections.at(k.connection);
    const Coidempotent& e = f.coidempotents.at(k.coidempotent);
    const std::string where = k.fixture + " " + k.coidempotent + " " + k.connection;
    IdempotentE m = idempotent_E(f.x, l, e, local_dual_system(f.x, l, e), retraction_phi(f, l));
    EXPECT_TRUE(m.checks.ok()) << where << " " << (m.checks.ok() ? "" : m.checks.residuals()[0].check);
    ChgComponents c = chg_components(f.x, l, e, k.max_l);
    EXPECT_TRUE(compare_chg_ch(c.comps, ch_components(m.entries, m.size, c.b_spaces)).ok()) << where;
  }
}

TEST(ChernOfIdempotent, UnitAndPaddedUnit) {
  Algebra q = Algebra::ground(0, "Q");
  std::vector<CircularSpace> spaces;
  for (size_t l = 0; l <= 3; ++l) spaces.emplace_back(q, scalars_in(q), l);
  auto one = ch_components({Vec{Scalar(1)}}, 1, spaces);
  auto padded = ch_components({Vec{Scalar(1)}, Vec{Scalar(0)}, Vec{Scalar(0)}, Vec{Scalar(0)}}, 2, spaces);
  EXPECT_EQ(one, padded);
  for (size_t l = 0; l <= 3; ++l) EXPECT_EQ(one[l], ones(spaces[l]));
  EXPECT_THROW(ch_components({Vec{Scalar(2)}}, 1, spaces), Error);
}

TEST(ChgInvariance, Additivity) {
  const Fixture& f = fixture("FIX-Z2");
  const StrongConnection& l = f.connections.at("ell");
  const Coidempotent &e0 = f.coidempotents.at("e0"), &e1 = f.coidempotents.at("e1");
  Coidempotent sum = direct_sum(e0, e1, f.x.e.coring);
  ChgComponents a = chg_components(f.x, l, e0, 4), b = chg_components(f.x, l, e1, 4),
                s = chg_components(f.x, l, sum, 4);
  for (size_t k = 0; k <= 4; ++k) EXPECT_EQ(s.comps[k], a.comps[k] + b.comps[k]) << k;
}

TEST(ChgInvariance, DualBasisIndependence) {
  const Fixture& f = fixture("FIX-SEP");
  const Coring& c = f.x.e.coring;
  const StrongConnection& l = f.connections.at("ell_k");
  const Coidempotent& e = f.coidempotents.at("e");
  LeftComodule w = comodule_from_coidempotent(c, e);
  auto d = projective_dual_basis(w.carrier, Side::Left);
  ASSERT_TRUE(d.basis.has_value());
  // Doubled basis {w, w} with functionals χ/2.
  DualBasis twice;
  for (int rep = 0; rep < 2; ++rep)
    for (size_t i = 0; i < d.basis->w.size(); ++i) {
      twice.w.push_back(d.basis->w[i]);
      twice.chi.push_back(d.basis->chi[i].scaled(Scalar(mpq_class(1, 2))));
    }
  ASSERT_TRUE(verify_dual_basis(w.carrier, Side::Left, twice).ok());
  Coidempotent e1 = coidempotent_from_comodule(w, *d.basis, c), e2 = coidempotent_from_comodule(w, twice, c);
  EXPECT_NE(e1.n, e2.n);
  ChgComponents a = chg_components(f.x, l, e1, 3), b = chg_components(f.x, l, e2, 3);
  for (size_t k = 0; k <= 3; ++k) EXPECT_EQ(a.comps[k], b.comps[k]) << k;
  ChgComponents orig = chg_components(f.x, l, e, 3);
  for (size_t k = 0; k <= 3; ++k) EXPECT_EQ(a.comps[k], orig.comps[k]) << k;
}

TEST(ChgInvariance, IsomorphicComodules) {
  const Fixture& f = fixture("FIX-Z2");
  const Coring& c = f.x.e.coring;
  const StrongConnection& l = f.connections.at("ell");
  const Coidempotent& e = f.coidempotents.at("e1");
  // diag(g₁, 0) defines a comodule isomorphic to ℚ·g₁.
  Coidempotent padded{"padded", 2, {e.at(0, 0), zero_vec(2), zero_vec(2), zero_vec(2)}};
  ASSERT_TRUE(validate_coidempotent(c, padded).ok());
  ASSERT_TRUE(comodules_isomorphic(comodule_from_coidempotent(c, e), comodule_from_coidempotent(c, padded), c));
  ChgComponents a = chg_components(f.x, l, e, 3), b = chg_components(f.x, l, padded, 3);
  for (size_t k = 0; k <= 3; ++k) EXPECT_EQ(a.comps[k], b.comps[k]) << k;
}

TEST(ChgInvariance, ClassDoesNotDependOnTheConnection) {
  EntwinedExtension x = graded_matrix_extension();
  const Subalgebra k = scalars_in(x.e.a);
  auto space = solve_strong_connection(x, k);
  ASSERT_TRUE(space.has_value());
  ASSERT_GE(space->space.dim(), 1u);
  Vec coeffs;
  for (size_t i = 0; i < space->space.dim(); ++i) coeffs.push_back(Scalar(static_cast<long>(i % 3) + 1));
  StrongConnection other{k, space->particular.att, space->space.point(coeffs)};
  ASSERT_TRUE(verify_strong_connection(x, other).ok());
  ASSERT_NE(other.ell, space->particular.ell);
  Coidempotent e{"g1", 1, {unit_vec(2, 1)}};
  ChgComponents a = chg_components(x, space->particular, e, 2), b = chg_components(x, other, e, 2);
  TotalComplex tc = build_total_complex(x.b.alg, t_inside_b(x, k), 2);
  for (size_t n = 0; n <= 1; ++n) {
    ChernCycle za = assemble_and_class(a.comps, n, tc), zb = assemble_and_class(b.comps, n, tc);
    EXPECT_EQ(za.coords, zb.coords) << n;
    EXPECT_TRUE(classes_equal(homology(tc, 2 * n), za.cycle, zb.cycle)) << n;
  }
}
