#include "ncg/coring.hpp"

#include <cmath>
#include <random>

namespace ncg {

namespace {

std::string at(size_t i) { return std::to_string(i); }
std::string at(size_t i, size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

SparseVec sv(const Vec& v) { return SparseVec::from_dense(v); }

// Σ_k r_k act[k] applied to v.
SparseVec act_by(const std::vector<Matrix>& act, const SparseVec& r, const SparseVec& v) {
  Accumulator acc;
  for (const auto& [k, c] : r.entries()) acc.add(act[k].apply(v), c);
  return acc.take();
}

SparseVec act_by_on_basis(const std::vector<Matrix>& act, const SparseVec& r, uint32_t j) {
  Accumulator acc;
  for (const auto& [k, c] : r.entries()) acc.add(act[k].col(j), c);
  return acc.take();
}

Matrix columns(size_t rows, size_t cols, const std::function<SparseVec(size_t)>& f) {
  Matrix m(rows, cols);
  for (size_t j = 0; j < cols; ++j) m.set_col(j, f(j));
  return m;
}

void compare_columns(Report& rep, const std::string& check, const Matrix& a, const Matrix& b) {
  size_t shown = 0;
  for (size_t j = 0; j < a.cols(); ++j)
    if (a.col(j) != b.col(j) && shown++ < 8) rep.add(check, "basis " + at(j));
}

Bimodule one_sided_left(std::string name, const Algebra& r, size_t dim, std::vector<Matrix> left) {
  Algebra k = Algebra::ground(r.modulus());
  return Bimodule{std::move(name), r, k, dim, std::move(left), {Matrix::identity(dim)}};
}

Bimodule one_sided_right(std::string name, const Algebra& r, size_t dim, std::vector<Matrix> right) {
  Algebra k = Algebra::ground(r.modulus());
  return Bimodule{std::move(name), k, r, dim, {Matrix::identity(dim)}, std::move(right)};
}

std::vector<Matrix> restrict_to(const Subspace& s, const std::vector<Matrix>& ambient_action) {
  std::vector<Matrix> out;
  for (const auto& a : ambient_action) {
    Matrix m(s.dim(), s.dim());
    for (size_t j = 0; j < s.dim(); ++j) {
      auto c = s.membership(a.apply(s.basis()[j]));
      if (!c) throw Error(ErrorKind::ValidationError, "subspace not closed under the action");
      m.set_col(j, sv(*c));
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Coring make_coring(std::string name, const Bimodule& carrier, Matrix delta, Matrix eps) {
  if (!carrier.left.same_structure(carrier.right))
    throw Error(ErrorKind::ActionMismatch, "coring carrier must be an R-R bimodule");
  TensorSpace cc = TensorSpace(carrier).then(carrier);
  if (delta.rows() != cc.dim() || delta.cols() != carrier.dim)
    throw Error(ErrorKind::DimensionMismatch, "comultiplication shape");
  if (eps.rows() != carrier.left.dim() || eps.cols() != carrier.dim)
    throw Error(ErrorKind::DimensionMismatch, "counit shape");
  return Coring{std::move(name), carrier.left, carrier, std::move(cc), std::move(delta), std::move(eps)};
}

Coring trivial_coring(const Algebra& r, std::string name) {
  Bimodule c = regular_bimodule(r);
  c.name = name;
  TensorSpace cc = TensorSpace(c).then(c);
  Matrix delta = columns(cc.dim(), r.dim(), [&](size_t i) { return cc.embed({r.basis(i), r.unit()}); });
  return make_coring(std::move(name), c, delta, Matrix::identity(r.dim()));
}

Coring group_coalgebra(size_t n, uint32_t modulus, std::string name) {
  Algebra k = Algebra::ground(modulus);
  Bimodule c = free_bimodule(k, n);
  c.name = name;
  TensorSpace cc = TensorSpace(c).then(c);
  Matrix delta = columns(cc.dim(), n, [&](size_t i) { return cc.embed({unit_vec(n, i), unit_vec(n, i)}); });
  Matrix eps(1, n);
  for (size_t i = 0; i < n; ++i) eps.set(0, i, Scalar(mpq_class(1), modulus));
  return make_coring(std::move(name), c, delta, eps);
}

Coring sweedler_coring(const Algebra& a, const Subalgebra& b, std::string name) {
  TensorSpace ab = tensor_power(a, b.alg, b.incl, 2);
  Bimodule c = ab.as_bimodule(name);
  TensorSpace cc = TensorSpace(c).then(c);
  Matrix delta(cc.dim(), c.dim), eps(a.dim(), c.dim);
  for (size_t q = 0; q < c.dim; ++q) {
    Tuple t = ab.representative(static_cast<uint32_t>(q));
    Vec left = ab.embed({a.basis(t[0]), a.unit()}).to_dense(c.dim);
    Vec right = ab.embed({a.unit(), a.basis(t[1])}).to_dense(c.dim);
    delta.set_col(q, cc.embed({left, right}));
    eps.set_col(q, a.product(t[0], t[1]));
  }
  return make_coring(std::move(name), c, delta, eps);
}

Report validate_coring(const Coring& c) {
  Report rep;
  rep.merge(validate_bimodule(c.carrier), "carrier ");
  const Algebra& r = c.base;
  for (size_t s = 0; s < r.dim(); ++s) {
    compare_columns(rep, "comultiplication left R-linearity s=" + at(s), c.delta * c.carrier.left_action[s],
                    c.cc.left_action(s) * c.delta);
    compare_columns(rep, "comultiplication right R-linearity s=" + at(s), c.delta * c.carrier.right_action[s],
                    c.cc.right_action(s) * c.delta);
    compare_columns(rep, "counit left R-linearity s=" + at(s), c.eps * c.carrier.left_action[s],
                    r.left_mult_basis(s) * c.eps);
    compare_columns(rep, "counit right R-linearity s=" + at(s), c.eps * c.carrier.right_action[s],
                    r.right_mult_basis(s) * c.eps);
  }
  TensorSpace ccc = c.cc.then(c.carrier);
  auto delta_raw = [&](uint32_t i) { return c.cc.lift(c.delta.col(i)); };
  for (size_t j = 0; j < c.dim(); ++j) {
    Raw d = c.cc.lift(c.delta.col(j));
    if (ccc.project(raw_expand_leg(d, 0, delta_raw)) != ccc.project(raw_expand_leg(d, 1, delta_raw)))
      rep.add("coassociativity", "c=" + at(j));
    Accumulator left, right;
    for (const auto& term : d) {
      left.add(act_by_on_basis(c.carrier.left_action, c.eps.col(term.t[0]), term.t[1]), term.c);
      right.add(act_by_on_basis(c.carrier.right_action, c.eps.col(term.t[1]), term.t[0]), term.c);
    }
    if (left.take() != SparseVec::unit(static_cast<uint32_t>(j))) rep.add("left counit", "c=" + at(j));
    if (right.take() != SparseVec::unit(static_cast<uint32_t>(j))) rep.add("right counit", "c=" + at(j));
  }
  return rep;
}

// ---------------------------------------------------------------------------

RightComodule make_right_comodule(std::string name, const Bimodule& carrier, const Coring& c, Matrix coaction) {
  if (!carrier.right.same_structure(c.base)) throw Error(ErrorKind::ActionMismatch, "right comodule over wrong base");
  TensorSpace mc = TensorSpace(carrier).then(c.carrier);
  if (coaction.rows() != mc.dim() || coaction.cols() != carrier.dim)
    throw Error(ErrorKind::DimensionMismatch, "right coaction shape");
  return RightComodule{std::move(name), carrier, std::move(mc), std::move(coaction)};
}

LeftComodule make_left_comodule(std::string name, const Bimodule& carrier, const Coring& c, Matrix coaction) {
  if (!carrier.left.same_structure(c.base)) throw Error(ErrorKind::ActionMismatch, "left comodule over wrong base");
  TensorSpace cm = TensorSpace(c.carrier).then(carrier);
  if (coaction.rows() != cm.dim() || coaction.cols() != carrier.dim)
    throw Error(ErrorKind::DimensionMismatch, "left coaction shape");
  return LeftComodule{std::move(name), carrier, std::move(cm), std::move(coaction)};
}

RightComodule regular_right_comodule(const Coring& c) {
  return RightComodule{c.carrier.name, c.carrier, c.cc, c.delta};
}

LeftComodule regular_left_comodule(const Coring& c) { return LeftComodule{c.carrier.name, c.carrier, c.cc, c.delta}; }

Report validate_comodule(const RightComodule& m, const Coring& c) {
  Report rep;
  rep.merge(validate_bimodule(m.carrier), "carrier ");
  for (size_t s = 0; s < c.base.dim(); ++s)
    compare_columns(rep, "coaction R-linearity s=" + at(s), m.coaction * m.carrier.right_action[s],
                    m.mc.right_action(s) * m.coaction);
  TensorSpace mcc = m.mc.then(c.carrier);
  auto rho = [&](uint32_t i) { return m.mc.lift(m.coaction.col(i)); };
  auto delta = [&](uint32_t i) { return c.cc.lift(c.delta.col(i)); };
  for (size_t j = 0; j < m.carrier.dim; ++j) {
    Raw r = m.mc.lift(m.coaction.col(j));
    if (mcc.project(raw_expand_leg(r, 0, rho)) != mcc.project(raw_expand_leg(r, 1, delta)))
      rep.add("coaction coassociativity", "m=" + at(j));
    Accumulator acc;
    for (const auto& term : r) acc.add(act_by_on_basis(m.carrier.right_action, c.eps.col(term.t[1]), term.t[0]), term.c);
    if (acc.take() != SparseVec::unit(static_cast<uint32_t>(j))) rep.add("coaction counit", "m=" + at(j));
  }
  return rep;
}

Report validate_comodule(const LeftComodule& m, const Coring& c) {
  Report rep;
  rep.merge(validate_bimodule(m.carrier), "carrier ");
  for (size_t s = 0; s < c.base.dim(); ++s)
    compare_columns(rep, "coaction R-linearity s=" + at(s), m.coaction * m.carrier.left_action[s],
                    m.cm.left_action(s) * m.coaction);
  TensorSpace ccm = c.cc.then(m.carrier);
  auto rho = [&](uint32_t i) { return m.cm.lift(m.coaction.col(i)); };
  auto delta = [&](uint32_t i) { return c.cc.lift(c.delta.col(i)); };
  for (size_t j = 0; j < m.carrier.dim; ++j) {
    Raw r = m.cm.lift(m.coaction.col(j));
    if (ccm.project(raw_expand_leg(r, 1, rho)) != ccm.project(raw_expand_leg(r, 0, delta)))
      rep.add("coaction coassociativity", "m=" + at(j));
    Accumulator acc;
    for (const auto& term : r) acc.add(act_by_on_basis(m.carrier.left_action, c.eps.col(term.t[0]), term.t[1]), term.c);
    if (acc.take() != SparseVec::unit(static_cast<uint32_t>(j))) rep.add("coaction counit", "m=" + at(j));
  }
  return rep;
}

Report verify_grouplike(const Coring& c, const Vec& e) {
  Report rep;
  if (e.size() != c.dim()) {
    rep.add("grouplike shape", "dim " + at(e.size()));
    return rep;
  }
  if (c.delta.apply(sv(e)) != c.cc.embed({e, e})) rep.add("grouplike comultiplication", "Δ(e) - e⊗e");
  if (c.eps.apply(e) != c.base.unit()) rep.add("grouplike counit", "ε(e) - 1");
  return rep;
}

std::optional<std::vector<Vec>> search_grouplikes(const Coring& c) {
  const uint32_t p = c.base.modulus();
  if (p == 0 || static_cast<double>(c.dim()) * std::log2(static_cast<double>(p)) > 16.0) return std::nullopt;
  std::vector<Vec> found;
  std::vector<size_t> sizes(c.dim(), p);
  for_each_tuple(sizes, [&](const Tuple& t) {
    Vec e;
    for (uint32_t x : t) e.push_back(Scalar(mpq_class(x), p));
    if (verify_grouplike(c, e).ok()) found.push_back(e);
  });
  return found;
}

Subspace coinvariants(const RightComodule& m, const Vec& e) {
  const size_t d = m.carrier.dim;
  Matrix diff = m.coaction - columns(m.mc.dim(), d, [&](size_t j) { return m.mc.embed({unit_vec(d, j), e}); });
  return kernel(diff);
}

Subspace coinvariants(const LeftComodule& w, const Vec& e) {
  const size_t d = w.carrier.dim;
  Matrix diff = w.coaction - columns(w.cm.dim(), d, [&](size_t j) { return w.cm.embed({e, unit_vec(d, j)}); });
  return kernel(diff);
}

Subspace base_coinvariants(const Coring& c, const Vec& e) {
  const size_t d = c.base.dim();
  const SparseVec se = sv(e);
  // Right: ρ(r) = e·r against r⊗e ≅ r·e. Left: ρ(r) = r·e against e⊗r ≅ e·r.
  Matrix er = columns(c.dim(), d, [&](size_t j) { return c.carrier.right_action[j].apply(se); });
  Matrix re = columns(c.dim(), d, [&](size_t j) { return c.carrier.left_action[j].apply(se); });
  Subspace right = kernel(er - re);
  Subspace left = kernel(re - er);
  if (!(right == left)) throw Error(ErrorKind::CoinvariantMismatch, "left and right coinvariants of R differ");
  return right;
}

// ---------------------------------------------------------------------------

std::optional<Vec> DualRing::coordinates(const Matrix& f) const {
  if (functionals.empty()) return f.is_zero() ? std::optional<Vec>(Vec{}) : std::nullopt;
  const size_t rows = functionals[0].rows(), cols = functionals[0].cols();
  // Solve Σ x_i φ_i = f entrywise.
  Matrix sys(rows * cols, functionals.size());
  for (size_t i = 0; i < functionals.size(); ++i) sys.set_col(i, flatten({functionals[i]}));
  auto x = solve(sys, flatten({f}));
  if (!x) return std::nullopt;
  return x->to_dense(functionals.size());
}

DualRing dual_ring(const Coring& c) {
  const Algebra& r = c.base;
  std::vector<Matrix> on_r;
  for (size_t s = 0; s < r.dim(); ++s) on_r.push_back(r.left_mult_basis(s));
  auto hom = equivariant_hom_space(r.dim(), c.dim(), {intertwines(c.carrier.left_action, on_r)});
  DualRing d;
  d.functionals = hom->homogeneous;
  const size_t n = d.functionals.size();
  // (ff')(c) = Σ f'(c₍₁₎ f(c₍₂₎))
  auto product = [&](const Matrix& f, const Matrix& g) {
    return columns(r.dim(), c.dim(), [&](size_t j) {
      Accumulator acc;
      for (const auto& term : c.cc.lift(c.delta.col(j)))
        acc.add(g.apply(act_by_on_basis(c.carrier.right_action, f.col(term.t[1]), term.t[0])), term.c);
      return acc.take();
    });
  };
  std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      auto x = d.coordinates(product(d.functionals[i], d.functionals[j]));
      if (!x) throw Error(ErrorKind::ValidationError, "dual ring product leaves the functionals");
      table[i][j] = *x;
    }
  auto unit = d.coordinates(c.eps);
  if (!unit) throw Error(ErrorKind::ValidationError, "counit is not left R-linear");
  d.alg = Algebra::from_table("*" + c.name, table, *unit);
  d.unit_map = Matrix(n, r.dim());
  for (size_t s = 0; s < r.dim(); ++s) {
    auto x = d.coordinates(c.eps * c.carrier.right_action[s]);
    if (!x) throw Error(ErrorKind::ValidationError, "dual ring unit map");
    d.unit_map.set_col(s, sv(*x));
  }
  return d;
}

Bimodule module_of_comodule(const RightComodule& m, const DualRing& d) {
  std::vector<Matrix> right;
  for (const auto& f : d.functionals)
    right.push_back(columns(m.carrier.dim, m.carrier.dim, [&](size_t j) {
      Accumulator acc;
      for (const auto& term : m.mc.lift(m.coaction.col(j)))
        acc.add(act_by_on_basis(m.carrier.right_action, f.col(term.t[1]), term.t[0]), term.c);
      return acc.take();
    }));
  return one_sided_right(m.name, d.alg, m.carrier.dim, std::move(right));
}

namespace {

// f ⊗ C: M ⊗_R C → N ⊗_R C.
Matrix tensor_right(const TensorSpace& mc, const TensorSpace& nc, const Matrix& f) {
  return matrix_from_raw(mc, nc, [&](const Tuple& t) { return raw_apply_leg(raw_unit(t), 0, f); });
}

// C ⊗ f: C ⊗_R M → C ⊗_R N.
Matrix tensor_left(const TensorSpace& cm, const TensorSpace& cn, const Matrix& f) {
  return matrix_from_raw(cm, cn, [&](const Tuple& t) { return raw_apply_leg(raw_unit(t), 1, f); });
}

}  // namespace

Report verify_colinear(const RightComodule& m, const RightComodule& n, const Matrix& f, const Coring& c) {
  (void)c;
  Report rep;
  compare_columns(rep, "colinearity", n.coaction * f, tensor_right(m.mc, n.mc, f) * m.coaction);
  return rep;
}

// ---------------------------------------------------------------------------

std::optional<Separability> separability_idempotent(const Algebra& a, const Algebra& r, const Matrix& eta) {
  Bimodule reg = regular_bimodule(a);
  TensorSpace aa = TensorSpace(reg).then(reg, r, eta, eta);
  TensorSpace single(reg);
  Matrix mu = matrix_from_raw(aa, single, [&](const Tuple& t) { return raw_from_vec(a.product(t[0], t[1])); });
  std::vector<Constraint> cons;
  for (size_t s = 0; s < a.dim(); ++s)
    cons.push_back(sandwiched(aa.left_action(s) - aa.right_action(s), Matrix::identity(1), Matrix(aa.dim(), 1)));
  Matrix one(a.dim(), 1);
  one.set_col(0, sv(a.unit()));
  cons.push_back(sandwiched(mu, Matrix::identity(1), one));
  auto sol = equivariant_hom_space(aa.dim(), 1, cons);
  if (!sol) return std::nullopt;
  Vec zeta = sol->particular.col(0).to_dense(aa.dim());
  return Separability{std::move(aa), std::move(zeta), std::move(*sol)};
}

Matrix separability_retraction(const Separability& sep, const Bimodule& m, const Bimodule& n, const Matrix& f) {
  Matrix out(n.dim, m.dim);
  for (const auto& term : sep.aa.lift(sv(sep.zeta)))
    out = out + (n.right_action[term.t[1]] * f * m.right_action[term.t[0]]).scaled(term.c);
  return out;
}

std::optional<Cointegral> cointegral(const Coring& c) {
  const Algebra& r = c.base;
  std::vector<Matrix> lcc, rcc, lr, rr;
  for (size_t s = 0; s < r.dim(); ++s) {
    lcc.push_back(c.cc.left_action(s));
    rcc.push_back(c.cc.right_action(s));
    lr.push_back(r.left_mult_basis(s));
    rr.push_back(r.right_mult_basis(s));
  }
  // For each basis element of C ⊗_R C, the terms of (Δ⊗C) and (C⊗Δ) with the
  // pair that δ will consume, already projected.
  struct Term {
    uint32_t keep;
    SparseVec pair;
    Scalar c;
  };
  std::vector<std::vector<Term>> lhs(c.cc.dim()), rhs(c.cc.dim());
  for (size_t q = 0; q < c.cc.dim(); ++q) {
    Tuple t = c.cc.representative(static_cast<uint32_t>(q));
    for (const auto& d : c.cc.lift(c.delta.col(t[0])))
      lhs[q].push_back({d.t[0], c.cc.project(Tuple{d.t[1], t[1]}), d.c});
    for (const auto& d : c.cc.lift(c.delta.col(t[1])))
      rhs[q].push_back({d.t[1], c.cc.project(Tuple{t[0], d.t[0]}), d.c});
  }
  const auto& cr = c.carrier.right_action;
  const auto& cl = c.carrier.left_action;
  Constraint balance = [=, dim = c.dim()](const Matrix& x) {
    Matrix res(dim, lhs.size());
    for (size_t q = 0; q < lhs.size(); ++q) {
      Accumulator acc;
      for (const auto& t : lhs[q]) acc.add(act_by_on_basis(cr, x.apply(t.pair), t.keep), t.c);
      for (const auto& t : rhs[q]) acc.add(act_by_on_basis(cl, x.apply(t.pair), t.keep), -t.c);
      res.set_col(q, acc.take());
    }
    return flatten({res});
  };
  std::vector<Constraint> cons{intertwines(lcc, lr), intertwines(rcc, rr),
                               sandwiched(Matrix::identity(r.dim()), c.delta, c.eps), balance};
  auto sol = equivariant_hom_space(r.dim(), c.cc.dim(), cons);
  if (!sol) return std::nullopt;
  Matrix delta = sol->particular;
  return Cointegral{std::move(delta), std::move(*sol)};
}

Matrix cointegral_retraction(const Cointegral& d, const Coring& c, const RightComodule& m, const RightComodule& n,
                             const Matrix& f) {
  return columns(n.carrier.dim, m.carrier.dim, [&](size_t j) {
    Accumulator acc;
    for (const auto& outer : m.mc.lift(m.coaction.col(j))) {
      SparseVec image = f.col(outer.t[0]);
      for (const auto& inner : n.mc.lift(n.coaction.apply(image))) {
        SparseVec r = d.delta.apply(c.cc.project(Tuple{inner.t[1], outer.t[1]}));
        acc.add(act_by_on_basis(n.carrier.right_action, r, inner.t[0]), outer.c * inner.c);
      }
    }
    return acc.take();
  });
}

// ---------------------------------------------------------------------------

Report validate_coidempotent(const Coring& c, const Coidempotent& e) {
  Report rep;
  if (e.entries.size() != e.n * e.n) {
    rep.add("coidempotent shape", at(e.entries.size()));
    return rep;
  }
  for (size_t i = 0; i < e.n; ++i)
    for (size_t j = 0; j < e.n; ++j) {
      if (e.at(i, j).size() != c.dim()) {
        rep.add("coidempotent entry shape", at(i, j));
        continue;
      }
      Accumulator acc;
      for (size_t k = 0; k < e.n; ++k) acc.add(c.cc.embed({e.at(i, k), e.at(k, j)}));
      if (c.delta.apply(sv(e.at(i, j))) != acc.take()) rep.add("coidempotent comultiplication", at(i, j));
    }
  if (!rep.ok()) return rep;
  auto p = counit_matrix(c, e);
  for (size_t i = 0; i < e.n; ++i)
    for (size_t j = 0; j < e.n; ++j) {
      Vec s = zero_vec(c.base.dim());
      for (size_t k = 0; k < e.n; ++k) s = s + c.base.mul(p[i * e.n + k], p[k * e.n + j]);
      if (s != p[i * e.n + j]) rep.add("counit matrix idempotency", at(i, j));
    }
  return rep;
}

std::vector<Vec> counit_matrix(const Coring& c, const Coidempotent& e) {
  std::vector<Vec> p;
  for (const auto& x : e.entries) p.push_back(c.eps.apply(x));
  return p;
}

Coidempotent coidempotent_from_comodule(const LeftComodule& w, const DualBasis& d, const Coring& c,
                                        std::string name) {
  const size_t n = d.w.size();
  Coidempotent e{std::move(name), n, std::vector<Vec>(n * n)};
  for (size_t i = 0; i < n; ++i) {
    Raw rho = w.cm.lift(w.coaction.apply(sv(d.w[i])));
    for (size_t j = 0; j < n; ++j) {
      Accumulator acc;
      for (const auto& term : rho) acc.add(act_by_on_basis(c.carrier.right_action, d.chi[j].col(term.t[1]), term.t[0]), term.c);
      e.at(i, j) = acc.take().to_dense(c.dim());
    }
  }
  // ρ(w_i) = Σ e_ij ⊗ w_j
  for (size_t i = 0; i < n; ++i) {
    Accumulator acc;
    for (size_t j = 0; j < n; ++j) acc.add(w.cm.embed({e.at(i, j), d.w[j]}));
    if (w.coaction.apply(sv(d.w[i])) != acc.take())
      throw Error(ErrorKind::InvalidCoidempotent, "coaction expansion fails at " + at(i));
  }
  // e_ij = Σ χ_k(w_i) e_kj = Σ e_ik χ_j(w_k)
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Accumulator left, right;
      for (size_t k = 0; k < n; ++k) {
        left.add(act_by(c.carrier.left_action, d.chi[k].apply(sv(d.w[i])), sv(e.at(k, j))));
        right.add(act_by(c.carrier.right_action, d.chi[j].apply(sv(d.w[k])), sv(e.at(i, k))));
      }
      SparseVec eij = sv(e.at(i, j));
      if (left.take() != eij || right.take() != eij)
        throw Error(ErrorKind::InvalidCoidempotent, "dual basis absorption fails at " + at(i, j));
    }
  Report rep = validate_coidempotent(c, e);
  if (!rep.ok()) throw Error(ErrorKind::InvalidCoidempotent, rep.residuals()[0].check + " at " + rep.residuals()[0].location);
  return e;
}

LeftComodule comodule_from_coidempotent(const Coring& c, const Coidempotent& e) {
  return comodule_with_generators(c, e).w;
}

GeneratedComodule comodule_with_generators(const Coring& c, const Coidempotent& e) {
  Report rep = validate_coidempotent(c, e);
  if (!rep.ok()) throw Error(ErrorKind::InvalidCoidempotent, rep.residuals()[0].check + " at " + rep.residuals()[0].location);
  const Algebra& r = c.base;
  const size_t dr = r.dim(), n = e.n;
  auto p = counit_matrix(c, e);
  // x ↦ x p on row vectors in R^n.
  Matrix right_p = columns(n * dr, n * dr, [&](size_t col) {
    const size_t i = col / dr, s = col % dr;
    Accumulator acc;
    for (size_t j = 0; j < n; ++j) {
      const SparseVec sp = r.left_mult_basis(s).apply(sv(p[i * n + j]));
      for (const auto& [k, x] : sp.entries())
        acc.add(static_cast<uint32_t>(j * dr + k), x);
    }
    return acc.take();
  });
  Subspace w = image(right_p);
  std::vector<Matrix> on_free;
  for (size_t t = 0; t < dr; ++t) {
    Matrix lt = r.left_mult_basis(t);
    on_free.push_back(columns(n * dr, n * dr, [&](size_t col) {
      SparseVec out;
      for (const auto& [k, x] : lt.col(col % dr).entries()) out.push(static_cast<uint32_t>((col / dr) * dr + k), x);
      return out;
    }));
  }
  Bimodule carrier = one_sided_left("W(" + e.name + ")", r, w.dim(), restrict_to(w, on_free));
  TensorSpace cm = TensorSpace(c.carrier).then(carrier);
  // Rows of p lie in W.
  std::vector<Vec> rows;
  for (size_t k = 0; k < n; ++k) {
    Accumulator acc;
    for (size_t j = 0; j < n; ++j) {
      const SparseVec pkj = sv(p[k * n + j]);
      for (const auto& [s, x] : pkj.entries()) acc.add(static_cast<uint32_t>(j * dr + s), x);
    }
    auto coords = w.membership(acc.take());
    if (!coords) throw Error(ErrorKind::InvalidCoidempotent, "row of the counit matrix outside W");
    rows.push_back(*coords);
  }
  Matrix coaction = columns(cm.dim(), w.dim(), [&](size_t b) {
    Vec x = w.basis()[b].to_dense(n * dr);
    Accumulator acc;
    for (size_t i = 0; i < n; ++i) {
      SparseVec xi = sv(Vec(x.begin() + static_cast<long>(i * dr), x.begin() + static_cast<long>((i + 1) * dr)));
      if (xi.empty()) continue;
      for (size_t k = 0; k < n; ++k) {
        SparseVec coeff = act_by(c.carrier.left_action, xi, sv(e.at(i, k)));
        if (!coeff.empty()) acc.add(cm.embed({coeff.to_dense(c.dim()), rows[k]}));
      }
    }
    return acc.take();
  });
  return GeneratedComodule{LeftComodule{carrier.name, carrier, std::move(cm), std::move(coaction)}, std::move(rows)};
}

RightComodule right_comodule_from_coidempotent(const Coring& c, const Coidempotent& e) {
  Report rep = validate_coidempotent(c, e);
  if (!rep.ok()) throw Error(ErrorKind::InvalidCoidempotent, rep.residuals()[0].check + " at " + rep.residuals()[0].location);
  const Algebra& r = c.base;
  const size_t dr = r.dim(), n = e.n;
  auto p = counit_matrix(c, e);
  // x ↦ p x on column vectors in R^n.
  Matrix left_p = columns(n * dr, n * dr, [&](size_t col) {
    const size_t j = col / dr, s = col % dr;
    Accumulator acc;
    for (size_t i = 0; i < n; ++i) {
      const SparseVec ps = r.right_mult_basis(s).apply(sv(p[i * n + j]));
      for (const auto& [k, x] : ps.entries())
        acc.add(static_cast<uint32_t>(i * dr + k), x);
    }
    return acc.take();
  });
  Subspace v = image(left_p);
  std::vector<Matrix> on_free;
  for (size_t t = 0; t < dr; ++t) {
    Matrix rt = r.right_mult_basis(t);
    on_free.push_back(columns(n * dr, n * dr, [&](size_t col) {
      SparseVec out;
      for (const auto& [k, x] : rt.col(col % dr).entries()) out.push(static_cast<uint32_t>((col / dr) * dr + k), x);
      return out;
    }));
  }
  Bimodule carrier = one_sided_right("V(" + e.name + ")", r, v.dim(), restrict_to(v, on_free));
  TensorSpace mc = TensorSpace(carrier).then(c.carrier);
  std::vector<Vec> cols;
  for (size_t k = 0; k < n; ++k) {
    Accumulator acc;
    for (size_t i = 0; i < n; ++i) {
      const SparseVec pik = sv(p[i * n + k]);
      for (const auto& [s, x] : pik.entries()) acc.add(static_cast<uint32_t>(i * dr + s), x);
    }
    auto coords = v.membership(acc.take());
    if (!coords) throw Error(ErrorKind::InvalidCoidempotent, "column of the counit matrix outside V");
    cols.push_back(*coords);
  }
  Matrix coaction = columns(mc.dim(), v.dim(), [&](size_t b) {
    Vec x = v.basis()[b].to_dense(n * dr);
    Accumulator acc;
    for (size_t j = 0; j < n; ++j) {
      SparseVec xj = sv(Vec(x.begin() + static_cast<long>(j * dr), x.begin() + static_cast<long>((j + 1) * dr)));
      if (xj.empty()) continue;
      for (size_t k = 0; k < n; ++k) {
        SparseVec coeff = act_by(c.carrier.right_action, xj, sv(e.at(k, j)));
        if (!coeff.empty()) acc.add(mc.embed({cols[k], coeff.to_dense(c.dim())}));
      }
    }
    return acc.take();
  });
  return RightComodule{carrier.name, carrier, std::move(mc), std::move(coaction)};
}

Coidempotent direct_sum(const Coidempotent& a, const Coidempotent& b, const Coring& c) {
  // An empty index set contributes no block.
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  const size_t n = a.n + b.n;
  Coidempotent s{a.name + "+" + b.name, n, std::vector<Vec>(n * n, zero_vec(c.dim()))};
  for (size_t i = 0; i < a.n; ++i)
    for (size_t j = 0; j < a.n; ++j) s.at(i, j) = a.at(i, j);
  for (size_t i = 0; i < b.n; ++i)
    for (size_t j = 0; j < b.n; ++j) s.at(a.n + i, a.n + j) = b.at(i, j);
  Report rep = validate_coidempotent(c, s);
  if (!rep.ok()) throw Error(ErrorKind::InvalidCoidempotent, "direct sum: " + rep.residuals()[0].check);
  return s;
}

// ---------------------------------------------------------------------------

Bimodule Cotensor::as_left_module(const Algebra& acting, const Algebra& ground) const {
  return Bimodule{"cotensor", acting, ground, sub.dim(), left_action, {Matrix::identity(sub.dim())}};
}

Cotensor cotensor(const RightComodule& m, const LeftComodule& w, const Coring& c, const Subalgebra* acting) {
  TensorSpace mw = TensorSpace(m.carrier).then(w.carrier);
  TensorSpace mcw = m.mc.then(w.carrier);
  (void)c;
  Matrix diff = matrix_from_raw(mw, mcw, [&](const Tuple& t) {
    Raw left = raw_concat(m.mc.lift(m.coaction.col(t[0])), raw_unit(Tuple{t[1]}));
    Raw right = raw_concat(raw_unit(Tuple{t[0]}), w.cm.lift(w.coaction.col(t[1])));
    raw_add(left, right, Scalar(-1));
    return left;
  });
  Cotensor out{mw, kernel(diff), {}};
  if (acting) {
    std::vector<Matrix> ambient;
    for (size_t s = 0; s < acting->alg.dim(); ++s)
      ambient.push_back(mw.left_by(acting->incl.col(s).to_dense(m.carrier.left.dim())));
    out.left_action = restrict_to(out.sub, ambient);
  }
  return out;
}

bool comodules_isomorphic(const LeftComodule& a, const LeftComodule& b, const Coring& c) {
  if (a.carrier.dim != b.carrier.dim) return false;
  (void)c;
  const LeftComodule* pa = &a;
  const LeftComodule* pb = &b;
  Constraint colinear = [pa, pb](const Matrix& x) {
    return flatten({tensor_left(pa->cm, pb->cm, x) * pa->coaction - pb->coaction * x});
  };
  auto hom = equivariant_hom_space(b.carrier.dim, a.carrier.dim,
                                   {intertwines(a.carrier.left_action, b.carrier.left_action), colinear});
  if (!hom) return false;
  if (hom->dim() == 0) return a.carrier.dim == 0;
  // A generic combination is invertible when any element is.
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coeff(-50, 50);
  const uint32_t p = a.carrier.left.modulus();
  for (int trial = 0; trial < 8; ++trial) {
    Vec x;
    for (size_t i = 0; i < hom->dim(); ++i) x.push_back(Scalar(mpq_class(coeff(rng)), p));
    if (inverse(hom->point(x))) return true;
  }
  return false;
}

}  // namespace ncg
