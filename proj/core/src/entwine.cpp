#include "ncg/entwine.hpp"

namespace ncg {

namespace {

std::string at(size_t i) { return std::to_string(i); }
std::string at(const Tuple& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

SparseVec sv(const Vec& v) { return SparseVec::from_dense(v); }

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

// Compares two raw-valued maps on every basis element of src.
void compare_on_basis(Report& rep, const std::string& check, const TensorSpace& src, const TensorSpace& dst,
                      const std::function<Raw(const Tuple&)>& lhs, const std::function<Raw(const Tuple&)>& rhs) {
  size_t shown = 0;
  for (size_t q = 0; q < src.dim(); ++q) {
    Tuple t = src.representative(static_cast<uint32_t>(q));
    if (dst.project(lhs(t)) != dst.project(rhs(t)) && shown++ < 8) rep.add(check, at(t));
  }
}

Subspace stacked_kernel(const std::vector<Matrix>& blocks, size_t cols) {
  size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix m(rows, cols);
  for (size_t j = 0; j < cols; ++j) {
    std::vector<SparseVec::Entry> e;
    size_t off = 0;
    for (const auto& b : blocks) {
      for (const auto& [i, x] : b.col(j).entries()) e.emplace_back(static_cast<uint32_t>(off + i), x);
      off += b.rows();
    }
    m.set_col(j, SparseVec::from_entries(std::move(e)));
  }
  return kernel(m);
}

// Everything except ψ, which is left as a zero matrix of the right shape.
Entwining skeleton(const Algebra& a, const Matrix& eta, const Coring& c) {
  const Algebra& r = c.base;
  if (eta.rows() != a.dim() || eta.cols() != r.dim()) throw Error(ErrorKind::DimensionMismatch, "unit map shape");
  Entwining e;
  e.a = a;
  e.eta = eta;
  e.coring = c;
  e.a_over_r = restrict_scalars(regular_bimodule(a), r, eta, r, eta);
  e.ca = TensorSpace(c.carrier).then(e.a_over_r);
  e.ac = TensorSpace(e.a_over_r).then(c.carrier);
  e.psi = Matrix(e.ac.dim(), e.ca.dim());
  for (size_t j = 0; j < a.dim(); ++j) {
    Matrix lm = a.left_mult_basis(j), rm = a.right_mult_basis(j);
    e.ac_left.push_back(matrix_from_raw(e.ac, e.ac, [&](const Tuple& t) { return raw_apply_leg(raw_unit(t), 0, lm); }));
    e.ca_right.push_back(matrix_from_raw(e.ca, e.ca, [&](const Tuple& t) { return raw_apply_leg(raw_unit(t), 1, rm); }));
  }
  return e;
}

}  // namespace

Entwining make_entwining(const Algebra& a, const Matrix& eta, const Coring& c, Matrix psi) {
  Entwining e = skeleton(a, eta, c);
  if (psi.rows() != e.ac.dim() || psi.cols() != e.ca.dim())
    throw Error(ErrorKind::DimensionMismatch, "entwining map shape");
  e.psi = std::move(psi);
  return e;
}

Entwining make_entwining(const Algebra& a, const Matrix& eta, const Coring& c) { return skeleton(a, eta, c); }

Entwining trivial_entwining(const Algebra& a, const Algebra& r, const Matrix& eta) {
  Entwining e = skeleton(a, eta, trivial_coring(r));
  const Vec one_r = r.unit();
  e.psi = matrix_from_raw(e.ca, e.ac, [&](const Tuple& t) {
    Vec ra = a.mul(eta.col(t[0]).to_dense(a.dim()), a.basis(t[1]));
    return e.ac.lift(e.ac.embed({ra, one_r}));
  });
  return e;
}

Entwining self_entwining(const Coring& c) {
  const Algebra& a = c.base;
  Entwining e = skeleton(a, Matrix::identity(a.dim()), c);
  const Vec one = a.unit();
  e.psi = matrix_from_raw(e.ca, e.ac, [&](const Tuple& t) {
    Vec ca = c.right_by(a.basis(t[1])).col(t[0]).to_dense(c.dim());
    return e.ac.lift(e.ac.embed({one, ca}));
  });
  return e;
}

namespace {

struct Maps {
  const Entwining& e;
  Raw psi(const Tuple& ca_pair) const { return e.ac.lift(e.psi.apply(e.ca.project(ca_pair))); }
  Raw psi_inv(const Tuple& ac_pair) const { return e.ca.lift(e.psi_inv->apply(e.ac.project(ac_pair))); }
  Raw delta(uint32_t c) const { return e.coring.cc.lift(e.coring.delta.col(c)); }
  // η(ε(c)) in A.
  SparseVec eps_in_a(uint32_t c) const { return e.eta.apply(e.coring.eps.col(c)); }
  Raw a_times(const SparseVec& x, uint32_t a, bool x_on_left) const {
    const Algebra& alg = e.a;
    Vec v = x_on_left ? alg.mul(x.to_dense(alg.dim()), alg.basis(a)) : alg.mul(alg.basis(a), x.to_dense(alg.dim()));
    return raw_from_vec(sv(v));
  }
};

}  // namespace

Report validate_entwining(const Entwining& e) {
  Report rep;
  Maps m{e};
  const Algebra& r = e.base();
  if (e.psi.rows() != e.ac.dim() || e.psi.cols() != e.ca.dim()) {
    rep.add("entwining map shape", "");
    return rep;
  }
  for (size_t s = 0; s < r.dim(); ++s) {
    compare_columns(rep, "ψ left R-linearity s=" + at(s), e.psi * e.ca.left_action(s), e.ac.left_action(s) * e.psi);
    compare_columns(rep, "ψ right R-linearity s=" + at(s), e.psi * e.ca.right_action(s), e.ac.right_action(s) * e.psi);
  }
  auto psi = [&](const Tuple& t) { return m.psi(t); };
  // ψ∘(C⊗μ) = (μ⊗C)∘(A⊗ψ)∘(ψ⊗A)
  TensorSpace caa = e.ca.then(e.a_over_r);
  compare_on_basis(
      rep, "multiplicativity", caa, e.ac,
      [&](const Tuple& t) { return raw_replace_legs(raw_multiply_legs(raw_unit(t), 1, e.a), 0, 2, psi); },
      [&](const Tuple& t) {
        Raw x = raw_replace_legs(raw_unit(t), 0, 2, psi);
        x = raw_replace_legs(x, 1, 2, psi);
        return raw_multiply_legs(x, 0, e.a);
      });
  // ψ(c⊗1) = 1⊗c
  const Vec one = e.a.unit();
  for (size_t c = 0; c < e.coring.dim(); ++c) {
    Vec cv = unit_vec(e.coring.dim(), c);
    if (e.psi.apply(e.ca.embed({cv, one})) != e.ac.embed({one, cv})) rep.add("unitality", "c=" + at(c));
  }
  // (A⊗Δ)∘ψ = (ψ⊗C)∘(C⊗ψ)∘(Δ⊗A)
  TensorSpace acc = e.ac.then(e.coring.carrier);
  auto delta = [&](uint32_t c) { return m.delta(c); };
  compare_on_basis(
      rep, "comultiplicativity", e.ca, acc, [&](const Tuple& t) { return raw_expand_leg(m.psi(t), 1, delta); },
      [&](const Tuple& t) {
        Raw x = raw_expand_leg(raw_unit(t), 0, delta);
        x = raw_replace_legs(x, 1, 2, psi);
        return raw_replace_legs(x, 0, 2, psi);
      });
  // (A⊗ε)∘ψ = ε⊗A
  TensorSpace single(regular_bimodule(e.a));
  compare_on_basis(
      rep, "counitality", e.ca, single,
      [&](const Tuple& t) {
        Raw out;
        for (const auto& term : m.psi(t)) raw_add(out, m.a_times(m.eps_in_a(term.t[1]), term.t[0], false), term.c);
        return out;
      },
      [&](const Tuple& t) { return m.a_times(m.eps_in_a(t[0]), t[1], true); });
  return rep;
}

Report validate_left_entwining(const Entwining& e) {
  Report rep;
  if (!e.psi_inv) {
    rep.add("left entwining map missing", "");
    return rep;
  }
  Maps m{e};
  auto phi = [&](const Tuple& t) { return m.psi_inv(t); };
  TensorSpace aac = TensorSpace(e.a_over_r).then(e.a_over_r).then(e.coring.carrier);
  // φ∘(μ⊗C) = (C⊗μ)∘(φ⊗A)∘(A⊗φ)
  compare_on_basis(
      rep, "left multiplicativity", aac, e.ca,
      [&](const Tuple& t) { return raw_replace_legs(raw_multiply_legs(raw_unit(t), 0, e.a), 0, 2, phi); },
      [&](const Tuple& t) {
        Raw x = raw_replace_legs(raw_unit(t), 1, 2, phi);
        x = raw_replace_legs(x, 0, 2, phi);
        return raw_multiply_legs(x, 1, e.a);
      });
  const Vec one = e.a.unit();
  for (size_t c = 0; c < e.coring.dim(); ++c) {
    Vec cv = unit_vec(e.coring.dim(), c);
    if (e.psi_inv->apply(e.ac.embed({one, cv})) != e.ca.embed({cv, one})) rep.add("left unitality", "c=" + at(c));
  }
  // (Δ⊗A)∘φ = (C⊗φ)∘(φ⊗C)∘(A⊗Δ)
  TensorSpace cca = e.coring.cc.then(e.a_over_r);
  auto delta = [&](uint32_t c) { return m.delta(c); };
  compare_on_basis(
      rep, "left comultiplicativity", e.ac, cca, [&](const Tuple& t) { return raw_expand_leg(m.psi_inv(t), 0, delta); },
      [&](const Tuple& t) {
        Raw x = raw_expand_leg(raw_unit(t), 1, delta);
        x = raw_replace_legs(x, 0, 2, phi);
        return raw_replace_legs(x, 1, 2, phi);
      });
  TensorSpace single(regular_bimodule(e.a));
  compare_on_basis(
      rep, "left counitality", e.ac, single,
      [&](const Tuple& t) {
        Raw out;
        for (const auto& term : m.psi_inv(t)) raw_add(out, m.a_times(m.eps_in_a(term.t[0]), term.t[1], true), term.c);
        return out;
      },
      [&](const Tuple& t) { return m.a_times(m.eps_in_a(t[1]), t[0], false); });
  return rep;
}

Entwining invert_entwining(const Entwining& e) {
  if (e.psi.rows() != e.psi.cols()) throw Error(ErrorKind::NotBijective, "entwining map is not square");
  auto inv = inverse(e.psi);
  if (!inv) throw Error(ErrorKind::NotBijective, "entwining map is singular");
  Entwining out = e;
  out.psi_inv = *inv;
  Report rep = validate_left_entwining(out);
  if (!rep.ok())
    throw Error(ErrorKind::CompatibilityFailure, "inverse fails " + rep.residuals()[0].check + " at " + rep.residuals()[0].location);
  return out;
}

// ---------------------------------------------------------------------------

Coring associated_coring(const Entwining& e) {
  Maps m{e};
  auto psi = [&](const Tuple& t) { return m.psi(t); };
  Bimodule d{"(A⊗C)ψ", e.a, e.a, e.ac.dim(), e.ac_left, {}};
  for (size_t j = 0; j < e.a.dim(); ++j)
    d.right_action.push_back(matrix_from_raw(e.ac, e.ac, [&](const Tuple& t) {
      Raw x = raw_replace_legs(raw_unit(Tuple{t[0], t[1], static_cast<uint32_t>(j)}), 1, 2, psi);
      return raw_multiply_legs(x, 0, e.a);
    }));
  TensorSpace cc = TensorSpace(d).then(d);
  const size_t dc = e.coring.dim();
  const Vec one = e.a.unit();
  Matrix delta(cc.dim(), d.dim), eps(e.a.dim(), d.dim);
  for (size_t q = 0; q < d.dim; ++q) {
    Tuple t = e.ac.representative(static_cast<uint32_t>(q));
    Accumulator acc;
    for (const auto& term : m.delta(t[1])) {
      Vec left = e.ac.embed({e.a.basis(t[0]), unit_vec(dc, term.t[0])}).to_dense(d.dim);
      Vec right = e.ac.embed({one, unit_vec(dc, term.t[1])}).to_dense(d.dim);
      acc.add(cc.embed({left, right}), term.c);
    }
    delta.set_col(q, acc.take());
    eps.set_col(q, sv(e.a.mul(e.a.basis(t[0]), m.eps_in_a(t[1]).to_dense(e.a.dim()))));
  }
  return make_coring(d.name, d, delta, eps);
}

Coring associated_left_coring(const Entwining& e) {
  if (!e.psi_inv) throw Error(ErrorKind::NotBijective, "left associated coring needs ψ⁻¹");
  Maps m{e};
  auto phi = [&](const Tuple& t) { return m.psi_inv(t); };
  Bimodule d{"(C⊗A)ψ⁻¹", e.a, e.a, e.ca.dim(), {}, e.ca_right};
  for (size_t j = 0; j < e.a.dim(); ++j)
    d.left_action.push_back(matrix_from_raw(e.ca, e.ca, [&](const Tuple& t) {
      Raw x = raw_replace_legs(raw_unit(Tuple{static_cast<uint32_t>(j), t[0], t[1]}), 0, 2, phi);
      return raw_multiply_legs(x, 1, e.a);
    }));
  TensorSpace cc = TensorSpace(d).then(d);
  const size_t dc = e.coring.dim();
  const Vec one = e.a.unit();
  Matrix delta(cc.dim(), d.dim), eps(e.a.dim(), d.dim);
  for (size_t q = 0; q < d.dim; ++q) {
    Tuple t = e.ca.representative(static_cast<uint32_t>(q));
    Accumulator acc;
    for (const auto& term : m.delta(t[0])) {
      Vec left = e.ca.embed({unit_vec(dc, term.t[0]), one}).to_dense(d.dim);
      Vec right = e.ca.embed({unit_vec(dc, term.t[1]), e.a.basis(t[1])}).to_dense(d.dim);
      acc.add(cc.embed({left, right}), term.c);
    }
    delta.set_col(q, acc.take());
    eps.set_col(q, sv(e.a.mul(m.eps_in_a(t[0]).to_dense(e.a.dim()), e.a.basis(t[1]))));
  }
  return make_coring(d.name, d, delta, eps);
}

Entwining entwining_from_coring(const Algebra& a, const Matrix& eta, const Coring& c, const Coring& d) {
  Entwining out = skeleton(a, eta, c);
  if (d.dim() != out.ac.dim() || !d.base.same_structure(a))
    throw Error(ErrorKind::DimensionMismatch, "coring carrier is not A ⊗_R C");
  // ϱ_{A⊗C}∘(A⊗C⊗η) = A⊗ϱ_C
  for (size_t s = 0; s < c.base.dim(); ++s)
    if (d.carrier.right_by(eta.col(s).to_dense(a.dim())) != out.ac.right_action(s))
      throw Error(ErrorKind::CompatibilityFailure, "right R-actions differ at s=" + at(s));
  const Vec one = a.unit();
  out.psi = matrix_from_raw(out.ca, out.ac, [&](const Tuple& t) {
    SparseVec x = out.ac.embed({one, unit_vec(c.dim(), t[0])});
    return out.ac.lift(d.carrier.right_action[t[1]].apply(x));
  });
  return out;
}

Report verify_coring_isomorphism(const Entwining& e) {
  Report rep;
  Coring right = associated_coring(e), left = associated_left_coring(e);
  for (size_t j = 0; j < e.a.dim(); ++j) {
    compare_columns(rep, "ψ left A-linearity a=" + at(j), e.psi * left.carrier.left_action[j],
                    right.carrier.left_action[j] * e.psi);
    compare_columns(rep, "ψ right A-linearity a=" + at(j), e.psi * left.carrier.right_action[j],
                    right.carrier.right_action[j] * e.psi);
  }
  Matrix psi2 = matrix_from_raw(left.cc, right.cc, [&](const Tuple& t) {
    return raw_apply_leg(raw_apply_leg(raw_unit(t), 0, e.psi), 1, e.psi);
  });
  compare_columns(rep, "ψ comultiplicativity", psi2 * left.delta, right.delta * e.psi);
  compare_columns(rep, "ψ counitality", right.eps * e.psi, left.eps);
  return rep;
}

// ---------------------------------------------------------------------------

EntwinedModule make_entwined_module(std::string name, const Bimodule& carrier, const Entwining& e, Matrix coaction) {
  if (!carrier.right.same_structure(e.a)) throw Error(ErrorKind::ActionMismatch, "entwined module must be a right A-module");
  Bimodule over_r = restrict_right(carrier, e.base(), e.eta);
  RightComodule comod = make_right_comodule(name, over_r, e.coring, std::move(coaction));
  return EntwinedModule{std::move(name), carrier, std::move(comod)};
}

EntwinedModule cofree_module(const Entwining& e) {
  Coring d = associated_coring(e);
  Bimodule carrier = restrict_left(d.carrier, Algebra::ground(e.a.modulus()), unit_map(e.a));
  carrier.name = "A⊗C";
  Bimodule over_r = restrict_right(carrier, e.base(), e.eta);
  TensorSpace mc = TensorSpace(over_r).then(e.coring.carrier);
  Maps m{e};
  Matrix rho = matrix_from_raw(e.ac, mc, [&](const Tuple& t) {
    Raw out;
    for (const auto& term : m.delta(t[1])) {
      SparseVec left = e.ac.embed({e.a.basis(t[0]), unit_vec(e.coring.dim(), term.t[0])});
      for (const auto& [q, x] : left.entries()) out.push_back({Tuple{q, term.t[1]}, x * term.c});
    }
    return out;
  });
  return EntwinedModule{carrier.name, carrier, RightComodule{carrier.name, over_r, std::move(mc), std::move(rho)}};
}

Report validate_entwined_module(const EntwinedModule& mod, const Entwining& e) {
  Report rep;
  rep.merge(validate_comodule(mod.comodule, e.coring), "comodule ");
  Maps m{e};
  auto psi = [&](const Tuple& t) { return m.psi(t); };
  const RightComodule& cm = mod.comodule;
  auto act = [&](const Tuple& t) { return raw_from_vec(mod.carrier.right_action[t[1]].col(t[0])); };
  TensorSpace ma = TensorSpace(cm.carrier).then(e.a_over_r);
  compare_on_basis(
      rep, "entwined compatibility", ma, cm.mc,
      [&](const Tuple& t) { return cm.mc.lift(cm.coaction.apply(mod.carrier.right_action[t[1]].col(t[0]))); },
      [&](const Tuple& t) {
        Raw x = raw_concat(cm.mc.lift(cm.coaction.col(t[0])), raw_unit(Tuple{t[1]}));
        x = raw_replace_legs(x, 1, 2, psi);
        return raw_replace_legs(x, 0, 2, act);
      });
  if (!rep.ok()) return rep;
  // Same data as a comodule over (A⊗C)ψ.
  Coring d = associated_coring(e);
  TensorSpace md = TensorSpace(mod.carrier).then(d.carrier);
  const Vec one = e.a.unit();
  Matrix iso = matrix_from_raw(cm.mc, md, [&](const Tuple& t) {
    Raw out;
    const SparseVec c = e.ac.embed({one, unit_vec(e.coring.dim(), t[1])});
    for (const auto& [q, x] : c.entries()) out.push_back({Tuple{t[0], q}, x});
    return out;
  });
  RightComodule over_d{mod.name, mod.carrier, md, iso * cm.coaction};
  rep.merge(validate_comodule(over_d, d), "associated coring comodule ");
  return rep;
}

// ---------------------------------------------------------------------------

EntwinedModule EntwinedExtension::as_module() const {
  Bimodule carrier = restrict_left(regular_bimodule(e.a), Algebra::ground(e.a.modulus()), unit_map(e.a));
  return make_entwined_module(e.a.name(), carrier, e, rho);
}

RightComodule EntwinedExtension::right_comodule() const {
  Bimodule carrier = restrict_right(regular_bimodule(e.a), e.base(), e.eta);
  return make_right_comodule(e.a.name(), carrier, e.coring, rho);
}

LeftComodule EntwinedExtension::left_comodule() const {
  Bimodule carrier = restrict_left(regular_bimodule(e.a), e.base(), e.eta);
  return make_left_comodule(e.a.name(), carrier, e.coring, lrho);
}

namespace {

struct Coinvariants {
  Subspace right_fixed, right_all, left_fixed, left_all;
};

Coinvariants all_coinvariants(const Entwining& e, const Matrix& rho, const Matrix& lrho) {
  const size_t da = e.a.dim();
  const SparseVec one = sv(e.a.unit());
  const SparseVec g = rho.apply(one), lg = lrho.apply(one);
  Coinvariants out;
  // ρ(b) = b ρ(1)
  out.right_fixed = kernel(rho - columns(e.ac.dim(), da, [&](size_t b) { return e.ac_left[b].apply(g); }));
  // ∀a: ρ(ba) = b ρ(a)
  std::vector<Matrix> blocks;
  for (size_t a = 0; a < da; ++a)
    blocks.push_back(rho * e.a.right_mult_basis(a) -
                     columns(e.ac.dim(), da, [&](size_t b) { return e.ac_left[b].apply(rho.col(a)); }));
  out.right_all = stacked_kernel(blocks, da);
  out.left_fixed = kernel(lrho - columns(e.ca.dim(), da, [&](size_t b) { return e.ca_right[b].apply(lg); }));
  blocks.clear();
  for (size_t a = 0; a < da; ++a)
    blocks.push_back(lrho * e.a.left_mult_basis(a) -
                     columns(e.ca.dim(), da, [&](size_t b) { return e.ca_right[b].apply(lrho.col(a)); }));
  out.left_all = stacked_kernel(blocks, da);
  return out;
}

// Left entwined module compatibility for ^Aϱ and ψ⁻¹ with the left regular action.
Report left_entwined_check(const Entwining& e, const Matrix& lrho) {
  Report rep;
  Maps m{e};
  auto phi = [&](const Tuple& t) { return m.psi_inv(t); };
  TensorSpace aa = TensorSpace(e.a_over_r).then(e.a_over_r);
  compare_on_basis(
      rep, "left entwined compatibility", aa, e.ca,
      [&](const Tuple& t) { return e.ca.lift(lrho.apply(e.a.product(t[0], t[1]))); },
      [&](const Tuple& t) {
        Raw x = raw_concat(raw_unit(Tuple{t[0]}), e.ca.lift(lrho.col(t[1])));
        x = raw_replace_legs(x, 0, 2, phi);
        return raw_multiply_legs(x, 1, e.a);
      });
  return rep;
}

EntwinedExtension build_extension(const Entwining& input, const Matrix& rho, bool strict) {
  Entwining e = input.psi_inv ? input : invert_entwining(input);
  const size_t da = e.a.dim();
  if (rho.rows() != e.ac.dim() || rho.cols() != da) throw Error(ErrorKind::DimensionMismatch, "coaction shape");
  EntwinedExtension x;
  x.e = e;
  x.rho = rho;
  const SparseVec one = sv(e.a.unit());
  x.grouplike = rho.apply(one).to_dense(e.ac.dim());
  x.lrho = columns(e.ca.dim(), da, [&](size_t a) { return e.psi_inv->apply(e.ac_left[a].apply(sv(x.grouplike))); });

  // (a) A is an entwined module.
  Report a_check = validate_entwined_module(x.as_module(), e);
  x.checks.merge(a_check, "(a) ");
  x.entwined = a_check.ok();
  if (strict && !x.entwined)
    throw Error(ErrorKind::NotEntwinedModule, a_check.residuals()[0].check + " at " + a_check.residuals()[0].location);

  Coinvariants co = all_coinvariants(e, rho, x.lrho);
  Subspace b = co.right_fixed;
  if (x.entwined) {
    if (!(co.right_all == b) || !(co.left_fixed == b) || !(co.left_all == b))
      throw Error(ErrorKind::CoinvariantMismatch, "the four descriptions of the coinvariants differ");
    // (c) and (e): the grouplike conditions on both associated corings.
    x.checks.merge(verify_grouplike(associated_coring(e), x.grouplike), "(c) ");
    x.checks.merge(verify_grouplike(associated_left_coring(e), x.lrho.apply(one).to_dense(e.ca.dim())), "(e) ");
    // (h): A is a left entwined module for ψ⁻¹.
    x.checks.merge(validate_comodule(x.left_comodule(), e.coring), "(h) comodule ");
    x.checks.merge(left_entwined_check(e, x.lrho), "(h) ");
    if (strict && !x.checks.ok())
      throw Error(ErrorKind::CoinvariantMismatch, "equivalent conditions disagree: " + x.checks.residuals()[0].check);
  }
  x.b = subalgebra_from_span(e.a, b, "B");
  x.t = scalars_in(e.a);
  return x;
}

}  // namespace

EntwinedExtension make_extension(const Entwining& e, const Matrix& rho) { return build_extension(e, rho, true); }

EntwinedExtension pre_extension(const Entwining& e, const Matrix& rho) { return build_extension(e, rho, false); }

EntwinedExtension extension_from_grouplike(const Entwining& e, const Vec& g) {
  Report r = verify_grouplike(e.coring, g);
  if (!r.ok()) throw Error(ErrorKind::ValidationError, "not a grouplike: " + r.residuals()[0].check);
  Matrix rho = columns(e.ac.dim(), e.a.dim(), [&](size_t a) { return e.psi.apply(e.ca.embed({g, e.a.basis(a)})); });
  EntwinedExtension x = make_extension(e, rho);
  // B = {b : ρ(b) = b⊗e} = {b : ^Aϱ(b) = e⊗b}
  Subspace right = kernel(rho - columns(e.ac.dim(), e.a.dim(), [&](size_t b) { return e.ac.embed({e.a.basis(b), g}); }));
  Subspace left = kernel(x.lrho - columns(e.ca.dim(), e.a.dim(), [&](size_t b) { return e.ca.embed({g, e.a.basis(b)}); }));
  if (!(right == x.b.span) || !(left == x.b.span))
    throw Error(ErrorKind::CoinvariantMismatch, "grouplike coinvariants differ from the general ones");
  x.coring_grouplike = g;
  return x;
}

EntwinedExtension with_t(EntwinedExtension x, const Subalgebra& t) {
  if (!x.b.span.contains(t.span)) throw Error(ErrorKind::ValidationError, t.alg.name() + " is not contained in B");
  x.t = t;
  return x;
}

// ---------------------------------------------------------------------------

Matrix canonical_map(const EntwinedExtension& x, const TensorSpace& axa) {
  const Entwining& e = x.e;
  return matrix_from_raw(axa, e.ac, [&](const Tuple& t) { return e.ac.lift(e.ac_left[t[0]].apply(x.rho.col(t[1]))); });
}

CanonicalMaps canonical_maps(const EntwinedExtension& x) {
  const Entwining& e = x.e;
  CanonicalMaps out;
  out.att = tensor_power(e.a, x.t.alg, x.t.incl, 2);
  out.abb = tensor_power(e.a, x.b.alg, x.b.incl, 2);
  out.can_t = canonical_map(x, out.att);
  out.can_b = canonical_map(x, out.abb);
  if (out.can_b.rows() == out.can_b.cols()) out.can_inv = inverse(out.can_b);
  out.galois = out.can_inv.has_value();
  if (!out.can_inv) return out;
  Report& rep = out.inverse_checks;
  const Matrix& inv = *out.can_inv;
  compare_columns(rep, "can⁻¹ left inverse", inv * out.can_b, Matrix::identity(out.abb.dim()));
  compare_columns(rep, "can⁻¹ right inverse", out.can_b * inv, Matrix::identity(e.ac.dim()));
  Coring sw = sweedler_coring(e.a, x.b);
  Coring d = associated_coring(e);
  for (size_t j = 0; j < e.a.dim(); ++j) {
    compare_columns(rep, "can⁻¹ left A-linearity a=" + at(j), inv * d.carrier.left_action[j],
                    sw.carrier.left_action[j] * inv);
    compare_columns(rep, "can⁻¹ right A-linearity a=" + at(j), inv * d.carrier.right_action[j],
                    sw.carrier.right_action[j] * inv);
  }
  Matrix inv2 = matrix_from_raw(d.cc, sw.cc, [&](const Tuple& t) {
    return raw_apply_leg(raw_apply_leg(raw_unit(t), 0, inv), 1, inv);
  });
  compare_columns(rep, "can⁻¹ comultiplicativity", inv2 * d.delta, sw.delta * inv);
  compare_columns(rep, "can⁻¹ counitality", sw.eps * inv, d.eps);
  return out;
}

}  // namespace ncg
