#include "ncg/connect.hpp"

#include <unordered_map>

namespace ncg {

namespace {

std::string at(size_t i) { return std::to_string(i); }

SparseVec sv(const Vec& v) { return SparseVec::from_dense(v); }

Matrix columns(size_t rows, size_t cols, const std::function<SparseVec(size_t)>& f) {
  Matrix m(rows, cols);
  for (size_t j = 0; j < cols; ++j) m.set_col(j, f(j));
  return m;
}

void compare_columns(Report& rep, const std::string& check, const Matrix& a, const Matrix& b,
                     const std::string& label = "basis ") {
  size_t shown = 0;
  for (size_t j = 0; j < a.cols(); ++j)
    if (a.col(j) != b.col(j) && shown++ < 8) rep.add(check, label + at(j));
}

Vec column(const Matrix& m, size_t j) { return m.col(j).to_dense(m.rows()); }

// Comodule-map identities for maps f: C → X, where X carries a right
// coaction X → X⊗_R C and a left coaction X → C⊗_R X.
class Colinearity {
 public:
  Colinearity(const Coring& c, size_t dx, const std::function<Tuple(uint32_t)>& rep, const TensorSpace& xc,
              const TensorSpace& cx, Matrix right_coaction, Matrix left_coaction)
      : dx_(dx), dc_(c.dim()), right_(std::move(right_coaction)), left_(std::move(left_coaction)) {
    for (size_t k = 0; k < dc_; ++k) delta_.push_back(c.cc.lift(c.delta.col(k)));
    for (uint32_t q = 0; q < dx_; ++q) {
      const Tuple t = rep(q);
      for (uint32_t k = 0; k < dc_; ++k) {
        Tuple r = t, l{k};
        r.push_back(k);
        l.insert(l.end(), t.begin(), t.end());
        right_table_.push_back(xc.project(r));
        left_table_.push_back(cx.project(l));
      }
    }
    xc_dim_ = xc.dim();
    cx_dim_ = cx.dim();
  }

  // (f⊗C)∘Δ and ρ∘f.
  Matrix right_lhs(const Matrix& f) const {
    return columns(xc_dim_, dc_, [&](size_t k) {
      Accumulator acc;
      for (const auto& term : delta_[k])
        for (const auto& [q, v] : f.col(term.t[0]).entries()) acc.add(right_table_[q * dc_ + term.t[1]], term.c * v);
      return acc.take();
    });
  }
  Matrix right_rhs(const Matrix& f) const { return right_ * f; }
  // (C⊗f)∘Δ and ^Xρ∘f.
  Matrix left_lhs(const Matrix& f) const {
    return columns(cx_dim_, dc_, [&](size_t k) {
      Accumulator acc;
      for (const auto& term : delta_[k])
        for (const auto& [q, v] : f.col(term.t[1]).entries()) acc.add(left_table_[q * dc_ + term.t[0]], term.c * v);
      return acc.take();
    });
  }
  Matrix left_rhs(const Matrix& f) const { return left_ * f; }

  Constraint right_constraint() const {
    return [this](const Matrix& f) { return flatten({right_lhs(f) - right_rhs(f)}); };
  }
  Constraint left_constraint() const {
    return [this](const Matrix& f) { return flatten({left_lhs(f) - left_rhs(f)}); };
  }

 private:
  size_t dx_, dc_, xc_dim_ = 0, cx_dim_ = 0;
  Matrix right_, left_;
  std::vector<Raw> delta_;
  std::vector<SparseVec> right_table_, left_table_;
};

// A ⊗_T A with everything needed to test a candidate ℓ.
struct ConnectionFrame {
  const EntwinedExtension& x;
  TensorSpace att, att_c, c_att;
  Matrix can_t, target;
  std::vector<Matrix> c_left, c_right, att_left, att_right;
  std::unique_ptr<Colinearity> colin;

  ConnectionFrame(const EntwinedExtension& ext, const Subalgebra& t, const TensorSpace& space) : x(ext), att(space) {
    const Entwining& e = x.e;
    const Algebra& r = e.base();
    const Matrix id_r = Matrix::identity(r.dim());
    att_c = att.then(e.coring.carrier, r, e.eta, id_r);
    c_att = TensorSpace(e.coring.carrier)
                .then(regular_bimodule(e.a), r, id_r, e.eta)
                .then(regular_bimodule(e.a), t.alg, t.incl, t.incl);
    Matrix a_rho = matrix_from_raw(att, att_c, [&](const Tuple& tp) {
      return raw_replace_legs(raw_unit(tp), 1, 1, [&](const Tuple& a) { return e.ac.lift(x.rho.col(a[0])); });
    });
    Matrix lrho_a = matrix_from_raw(att, c_att, [&](const Tuple& tp) {
      return raw_replace_legs(raw_unit(tp), 0, 1, [&](const Tuple& a) { return e.ca.lift(x.lrho.col(a[0])); });
    });
    colin = std::make_unique<Colinearity>(
        e.coring, att.dim(), [&](uint32_t q) { return att.representative(q); }, att_c, c_att, a_rho, lrho_a);
    can_t = canonical_map(x, att);
    const Vec one = e.a.unit();
    target = columns(e.ac.dim(), e.coring.dim(), [&](size_t c) { return e.ac_pure(one, unit_vec(e.coring.dim(), c)); });
    for (size_t s = 0; s < r.dim(); ++s) {
      const Vec es = column(e.eta, s);
      c_left.push_back(e.coring.carrier.left_action[s]);
      c_right.push_back(e.coring.carrier.right_action[s]);
      att_left.push_back(att.left_by(es));
      att_right.push_back(att.right_by(es));
    }
  }
};

}  // namespace

Report verify_strong_connection(const EntwinedExtension& x, const StrongConnection& sc) {
  Report rep;
  const size_t dc = x.e.coring.dim();
  if (sc.ell.rows() != sc.att.dim() || sc.ell.cols() != dc) {
    rep.add("connection shape", "");
    return rep;
  }
  if (!x.b.span.contains(sc.t.span)) {
    rep.add("T not contained in B", "");
    return rep;
  }
  ConnectionFrame f(x, sc.t, sc.att);
  const Matrix& l = sc.ell;
  for (size_t s = 0; s < f.c_left.size(); ++s) {
    compare_columns(rep, "right colinearity: right R-linearity s=" + at(s), l * f.c_right[s], f.att_right[s] * l, "c=");
    compare_columns(rep, "left colinearity: left R-linearity s=" + at(s), l * f.c_left[s], f.att_left[s] * l, "c=");
  }
  compare_columns(rep, "right colinearity", f.colin->right_lhs(l), f.colin->right_rhs(l), "c=");
  compare_columns(rep, "left colinearity", f.colin->left_lhs(l), f.colin->left_rhs(l), "c=");
  compare_columns(rep, "splitting", f.can_t * l, f.target, "c=");
  return rep;
}

std::optional<ConnectionSpace> solve_strong_connection(const EntwinedExtension& x, const Subalgebra& t) {
  if (!x.b.span.contains(t.span)) throw Error(ErrorKind::ValidationError, t.alg.name() + " is not contained in B");
  TensorSpace att = tensor_power(x.e.a, t.alg, t.incl, 2);
  ConnectionFrame f(x, t, att);
  std::vector<Constraint> cs{
      intertwines(f.c_left, f.att_left),
      intertwines(f.c_right, f.att_right),
      f.colin->right_constraint(),
      f.colin->left_constraint(),
      sandwiched(f.can_t, Matrix::identity(x.e.coring.dim()), f.target),
  };
  auto space = equivariant_hom_space(att.dim(), x.e.coring.dim(), cs);
  if (!space) return std::nullopt;
  return ConnectionSpace{StrongConnection{t, att, space->particular}, std::move(*space)};
}

StrongConnection connection_from_galois(const EntwinedExtension& x) {
  CanonicalMaps m = canonical_maps(x);
  if (!m.galois) throw Error(ErrorKind::NotGalois, "can_A is not bijective");
  const Entwining& e = x.e;
  const Vec one = e.a.unit();
  Matrix target =
      columns(e.ac.dim(), e.coring.dim(), [&](size_t c) { return e.ac_pure(one, unit_vec(e.coring.dim(), c)); });
  return StrongConnection{x.b, m.abb, *m.can_inv * target};
}

// ---------------------------------------------------------------------------

namespace {

TensorSpace t_tensor_a(const Algebra& a, const Subalgebra& t, const Subalgebra& t_prime) {
  return TensorSpace(regular_bimodule(t.alg)).then(regular_bimodule(a), t_prime.alg, relative_inclusion(t_prime, t),
                                                   t_prime.incl);
}

}  // namespace

Report verify_section(const EntwinedExtension& x, const Section& s) {
  Report rep;
  const Entwining& e = x.e;
  const Algebra& a = e.a;
  if (s.xi.rows() != s.tta.dim() || s.xi.cols() != a.dim()) {
    rep.add("section shape", "");
    return rep;
  }
  TensorSpace single(regular_bimodule(a));
  Matrix mu = matrix_from_raw(s.tta, single, [&](const Tuple& t) {
    return raw_multiply_legs(raw_apply_leg(raw_unit(t), 0, s.t.incl), 0, a);
  });
  compare_columns(rep, "section of the product", mu * s.xi, Matrix::identity(a.dim()));
  for (size_t i = 0; i < s.t.alg.dim(); ++i)
    compare_columns(rep, "left T-linearity t=" + at(i), s.xi * a.left_mult(column(s.t.incl, i)),
                    s.tta.left_action(i) * s.xi);
  const Algebra& r = e.base();
  TensorSpace tta_c = s.tta.then(e.coring.carrier, r, e.eta, Matrix::identity(r.dim()));
  for (size_t j = 0; j < r.dim(); ++j)
    compare_columns(rep, "right R-linearity s=" + at(j), s.xi * a.right_mult(column(e.eta, j)),
                    s.tta.right_by(column(e.eta, j)) * s.xi);
  Matrix xi_c = matrix_from_raw(e.ac, tta_c, [&](const Tuple& t) {
    return raw_replace_legs(raw_unit(t), 0, 1, [&](const Tuple& u) { return s.tta.lift(s.xi.col(u[0])); });
  });
  Matrix t_rho = matrix_from_raw(s.tta, tta_c, [&](const Tuple& t) {
    return raw_replace_legs(raw_unit(t), 1, 1, [&](const Tuple& u) { return e.ac.lift(x.rho.col(u[0])); });
  });
  compare_columns(rep, "right colinearity", xi_c * x.rho, t_rho * s.xi);
  return rep;
}

Section section_from_idempotent(const EntwinedExtension& x, const Subalgebra& t, const Subalgebra& t_prime,
                                const Vec& zeta) {
  const Algebra& a = x.e.a;
  Section s{t, t_prime, t_tensor_a(a, t, t_prime), {}};
  TensorSpace tt = tensor_power(t.alg, t_prime.alg, relative_inclusion(t_prime, t), 2);
  const Raw z = tt.lift(sv(zeta));
  s.xi = columns(s.tta.dim(), a.dim(), [&](size_t j) {
    Accumulator acc;
    for (const auto& term : z) {
      Vec fa = a.mul(column(t.incl, term.t[1]), a.basis(j));
      acc.add(s.tta.embed({t.alg.basis(term.t[0]), fa}), term.c);
    }
    return acc.take();
  });
  return s;
}

StrongConnection restrict_connection(const EntwinedExtension& x, const StrongConnection& sc, const Section& s) {
  Report rep = verify_section(x, s);
  if (!rep.ok()) throw Error(ErrorKind::NotASection, rep.residuals()[0].check + " at " + rep.residuals()[0].location);
  if (!(s.t.span == sc.t.span)) throw Error(ErrorKind::NotASection, "section is over a different T");
  const Algebra& a = x.e.a;
  TensorSpace att2 = tensor_power(a, s.t_prime.alg, s.t_prime.incl, 2);
  Matrix map = matrix_from_raw(sc.att, att2, [&](const Tuple& t) {
    Raw r = raw_replace_legs(raw_unit(t), 1, 1, [&](const Tuple& u) { return s.tta.lift(s.xi.col(u[0])); });
    return raw_multiply_legs(raw_apply_leg(r, 1, s.t.incl), 0, a);
  });
  return StrongConnection{s.t_prime, att2, map * sc.ell};
}

// ---------------------------------------------------------------------------

DifferentialForms differential_forms(const Subalgebra& b, const Subalgebra& t) {
  Matrix rel = relative_inclusion(t, b);
  DifferentialForms out;
  out.btb = tensor_power(b.alg, t.alg, rel, 2);
  TensorSpace single(regular_bimodule(b.alg));
  Matrix mu = matrix_from_raw(out.btb, single, [&](const Tuple& u) { return raw_multiply_legs(raw_unit(u), 0, b.alg); });
  out.omega1 = kernel(mu);
  const Vec one = b.alg.unit();
  out.d = columns(out.btb.dim(), b.alg.dim(), [&](size_t j) {
    return out.btb.embed({one, b.alg.basis(j)}) - out.btb.embed({b.alg.basis(j), one});
  });
  return out;
}

SectionData section_from_connection(const EntwinedExtension& x, const StrongConnection& sc) {
  const Entwining& e = x.e;
  const Algebra& a = e.a;
  const Subalgebra& b = x.b;
  const Subalgebra& t = sc.t;
  const TensorSpace& att = sc.att;
  SectionData out;
  Matrix ell_of = matrix_from_raw(e.ac, att, [&](const Tuple& u) {
    Raw r = raw_replace_legs(raw_unit(u), 1, 1, [&](const Tuple& c) { return att.lift(sc.ell.col(c[0])); });
    return raw_multiply_legs(r, 0, a);
  });
  out.sigma_in_att = ell_of * x.rho;

  // Coinvariance of σ(a) for the left coaction on A ⊗_T A.
  ConnectionFrame f(x, t, att);
  const Raw lone = e.ca.lift(x.lrho.apply(sv(a.unit())));
  Matrix times_lone = matrix_from_raw(att, f.c_att, [&](const Tuple& u) {
    Raw out_raw;
    for (const auto& term : lone) {
      const SparseVec prod = a.product(term.t[1], u[0]);
      for (const auto& [k, v] : prod.entries()) out_raw.push_back({Tuple{term.t[0], k, u[1]}, term.c * v});
    }
    return out_raw;
  });
  Matrix lhs = f.colin->left_rhs(out.sigma_in_att), rhs = times_lone * out.sigma_in_att;
  for (size_t j = 0; j < a.dim(); ++j)
    if (lhs.col(j) != rhs.col(j)) throw Error(ErrorKind::ImageNotCoinvariant, "σ(a) is not coinvariant at basis " + at(j));

  out.bta = TensorSpace(regular_bimodule(b.alg)).then(regular_bimodule(a), t.alg, relative_inclusion(t, b), t.incl);
  out.into_att = matrix_from_raw(out.bta, att, [&](const Tuple& u) { return raw_apply_leg(raw_unit(u), 0, b.incl); });
  std::vector<SparseVec> cols;
  for (size_t j = 0; j < a.dim(); ++j) {
    auto y = solve(out.into_att, out.sigma_in_att.col(j));
    if (!y) throw Error(ErrorKind::ImageNotCoinvariant, "σ(a) is outside B ⊗_T A at basis " + at(j));
    cols.push_back(*y);
  }
  out.sigma = Matrix::from_columns(out.bta.dim(), std::move(cols));
  const Vec one_b = b.alg.unit();
  out.nabla = columns(out.bta.dim(), a.dim(), [&](size_t j) { return out.bta.embed({one_b, a.basis(j)}); }) - out.sigma;

  Report& rep = out.checks;
  const Matrix& s_att = out.sigma_in_att;
  for (size_t i = 0; i < b.alg.dim(); ++i) {
    const Vec bi = column(b.incl, i);
    compare_columns(rep, "left B-linearity b=" + at(i), s_att * a.left_mult(bi), att.left_by(bi) * s_att);
  }
  Matrix sigma_c = matrix_from_raw(e.ac, f.att_c, [&](const Tuple& u) {
    return raw_replace_legs(raw_unit(u), 0, 1, [&](const Tuple& v) { return att.lift(s_att.col(v[0])); });
  });
  compare_columns(rep, "right colinearity", sigma_c * x.rho, f.colin->right_rhs(s_att));
  TensorSpace single(regular_bimodule(a));
  Matrix mu = matrix_from_raw(att, single, [&](const Tuple& u) { return raw_multiply_legs(raw_unit(u), 0, a); });
  compare_columns(rep, "section of the product", mu * s_att, Matrix::identity(a.dim()));
  // ∇(ba) = b∇(a) + d(b)a with d(b)a = 1⊗ba − b⊗a, all inside A ⊗_T A.
  const Vec one = a.unit();
  Matrix nabla_att = out.into_att * out.nabla;
  size_t shown = 0;
  for (size_t i = 0; i < b.alg.dim(); ++i) {
    const Vec bi = column(b.incl, i);
    Matrix lb = att.left_by(bi);
    for (size_t j = 0; j < a.dim(); ++j) {
      const Vec ba = a.mul(bi, a.basis(j));
      SparseVec lhs_v = nabla_att.apply(sv(ba));
      SparseVec rhs_v = lb.apply(nabla_att.col(j)) + att.embed({one, ba}) - att.embed({bi, a.basis(j)});
      if (lhs_v != rhs_v && shown++ < 8) rep.add("Leibniz rule", "(" + at(i) + "," + at(j) + ")");
    }
  }
  return out;
}

Section section_of(const EntwinedExtension& x, const StrongConnection& sc, const SectionData& s) {
  return Section{x.b, sc.t, s.bta, s.sigma};
}

// ---------------------------------------------------------------------------

namespace {

Vec require_grouplike(const EntwinedExtension& x) {
  if (!x.coring_grouplike) throw Error(ErrorKind::ValidationError, "extension is not induced by a grouplike");
  return *x.coring_grouplike;
}

}  // namespace

TotalIntegralResult total_integral(const EntwinedExtension& x, Side side) {
  const Vec g = require_grouplike(x);
  const Entwining& e = x.e;
  const Algebra& a = e.a;
  const Algebra& r = e.base();
  const size_t dc = e.coring.dim();
  TotalIntegralResult out;
  if (!e.psi_inv) throw Error(ErrorKind::NotBijective, "total integral needs ψ⁻¹");

  Colinearity colin(
      e.coring, a.dim(), [](uint32_t q) { return Tuple{q}; }, e.ac, e.ca, x.rho, x.lrho);
  std::vector<Matrix> src, dst;
  for (size_t s = 0; s < r.dim(); ++s) {
    const Vec es = column(e.eta, s);
    src.push_back(side == Side::Right ? e.coring.carrier.right_action[s] : e.coring.carrier.left_action[s]);
    dst.push_back(side == Side::Right ? a.right_mult(es) : a.left_mult(es));
  }
  Matrix gm(dc, 1), one(a.dim(), 1);
  gm.set_col(0, sv(g));
  one.set_col(0, sv(a.unit()));
  std::vector<Constraint> cs{intertwines(src, dst),
                             side == Side::Right ? colin.right_constraint() : colin.left_constraint(),
                             prescribed(gm, one)};
  auto space = equivariant_hom_space(a.dim(), dc, cs);
  if (space) {
    TotalIntegral ti;
    ti.j = space->particular;
    TensorSpace single(regular_bimodule(a));
    const Vec unit = a.unit();
    if (side == Side::Right) {
      // h = μ∘(j⊗A)∘ψ⁻¹ on A ⊗_R C
      Matrix ja = matrix_from_raw(e.ca, single, [&](const Tuple& u) {
        return raw_multiply_legs(raw_apply_leg(raw_unit(u), 0, ti.j), 0, a);
      });
      ti.h = ja * *e.psi_inv;
      compare_columns(ti.checks, "retraction h∘ρ = id", ti.h * x.rho, Matrix::identity(a.dim()));
      Matrix one_c = columns(e.ac.dim(), dc, [&](size_t c) { return e.ac_pure(unit, unit_vec(dc, c)); });
      compare_columns(ti.checks, "j(c) = h(1⊗c)", ti.h * one_c, ti.j);
    } else {
      // h' = μ∘(A⊗j)∘ψ on C ⊗_R A
      Matrix aj = matrix_from_raw(e.ac, single, [&](const Tuple& u) {
        return raw_multiply_legs(raw_apply_leg(raw_unit(u), 1, ti.j), 0, a);
      });
      ti.h = aj * e.psi;
      compare_columns(ti.checks, "retraction h∘ρ = id", ti.h * x.lrho, Matrix::identity(a.dim()));
      Matrix c_one = columns(e.ca.dim(), dc, [&](size_t c) { return e.ca_pure(unit_vec(dc, c), unit); });
      compare_columns(ti.checks, "j(c) = h(c⊗1)", ti.h * c_one, ti.j);
    }
    out.relative_injective = ti.checks.ok();
    out.integral = std::move(ti);
  }

  // Galois plus a left B-linear retraction A → B.
  const Subalgebra& b = x.b;
  std::vector<Matrix> on_a, on_b;
  for (size_t i = 0; i < b.alg.dim(); ++i) {
    on_a.push_back(a.left_mult(column(b.incl, i)));
    on_b.push_back(b.alg.left_mult_basis(i));
  }
  auto retraction = equivariant_hom_space(b.alg.dim(), a.dim(),
                                          {intertwines(on_a, on_b), prescribed(b.incl, Matrix::identity(b.alg.dim()))});
  out.split_sufficient = retraction.has_value() && canonical_maps(x).galois;
  return out;
}

std::optional<Matrix> retraction_onto_b(const EntwinedExtension& x, const Subalgebra& t) {
  const Algebra& a = x.e.a;
  const Subalgebra& b = x.b;
  Matrix rel = relative_inclusion(t, b);
  std::vector<Matrix> on_a, on_b;
  for (size_t i = 0; i < t.alg.dim(); ++i) {
    on_a.push_back(a.right_mult(column(t.incl, i)));
    on_b.push_back(b.alg.right_mult(column(rel, i)));
  }
  auto space = equivariant_hom_space(b.alg.dim(), a.dim(),
                                     {intertwines(on_a, on_b), prescribed(b.incl, Matrix::identity(b.alg.dim()))});
  if (!space) return std::nullopt;
  return space->particular;
}

Splitting normalization_and_splitting(const EntwinedExtension& x, const StrongConnection& sc, const Matrix& f) {
  const Algebra& a = x.e.a;
  const Subalgebra& b = x.b;
  const Subalgebra& t = sc.t;
  Splitting out;
  Report& rep = out.checks;
  if (f.rows() != b.alg.dim() || f.cols() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "retraction shape");
  compare_columns(rep, "retraction f|B = id", f * b.incl, Matrix::identity(b.alg.dim()));
  Matrix rel = relative_inclusion(t, b);
  for (size_t i = 0; i < t.alg.dim(); ++i)
    compare_columns(rep, "retraction right T-linearity t=" + at(i), f * a.right_mult(column(t.incl, i)),
                    b.alg.right_mult(column(rel, i)) * f);

  SectionData s = section_from_connection(x, sc);
  TensorSpace btb = tensor_power(b.alg, t.alg, rel, 2);
  Matrix into = matrix_from_raw(btb, sc.att, [&](const Tuple& u) {
    return raw_apply_leg(raw_apply_leg(raw_unit(u), 0, b.incl), 1, b.incl);
  });
  Subspace img = image(into);
  out.sigma_one_in_btb = img.contains(s.sigma_in_att.apply(sv(a.unit())));
  if (!out.sigma_one_in_btb) throw Error(ErrorKind::MembershipFailure, "σ_T(1) is outside B ⊗_T B");
  if (x.coring_grouplike) {
    out.ell_e_in_btb = img.contains(sc.ell.apply(sv(*x.coring_grouplike)));
    if (!out.ell_e_in_btb) throw Error(ErrorKind::MembershipFailure, "ℓ(e) is outside B ⊗_T B");
  }
  TensorSpace single(regular_bimodule(b.alg));
  Matrix bf = matrix_from_raw(s.bta, single, [&](const Tuple& u) {
    return raw_multiply_legs(raw_apply_leg(raw_unit(u), 1, f), 0, b.alg);
  });
  out.phi = bf * s.sigma;
  for (size_t i = 0; i < b.alg.dim(); ++i)
    compare_columns(rep, "φ left B-linearity b=" + at(i), out.phi * a.left_mult(column(b.incl, i)),
                    b.alg.left_mult_basis(i) * out.phi);
  if (out.phi.apply(sv(a.unit())) != sv(b.alg.unit())) rep.add("φ(1) = 1", "");
  compare_columns(rep, "φ|B = id", out.phi * b.incl, Matrix::identity(b.alg.dim()));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Quotient of a bimodule by [M, T] for elements t given as acting matrices.
Quotient commutator_quotient(size_t dim, const std::vector<Matrix>& right_t, const std::vector<Matrix>& left_t) {
  std::vector<SparseVec> rel;
  for (size_t i = 0; i < right_t.size(); ++i) {
    Matrix d = right_t[i] - left_t[i];
    for (size_t j = 0; j < dim; ++j)
      if (!d.col(j).empty()) rel.push_back(d.col(j));
  }
  return Quotient(dim, rel);
}

bool two_sided_projective(const Bimodule& m) {
  return projective_dual_basis(m, Side::Left).projective && projective_dual_basis(m, Side::Right).projective;
}

}  // namespace

TFlatness tflatness_check(const EntwinedExtension& x, const Subalgebra& t) {
  const Entwining& e = x.e;
  const Algebra& a = e.a;
  const Subalgebra& b = x.b;
  Matrix rel = relative_inclusion(t, b);
  TFlatness out;

  std::vector<Matrix> ar, al, br, bl, dr, dl;
  Coring d = associated_coring(e);
  for (size_t i = 0; i < t.alg.dim(); ++i) {
    const Vec ti = column(t.incl, i), tb = column(rel, i);
    ar.push_back(a.right_mult(ti));
    al.push_back(a.left_mult(ti));
    br.push_back(b.alg.right_mult(tb));
    bl.push_back(b.alg.left_mult(tb));
    dr.push_back(d.carrier.right_by(ti));
    dl.push_back(d.carrier.left_by(ti));
  }
  out.a_mod = commutator_quotient(a.dim(), ar, al);
  Quotient b_mod = commutator_quotient(b.alg.dim(), br, bl);
  Quotient d_mod = commutator_quotient(d.dim(), dr, dl);

  const SparseVec g = sv(x.grouplike);
  Matrix u = x.rho - columns(e.ac.dim(), a.dim(), [&](size_t j) { return e.ac_left[j].apply(g); });
  out.upsilon = d_mod.projection() * u * out.a_mod.section();
  for (size_t i = 0; i < b.alg.dim(); ++i)
    if (!out.upsilon.apply(out.a_mod.project(b.incl.col(i))).empty()) out.checks.add("υ_T([b]) = 0", "b=" + at(i));
  out.kernel = kernel(out.upsilon);

  Matrix b_to_a = out.a_mod.projection() * b.incl * b_mod.section();
  const size_t rk = rank(b_to_a);
  out.quotient_a = out.a_mod.dim();
  out.quotient_b = b_mod.dim();
  out.kernel_dim = out.kernel.dim();
  out.injective = rk == b_mod.dim();
  out.surjective = rk == out.kernel.dim();

  Bimodule a_over_t = restrict_scalars(regular_bimodule(a), t.alg, t.incl, t.alg, t.incl);
  Bimodule b_over_t = restrict_scalars(regular_bimodule(b.alg), t.alg, rel, t.alg, rel);
  out.flat = two_sided_projective(a_over_t) && two_sided_projective(b_over_t);
  out.t_flat = out.flat && out.injective && out.surjective;
  return out;
}

Report middle_leg_check(const EntwinedExtension& x, const StrongConnection& sc) {
  Report rep;
  const Entwining& e = x.e;
  const Algebra& a = e.a;
  const Subalgebra& b = x.b;
  const Subalgebra& t = sc.t;
  Matrix rel = relative_inclusion(t, b);
  TensorSpace aaa = tensor_power(a, t.alg, t.incl, 3);
  TensorSpace atba = TensorSpace(regular_bimodule(a))
                         .then(regular_bimodule(b.alg), t.alg, t.incl, rel)
                         .then(regular_bimodule(a), t.alg, rel, t.incl);
  Matrix into = matrix_from_raw(atba, aaa, [&](const Tuple& u) { return raw_apply_leg(raw_unit(u), 1, b.incl); });
  Subspace img = image(into);
  auto ell = [&](const Tuple& c) { return sc.att.lift(sc.ell.col(c[0])); };
  for (size_t c = 0; c < e.coring.dim(); ++c) {
    Raw r = e.coring.cc.lift(e.coring.delta.col(c));
    r = raw_replace_legs(r, 0, 1, ell);
    r = raw_replace_legs(r, 2, 1, ell);
    SparseVec v = aaa.project(raw_multiply_legs(r, 1, a));
    if (!img.contains(v)) rep.add("middle leg in B", "c=" + at(c));
  }
  return rep;
}

}  // namespace ncg
