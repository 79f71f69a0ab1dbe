#include "ncg/cherngalois.hpp"

#include <algorithm>
#include <map>

namespace ncg {

namespace {

std::string at(size_t i, size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

SparseVec sv(const Vec& v) { return SparseVec::from_dense(v); }

// ℓ(c) as a list of pure tensors u ⊗ v of A basis elements.
struct Term {
  uint32_t u, v;
  Scalar c;
};

std::vector<Term> connection_terms(const StrongConnection& sc, const Vec& c) {
  std::vector<Term> out;
  for (const auto& t : sc.att.lift(sc.ell.apply(sv(c)))) out.push_back({t.t[0], t.t[1], t.c});
  return out;
}

}  // namespace

Subalgebra t_inside_b(const EntwinedExtension& x, const Subalgebra& t) {
  Matrix incl = relative_inclusion(t, x.b);
  Subspace span = image(incl);
  return Subalgebra{t.alg, std::move(incl), std::move(span)};
}

Matrix circular_inclusion(const CircularSpace& b_side, const CircularSpace& a_side, const Matrix& b_in_a) {
  Matrix m(a_side.dim(), b_side.dim());
  for (size_t q = 0; q < b_side.dim(); ++q) {
    Raw r = raw_unit(b_side.representative(static_cast<uint32_t>(q)));
    for (size_t leg = 0; leg < b_side.legs(); ++leg) r = raw_apply_leg(r, leg, b_in_a);
    m.set_col(q, a_side.project(r));
  }
  return m;
}

Scalar chern_coefficient(size_t l, uint32_t modulus) {
  const size_t h = l / 2;
  mpz_class num = 1;
  for (size_t k = h + 1; k <= l; ++k) num *= static_cast<unsigned long>(k);
  if (h % 2) num = -num;
  return Scalar(mpq_class(num), modulus);
}

std::vector<SparseVec> chg_in_a(const EntwinedExtension& x, const StrongConnection& sc, const Coidempotent& e,
                                const std::vector<CircularSpace>& a_spaces) {
  const Algebra& a = x.e.a;
  // States (i, j, term of ℓ(e_ij)).
  struct State {
    size_t i, j;
    Term term;
  };
  std::vector<State> states;
  for (size_t i = 0; i < e.n; ++i)
    for (size_t j = 0; j < e.n; ++j)
      for (const Term& t : connection_terms(sc, e.at(i, j))) states.push_back({i, j, t});
  // Leg between adjacent states: v(s)·u(s').
  std::map<std::pair<size_t, size_t>, SparseVec> leg;
  auto joint = [&](size_t s, size_t s2) -> const SparseVec& {
    auto key = std::make_pair(s, s2);
    auto it = leg.find(key);
    if (it == leg.end())
      it = leg.emplace(key, sv(a.mul(a.basis(states[s].term.v), a.basis(states[s2].term.u)))).first;
    return it->second;
  };
  std::vector<SparseVec> out;
  for (size_t l = 0; l < a_spaces.size(); ++l) {
    const CircularSpace& cs = a_spaces[l];
    Accumulator total;
    for (size_t s1 = 0; s1 < states.size(); ++s1) {
      if (l == 0 && states[s1].i != states[s1].j) continue;
      // Partial chains ending in a state, keyed by (state, legs so far).
      std::map<std::pair<size_t, Tuple>, Scalar> partial;
      partial[{s1, Tuple{}}] = states[s1].term.c;
      for (size_t step = 0; step < l; ++step) {
        std::map<std::pair<size_t, Tuple>, Scalar> next;
        for (const auto& [key, c] : partial) {
          const size_t s = key.first;
          for (size_t s2 = 0; s2 < states.size(); ++s2) {
            if (states[s2].i != states[s].j) continue;
            // The last state must close the cycle back to i₁.
            if (step + 1 == l && states[s2].j != states[s1].i) continue;
            for (const auto& [idx, y] : joint(s, s2).entries()) {
              Tuple t = key.second;
              t.push_back(idx);
              Scalar& slot = next[{s2, std::move(t)}];
              slot += c * y * states[s2].term.c;
            }
          }
        }
        partial = std::move(next);
      }
      for (const auto& [key, c] : partial) {
        if (c.is_zero()) continue;
        for (const auto& [idx, y] : joint(key.first, s1).entries()) {
          Tuple t = key.second;
          t.push_back(idx);
          total.add(cs.project(t), c * y);
        }
      }
    }
    out.push_back(total.take());
  }
  return out;
}

ChgComponents chg_components(const EntwinedExtension& x, const StrongConnection& sc, const Coidempotent& e,
                             size_t max_l, size_t guard) {
  ChgComponents out;
  const Subalgebra tb = t_inside_b(x, sc.t);
  TFlatness flat;
  bool have_flat = false;
  try {
    flat = tflatness_check(x, sc.t);
    have_flat = true;
    if (!flat.t_flat) out.warnings.push_back("extension is not T-flat; components rely on the membership certificate");
  } catch (const Error& err) {
    out.warnings.push_back(std::string("T-flatness not decided: ") + err.what());
  }
  for (size_t l = 0; l <= max_l; ++l) {
    out.a_spaces.emplace_back(x.e.a, sc.t, l, guard);
    out.b_spaces.emplace_back(x.b.alg, tb, l, guard);
  }
  out.a_comps = chg_in_a(x, sc, e, out.a_spaces);
  for (size_t l = 0; l <= max_l; ++l) {
    Matrix iota = circular_inclusion(out.b_spaces[l], out.a_spaces[l], x.b.incl);
    if (rank(iota) != out.b_spaces[l].dim())
      throw Error(ErrorKind::IotaNotInjective, "ι has a kernel in degree " + std::to_string(l));
    auto pre = solve(iota, out.a_comps[l]);
    if (!pre) throw Error(ErrorKind::MembershipFailure, "component " + std::to_string(l) + " is not in the image of B");
    out.comps.push_back(*pre);
  }
  if (have_flat && !flat.kernel.contains(out.a_comps[0]))
    throw Error(ErrorKind::MembershipFailure, "degree 0 component is not in ker υ_T");
  return out;
}

ChernCycle assemble_and_class(const std::vector<SparseVec>& comps, size_t n, const TotalComplex& tc) {
  if (comps.size() < 2 * n + 1) throw Error(ErrorKind::DegreeOutOfRange, "need components up to degree " + std::to_string(2 * n));
  if (tc.max_degree < 2 * n) throw Error(ErrorKind::DegreeOutOfRange, "total complex too shallow for degree " + std::to_string(2 * n));
  ChernCycle out;
  out.n = n;
  const uint32_t p = tc.spaces[0].b().modulus();
  Accumulator acc;
  for (size_t l = 0; l <= 2 * n; ++l) {
    const Scalar c = chern_coefficient(l, p);
    if (p != 0 && c.is_zero())
      out.warnings.push_back("coefficient of degree " + std::to_string(l) + " vanishes in characteristic " +
                             std::to_string(p));
    acc.add(tc.place(2 * n, 2 * n - l, comps[l]), c);
  }
  out.cycle = acc.take();
  if (!is_cycle(tc, 2 * n, out.cycle)) throw Error(ErrorKind::NotACycle, "assembled Chern-Galois chain in degree " + std::to_string(2 * n));
  out.coords = class_of(tc, homology(tc, 2 * n), out.cycle);
  return out;
}

AssociatedModule associated_module(const EntwinedExtension& x, const LeftComodule& w) {
  AssociatedModule out{cotensor(x.right_comodule(), w, x.e.coring, &x.b), 0, 0, false, {}};
  Bimodule a_over_b = restrict_right(regular_bimodule(x.e.a), x.b.alg, x.b.incl);
  Bimodule gamma = out.gamma.as_left_module(x.b.alg, Algebra::ground(x.e.a.modulus()));
  out.dim_a_over_b_gamma = TensorSpace(a_over_b).then(gamma).dim();
  out.dim_a_over_r_w = TensorSpace(x.right_comodule().carrier).then(w.carrier).dim();
  out.identity_expected = canonical_maps(x).galois && projective_dual_basis(a_over_b, Side::Right).projective;
  if (out.identity_expected && out.dim_a_over_b_gamma != out.dim_a_over_r_w)
    out.checks.add("A ⊗_B Γ ≅ A ⊗_R W", "dims " + std::to_string(out.dim_a_over_b_gamma) + " vs " +
                                            std::to_string(out.dim_a_over_r_w));
  return out;
}

namespace {

std::optional<LocalDualSystem> dual_system_on(const Algebra& a, const Subalgebra& t, const Subspace& span,
                                              const std::vector<Vec>& gens) {
  const size_t dt = t.alg.dim(), np = gens.size();
  std::vector<Matrix> src, dst;
  for (size_t s = 0; s < dt; ++s) {
    src.push_back(a.right_mult(t.incl.col(s).to_dense(a.dim())));
    Matrix r = t.alg.right_mult_basis(s), block(np * dt, np * dt);
    for (size_t p = 0; p < np; ++p)
      for (size_t c = 0; c < dt; ++c)
        for (const auto& [i, y] : r.col(c).entries()) block.set(p * dt + i, p * dt + c, y);
    dst.push_back(std::move(block));
  }
  Matrix pre(a.dim(), np * dt), post(a.dim(), span.dim());
  for (size_t p = 0; p < np; ++p) {
    Matrix xp = a.left_mult(gens[p]) * t.incl;
    for (size_t c = 0; c < dt; ++c) pre.set_col(p * dt + c, xp.col(c));
  }
  for (size_t k = 0; k < span.dim(); ++k) post.set_col(k, span.basis()[k]);
  auto sol = equivariant_hom_space(np * dt, a.dim(), {intertwines(src, dst), sandwiched(pre, post, post)});
  if (!sol) return std::nullopt;
  LocalDualSystem out{span, gens, {}};
  for (size_t p = 0; p < np; ++p) {
    Matrix xi(dt, a.dim());
    for (size_t col = 0; col < a.dim(); ++col) {
      SparseVec c;
      for (const auto& [i, y] : sol->particular.col(col).entries())
        if (i >= p * dt && i < (p + 1) * dt) c.push(static_cast<uint32_t>(i - p * dt), y);
      xi.set_col(col, c);
    }
    out.xi.push_back(std::move(xi));
  }
  return out;
}

}  // namespace

LocalDualSystem local_dual_system(const EntwinedExtension& x, const StrongConnection& sc, const Coidempotent& e) {
  const Algebra& a = x.e.a;
  std::vector<uint32_t> first;
  for (size_t i = 0; i < e.n; ++i)
    for (size_t j = 0; j < e.n; ++j)
      for (const Term& t : connection_terms(sc, e.at(i, j)))
        if (std::find(first.begin(), first.end(), t.u) == first.end()) first.push_back(t.u);
  std::sort(first.begin(), first.end());
  std::vector<Vec> span_gens, gens;
  for (uint32_t u : first) {
    gens.push_back(a.basis(u));
    for (size_t s = 0; s < sc.t.alg.dim(); ++s) span_gens.push_back(a.mul(a.basis(u), sc.t.incl.col(s).to_dense(a.dim())));
  }
  Subspace span = Subspace::span_dense(a.dim(), span_gens);
  if (auto d = dual_system_on(a, sc.t, span, gens)) return *d;
  std::vector<Vec> all;
  for (size_t i = 0; i < a.dim(); ++i) all.push_back(a.basis(i));
  if (auto d = dual_system_on(a, sc.t, span, all)) return *d;
  throw Error(ErrorKind::NoLocalDualSystem, "neither the first legs nor the basis of A give a dual system");
}

Report verify_local_dual_system(const StrongConnection& sc, const LocalDualSystem& d) {
  Report rep;
  const Algebra& a = sc.att.factor(0).left;
  for (size_t k = 0; k < d.span.dim(); ++k) {
    const Vec xk = d.span.basis()[k].to_dense(a.dim());
    Vec sum = zero_vec(a.dim());
    for (size_t p = 0; p < d.x.size(); ++p)
      sum = sum + a.mul(d.x[p], sc.t.incl.apply(d.xi[p].apply(xk)));
    if (sum != xk) rep.add("x = Σ x_p ξ_p(x)", "basis " + std::to_string(k));
  }
  for (size_t p = 0; p < d.xi.size(); ++p)
    for (size_t s = 0; s < sc.t.alg.dim(); ++s)
      if (d.xi[p] * a.right_mult(sc.t.incl.col(s).to_dense(a.dim())) != sc.t.alg.right_mult_basis(s) * d.xi[p])
        rep.add("ξ right T-linear", at(p, s));
  return rep;
}

Report check_idempotent(const Algebra& b, const std::vector<Vec>& f, size_t size) {
  Report rep;
  for (size_t i = 0; i < size; ++i)
    for (size_t j = 0; j < size; ++j) {
      Vec s = zero_vec(b.dim());
      for (size_t k = 0; k < size; ++k) s = s + b.mul(f[i * size + k], f[k * size + j]);
      if (s != f[i * size + j]) {
        rep.add("E·E = E", at(i, j));
        return rep;
      }
    }
  return rep;
}

IdempotentE idempotent_E(const EntwinedExtension& x, const StrongConnection& sc, const Coidempotent& e,
                         const LocalDualSystem& d, const Matrix& phi) {
  const Algebra &a = x.e.a, &b = x.b.alg;
  const size_t np = d.x.size(), size = e.n * np;
  // ℓ_p(e_ij) = Σ ξ_p(u)·v
  auto ell_p = [&](size_t p, const Vec& c) {
    Vec out = zero_vec(a.dim());
    for (const Term& t : connection_terms(sc, c)) {
      const Vec xi_u = sc.t.incl.apply(d.xi[p].col(t.u)).to_dense(a.dim());
      out = out + t.c * a.mul(xi_u, a.basis(t.v));
    }
    return out;
  };
  IdempotentE out;
  out.size = size;
  out.entries.assign(size * size, zero_vec(b.dim()));
  for (size_t i = 0; i < e.n; ++i)
    for (size_t p = 0; p < np; ++p)
      for (size_t j = 0; j < e.n; ++j) {
        const Vec l = ell_p(p, e.at(i, j));
        for (size_t q = 0; q < np; ++q)
          out.entries[(i * np + p) * size + j * np + q] = phi.apply(a.mul(l, d.x[q]));
      }
  Report idem = check_idempotent(b, out.entries, size);
  if (!idem.ok()) throw Error(ErrorKind::NotIdempotent, "first failure at " + idem.residuals()[0].location);

  GeneratedComodule w = comodule_with_generators(x.e.coring, e);
  AssociatedModule g = associated_module(x, w.w);
  const TensorSpace& mw = g.gamma.mw;
  for (size_t i = 0; i < e.n; ++i)
    for (size_t p = 0; p < np; ++p) {
      Accumulator acc;
      for (size_t j = 0; j < e.n; ++j) acc.add(mw.embed({ell_p(p, e.at(i, j)), w.generators[j]}));
      out.gamma.push_back(acc.take());
    }
  auto act = [&](const Vec& bv, const SparseVec& v) { return mw.left_by(x.b.incl.apply(bv)).apply(v); };
  for (size_t r = 0; r < size; ++r) {
    if (!g.gamma.sub.contains(out.gamma[r])) out.checks.add("γ ∈ Γ", "index " + std::to_string(r));
    Accumulator acc;
    for (size_t c = 0; c < size; ++c) acc.add(act(out.at(r, c), out.gamma[c]));
    if (acc.take() != out.gamma[r]) out.checks.add("Σ E γ = γ", "index " + std::to_string(r));
  }
  // Θ: B^{(I×P)}E → Γ, v ↦ Σ v_c γ_c, on a spanning set of the row space.
  std::vector<SparseVec> rows, images;
  for (size_t r = 0; r < size; ++r)
    for (size_t s = 0; s < b.dim(); ++s) {
      Accumulator row, img;
      for (size_t c = 0; c < size; ++c) {
        const Vec entry = b.mul(b.basis(s), out.at(r, c));
        for (size_t k = 0; k < b.dim(); ++k)
          if (!entry[k].is_zero()) row.add(static_cast<uint32_t>(c * b.dim() + k), entry[k]);
        img.add(act(entry, out.gamma[c]));
      }
      rows.push_back(row.take());
      images.push_back(img.take());
    }
  Subspace row_space = Subspace::span(size * b.dim(), rows);
  Subspace image_space = Subspace::span(mw.dim(), images);
  if (row_space.dim() != g.gamma.sub.dim() || image_space.dim() != row_space.dim() || !g.gamma.sub.contains(image_space))
    out.checks.add("Θ: B^(I×P)E ≅ Γ", "dims " + std::to_string(row_space.dim()) + ", " +
                                          std::to_string(image_space.dim()) + ", " + std::to_string(g.gamma.sub.dim()));
  return out;
}

std::vector<SparseVec> ch_components(const std::vector<Vec>& f, size_t size, const std::vector<CircularSpace>& b_spaces) {
  if (b_spaces.empty()) return {};
  Report idem = check_idempotent(b_spaces[0].b(), f, size);
  if (!idem.ok()) throw Error(ErrorKind::NotIdempotent, "first failure at " + idem.residuals()[0].location);
  std::vector<SparseVec> out;
  for (const CircularSpace& cs : b_spaces) {
    Accumulator acc;
    for_each_tuple(std::vector<size_t>(cs.legs(), size), [&](const Tuple& idx) {
      std::vector<Vec> parts;
      for (size_t k = 0; k < idx.size(); ++k) {
        const Vec& entry = f[idx[k] * size + idx[(k + 1) % idx.size()]];
        if (is_zero(entry)) return;
        parts.push_back(entry);
      }
      acc.add(cs.embed(parts));
    });
    out.push_back(acc.take());
  }
  return out;
}

Report compare_chg_ch(const std::vector<SparseVec>& chg, const std::vector<SparseVec>& ch) {
  Report rep;
  for (size_t l = 0; l < std::min(chg.size(), ch.size()); ++l)
    if (chg[l] != ch[l]) rep.add("ch_l(E) = chg_l(e)", "l=" + std::to_string(l));
  if (chg.size() != ch.size()) rep.add("ch_l(E) = chg_l(e)", "degree count");
  return rep;
}

}  // namespace ncg
