// Acceptance run: one PASS/FAIL line per criterion. All algebraic checks are
// exact (tolerance zero); the only pinned tolerances are wall-clock limits.
#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncg/workspace.hpp"

using namespace ncg;
using nlohmann::json;

namespace {

constexpr double kValidatorSeconds = 5.0;
constexpr double kBicomplexSeconds = 30.0;
constexpr double kSuiteSeconds = 60.0;
constexpr double kGuardSeconds = 1.0;
constexpr size_t kPerturbations = 20;
constexpr size_t kGuard = 2'000'000;
constexpr uint32_t kSeed = 20240611;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void print(int id, const std::string& title, const Verdict& v) {
  std::printf("criterion %2d: %s  %s: %s\n", id, v.pass ? "PASS" : "FAIL", title.c_str(), v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

void run(int id, const std::string& title, const std::function<Verdict()>& f) {
  Verdict v;
  try {
    v = f();
  } catch (const std::exception& e) {
    v = {false, std::string("unexpected exception: ") + e.what()};
  }
  print(id, title, v);
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

// Independent rank oracle: dense Gaussian elimination
// over mpq_class, sharing nothing with the sparse kernel.
size_t dense_rank(const Matrix& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.col(j).entries()) a[i][j] = v.value();
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < a.size(); ++c) {
    size_t piv = r;
    while (piv < a.size() && sgn(a[piv][c]) == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (size_t i = r + 1; i < a.size(); ++i) {
      if (sgn(a[i][c]) == 0) continue;
      const mpq_class f = a[i][c] / a[r][c];
      for (size_t k = c; k < m.cols(); ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

std::string join(const std::vector<size_t>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// 1. Validators accept the fixtures and locate single-entry corruptions.
Verdict validator_soundness() {
  const auto start = Clock::now();
  std::mt19937 rng(kSeed);
  size_t located = 0, total = 0;
  std::string missed;
  for (const auto& name : fixture_names()) {
    const Workspace w = workspace_from_fixture(make_fixture(name));
    Report clean = validate_workspace(w);
    if (!clean.ok()) return {false, name + " fails " + clean.residuals()[0].check};
    json flat = json::parse(serialize_workspace(w)).flatten();
    std::vector<std::string> entries;
    for (auto it = flat.begin(); it != flat.end(); ++it) {
      const std::string& key = it.key();
      const bool structure = key.rfind("/subalgebras", 0) != 0 && key.rfind("/options", 0) != 0 && key.rfind("/field", 0) != 0;
      const std::string last = key.substr(key.rfind('/') + 1);
      if (structure && it->is_string() && !last.empty() && std::isdigit(static_cast<unsigned char>(last[0])))
        entries.push_back(key);
    }
    std::uniform_int_distribution<size_t> pick(0, entries.size() - 1);
    for (size_t k = 0; k < kPerturbations; ++k) {
      const std::string key = entries[pick(rng)];
      json doc = flat;
      doc[key] = (w.field.parse(doc[key].get<std::string>()) + w.field.make(1)).str();
      ++total;
      bool found = false;
      try {
        Report r = validate_workspace(parse_workspace(doc.unflatten().dump()));
        for (const auto& res : r.residuals()) found = found || !res.location.empty();
      } catch (const Error& e) {
        // Parsing rejects the document with a structure path.
        found = std::string(e.what()).find(": ") != std::string::npos;
      }
      if (found)
        ++located;
      else if (missed.empty())
        missed = name + " " + key;
    }
  }
  const double t = since(start);
  Verdict v{located == total && t < kValidatorSeconds,
            "6 fixtures valid, " + std::to_string(located) + "/" + std::to_string(total) +
                " perturbations located (exact), " + fmt(t) + " s < " + fmt(kValidatorSeconds) + " s"};
  if (!missed.empty()) v.detail += "; undetected: " + missed;
  return v;
}

// 2. d∘d = 0 on the total complex.
Verdict bicomplex_integrity() {
  const auto start = Clock::now();
  struct Case {
    std::string name;
    Algebra b;
    std::vector<Vec> diagonal;
  };
  Algebra q = Algebra::ground(0, "Q"), z2 = cyclic_group_algebra(2, 0, "Q[x]/(x^2-1)");
  Algebra t2 = upper_triangular_algebra(2, 0, "T2"), m2 = matrix_algebra(2, 0, "M2");
  const Scalar half(mpq_class(1, 2));
  std::vector<Case> cases{
      {"Q", q, {q.unit()}},
      {"Q[x]/(x^2-1)", z2, {Vec{half, half}, Vec{half, -half}}},  // the idempotents (1 ± x)/2
      {"T2", t2, {t2.basis(0), t2.basis(2)}},
      {"M2", m2, {m2.basis(0), m2.basis(3)}},
  };
  size_t complexes = 0;
  for (const auto& c : cases) {
    for (int diag = 0; diag < 2; ++diag) {
      Subalgebra t = diag ? generated_subalgebra(c.b, c.diagonal, "D") : scalars_in(c.b);
      TotalComplex tc = build_total_complex(c.b, t, 5);
      Report r = verify_total_complex(tc);
      if (!r.ok()) return {false, c.name + (diag ? " over diagonal: " : " over k: ") + r.residuals()[0].check + " at " + r.residuals()[0].location};
      ++complexes;
    }
  }
  const double t = since(start);
  return {t < kBicomplexSeconds, std::to_string(complexes) + " complexes (Q, Q[x]/(x^2-1), T2, M2 over k and diagonal) up to degree 5, d∘d = 0 exactly, " +
                                     fmt(t) + " s < " + fmt(kBicomplexSeconds) + " s"};
}

// 3. HC_n(Q|Q) = (1,0,1,0,1) by the engine and by a dense rank oracle.
Verdict classical_oracle() {
  Algebra q = Algebra::ground(0);
  TotalComplex tc = build_total_complex(q, scalars_in(q), 4);
  std::vector<size_t> engine, oracle;
  for (size_t n = 0; n <= 4; ++n) {
    engine.push_back(homology(tc, n).dim());
    const size_t in = n == 0 ? 0 : dense_rank(tc.d[n]);
    oracle.push_back(tc.tot_dim(n) - in - dense_rank(tc.d[n + 1]));
  }
  const std::vector<size_t> expected{1, 0, 1, 0, 1};
  return {engine == expected && oracle == expected, "engine " + join(engine) + ", dense oracle " + join(oracle) + ", expected " + join(expected)};
}

// Named connections of a fixture plus the solved one at T = k when it exists.
std::vector<std::pair<std::string, StrongConnection>> connections_of(const Fixture& f) {
  std::vector<std::pair<std::string, StrongConnection>> out(f.connections.begin(), f.connections.end());
  if (auto sol = solve_strong_connection(f.x, scalars_in(f.x.e.a))) out.push_back({"solved_k", sol->particular});
  return out;
}

// 4. The assembled Chern-Galois chains are cycles at n = 0, 1, 2.
Verdict cycle_condition() {
  size_t chains = 0;
  for (const auto& name : fixture_names()) {
    Fixture f = make_fixture(name);
    for (const auto& [cname, sc] : connections_of(f)) {
      TotalComplex tc = build_total_complex(f.x.b.alg, t_inside_b(f.x, sc.t), 4);
      for (const auto& [ename, e] : f.coidempotents) {
        ChgComponents comps = chg_components(f.x, sc, e, 4);
        for (size_t n = 0; n <= 2; ++n) {
          try {
            ChernCycle z = assemble_and_class(comps.comps, n, tc);
            if (!is_cycle(tc, 2 * n, z.cycle)) throw Error(ErrorKind::NotACycle, "");
          } catch (const Error& err) {
            return {false, name + " " + ename + " " + cname + " n=" + std::to_string(n) + ": " + err.what()};
          }
          ++chains;
        }
      }
    }
  }
  return {true, std::to_string(chains) + " chains over all fixtures, coidempotents and connections, d = 0 exactly"};
}

Matrix retraction_phi(const EntwinedExtension& x, const StrongConnection& sc) {
  auto f = retraction_onto_b(x, sc.t);
  if (!f) throw Error(ErrorKind::NotProjective, "no retraction onto B");
  return normalization_and_splitting(x, sc, *f).phi;
}

struct ChernCase {
  std::string fixture, connection, coidempotent;
};
const std::vector<ChernCase>& chern_cases() {
  static const std::vector<ChernCase> cases{
      {"FIX-Z2", "ell", "e0"}, {"FIX-Z2", "ell", "e1"}, {"FIX-NC", "varpi", "e"}, {"FIX-NC", "varpi", "one"}};
  return cases;
}

// 5. ch̃_l(E) = c͠hg_l(e) for l ≤ 4.
Verdict chain_equality() {
  size_t compared = 0;
  for (const auto& k : chern_cases()) {
    Fixture f = make_fixture(k.fixture);
    const StrongConnection& sc = f.connections.at(k.connection);
    const Coidempotent& e = f.coidempotents.at(k.coidempotent);
    ChgComponents comps = chg_components(f.x, sc, e, 4);
    IdempotentE m = idempotent_E(f.x, sc, e, local_dual_system(f.x, sc, e), retraction_phi(f.x, sc));
    std::vector<SparseVec> ch = ch_components(m.entries, m.size, comps.b_spaces);
    for (size_t l = 0; l <= 4; ++l) {
      if (!(ch[l] == comps.comps[l])) return {false, k.fixture + " " + k.coidempotent + " differs at l=" + std::to_string(l)};
      ++compared;
    }
  }
  return {true, std::to_string(compared) + " components equal exactly (FIX-Z2 e0, e1; FIX-NC e, one; l = 0..4)"};
}

// 6. E² = E, dim B^(I×P)E = dim Γ and Θ bijective.
Verdict idempotency() {
  std::string dims;
  for (const auto& k : chern_cases()) {
    Fixture f = make_fixture(k.fixture);
    const StrongConnection& sc = f.connections.at(k.connection);
    const Coidempotent& e = f.coidempotents.at(k.coidempotent);
    IdempotentE m = idempotent_E(f.x, sc, e, local_dual_system(f.x, sc, e), retraction_phi(f.x, sc));
    const Algebra& b = f.x.b.alg;
    if (!check_idempotent(b, m.entries, m.size).ok()) return {false, k.fixture + " " + k.coidempotent + ": E² ≠ E"};
    // Row space of B^(I×P)E, computed here from the entries.
    std::vector<Vec> rows;
    for (size_t r = 0; r < m.size; ++r)
      for (size_t s = 0; s < b.dim(); ++s) {
        Vec row(m.size * b.dim(), Scalar(0));
        for (size_t c = 0; c < m.size; ++c) {
          Vec entry = b.mul(b.basis(s), m.at(r, c));
          for (size_t i = 0; i < b.dim(); ++i) row[c * b.dim() + i] = entry[i];
        }
        rows.push_back(row);
      }
    const size_t module_dim = Subspace::span_dense(m.size * b.dim(), rows).dim();
    const size_t gamma_dim = associated_module(f.x, comodule_from_coidempotent(f.x.e.coring, e)).gamma.sub.dim();
    if (module_dim != gamma_dim || !m.checks.ok())
      return {false, k.fixture + " " + k.coidempotent + ": dim B^(IxP)E " + std::to_string(module_dim) + ", dim Γ " +
                         std::to_string(gamma_dim) + (m.checks.ok() ? "" : ", " + m.checks.residuals()[0].check)};
    dims += (dims.empty() ? "" : ", ") + k.fixture + "/" + k.coidempotent + " " + std::to_string(module_dim);
  }
  return {true, "E² = E exactly; dim B^(IxP)E = dim Γ and Θ bijective: " + dims};
}

// Classes of c͠hg(e) at n = 0, 1 for two connections.
bool same_classes(const EntwinedExtension& x, const StrongConnection& a, const StrongConnection& b, const Coidempotent& e,
                  std::string& detail) {
  ChgComponents ca = chg_components(x, a, e, 2), cb = chg_components(x, b, e, 2);
  TotalComplex tc = build_total_complex(x.b.alg, t_inside_b(x, a.t), 2);
  bool ok = true;
  for (size_t n = 0; n <= 1; ++n) {
    ChernCycle za = assemble_and_class(ca.comps, n, tc), zb = assemble_and_class(cb.comps, n, tc);
    const bool eq = za.coords == zb.coords && classes_equal(homology(tc, 2 * n), za.cycle, zb.cycle);
    detail += std::string(n ? ", " : "") + "HC" + std::to_string(2 * n) + (eq ? " equal" : " differ");
    ok = ok && eq;
  }
  return ok;
}

// Two distinct points of an affine solution space, or nothing.
std::optional<std::pair<StrongConnection, StrongConnection>> two_points(const EntwinedExtension& x, const Subalgebra& t,
                                                                        size_t& dim) {
  auto sol = solve_strong_connection(x, t);
  dim = sol ? sol->space.dim() : 0;
  if (!sol || dim == 0) return std::nullopt;
  Vec coeffs;
  for (size_t i = 0; i < dim; ++i) coeffs.push_back(Scalar(static_cast<long>(i % 3) + 1));
  StrongConnection other{t, sol->particular.att, sol->space.point(coeffs)};
  return std::make_pair(sol->particular, other);
}

// 7. Independence of the connection on FIX-Z2.
Verdict independence() {
  Fixture f = make_fixture("FIX-Z2");
  size_t dim = 0;
  auto pts = two_points(f.x, scalars_in(f.x.e.a), dim);
  std::string detail;
  bool pass = false;
  if (pts) {
    pass = same_classes(f.x, pts->first, pts->second, f.coidempotents.at("e1"), detail);
    detail = "FIX-Z2 solution space dim " + std::to_string(dim) + ": " + detail;
  } else {
    detail = "FIX-Z2 has a single strong connection (solution space dim 0): B = T = Q and can is bijective, "
             "so ℓ(c) = can⁻¹(1⊗c) is forced; no two distinct points exist";
  }
  // Supplementary: the same check where the space is not a point.
  EntwinedExtension g = graded_matrix_extension();
  size_t gdim = 0;
  auto gp = two_points(g, scalars_in(g.e.a), gdim);
  std::string sup;
  bool sup_ok = gp && verify_strong_connection(g, gp->second).ok() &&
                same_classes(g, gp->first, gp->second, Coidempotent{"g1", 1, {unit_vec(2, 1)}}, sup);
  detail += "; supplementary Z2-graded M2 over its diagonal, T = Q: solution space dim " + std::to_string(gdim) + ", " +
            (gp ? sup : "no two points") + (sup_ok ? "" : " (supplementary check failed)");
  return {pass, detail};
}

// 8. Additivity, dual-basis independence, comodule-isomorphism invariance on FIX-Z2.
Verdict structural() {
  Fixture f = make_fixture("FIX-Z2");
  const Coring& c = f.x.e.coring;
  const StrongConnection& sc = f.connections.at("ell");
  const Coidempotent &e0 = f.coidempotents.at("e0"), &e1 = f.coidempotents.at("e1");
  auto chg = [&](const Coidempotent& e) { return chg_components(f.x, sc, e, 4).comps; };
  auto equal = [](const std::vector<SparseVec>& a, const std::vector<SparseVec>& b) { return a == b; };

  Coidempotent sum = direct_sum(e0, e1, c);
  auto s = chg(sum), a = chg(e0), b = chg(e1);
  for (size_t l = 0; l <= 4; ++l)
    if (!(s[l] == a[l] + b[l])) return {false, "additivity fails at l=" + std::to_string(l)};

  // W = Qg₀ ⊕ Qg₁ with two dual bases: the solver's and one rescaled and sheared.
  LeftComodule w = comodule_from_coidempotent(c, sum);
  auto d1 = projective_dual_basis(w.carrier, Side::Left);
  if (!d1.basis || d1.basis->w.size() != 2) return {false, "no dual basis of rank 2 for W"};
  DualBasis d2;
  const Scalar two(2), half(mpq_class(1, 2));
  d2.w = {two * d1.basis->w[0], d1.basis->w[0] + d1.basis->w[1]};
  d2.chi = {d1.basis->chi[0].scaled(half) - d1.basis->chi[1].scaled(half), d1.basis->chi[1]};
  if (!verify_dual_basis(w.carrier, Side::Left, d2).ok()) return {false, "constructed dual basis is invalid"};
  Coidempotent f1 = coidempotent_from_comodule(w, *d1.basis, c), f2 = coidempotent_from_comodule(w, d2, c);
  if (f1.entries == f2.entries) return {false, "the two dual bases give the same matrix"};
  if (!equal(chg(f1), chg(f2)) || !equal(chg(f1), s)) return {false, "dual-basis independence fails"};

  // A nontrivial comodule isomorphism: e' = P e P⁻¹ with P = [[1,1],[0,1]].
  Coidempotent conj{"conj", 2, {}};
  const Vec &g0 = sum.at(0, 0), &g1 = sum.at(1, 1);
  conj.entries = {g0, g1 - g0, zero_vec(2), g1};
  if (!validate_coidempotent(c, conj).ok()) return {false, "P e P⁻¹ is not a coidempotent"};
  if (!comodules_isomorphic(comodule_from_coidempotent(c, sum), comodule_from_coidempotent(c, conj), c))
    return {false, "comodules not isomorphic"};
  if (!equal(chg(conj), s)) return {false, "isomorphism invariance fails"};
  return {true, "c͠hg_l, l ≤ 4: e0⊕e1 = e0 + e1; two dual bases of Qg0⊕Qg1 agree; P(e0⊕e1)P⁻¹ agrees (all exact)"};
}

// 9. Total integral on FIX-Z2.
Verdict total_integral_roundtrip() {
  Fixture f = make_fixture("FIX-Z2");
  TotalIntegralResult res = total_integral(f.x);
  if (!res.integral) return {false, "no total integral"};
  const Entwining& e = f.x.e;
  const TotalIntegral& ti = *res.integral;
  const bool unit = ti.j.col(0) == SparseVec::from_dense(e.a.unit());
  const bool retract = ti.h * f.x.rho == Matrix::identity(e.a.dim());
  bool through_h = true;
  for (size_t c = 0; c < e.coring.dim(); ++c)
    through_h = through_h && ti.h.apply(e.ac.embed({e.a.unit(), unit_vec(e.coring.dim(), c)})) == ti.j.col(c);
  return {unit && retract && through_h && ti.checks.ok(),
          std::string("j(g0) = 1: ") + (unit ? "yes" : "no") + ", h∘ρ = id: " + (retract ? "yes" : "no") +
              ", j(c) = h(1⊗c): " + (through_h ? "yes" : "no")};
}

// 10. Galois detection and the translation map.
Verdict galois_detection() {
  std::string detail;
  for (const char* name : {"FIX-Z2", "FIX-SW", "FIX-NC"}) {
    Fixture f = make_fixture(name);
    if (!canonical_maps(f.x).galois) return {false, std::string(name) + " not detected as Galois"};
    StrongConnection varpi = connection_from_galois(f.x);
    if (!(varpi.t.span == f.x.b.span)) return {false, std::string(name) + ": translation map not at T = B"};
    Report r = verify_strong_connection(f.x, varpi);
    if (!r.ok()) return {false, std::string(name) + ": translation map fails " + r.residuals()[0].check};
  }
  Entwining e = graded_entwining();
  EntwinedExtension bad = pre_extension(e, graded_coaction(e, true));
  CanonicalMaps m = canonical_maps(bad);
  if (m.galois) return {false, "corrupted coaction reported Galois"};
  return {true, "can bijective on FIX-Z2, FIX-SW, FIX-NC; corrupted coaction non-Galois (rank " +
                    std::to_string(rank(m.can_b)) + " < " + std::to_string(m.can_b.rows()) +
                    "); ϖ = can⁻¹(1⊗−) passes at T = B"};
}

// 11b. The guard aborts before allocating.
Verdict memory_guard(double suite_seconds) {
  const auto start = Clock::now();
  Algebra m2 = matrix_algebra(2, 0, "M2");
  std::string what;
  try {
    build_total_complex(m2, scalars_in(m2), 10, kGuard);  // 4^12 raw tuples at the top
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MemoryGuardExceeded) what = e.what();
  }
  const double t = since(start);
  const bool pass = !what.empty() && t < kGuardSeconds && suite_seconds < kSuiteSeconds;
  return {pass, "suite " + fmt(suite_seconds) + " s < " + fmt(kSuiteSeconds) + " s; guard at 2e6 " +
                    (what.empty() ? "did not fire" : "fired after " + fmt(t) + " s (" + what + ")")};
}

}  // namespace

int main() {
  const auto start = Clock::now();
  run(1, "validator soundness", validator_soundness);
  run(2, "bicomplex integrity", bicomplex_integrity);
  run(3, "classical oracle", classical_oracle);
  run(4, "cycle condition", cycle_condition);
  run(5, "chain equality", chain_equality);
  run(6, "idempotency and module identification", idempotency);
  run(7, "independence of the connection", independence);
  run(8, "structural properties", structural);
  run(9, "total-integral roundtrip", total_integral_roundtrip);
  run(10, "Galois detection", galois_detection);
  const double suite = since(start);
  run(11, "performance guard", [&] { return memory_guard(suite); });
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
