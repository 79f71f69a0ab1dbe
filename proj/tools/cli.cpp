#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "ncg/workspace.hpp"

namespace ncg::cli {

using nlohmann::json;

namespace {

struct Flags {
  std::string workspace, out, coidempotent, connection, t, extension, fixture;
  std::optional<size_t> degree;
  bool timing = false;
};

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::SchemaError:
    case ErrorKind::ValidationError:
    case ErrorKind::UnknownCommand:
    case ErrorKind::UnknownFixture:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::FieldMismatch:
    case ErrorKind::ActionMismatch:
    case ErrorKind::DegreeOutOfRange:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::MemoryGuardExceeded:
      return true;
    default:
      return false;
  }
}

json scalars(const Vec& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

json rows(const Matrix& m) {
  json out = json::array();
  for (size_t j = 0; j < m.cols(); ++j) out.push_back(scalars(m.col(j).to_dense(m.rows())));
  return out;
}

json residuals(const Report& r) {
  json out = json::array();
  for (const auto& res : r.residuals()) out.push_back({{"check", res.check}, {"location", res.location}});
  return out;
}

// {degree, components: [{p, q, coords}]} with zero blocks omitted.
json chain(const TotalComplex& tc, size_t n, const SparseVec& c) {
  json comps = json::array();
  for (size_t p = 0; p <= n; ++p) {
    SparseVec b = tc.block(n, p, c);
    if (b.empty()) continue;
    comps.push_back({{"p", p}, {"q", n - p}, {"coords", scalars(b.to_dense(tc.spaces[n - p].dim()))}});
  }
  return {{"degree", n}, {"components", std::move(comps)}};
}

class Session {
 public:
  Session(std::string command, const Flags& f) : command_(std::move(command)), f_(f) {
    report_["command"] = command_;
    json args = json::object();
    if (!f.workspace.empty()) args["workspace"] = f.workspace;
    if (!f.extension.empty()) args["extension"] = f.extension;
    if (!f.t.empty()) args["T"] = f.t;
    if (!f.coidempotent.empty()) args["coidempotent"] = f.coidempotent;
    if (!f.connection.empty()) args["connection"] = f.connection;
    if (f.degree) args["degree"] = *f.degree;
    report_["arguments"] = std::move(args);
  }

  json& report() { return report_; }
  const Flags& flags() const { return f_; }

  const Workspace& workspace() {
    if (!ws_) {
      if (f_.workspace.empty()) throw Error(ErrorKind::SchemaError, "--workspace is required");
      std::ifstream in(f_.workspace);
      if (!in) throw Error(ErrorKind::SchemaError, "cannot read " + f_.workspace);
      std::stringstream ss;
      ss << in.rdbuf();
      ws_ = parse_workspace(ss.str());
    }
    return *ws_;
  }

  // Computation commands need every structure valid. `tolerate_coaction`
  // lets the entwined-module residuals of the coaction through, for the
  // commands that report them as a verdict.
  void require_valid(bool tolerate_coaction = false) {
    Report r = validate_workspace(workspace());
    Report fatal;
    for (const auto& res : r.residuals())
      if (!(tolerate_coaction && res.check.rfind("coaction ", 0) == 0)) fatal.add(res.check, res.location);
    if (!fatal.ok()) {
      report_["residuals"] = residuals(fatal);
      throw Error(ErrorKind::ValidationError, fatal.residuals()[0].check + " at " + fatal.residuals()[0].location);
    }
  }

  const std::string& extension_name() {
    if (ext_name_.empty()) {
      const Workspace& w = workspace();
      if (!f_.extension.empty()) {
        if (!w.coactions.count(f_.extension)) throw Error(ErrorKind::SchemaError, "unknown coaction '" + f_.extension + "'");
        ext_name_ = f_.extension;
      } else if (w.coactions.size() == 1) {
        ext_name_ = w.coactions.begin()->first;
      } else {
        throw Error(ErrorKind::SchemaError, w.coactions.empty() ? "the workspace has no coaction" : "--extension is required");
      }
      report_["extension"] = ext_name_;
    }
    return ext_name_;
  }

  const EntwinedExtension& extension() {
    if (!x_) x_ = workspace_extension(workspace(), extension_name(), true);
    return *x_;
  }

  Subalgebra t_or(const std::string& fallback) {
    const std::string name = f_.t.empty() ? fallback : f_.t;
    report_["T"] = name;
    return workspace_subalgebra(workspace(), extension(), name);
  }

  const Coidempotent& coidempotent() {
    const Workspace& w = workspace();
    if (f_.coidempotent.empty()) throw Error(ErrorKind::SchemaError, "--coidempotent is required");
    auto it = w.coidempotents.find(f_.coidempotent);
    if (it == w.coidempotents.end()) throw Error(ErrorKind::SchemaError, "unknown coidempotent '" + f_.coidempotent + "'");
    if (it->second.coring != w.coactions.at(extension_name()).coring)
      throw Error(ErrorKind::SchemaError, "coidempotent '" + f_.coidempotent + "' is over another coring");
    return it->second.e;
  }

  // The named connection, the only one on the extension, or a solved one at
  // --T (default B). Nothing when none exists.
  std::optional<StrongConnection> connection() {
    const Workspace& w = workspace();
    const std::string& ext = extension_name();
    if (!f_.connection.empty()) {
      auto it = w.connections.find(f_.connection);
      if (it == w.connections.end()) throw Error(ErrorKind::SchemaError, "unknown connection '" + f_.connection + "'");
      if (it->second.extension != ext) throw Error(ErrorKind::SchemaError, "connection '" + f_.connection + "' is on " + it->second.extension);
      report_["connection"] = f_.connection;
      return workspace_connection(w, extension(), f_.connection);
    }
    std::vector<std::string> named;
    for (const auto& [name, c] : w.connections)
      if (c.extension == ext && (f_.t.empty() || c.t == f_.t)) named.push_back(name);
    if (named.size() > 1) throw Error(ErrorKind::SchemaError, "--connection is required");
    if (named.size() == 1) {
      report_["connection"] = named[0];
      return workspace_connection(w, extension(), named[0]);
    }
    Subalgebra t = t_or("B");
    auto sol = solve_strong_connection(extension(), t);
    report_["connection"] = "solved";
    if (!sol) return std::nullopt;
    return sol->particular;
  }

  StrongConnection connection_or_fail() {
    auto sc = connection();
    if (!sc) throw Error(ErrorKind::Inconsistent, "no strong connection exists");
    return *sc;
  }

  // A left B-linear right T-linear retraction A → B derived from the connection.
  Matrix retraction(const StrongConnection& sc) {
    auto f = retraction_onto_b(extension(), sc.t);
    if (!f) throw Error(ErrorKind::NotProjective, "no right T-linear retraction A → B");
    return normalization_and_splitting(extension(), sc, *f).phi;
  }

  size_t guard() { return workspace().options.memory_guard; }

 private:
  std::string command_;
  Flags f_;
  json report_;
  std::optional<Workspace> ws_;
  std::string ext_name_;
  std::optional<EntwinedExtension> x_;
};

using Command = std::function<bool(Session&)>;

bool cmd_validate(Session& s) {
  const Workspace& w = s.workspace();
  Report r = validate_workspace(w);
  s.report()["structures"] = {{"algebras", w.algebras.size()},     {"subalgebras", w.subalgebras.size()},
                              {"bimodules", w.bimodules.size()},   {"corings", w.corings.size()},
                              {"entwinings", w.entwinings.size()}, {"coactions", w.coactions.size()},
                              {"coidempotents", w.coidempotents.size()}, {"connections", w.connections.size()}};
  s.report()["residuals"] = residuals(r);
  return r.ok();
}

// Lenient when A fails to be an entwined module; the failure is the verdict.
const EntwinedExtension& lenient_extension(Session& s, std::optional<EntwinedExtension>& holder) {
  s.require_valid(true);
  holder = workspace_extension(s.workspace(), s.extension_name(), false);
  if (!holder->checks.ok()) s.report()["residuals"] = residuals(holder->checks);
  return *holder;
}

bool cmd_coinvariants(Session& s) {
  std::optional<EntwinedExtension> holder;
  const EntwinedExtension& x = lenient_extension(s, holder);
  s.report()["dim"] = x.b.alg.dim();
  s.report()["basis"] = rows(x.b.incl);
  s.report()["entwined_module"] = x.entwined;
  return x.entwined;
}

bool cmd_galois(Session& s) {
  std::optional<EntwinedExtension> holder;
  const EntwinedExtension& x = lenient_extension(s, holder);
  CanonicalMaps m = canonical_maps(x);
  json& r = s.report();
  r["entwined_module"] = x.entwined;
  r["coinvariants_dim"] = x.b.alg.dim();
  r["dim_A_over_B_A"] = m.abb.dim();
  r["dim_A_over_R_C"] = m.can_b.rows();
  r["can_rank"] = rank(m.can_b);
  r["galois"] = m.galois;
  if (m.can_inv) r["can_inverse"] = rows(*m.can_inv);
  if (!m.inverse_checks.ok()) r["inverse_residuals"] = residuals(m.inverse_checks);
  return m.galois && x.entwined && m.inverse_checks.ok();
}

bool cmd_connection_solve(Session& s) {
  s.require_valid();
  Subalgebra t = s.t_or("k");
  auto sol = solve_strong_connection(s.extension(), t);
  json& r = s.report();
  r["exists"] = sol.has_value();
  if (!sol) return false;
  Report check = verify_strong_connection(s.extension(), sol->particular);
  r["solution_dim"] = sol->space.dim();
  r["particular"] = rows(sol->particular.ell);
  r["residuals"] = residuals(check);
  return check.ok();
}

bool cmd_connection_verify(Session& s) {
  s.require_valid();
  if (s.flags().connection.empty()) throw Error(ErrorKind::SchemaError, "--connection is required");
  StrongConnection sc = s.connection_or_fail();
  Report check = verify_strong_connection(s.extension(), sc);
  s.report()["residuals"] = residuals(check);
  return check.ok();
}

bool cmd_integral(Session& s) {
  s.require_valid();
  const EntwinedExtension& x = s.extension();
  if (!x.coring_grouplike) throw Error(ErrorKind::SchemaError, "total integrals need a coaction induced by a grouplike");
  TotalIntegralResult res = total_integral(x);
  json& r = s.report();
  r["exists"] = res.integral.has_value();
  r["relative_injective"] = res.relative_injective;
  r["split_sufficient"] = res.split_sufficient;
  if (!res.integral) return false;
  r["j"] = rows(res.integral->j);
  r["residuals"] = residuals(res.integral->checks);
  return res.integral->checks.ok() && res.relative_injective;
}

bool cmd_tflat(Session& s) {
  s.require_valid();
  Subalgebra t = s.t_or("k");
  TFlatness f = tflatness_check(s.extension(), t);
  json& r = s.report();
  r["flat"] = f.flat;
  r["injective"] = f.injective;
  r["surjective"] = f.surjective;
  r["t_flat"] = f.t_flat;
  r["dim_B_mod_commutators"] = f.quotient_b;
  r["dim_A_mod_commutators"] = f.quotient_a;
  r["kernel_dim"] = f.kernel_dim;
  r["residuals"] = residuals(f.checks);
  return f.t_flat && f.checks.ok();
}

bool cmd_hc(Session& s) {
  s.require_valid();
  const EntwinedExtension& x = s.extension();
  Subalgebra t = s.t_or("k");
  const size_t top = s.flags().degree.value_or(s.workspace().options.max_degree);
  TotalComplex tc = build_total_complex(x.b.alg, t_inside_b(x, t), top, s.guard());
  Report integrity = verify_total_complex(tc);
  json dims = json::array();
  for (size_t n = 0; n <= top; ++n) dims.push_back(homology(tc, n).dim());
  json& r = s.report();
  r["max_degree"] = top;
  r["dims"] = std::move(dims);
  r["residuals"] = residuals(integrity);
  return integrity.ok();
}

bool cmd_chg(Session& s) {
  s.require_valid();
  const EntwinedExtension& x = s.extension();
  const Coidempotent& e = s.coidempotent();
  auto sc = s.connection();
  json& r = s.report();
  if (!sc) {
    r["exists"] = false;
    return false;
  }
  const size_t n = s.flags().degree.value_or(0);
  ChgComponents comps = chg_components(x, *sc, e, 2 * n, s.guard());
  TotalComplex tc = build_total_complex(x.b.alg, t_inside_b(x, sc->t), 2 * n, s.guard());
  r["n"] = n;
  try {
    ChernCycle z = assemble_and_class(comps.comps, n, tc);
    r["chain"] = chain(tc, 2 * n, z.cycle);
    r["is_cycle"] = true;
    r["class"] = scalars(z.coords);
    r["hc_dim"] = z.coords.size();
    json warnings = json::array();
    for (const auto& w : comps.warnings) warnings.push_back(w);
    for (const auto& w : z.warnings) warnings.push_back(w);
    r["warnings"] = std::move(warnings);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotACycle) throw;
    r["is_cycle"] = false;
    return false;
  }
  return true;
}

bool cmd_idempotent(Session& s) {
  s.require_valid();
  const EntwinedExtension& x = s.extension();
  const Coidempotent& e = s.coidempotent();
  StrongConnection sc = s.connection_or_fail();
  LocalDualSystem d = local_dual_system(x, sc, e);
  IdempotentE m = idempotent_E(x, sc, e, d, s.retraction(sc));
  json entries = json::array();
  for (size_t a = 0; a < m.size; ++a) {
    json row = json::array();
    for (size_t b = 0; b < m.size; ++b) row.push_back(scalars(m.at(a, b)));
    entries.push_back(std::move(row));
  }
  json& r = s.report();
  r["size"] = m.size;
  r["dual_basis_size"] = d.x.size();
  r["E"] = std::move(entries);
  r["residuals"] = residuals(m.checks);
  return m.checks.ok();
}

bool cmd_compare(Session& s) {
  s.require_valid();
  const EntwinedExtension& x = s.extension();
  const Coidempotent& e = s.coidempotent();
  StrongConnection sc = s.connection_or_fail();
  const size_t top = s.flags().degree.value_or(4);
  ChgComponents comps = chg_components(x, sc, e, top, s.guard());
  IdempotentE m = idempotent_E(x, sc, e, local_dual_system(x, sc, e), s.retraction(sc));
  std::vector<SparseVec> ch = ch_components(m.entries, m.size, comps.b_spaces);
  Report cmp = compare_chg_ch(comps.comps, ch);
  json equal = json::array();
  for (size_t l = 0; l <= top; ++l) equal.push_back(comps.comps[l] == ch[l]);
  json& r = s.report();
  r["max_l"] = top;
  r["equal"] = std::move(equal);
  r["residuals"] = residuals(cmp);
  return cmp.ok() && m.checks.ok();
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out);
  if (!file) throw Error(ErrorKind::SchemaError, "cannot write " + f.out);
  file << text;
}

int execute(const std::string& name, const Command& cmd, const Flags& f, std::ostream& out, std::ostream& err) {
  Session s(name, f);
  const auto start = std::chrono::steady_clock::now();
  int code = kPass;
  try {
    const bool verdict = cmd(s);
    s.report()["verdict"] = verdict;
    code = verdict ? kPass : kNegative;
  } catch (const Error& e) {
    if (is_input_error(e.kind())) {
      json r = {{"command", name}, {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
      if (s.report().contains("residuals")) r["residuals"] = s.report()["residuals"];
      err << r.dump(2) << "\n";
      return kInputError;
    }
    s.report()["verdict"] = false;
    s.report()["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    code = kNegative;
  }
  if (!s.report().contains("residuals")) s.report()["residuals"] = json::array();
  if (f.timing)
    s.report()["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  emit(f, s.report().dump(2) + "\n", out);
  return code;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "coinvariants", "galois", "connection", "integral", "tflat",
                                              "hc",       "chg",          "idempotent", "compare", "fixture"};
  return names;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto input_error = [&](ErrorKind k, const std::string& msg) {
    err << json{{"error", {{"kind", to_string(k)}, {"message", msg}}}}.dump(2) << "\n";
    return kInputError;
  };
  if (!args.empty() && args[0][0] != '-' &&
      std::find(command_names().begin(), command_names().end(), args[0]) == command_names().end())
    return input_error(ErrorKind::UnknownCommand, args[0]);

  Flags f;
  CLI::App app{"Exact computations for entwined extensions, strong connections and the Chern-Galois character", "ncg"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--workspace", f.workspace, "Workspace document")->check(CLI::ExistingFile);
    c->add_option("--out", f.out, "Write the report here instead of stdout");
    c->add_option("--extension", f.extension, "Coaction defining the extension");
    c->add_flag("--timing", f.timing, "Add wall-clock timing to the report");
  };
  auto with_t = [&](CLI::App* c) { c->add_option("--T", f.t, "Subalgebra T (k, B or a named subalgebra)"); };
  auto with_chern = [&](CLI::App* c) {
    c->add_option("--coidempotent", f.coidempotent, "Coidempotent matrix")->required();
    c->add_option("--connection", f.connection, "Strong connection");
  };

  std::vector<std::pair<CLI::App*, std::pair<std::string, Command>>> table;
  auto add = [&](CLI::App* parent, const std::string& name, const std::string& desc, const std::string& full,
                 Command cmd) {
    CLI::App* c = parent->add_subcommand(name, desc);
    common(c);
    table.push_back({c, {full, std::move(cmd)}});
    return c;
  };
  add(&app, "validate", "Run every validator", "validate", cmd_validate);
  add(&app, "coinvariants", "Coinvariant subalgebra B", "coinvariants", cmd_coinvariants);
  add(&app, "galois", "Canonical map can_A and its inverse", "galois", cmd_galois);
  CLI::App* conn = app.add_subcommand("connection", "Strong connections");
  conn->require_subcommand(1);
  with_t(add(conn, "solve", "Solve for a strong T-connection", "connection solve", cmd_connection_solve));
  add(conn, "verify", "Verify a named strong connection", "connection verify", cmd_connection_verify)
      ->add_option("--connection", f.connection, "Strong connection");
  add(&app, "integral", "Total integral and relative injectivity", "integral", cmd_integral);
  with_t(add(&app, "tflat", "T-flatness of the extension", "tflat", cmd_tflat));
  CLI::App* hc = add(&app, "hc", "Relative cyclic homology HC_n(B|T)", "hc", cmd_hc);
  with_t(hc);
  hc->add_option("--degree", f.degree, "Top degree");
  CLI::App* chg = add(&app, "chg", "Chern-Galois cycle in degree 2n and its class", "chg", cmd_chg);
  with_t(chg);
  with_chern(chg);
  chg->add_option("--degree", f.degree, "n");
  CLI::App* idem = add(&app, "idempotent", "Idempotent matrix E", "idempotent", cmd_idempotent);
  with_t(idem);
  with_chern(idem);
  CLI::App* cmp = add(&app, "compare", "Compare the Chern cycle of E with the Chern-Galois chain", "compare", cmd_compare);
  with_t(cmp);
  with_chern(cmp);
  cmp->add_option("--degree", f.degree, "Highest component l");
  CLI::App* fix = app.add_subcommand("fixture", "Emit a fixture workspace document");
  fix->add_option("name", f.fixture, "Fixture name")->required();
  fix->add_option("--out", f.out, "Write the document here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    return input_error(ErrorKind::SchemaError, e.what());
  }

  if (fix->parsed()) {
    try {
      emit(f, serialize_workspace(workspace_from_fixture(make_fixture(f.fixture))), out);
      return kPass;
    } catch (const Error& e) {
      return input_error(e.kind(), e.what());
    }
  }
  for (const auto& [app_ptr, entry] : table)
    if (app_ptr->parsed()) return execute(entry.first, entry.second, f, out, err);
  return input_error(ErrorKind::UnknownCommand, args.empty() ? "" : args[0]);
}

}  // namespace ncg::cli
