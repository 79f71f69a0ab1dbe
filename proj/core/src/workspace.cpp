#include "ncg/workspace.hpp"

#include <json.hpp>

namespace ncg {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaError, path + ": " + what);
}

std::string at_key(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at_index(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) schema(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) schema(at_key(path, it.key()), "unknown key");
  }
}

const json& need(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(at_key(path, key), "missing");
  return *it;
}

std::string get_name(const json& obj, const std::string& path, const char* key) {
  const json& v = need(obj, path, key);
  if (!v.is_string()) schema(at_key(path, key), "expected a name");
  return v.get<std::string>();
}

size_t get_size(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) schema(path, "expected a nonnegative integer");
  return v.get<size_t>();
}

class Reader {
 public:
  explicit Reader(uint32_t p) : p_(p) {}

  Scalar scalar(const json& v, const std::string& path) const {
    if (v.is_number_integer()) return Scalar(mpq_class(v.get<long>()), p_);
    if (!v.is_string()) schema(path, "expected a scalar string");
    try {
      return Scalar::parse(v.get<std::string>(), p_);
    } catch (const std::exception&) {
      schema(path, "malformed scalar");
    }
  }

  Vec vec(const json& v, size_t n, const std::string& path) const {
    if (!v.is_array() || v.size() != n) schema(path, "expected " + std::to_string(n) + " scalars");
    Vec out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(scalar(v[i], at_index(path, i)));
    return out;
  }

  // One row per source basis element.
  Matrix matrix(const json& v, size_t src, size_t dst, const std::string& path) const {
    if (!v.is_array() || v.size() != src) schema(path, "expected " + std::to_string(src) + " rows");
    Matrix m(dst, src);
    for (size_t j = 0; j < src; ++j) m.set_col(j, SparseVec::from_dense(vec(v[j], dst, at_index(path, j))));
    return m;
  }

 private:
  uint32_t p_;
};

json write_scalar(const Scalar& s) { return s.str(); }

json write_vec(const Vec& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(write_scalar(s));
  return out;
}

json write_matrix(const Matrix& m) {
  json out = json::array();
  for (size_t j = 0; j < m.cols(); ++j) out.push_back(write_vec(m.col(j).to_dense(m.rows())));
  return out;
}

template <class Map>
auto lookup(const Map& m, const std::string& name, const std::string& path) -> const typename Map::mapped_type& {
  auto it = m.find(name);
  if (it == m.end()) schema(path, "unknown reference '" + name + "'");
  return it->second;
}

// Construction errors from the core carry the structure path.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    throw Error(ErrorKind::ValidationError, path + ": " + e.what());
  }
}

TensorSpace connection_space(const Workspace& w, const Workspace::ConnectionEntry& c, const std::string& path) {
  const auto& co = lookup(w.coactions, c.extension, at_key(path, "extension"));
  const Algebra& a = w.algebra(co.module);
  if (c.t == "k") return tensor_power(a, Algebra::ground(a.modulus()), unit_map(a), 2);
  const auto& t = lookup(w.subalgebras, c.t, at_key(path, "T"));
  if (t.of != co.module) schema(at_key(path, "T"), "not a subalgebra of " + co.module);
  return tensor_power(a, t.sub.alg, t.sub.incl, 2);
}

}  // namespace

const Algebra& Workspace::algebra(const std::string& name) const {
  static thread_local std::map<uint32_t, Algebra> grounds;
  if (name == "k") {
    auto [it, _] = grounds.try_emplace(field.modulus(), Algebra::ground(field.modulus()));
    return it->second;
  }
  auto it = algebras.find(name);
  if (it == algebras.end()) throw Error(ErrorKind::SchemaError, "unknown algebra '" + name + "'");
  return it->second;
}

Workspace parse_workspace(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema("document", e.what());
  }
  allow_keys(doc, "", {"field", "algebras", "subalgebras", "bimodules", "corings", "entwinings", "coactions",
                       "coidempotents", "connections", "options"});
  Workspace w;

  const json& field = need(doc, "", "field");
  allow_keys(field, "field", {"kind", "p"});
  const std::string kind = get_name(field, "field", "kind");
  if (kind == "rationals") {
    if (field.contains("p")) schema("field.p", "not allowed for the rationals");
  } else if (kind == "prime") {
    const size_t p = get_size(need(field, "field", "p"), "field.p");
    if (p > 0xFFFFFFFFu || !is_prime(p)) schema("field.p", std::to_string(p) + " is not prime");
    w.field = FieldSpec::prime(static_cast<uint32_t>(p));
  } else {
    schema("field.kind", "expected 'rationals' or 'prime'");
  }
  const Reader rd(w.field.modulus());
  auto section = [&](const char* key) -> const json& {
    static const json empty = json::object();
    auto it = doc.find(key);
    if (it == doc.end()) return empty;
    if (!it->is_object()) schema(key, "expected an object");
    return *it;
  };

  if (doc.contains("options")) {
    const json& o = doc["options"];
    allow_keys(o, "options", {"max_degree", "memory_guard"});
    if (o.contains("max_degree")) w.options.max_degree = get_size(o["max_degree"], "options.max_degree");
    if (o.contains("memory_guard")) w.options.memory_guard = get_size(o["memory_guard"], "options.memory_guard");
  }

  for (const auto& [name, v] : section("algebras").items()) {
    const std::string path = "algebras." + name;
    if (name == "k") schema(path, "the name k is reserved for the ground field");
    allow_keys(v, path, {"dim", "mult", "unit"});
    const size_t n = get_size(need(v, path, "dim"), at_key(path, "dim"));
    const json& mult = need(v, path, "mult");
    if (!mult.is_array() || mult.size() != n) schema(at_key(path, "mult"), "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<Vec>> table(n);
    for (size_t i = 0; i < n; ++i) {
      const std::string row = at_index(at_key(path, "mult"), i);
      if (!mult[i].is_array() || mult[i].size() != n) schema(row, "expected " + std::to_string(n) + " products");
      for (size_t j = 0; j < n; ++j) table[i].push_back(rd.vec(mult[i][j], n, at_index(row, j)));
    }
    Vec unit = rd.vec(need(v, path, "unit"), n, at_key(path, "unit"));
    w.algebras.emplace(name, located(path, [&] { return Algebra::from_table(name, table, unit); }));
  }

  for (const auto& [name, v] : section("subalgebras").items()) {
    const std::string path = "subalgebras." + name;
    if (name == "k") schema(path, "the name k is reserved for the ground field");
    allow_keys(v, path, {"of", "basis"});
    const std::string of = get_name(v, path, "of");
    const Algebra& a = lookup(w.algebras, of, at_key(path, "of"));
    const json& basis = need(v, path, "basis");
    if (!basis.is_array()) schema(at_key(path, "basis"), "expected a list of vectors");
    std::vector<Vec> vs;
    for (size_t i = 0; i < basis.size(); ++i) vs.push_back(rd.vec(basis[i], a.dim(), at_index(at_key(path, "basis"), i)));
    Subalgebra s = located(path, [&] { return subalgebra_from_span(a, Subspace::span_dense(a.dim(), vs), name); });
    w.subalgebras.emplace(name, Workspace::SubalgebraEntry{of, std::move(s)});
  }

  for (const auto& [name, v] : section("bimodules").items()) {
    const std::string path = "bimodules." + name;
    allow_keys(v, path, {"left", "right", "dim", "left_action", "right_action"});
    const std::string left = get_name(v, path, "left"), right = get_name(v, path, "right");
    if (left != "k") lookup(w.algebras, left, at_key(path, "left"));
    if (right != "k") lookup(w.algebras, right, at_key(path, "right"));
    Bimodule m{name, w.algebra(left), w.algebra(right), get_size(need(v, path, "dim"), at_key(path, "dim")), {}, {}};
    auto actions = [&](const char* key, size_t count) {
      const json& arr = need(v, path, key);
      if (!arr.is_array() || arr.size() != count) schema(at_key(path, key), "expected " + std::to_string(count) + " matrices");
      std::vector<Matrix> out;
      for (size_t i = 0; i < count; ++i) out.push_back(rd.matrix(arr[i], m.dim, m.dim, at_index(at_key(path, key), i)));
      return out;
    };
    m.left_action = actions("left_action", m.left.dim());
    m.right_action = actions("right_action", m.right.dim());
    w.bimodules.emplace(name, Workspace::BimoduleEntry{left, right, std::move(m)});
  }

  for (const auto& [name, v] : section("corings").items()) {
    const std::string path = "corings." + name;
    allow_keys(v, path, {"over", "carrier", "delta", "eps"});
    const std::string over = get_name(v, path, "over"), carrier = get_name(v, path, "carrier");
    const auto& b = lookup(w.bimodules, carrier, at_key(path, "carrier"));
    if (b.left != over || b.right != over) schema(at_key(path, "carrier"), "must be an " + over + "-" + over + " bimodule");
    const size_t dcc = located(path, [&] { return TensorSpace(b.m).then(b.m).dim(); });
    Matrix delta = rd.matrix(need(v, path, "delta"), b.m.dim, dcc, at_key(path, "delta"));
    Matrix eps = rd.matrix(need(v, path, "eps"), b.m.dim, b.m.left.dim(), at_key(path, "eps"));
    w.corings.emplace(name, Workspace::CoringEntry{over, carrier, located(path, [&] { return make_coring(name, b.m, delta, eps); })});
  }

  for (const auto& [name, v] : section("entwinings").items()) {
    const std::string path = "entwinings." + name;
    allow_keys(v, path, {"coring", "ring", "psi", "psi_inv", "unit_map"});
    const std::string coring = get_name(v, path, "coring"), ring = get_name(v, path, "ring");
    const auto& c = lookup(w.corings, coring, at_key(path, "coring"));
    const Algebra& a = lookup(w.algebras, ring, at_key(path, "ring"));
    std::optional<Matrix> given_eta;
    Matrix eta;
    if (v.contains("unit_map")) {
      given_eta = rd.matrix(v["unit_map"], c.c.base.dim(), a.dim(), at_key(path, "unit_map"));
      eta = *given_eta;
    } else if (c.over == "k") {
      eta = unit_map(a);
    } else if (c.over == ring) {
      eta = Matrix::identity(a.dim());
    } else {
      schema(at_key(path, "unit_map"), "required when the base ring is neither k nor " + ring);
    }
    Entwining e = located(path, [&] { return make_entwining(a, eta, c.c); });
    e.psi = rd.matrix(need(v, path, "psi"), e.ca.dim(), e.ac.dim(), at_key(path, "psi"));
    if (v.contains("psi_inv")) e.psi_inv = rd.matrix(v["psi_inv"], e.ac.dim(), e.ca.dim(), at_key(path, "psi_inv"));
    w.entwinings.emplace(name, Workspace::EntwiningEntry{coring, ring, std::move(e), std::move(given_eta)});
  }

  for (const auto& [name, v] : section("coactions").items()) {
    const std::string path = "coactions." + name;
    allow_keys(v, path, {"module", "coring", "entwining", "matrix"});
    const std::string module = get_name(v, path, "module"), coring = get_name(v, path, "coring");
    lookup(w.corings, coring, at_key(path, "coring"));
    std::string entwining;
    if (v.contains("entwining")) {
      entwining = get_name(v, path, "entwining");
      const auto& e = lookup(w.entwinings, entwining, at_key(path, "entwining"));
      if (e.coring != coring || e.ring != module) schema(at_key(path, "entwining"), "does not entwine " + module + " with " + coring);
    } else {
      for (const auto& [en, e] : w.entwinings)
        if (e.coring == coring && e.ring == module) {
          if (!entwining.empty()) schema(at_key(path, "entwining"), "ambiguous, name one");
          entwining = en;
        }
      if (entwining.empty()) schema(path, "no entwining of " + module + " with " + coring);
    }
    const Entwining& e = w.entwinings.at(entwining).e;
    Matrix rho = rd.matrix(need(v, path, "matrix"), e.a.dim(), e.ac.dim(), at_key(path, "matrix"));
    w.coactions.emplace(name, Workspace::CoactionEntry{module, coring, entwining, std::move(rho)});
  }

  for (const auto& [name, v] : section("coidempotents").items()) {
    const std::string path = "coidempotents." + name;
    allow_keys(v, path, {"coring", "index_size", "entries"});
    const std::string coring = get_name(v, path, "coring");
    const auto& c = lookup(w.corings, coring, at_key(path, "coring"));
    const size_t n = get_size(need(v, path, "index_size"), at_key(path, "index_size"));
    const json& rows = need(v, path, "entries");
    const std::string epath = at_key(path, "entries");
    if (!rows.is_array() || rows.size() != n) schema(epath, "expected " + std::to_string(n) + " rows");
    Coidempotent e{name, n, {}};
    for (size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) schema(at_index(epath, i), "expected " + std::to_string(n) + " entries");
      for (size_t j = 0; j < n; ++j) e.entries.push_back(rd.vec(rows[i][j], c.c.dim(), at_index(at_index(epath, i), j)));
    }
    w.coidempotents.emplace(name, Workspace::CoidempotentEntry{coring, std::move(e)});
  }

  for (const auto& [name, v] : section("connections").items()) {
    const std::string path = "connections." + name;
    allow_keys(v, path, {"extension", "T", "matrix"});
    Workspace::ConnectionEntry c{get_name(v, path, "extension"), get_name(v, path, "T"), {}};
    const TensorSpace att = located(path, [&] { return connection_space(w, c, path); });
    const auto& co = w.coactions.at(c.extension);
    c.ell = rd.matrix(need(v, path, "matrix"), w.corings.at(co.coring).c.dim(), att.dim(), at_key(path, "matrix"));
    w.connections.emplace(name, std::move(c));
  }
  return w;
}

std::string serialize_workspace(const Workspace& w) {
  json doc;
  doc["field"] = w.field.kind == FieldSpec::Kind::PrimeField ? json{{"kind", "prime"}, {"p", w.field.p}}
                                                              : json{{"kind", "rationals"}};
  doc["options"] = {{"max_degree", w.options.max_degree}, {"memory_guard", w.options.memory_guard}};
  json& algebras = doc["algebras"] = json::object();
  for (const auto& [name, a] : w.algebras) {
    json mult = json::array();
    for (size_t i = 0; i < a.dim(); ++i) {
      json row = json::array();
      for (size_t j = 0; j < a.dim(); ++j) row.push_back(write_vec(a.product(i, j).to_dense(a.dim())));
      mult.push_back(std::move(row));
    }
    algebras[name] = {{"dim", a.dim()}, {"mult", std::move(mult)}, {"unit", write_vec(a.unit())}};
  }
  json& subalgebras = doc["subalgebras"] = json::object();
  for (const auto& [name, s] : w.subalgebras) subalgebras[name] = {{"of", s.of}, {"basis", write_matrix(s.sub.incl)}};
  json& bimodules = doc["bimodules"] = json::object();
  for (const auto& [name, b] : w.bimodules) {
    json left = json::array(), right = json::array();
    for (const auto& m : b.m.left_action) left.push_back(write_matrix(m));
    for (const auto& m : b.m.right_action) right.push_back(write_matrix(m));
    bimodules[name] = {{"left", b.left}, {"right", b.right}, {"dim", b.m.dim}, {"left_action", std::move(left)},
                       {"right_action", std::move(right)}};
  }
  json& corings = doc["corings"] = json::object();
  for (const auto& [name, c] : w.corings)
    corings[name] = {{"over", c.over}, {"carrier", c.carrier}, {"delta", write_matrix(c.c.delta)}, {"eps", write_matrix(c.c.eps)}};
  json& entwinings = doc["entwinings"] = json::object();
  for (const auto& [name, e] : w.entwinings) {
    json& out = entwinings[name] = {{"coring", e.coring}, {"ring", e.ring}, {"psi", write_matrix(e.e.psi)}};
    if (e.e.psi_inv) out["psi_inv"] = write_matrix(*e.e.psi_inv);
    if (e.unit_map) out["unit_map"] = write_matrix(*e.unit_map);
  }
  json& coactions = doc["coactions"] = json::object();
  for (const auto& [name, c] : w.coactions)
    coactions[name] = {{"module", c.module}, {"coring", c.coring}, {"entwining", c.entwining}, {"matrix", write_matrix(c.rho)}};
  json& coidempotents = doc["coidempotents"] = json::object();
  for (const auto& [name, c] : w.coidempotents) {
    json rows = json::array();
    for (size_t i = 0; i < c.e.n; ++i) {
      json row = json::array();
      for (size_t j = 0; j < c.e.n; ++j) row.push_back(write_vec(c.e.at(i, j)));
      rows.push_back(std::move(row));
    }
    coidempotents[name] = {{"coring", c.coring}, {"index_size", c.e.n}, {"entries", std::move(rows)}};
  }
  json& connections = doc["connections"] = json::object();
  for (const auto& [name, c] : w.connections)
    connections[name] = {{"extension", c.extension}, {"T", c.t}, {"matrix", write_matrix(c.ell)}};
  return doc.dump(2) + "\n";
}

Workspace workspace_from_fixture(const Fixture& f) {
  const EntwinedExtension& x = f.x;
  const Entwining& e = x.e;
  Workspace w;
  w.field = f.field;
  w.algebras.emplace("A", e.a.renamed("A"));
  std::string over = "R";
  std::optional<Matrix> eta;
  if (e.base().dim() == 1) {
    over = "k";
  } else if (e.base().same_structure(e.a) && e.eta == Matrix::identity(e.a.dim())) {
    over = "A";
  } else {
    w.algebras.emplace("R", e.base().renamed("R"));
    eta = e.eta;
  }
  w.bimodules.emplace("C", Workspace::BimoduleEntry{over, over, e.coring.carrier});
  w.corings.emplace("C", Workspace::CoringEntry{over, "C", e.coring});
  w.entwinings.emplace("psi", Workspace::EntwiningEntry{"C", "A", e, eta});
  w.coactions.emplace("rho", Workspace::CoactionEntry{"A", "C", "psi", x.rho});
  for (const auto& [name, s] : f.subalgebras)
    if (name != "k") w.subalgebras.emplace(name, Workspace::SubalgebraEntry{"A", s});
  for (const auto& [name, c] : f.coidempotents) w.coidempotents.emplace(name, Workspace::CoidempotentEntry{"C", c});
  for (const auto& [name, sc] : f.connections) {
    std::string t;
    for (const auto& [sn, s] : f.subalgebras)
      if (s.span == sc.t.span) t = sn;
    if (t.empty()) throw Error(ErrorKind::ValidationError, "connection " + name + " is over an unnamed subalgebra");
    w.connections.emplace(name, Workspace::ConnectionEntry{"rho", t, sc.ell});
  }
  return w;
}

namespace {

// The coring element e with ρ(a) = ψ(e⊗a), when there is one.
std::optional<Vec> inducing_grouplike(const Entwining& e, const Matrix& rho) {
  const Vec one = e.a.unit();
  std::vector<SparseVec> cols;
  for (size_t c = 0; c < e.coring.dim(); ++c) cols.push_back(e.ac.embed({one, unit_vec(e.coring.dim(), c)}));
  const Matrix one_tensor = Matrix::from_columns(e.ac.dim(), std::move(cols));
  auto g = solve(one_tensor, rho.apply(SparseVec::from_dense(one)));
  if (!g) return std::nullopt;
  Vec gd = g->to_dense(e.coring.dim());
  if (!verify_grouplike(e.coring, gd).ok()) return std::nullopt;
  for (size_t a = 0; a < e.a.dim(); ++a)
    if (!(e.psi.apply(e.ca.embed({gd, e.a.basis(a)})) == rho.col(a))) return std::nullopt;
  return gd;
}

Entwining with_inverse(const Entwining& e) { return e.psi_inv ? e : invert_entwining(e); }

}  // namespace

EntwinedExtension workspace_extension(const Workspace& w, const std::string& coaction, bool strict) {
  auto it = w.coactions.find(coaction);
  if (it == w.coactions.end()) throw Error(ErrorKind::SchemaError, "unknown coaction '" + coaction + "'");
  const Entwining e = with_inverse(w.entwinings.at(it->second.entwining).e);
  const Matrix& rho = it->second.rho;
  if (auto g = inducing_grouplike(e, rho)) {
    try {
      return extension_from_grouplike(e, *g);
    } catch (const Error&) {
      if (strict) throw;
    }
  }
  return strict ? make_extension(e, rho) : pre_extension(e, rho);
}

Subalgebra workspace_subalgebra(const Workspace& w, const EntwinedExtension& x, const std::string& name) {
  if (name == "k") return scalars_in(x.e.a);
  auto it = w.subalgebras.find(name);
  if (it == w.subalgebras.end()) {
    if (name == "B") return x.b;
    throw Error(ErrorKind::SchemaError, "unknown subalgebra '" + name + "'");
  }
  if (!w.algebra(it->second.of).same_structure(x.e.a))
    throw Error(ErrorKind::SchemaError, "subalgebra '" + name + "' lives in " + it->second.of);
  return it->second.sub;
}

StrongConnection workspace_connection(const Workspace& w, const EntwinedExtension& x, const std::string& name) {
  auto it = w.connections.find(name);
  if (it == w.connections.end()) throw Error(ErrorKind::SchemaError, "unknown connection '" + name + "'");
  Subalgebra t = workspace_subalgebra(w, x, it->second.t);
  TensorSpace att = tensor_power(x.e.a, t.alg, t.incl, 2);
  return StrongConnection{std::move(t), std::move(att), it->second.ell};
}

Report validate_workspace(const Workspace& w) {
  Report rep;
  auto guarded = [&](const std::string& prefix, auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      rep.add(prefix + "construction", e.what());
    }
  };
  for (const auto& [name, a] : w.algebras) rep.merge(validate_algebra(a), "algebra " + name + ": ");
  for (const auto& [name, b] : w.bimodules) rep.merge(validate_bimodule(b.m), "bimodule " + name + ": ");
  for (const auto& [name, c] : w.corings) rep.merge(validate_coring(c.c), "coring " + name + ": ");
  for (const auto& [name, en] : w.entwinings) {
    const std::string prefix = "entwining " + name + ": ";
    rep.merge(validate_morphism(en.e.base(), en.e.a, en.e.eta), prefix + "unit map ");
    rep.merge(validate_entwining(en.e), prefix);
    if (en.e.psi_inv) {
      const Matrix left = *en.e.psi_inv * en.e.psi, right = en.e.psi * *en.e.psi_inv;
      const Matrix id_ca = Matrix::identity(en.e.ca.dim()), id_ac = Matrix::identity(en.e.ac.dim());
      for (size_t j = 0; j < left.cols(); ++j)
        if (!(left.col(j) == id_ca.col(j))) rep.add(prefix + "ψ⁻¹ψ = id", "C⊗A basis " + std::to_string(j));
      for (size_t j = 0; j < right.cols(); ++j)
        if (!(right.col(j) == id_ac.col(j))) rep.add(prefix + "ψψ⁻¹ = id", "A⊗C basis " + std::to_string(j));
      if (left == id_ca && right == id_ac) rep.merge(validate_left_entwining(en.e), prefix + "inverse ");
    }
  }
  for (const auto& [name, c] : w.coactions) {
    const std::string prefix = "coaction " + name + ": ";
    guarded(prefix, [&] {
      EntwinedExtension x = workspace_extension(w, name, false);
      rep.merge(x.checks, prefix);
      if (x.entwined) workspace_extension(w, name, true);
    });
  }
  for (const auto& [name, c] : w.coidempotents)
    rep.merge(validate_coidempotent(w.corings.at(c.coring).c, c.e), "coidempotent " + name + ": ");
  for (const auto& [name, c] : w.connections) {
    const std::string prefix = "connection " + name + ": ";
    // A coaction that fails to give an extension is already reported above.
    try {
      if (!workspace_extension(w, c.extension, false).entwined) continue;
    } catch (const Error&) {
      continue;
    }
    guarded(prefix, [&] {
      EntwinedExtension x = workspace_extension(w, c.extension, true);
      StrongConnection sc = workspace_connection(w, x, name);
      if (!x.b.span.contains(sc.t.span)) rep.add(prefix + "T inside B", c.t);
      rep.merge(verify_strong_connection(x, sc), prefix);
    });
  }
  return rep;
}

}  // namespace ncg
