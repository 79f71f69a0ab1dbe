#pragma once

#include <map>
#include <optional>
#include <string>

#include "ncg/fixtures.hpp"

namespace ncg {

// A declarative workspace: named structures that reference each other by
// name. The ground field is always available as the algebra "k".
struct Workspace {
  struct SubalgebraEntry {
    std::string of;
    Subalgebra sub;
  };
  struct BimoduleEntry {
    std::string left, right;
    Bimodule m;
  };
  struct CoringEntry {
    std::string over, carrier;
    Coring c;
  };
  struct EntwiningEntry {
    std::string coring, ring;
    Entwining e;                    // ψ⁻¹ installed when the document gives one
    std::optional<Matrix> unit_map;  // set only when R is neither k nor the ring
  };
  struct CoactionEntry {
    std::string module, coring, entwining;
    Matrix rho;
  };
  struct CoidempotentEntry {
    std::string coring;
    Coidempotent e;
  };
  struct ConnectionEntry {
    std::string extension, t;
    Matrix ell;
  };
  struct Options {
    size_t max_degree = 5;
    size_t memory_guard = CircularSpace::kDefaultGuard;
  };

  FieldSpec field;
  std::map<std::string, Algebra> algebras;
  std::map<std::string, SubalgebraEntry> subalgebras;
  std::map<std::string, BimoduleEntry> bimodules;
  std::map<std::string, CoringEntry> corings;
  std::map<std::string, EntwiningEntry> entwinings;
  std::map<std::string, CoactionEntry> coactions;
  std::map<std::string, CoidempotentEntry> coidempotents;
  std::map<std::string, ConnectionEntry> connections;
  Options options;

  const Algebra& algebra(const std::string& name) const;
};

// SchemaError whose message starts with the offending path ("field.p",
// "corings.C.delta[3]"), or a construction error from the core.
Workspace parse_workspace(const std::string& text);
// Canonical text: sorted keys, scalars reduced, two-space indentation.
std::string serialize_workspace(const Workspace& w);

Workspace workspace_from_fixture(const Fixture& f);

// Every validator on every structure; check names are prefixed with
// "<kind> <name>: ".
Report validate_workspace(const Workspace& w);

// The extension defined by a coaction. Strict builds throw when A is not an
// entwined module; lenient ones record that in `checks`. A coaction induced
// by a grouplike of the coring is recognized so total integrals apply.
EntwinedExtension workspace_extension(const Workspace& w, const std::string& coaction, bool strict = true);
// "k" or a subalgebra of the coaction's algebra.
Subalgebra workspace_subalgebra(const Workspace& w, const EntwinedExtension& x, const std::string& name);
StrongConnection workspace_connection(const Workspace& w, const EntwinedExtension& x, const std::string& name);

}  // namespace ncg
