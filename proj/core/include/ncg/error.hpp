#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ncg {

enum class ErrorKind {
  DimensionMismatch,
  FieldMismatch,
  ActionMismatch,
  Inconsistent,
  NotBijective,
  NotProjective,
  InvalidCoidempotent,
  CompatibilityFailure,
  NotEntwinedModule,
  CoinvariantMismatch,
  NotGalois,
  NotASection,
  ImageNotCoinvariant,
  MembershipFailure,
  NoLocalDualSystem,
  NotIdempotent,
  NotACycle,
  IotaNotInjective,
  DegreeOutOfRange,
  DegreeMismatch,
  MemoryGuardExceeded,
  SchemaError,
  ValidationError,
  UnknownCommand,
  UnknownFixture,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// One located failure of an identity.
struct Residual {
  std::string check;
  std::string location;
};

// Validators never throw; they collect residuals.
class Report {
 public:
  void add(std::string check, std::string location) {
    residuals_.push_back({std::move(check), std::move(location)});
  }
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& r : other.residuals_) residuals_.push_back({prefix + r.check, r.location});
  }
  bool ok() const { return residuals_.empty(); }
  const std::vector<Residual>& residuals() const { return residuals_; }

 private:
  std::vector<Residual> residuals_;
};

}  // namespace ncg
