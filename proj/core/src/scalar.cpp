#include "ncg/scalar.hpp"

#include "ncg/error.hpp"

namespace ncg {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ActionMismatch: return "ActionMismatch";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::NotProjective: return "NotProjective";
    case ErrorKind::InvalidCoidempotent: return "InvalidCoidempotent";
    case ErrorKind::CompatibilityFailure: return "CompatibilityFailure";
    case ErrorKind::NotEntwinedModule: return "NotEntwinedModule";
    case ErrorKind::CoinvariantMismatch: return "CoinvariantMismatch";
    case ErrorKind::NotGalois: return "NotGalois";
    case ErrorKind::NotASection: return "NotASection";
    case ErrorKind::ImageNotCoinvariant: return "ImageNotCoinvariant";
    case ErrorKind::MembershipFailure: return "MembershipFailure";
    case ErrorKind::NoLocalDualSystem: return "NoLocalDualSystem";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::IotaNotInjective: return "IotaNotInjective";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::MemoryGuardExceeded: return "MemoryGuardExceeded";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
  }
  return "Error";
}

Scalar::Scalar(const mpq_class& v, uint32_t p) : v_(v), p_(p) {
  v_.canonicalize();
  reduce();
}

void Scalar::reduce() {
  if (p_ == 0) return;
  if (v_.get_den() == 1 && sgn(v_.get_num()) >= 0 && v_.get_num() < p_) return;
  mpz_class mod(p_);
  mpz_class num = v_.get_num() % mod;
  if (num < 0) num += mod;
  mpz_class den = v_.get_den() % mod;
  if (den == 0) throw Error(ErrorKind::FieldMismatch, "denominator divisible by p=" + std::to_string(p_));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  num = (num * inv) % mod;
  v_ = mpq_class(num);
}

void Scalar::adopt(uint32_t p) {
  if (p == p_ || p == 0) return;
  if (p_ != 0) throw Error(ErrorKind::FieldMismatch, "scalars from different fields");
  p_ = p;
  reduce();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.v_ = -r.v_;
  r.reduce();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  adopt(o.p_);
  if (o.p_ == p_) {
    v_ += o.v_;
  } else {
    v_ += o.in_field(p_).v_;
  }
  if (p_ != 0 && v_ >= p_) v_ -= p_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  adopt(o.p_);
  if (o.p_ == p_) {
    v_ -= o.v_;
  } else {
    v_ -= o.in_field(p_).v_;
  }
  if (p_ != 0 && sgn(v_) < 0) v_ += p_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  adopt(o.p_);
  if (o.p_ == p_) {
    v_ *= o.v_;
  } else {
    v_ *= o.in_field(p_).v_;
  }
  reduce();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  adopt(o.p_);
  Scalar d = o.p_ == p_ ? o : o.in_field(p_);
  if (d.is_zero()) throw Error(ErrorKind::Inconsistent, "division by zero");
  v_ /= d.v_;
  reduce();
  return *this;
}

Scalar Scalar::inverse() const {
  Scalar one(mpq_class(1), p_);
  return one / *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.v_ == b.v_;
  if (a.p_ == 0) return a.in_field(b.p_).v_ == b.v_;
  if (b.p_ == 0) return a.v_ == b.in_field(a.p_).v_;
  return false;
}

Scalar Scalar::in_field(uint32_t p) const {
  if (p == p_) return *this;
  if (p_ != 0 && p != 0) throw Error(ErrorKind::FieldMismatch, "scalars from different fields");
  Scalar r = *this;
  r.p_ = p;
  r.reduce();
  return r;
}

std::string Scalar::str() const { return v_.get_str(); }

Scalar Scalar::parse(const std::string& s, uint32_t p) {
  mpq_class v;
  if (s.empty() || v.set_str(s, 10) != 0) throw Error(ErrorKind::SchemaError, "bad scalar '" + s + "'");
  if (v.get_den() == 0) throw Error(ErrorKind::SchemaError, "zero denominator in '" + s + "'");
  return Scalar(v, p);
}

FieldSpec FieldSpec::prime(uint32_t p) {
  if (p < 2 || p >= (1u << 31) || !is_prime(p)) throw Error(ErrorKind::SchemaError, "field.p");
  FieldSpec f;
  f.kind = Kind::PrimeField;
  f.p = p;
  return f;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace ncg
