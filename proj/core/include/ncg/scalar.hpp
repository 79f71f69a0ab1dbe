#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ncg {

// Exact field element. Modulus 0 means the rationals; a nonzero modulus p
// means F_p with the value kept as an integer in [0, p). A modulus-0 value
// combined with an F_p value is coerced into F_p, so integer literals work
// in either field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : v_(v) {}  // NOLINT implicit literals
  Scalar(int v) : v_(v) {}   // NOLINT
  explicit Scalar(const mpq_class& v, uint32_t p = 0);

  uint32_t modulus() const { return p_; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  // Total order on representatives, used for canonical sorting only.
  friend bool operator<(const Scalar& a, const Scalar& b) { return cmp(a.v_, b.v_) < 0; }

  // "a/b" or "n"; reduced mod p when p != 0.
  std::string str() const;
  static Scalar parse(const std::string& s, uint32_t p = 0);
  // Same value coerced into the field with modulus p.
  Scalar in_field(uint32_t p) const;

 private:
  void adopt(uint32_t p);
  void reduce();

  mpq_class v_;
  uint32_t p_ = 0;
};

struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(uint32_t p);
  uint32_t modulus() const { return kind == Kind::PrimeField ? p : 0; }
  Scalar make(long v) const { return Scalar(mpq_class(v), modulus()); }
  Scalar parse(const std::string& s) const { return Scalar::parse(s, modulus()); }
  bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
};

bool is_prime(uint64_t n);

}  // namespace ncg
