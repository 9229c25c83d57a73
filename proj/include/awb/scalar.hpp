#pragma once

// Exact scalar types. Every coefficient in the library is one of these two:
// arbitrary-precision rationals (GMP-backed) or residues modulo a prime.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "awb/errors.hpp"

namespace awb {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

class FieldSpec {
 public:
  enum class Kind { rationals, prime_field };

  FieldSpec() = default;
  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::uint32_t p);
  static FieldSpec parse(std::string_view text);  // "Q" or "GF(p)"

  Kind kind() const { return kind_; }
  std::uint32_t characteristic() const { return characteristic_; }
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  Kind kind_ = Kind::rationals;
  std::uint32_t characteristic_ = 0;
};

bool is_prime(std::uint32_t p);

/// Element of GF(p). A value built from a bare integer (as Eigen does for
/// `Zero()`/`Identity()`) carries modulus 0 and binds to the modulus of the
/// first bound operand it meets.
class ModP {
 public:
  ModP() = default;
  ModP(int v) : value_(v) {}  // NOLINT: implicit on purpose, Eigen builds literals this way
  ModP(long v) : value_(v) {}  // NOLINT
  ModP(long long v) : value_(v) {}  // NOLINT
  ModP(long long v, std::uint32_t p);

  std::uint32_t modulus() const { return modulus_; }
  std::int64_t residue() const;  // canonical representative in [0, p)

  ModP inverse() const;

  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o);
  ModP operator-() const;

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b);
  friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const ModP& x);

 private:
  std::uint32_t unify(const ModP& o) const;
  void reduce();

  std::int64_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

inline ModP abs(const ModP& x) { return x; }

/// Per-scalar construction and formatting hooks used by generic code.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool supports(const FieldSpec& f) { return f.kind() == FieldSpec::Kind::rationals; }
  static Rational from_int(long long v, const FieldSpec&) { return Rational(v); }
  static Rational parse(std::string_view text, const FieldSpec& f);
  static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct ScalarTraits<ModP> {
  static bool supports(const FieldSpec& f) { return f.kind() == FieldSpec::Kind::prime_field; }
  static ModP from_int(long long v, const FieldSpec& f) { return ModP(v, f.characteristic()); }
  static ModP parse(std::string_view text, const FieldSpec& f);
  static std::string str(const ModP& x) { return std::to_string(x.residue()); }
};

template <class S>
inline bool is_zero(const S& x) {
  return x == S(0);
}

template <class S>
inline std::string to_string(const S& x) {
  return ScalarTraits<S>::str(x);
}

}  // namespace awb

namespace Eigen {
template <>
struct NumTraits<awb::ModP> : GenericNumTraits<awb::ModP> {
  using Real = awb::ModP;
  using NonInteger = awb::ModP;
  using Literal = awb::ModP;
  using Nested = awb::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline awb::ModP epsilon() { return awb::ModP(0); }
  static inline awb::ModP dummy_precision() { return awb::ModP(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
