#include "awb/scalar.hpp"

#include <charconv>
#include <limits>

namespace awb {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p)) throw InputError("GF(" + std::to_string(p) + "): characteristic is not prime");
  // products of two residues must fit in int64
  if (p > (1u << 31)) throw InputError("GF(p): characteristic too large");
  FieldSpec f;
  f.kind_ = Kind::prime_field;
  f.characteristic_ = p;
  return f;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    auto digits = text.substr(3, text.size() - 4);
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return prime(p);
  }
  throw InputError("unrecognised field \"" + std::string(text) + "\" (expected \"Q\" or \"GF(p)\")");
}

std::string FieldSpec::to_string() const {
  if (kind_ == Kind::rationals) return "Q";
  return "GF(" + std::to_string(characteristic_) + ")";
}

ModP::ModP(long long v, std::uint32_t p) : value_(v), modulus_(p) { reduce(); }

void ModP::reduce() {
  if (modulus_ == 0) return;
  value_ %= static_cast<std::int64_t>(modulus_);
  if (value_ < 0) value_ += modulus_;
}

std::int64_t ModP::residue() const { return value_; }

std::uint32_t ModP::unify(const ModP& o) const {
  if (modulus_ == 0) return o.modulus_;
  if (o.modulus_ != 0 && o.modulus_ != modulus_)
    throw std::logic_error("ModP: mixing residues of different characteristic");
  return modulus_;
}

ModP& ModP::operator+=(const ModP& o) {
  modulus_ = unify(o);
  value_ += o.value_;
  reduce();
  return *this;
}

ModP& ModP::operator-=(const ModP& o) {
  modulus_ = unify(o);
  value_ -= o.value_;
  reduce();
  return *this;
}

ModP& ModP::operator*=(const ModP& o) {
  modulus_ = unify(o);
  if (modulus_ != 0) {
    // bring both operands into [0, p) before multiplying
    ModP a(value_, modulus_), b(o.value_, modulus_);
    value_ = a.value_ * b.value_;
  } else {
    value_ *= o.value_;
  }
  reduce();
  return *this;
}

ModP ModP::inverse() const {
  if (modulus_ == 0) {
    if (value_ == 1 || value_ == -1) return *this;
    throw std::logic_error("ModP: inverse of an unbound integer");
  }
  std::int64_t a = ModP(value_, modulus_).value_;
  if (a == 0) throw std::domain_error("ModP: division by zero");
  std::int64_t t = 0, new_t = 1, r = modulus_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return ModP(t, modulus_);
}

ModP& ModP::operator/=(const ModP& o) {
  std::uint32_t p = unify(o);
  ModP inv = o.modulus_ == 0 && p != 0 ? ModP(o.value_, p).inverse() : o.inverse();
  return *this *= inv;
}

ModP ModP::operator-() const {
  ModP r = *this;
  r.value_ = -r.value_;
  r.reduce();
  return r;
}

bool operator==(const ModP& a, const ModP& b) {
  std::uint32_t p = a.unify(b);
  if (p == 0) return a.value_ == b.value_;
  return ModP(a.value_, p).value_ == ModP(b.value_, p).value_;
}

std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << x.residue(); }

Rational ScalarTraits<Rational>::parse(std::string_view text, const FieldSpec&) {
  std::string s(text);
  auto ok = !s.empty() && s.find_first_not_of("+-0123456789/") == std::string::npos;
  auto slash = s.find('/');
  if (ok && slash != std::string::npos) {
    ok = slash > 0 && slash + 1 < s.size() && s.find('/', slash + 1) == std::string::npos;
    if (ok && s.substr(slash + 1).find_first_not_of("0123456789") != std::string::npos) ok = false;
    if (ok && s.substr(slash + 1).find_first_not_of('0') == std::string::npos) ok = false;
  }
  if (!ok) throw InputError("malformed rational scalar \"" + s + "\"");
  try {
    Rational r(s);
    // the string constructor keeps "2/4" as written
    mpq_canonicalize(r.backend().data());
    return r;
  } catch (const std::exception&) {
    throw InputError("malformed rational scalar \"" + s + "\"");
  }
}

ModP ScalarTraits<ModP>::parse(std::string_view text, const FieldSpec& f) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw InputError("malformed GF(p) scalar \"" + std::string(text) + "\"");
  return ModP(v, f.characteristic());
}

}  // namespace awb
