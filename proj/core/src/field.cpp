#include "facetforest/field.hpp"

namespace facetforest {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::Fp(std::int64_t p) {
  if (!is_prime(p) || p < 2 || p >= (std::int64_t{1} << 31))
    throw DomainError("field characteristic must be a prime in [2, 2^31)");
  return FieldSpec{Kind::prime, p};
}

std::string FieldSpec::label() const {
  return kind == Kind::rational ? "q" : std::to_string(p);
}

FieldSpec FieldSpec::parse(const std::string& label) {
  if (label == "q" || label == "Q") return Q();
  std::string digits = label;
  if (digits.rfind("p:", 0) == 0) digits = digits.substr(2);
  try {
    std::size_t used = 0;
    std::int64_t p = std::stoll(digits, &used);
    if (used != digits.size()) throw DomainError("");
    return Fp(p);
  } catch (const std::exception&) {
    throw DomainError("unrecognized field '" + label + "' (expected q, a prime, or p:<prime>)");
  }
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw DomainError("division by zero in prime field");
  // Extended Euclid.
  std::int64_t old_r = a, r = p;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  return from_int(old_s);
}

}  // namespace facetforest
