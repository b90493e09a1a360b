#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "facetforest/errors.hpp"

namespace facetforest {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

bool is_prime(std::int64_t p);

/// Coefficient field selector: the rationals or a prime field F_p with
/// 2 <= p < 2^31.
struct FieldSpec {
  enum class Kind { rational, prime };
  Kind kind = Kind::rational;
  std::int64_t p = 0;

  static FieldSpec Q() { return FieldSpec{}; }
  static FieldSpec Fp(std::int64_t p);

  bool operator==(const FieldSpec&) const = default;

  /// "q" for the rationals, the decimal prime otherwise.
  std::string label() const;
  static FieldSpec parse(const std::string& label);
};

/// Exact rational arithmetic. All operations are total; division by zero
/// throws.
struct RationalField {
  using Elem = Rational;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(v); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem div(const Elem& a, const Elem& b) const {
    if (b.is_zero()) throw DomainError("division by zero");
    return a / b;
  }
};

/// F_p with int64 representatives in [0, p).
struct PrimeField {
  using Elem = std::int64_t;

  explicit PrimeField(std::int64_t prime) : p(prime) {
    if (!is_prime(p) || p < 2 || p >= (std::int64_t{1} << 31))
      throw DomainError("field characteristic must be a prime in [2, 2^31)");
  }

  std::int64_t p;

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(std::int64_t v) const {
    Elem r = v % p;
    return r < 0 ? r + p : r;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return ((a - b) % p + p) % p; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
};

}  // namespace facetforest
