#pragma once

// Finite-precision arithmetic in the unramified extension Q_q of Q_p,
// q = p^f, modelled as Z_q = Z[t]/(p^N, g(t)).
//
// Scalars use capped relative precision: a nonzero value p^v * u carries the
// number of p-adic digits of the unit u that are known, and a "zero" is only
// ever known to vanish up to some absolute bound.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace isolab {

using Integer = mpz_class;
using Rational = mpq_class;

// Element of Z_q / p^k as coefficients in the basis 1, t, ..., t^{f-1}.
using ZqVec = std::vector<Integer>;

class FieldSpec;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

bool is_prime(std::int64_t n);

// Lexicographically smallest monic irreducible polynomial of degree f over
// F_p, low-to-high coefficients in [0, p), leading 1 included.
std::vector<std::int64_t> canonical_modulus(std::int64_t p, int f);

class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
 public:
  static FieldSpecPtr make(std::int64_t p, int f, int N);

  std::int64_t p() const { return p_; }
  int f() const { return f_; }
  int N() const { return N_; }
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  // Same field model (p, f, N); the modulus is determined by (p, f).
  bool same_as(const FieldSpec& other) const {
    return p_ == other.p_ && f_ == other.f_ && N_ == other.N_;
  }

  // Q_p at the same precision.
  FieldSpecPtr prime_subfield() const;

  const Integer& p_power(int k) const;

  // Z_q / p^k ring operations. Inputs may be unreduced.
  ZqVec reduce(ZqVec a, int k) const;
  ZqVec add(const ZqVec& a, const ZqVec& b, int k) const;
  ZqVec sub(const ZqVec& a, const ZqVec& b, int k) const;
  ZqVec mul(const ZqVec& a, const ZqVec& b, int k) const;
  ZqVec scale(const ZqVec& a, const Integer& c, int k) const;
  // Inverse of a unit modulo p^k.
  ZqVec inv_unit(const ZqVec& a, int k) const;
  ZqVec sigma(const ZqVec& a, int k) const;
  ZqVec sigma_inv(const ZqVec& a, int k) const;

  // min_i v_p(a_i); nullopt when every coefficient is 0.
  std::optional<int> valuation(const ZqVec& a) const;
  // Divide every coefficient by p^k (caller guarantees divisibility).
  ZqVec divide_p_power(const ZqVec& a, int k) const;

  ZqVec zero_vec() const { return ZqVec(static_cast<std::size_t>(f_), 0); }
  ZqVec one_vec() const;
  // The lift sigma(t), a root of g congruent to t^p mod p.
  const ZqVec& sigma_of_generator() const { return sigma_powers_.at(f_ > 1 ? 1 : 0); }

 private:
  FieldSpec(std::int64_t p, int f, int N);
  void lift_frobenius();

  std::int64_t p_;
  int f_;
  int N_;
  std::vector<std::int64_t> modulus_;
  std::vector<Integer> p_powers_;
  // sigma(t)^i mod p^N for i < f.
  std::vector<ZqVec> sigma_powers_;
  std::shared_ptr<const FieldSpec> prime_subfield_;
};

class PadicScalar {
 public:
  PadicScalar() = default;

  // Bounds at or above kExactBound mark a zero known exactly (a structural
  // zero or the rational 0), which never costs precision in products.
  static constexpr std::int64_t kExactBound = std::int64_t{1} << 40;

  // Zero known modulo p^N.
  static PadicScalar zero(FieldSpecPtr spec);
  static PadicScalar zero(FieldSpecPtr spec, std::int64_t bound);
  static PadicScalar exact_zero(FieldSpecPtr spec);
  static PadicScalar one(FieldSpecPtr spec);
  static PadicScalar from_integer(FieldSpecPtr spec, const Integer& n);
  static PadicScalar from_rational(FieldSpecPtr spec, const Rational& q);
  // p^shift * value, where value is an element of Z_q known modulo p^digits.
  static PadicScalar from_zq(FieldSpecPtr spec, const ZqVec& value,
                             int digits, std::int64_t shift = 0);
  // p^valuation * unit with the unit known to `relative` digits.
  static PadicScalar from_unit(FieldSpecPtr spec, std::int64_t valuation,
                               const ZqVec& unit, int relative);
  static PadicScalar generator(FieldSpecPtr spec);

  const FieldSpecPtr& spec() const { return spec_; }
  bool valid() const { return spec_ != nullptr; }

  bool is_zero() const { return zero_; }
  bool is_exact_zero() const { return zero_ && val_ >= kExactBound; }
  // Exact valuation; nullopt for a zero known only up to precision_bound().
  std::optional<std::int64_t> valuation() const;
  // Absolute precision: value is known modulo p^absolute_precision().
  std::int64_t absolute_precision() const;
  int relative_precision() const { return zero_ ? 0 : rel_; }
  // For zeros: the value is divisible by p^bound.
  std::int64_t precision_bound() const { return absolute_precision(); }
  const ZqVec& unit() const { return unit_; }

  PadicScalar operator-() const;
  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator/(const PadicScalar& o) const;
  PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
  PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
  PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }

  PadicScalar inverse() const;
  PadicScalar sigma() const;
  PadicScalar sigma_inv() const;
  PadicScalar sigma_power(int k) const;
  // Multiply by p^k; exact, precision shifts with the value.
  PadicScalar shifted(std::int64_t k) const;
  // Coarsen to absolute precision min(current, bound).
  PadicScalar truncated(std::int64_t bound) const;

  // v >= 0. Throws InsufficientPrecision for zeros with negative bound.
  bool is_integral() const;
  // Difference is zero to the surviving precision.
  bool same_to_precision(const PadicScalar& o) const { return (*this - o).is_zero(); }
  // Reconstruct a rational when the value is (to precision) an integer
  // multiple of a power of p lying in the prime field; used for display.
  std::optional<Rational> as_rational_hint() const;

  // Coordinates over Q_p in the basis 1, t, ..., t^{f-1}.
  std::vector<PadicScalar> prime_coordinates() const;
  static PadicScalar from_prime_coordinates(FieldSpecPtr spec,
                                            const std::vector<PadicScalar>& c);

  std::string to_string() const;

 private:
  void require_same_field(const PadicScalar& o) const;

  FieldSpecPtr spec_;
  bool zero_ = true;
  std::int64_t val_ = 0;  // valuation, or precision bound when zero_
  int rel_ = 0;
  ZqVec unit_;
};

}  // namespace isolab
