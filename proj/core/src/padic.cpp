#include "isolab/padic.hpp"

#include <algorithm>
#include <sstream>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

using Fp = std::int64_t;
using FpPoly = std::vector<Fp>;  // low-to-high, trimmed
__extension__ using Wide = __int128;

Fp mod_p(Wide a, Fp p) {
  auto r = static_cast<Fp>(a % p);
  return r < 0 ? r + p : r;
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Fp pow_mod(Fp b, Fp e, Fp p) {
  Wide result = 1, base = mod_p(b, p);
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Fp>(result);
}

Fp inv_mod(Fp a, Fp p) { return pow_mod(a, p - 2, p); }

FpPoly poly_mod(FpPoly a, const FpPoly& m, Fp p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Fp lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const Fp c = mod_p(static_cast<Wide>(a.back()) * lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = mod_p(a[shift + i] - static_cast<Wide>(c) * m[i], p);
    }
    trim(a);
  }
  return a;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, Fp p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = mod_p(c[i + j] + static_cast<Wide>(a[i]) * b[j], p);
    }
  }
  return poly_mod(std::move(c), m, p);
}

FpPoly poly_sub(FpPoly a, const FpPoly& b, Fp p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod_p(a[i] - b[i], p);
  trim(a);
  return a;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, Fp p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m by repeated p-th powering.
FpPoly frobenius_power_of_x(const FpPoly& m, Fp p, int k) {
  FpPoly x = poly_mod({0, 1}, m, p);
  for (int step = 0; step < k; ++step) {
    FpPoly result{1};
    FpPoly base = x;
    Fp e = p;
    while (e > 0) {
      if (e & 1) result = poly_mulmod(result, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1;
    }
    x = std::move(result);
  }
  return x;
}

bool is_irreducible(const FpPoly& m, Fp p) {
  const int f = static_cast<int>(m.size()) - 1;
  if (f == 1) return true;
  const FpPoly x = poly_mod({0, 1}, m, p);
  if (poly_sub(frobenius_power_of_x(m, p, f), x, p).size() != 0) return false;
  for (int l = 2; l <= f; ++l) {
    if (f % l != 0 || !is_prime(l)) continue;
    FpPoly h = poly_sub(frobenius_power_of_x(m, p, f / l), x, p);
    if (poly_gcd(m, h, p).size() != 1) return false;
  }
  return true;
}

// Extended Euclid over F_p: inverse of a modulo m (m irreducible).
FpPoly poly_inverse(const FpPoly& a, const FpPoly& m, Fp p) {
  FpPoly r0 = m, r1 = poly_mod(a, m, p);
  FpPoly s0{}, s1{1};
  while (!r1.empty()) {
    // q = r0 / r1
    FpPoly q;
    FpPoly r = r0;
    trim(r);
    const Fp lead_inv = inv_mod(r1.back(), p);
    if (r.size() >= r1.size()) q.assign(r.size() - r1.size() + 1, 0);
    while (r.size() >= r1.size() && !r.empty()) {
      const Fp c = mod_p(static_cast<Wide>(r.back()) * lead_inv, p);
      const std::size_t shift = r.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        r[shift + i] = mod_p(r[shift + i] - static_cast<Wide>(c) * r1[i], p);
      }
      trim(r);
    }
    // s2 = s0 - q * s1
    FpPoly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) {
        qs[i + j] = mod_p(qs[i + j] + static_cast<Wide>(q[i]) * s1[j], p);
      }
    }
    trim(qs);
    FpPoly s2 = poly_sub(s0, qs, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant.
  const Fp c = inv_mod(r0.at(0), p);
  for (auto& v : s0) v = mod_p(static_cast<Wide>(v) * c, p);
  return s0;
}

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> canonical_modulus(std::int64_t p, int f) {
  if (!is_prime(p)) fail(ErrorCode::kPreconditionViolated, "p must be prime");
  if (f < 1) fail(ErrorCode::kPreconditionViolated, "f must be >= 1");
  // Enumerate (c_{f-1}, ..., c_0) in lexicographic order.
  std::vector<std::int64_t> digits(static_cast<std::size_t>(f), 0);
  while (true) {
    FpPoly g(digits.rbegin(), digits.rend());  // digits[0] is c_{f-1}
    g.push_back(1);
    if (is_irreducible(g, p)) return g;
    int pos = f - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == p - 1) {
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  fail(ErrorCode::kInternalInvariantViolation, "no irreducible polynomial found");
}

FieldSpec::FieldSpec(std::int64_t p, int f, int N) : p_(p), f_(f), N_(N) {}

FieldSpecPtr FieldSpec::make(std::int64_t p, int f, int N) {
  if (!is_prime(p)) fail(ErrorCode::kPreconditionViolated, "p must be prime");
  if (p > (std::int64_t{1} << 31)) {
    fail(ErrorCode::kPreconditionViolated, "p must fit in 31 bits");
  }
  if (f < 1) fail(ErrorCode::kPreconditionViolated, "f must be >= 1");
  if (N < 1) fail(ErrorCode::kPreconditionViolated, "N must be >= 1");
  std::shared_ptr<FieldSpec> spec(new FieldSpec(p, f, N));
  spec->modulus_ = canonical_modulus(p, f);
  const int cached = 4 * N + 64;
  spec->p_powers_.reserve(static_cast<std::size_t>(cached) + 1);
  Integer pk = 1;
  for (int k = 0; k <= cached; ++k) {
    spec->p_powers_.push_back(pk);
    pk *= p;
  }
  spec->lift_frobenius();
  if (f > 1) spec->prime_subfield_ = make(p, 1, N);
  return spec;
}

FieldSpecPtr FieldSpec::prime_subfield() const {
  if (f_ == 1) return shared_from_this();
  return prime_subfield_;
}

const Integer& FieldSpec::p_power(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= p_powers_.size()) {
    fail(ErrorCode::kInternalInvariantViolation,
         "p-power exponent out of cached range: " + std::to_string(k));
  }
  return p_powers_[static_cast<std::size_t>(k)];
}

ZqVec FieldSpec::one_vec() const {
  ZqVec v = zero_vec();
  v[0] = 1;
  return v;
}

ZqVec FieldSpec::reduce(ZqVec a, int k) const {
  const Integer& m = p_power(k);
  for (auto& c : a) c = floor_mod(c, m);
  return a;
}

ZqVec FieldSpec::add(const ZqVec& a, const ZqVec& b, int k) const {
  ZqVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return reduce(std::move(c), k);
}

ZqVec FieldSpec::sub(const ZqVec& a, const ZqVec& b, int k) const {
  ZqVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return reduce(std::move(c), k);
}

ZqVec FieldSpec::scale(const ZqVec& a, const Integer& s, int k) const {
  ZqVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
  return reduce(std::move(c), k);
}

ZqVec FieldSpec::mul(const ZqVec& a, const ZqVec& b, int k) const {
  const auto f = static_cast<std::size_t>(f_);
  if (f == 1) return {floor_mod(a[0] * b[0], p_power(k))};
  std::vector<Integer> c(2 * f - 1, 0);
  for (std::size_t i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < f; ++j) c[i + j] += a[i] * b[j];
  }
  for (std::size_t d = 2 * f - 2; d >= f; --d) {
    if (c[d] != 0) {
      const Integer top = c[d];
      for (std::size_t i = 0; i < f; ++i) c[d - f + i] -= top * modulus_[i];
      c[d] = 0;
    }
  }
  c.resize(f);
  return reduce(std::move(c), k);
}

ZqVec FieldSpec::inv_unit(const ZqVec& a, int k) const {
  FpPoly residue;
  for (const auto& c : a) {
    residue.push_back(static_cast<Fp>(floor_mod(c, Integer(p_)).get_si()));
  }
  trim(residue);
  if (residue.empty()) {
    fail(ErrorCode::kDivisionByZero, "element is not a unit modulo p");
  }
  FpPoly inv0 = f_ == 1 ? FpPoly{inv_mod(residue[0], p_)}
                        : poly_inverse(residue, modulus_, p_);
  ZqVec y = zero_vec();
  for (std::size_t i = 0; i < inv0.size(); ++i) y[i] = inv0[i];
  // Newton iteration y <- y (2 - a y) doubles the known digits.
  const ZqVec two = scale(one_vec(), 2, k);
  for (int known = 1; known < k; known *= 2) {
    y = mul(y, sub(two, mul(a, y, k), k), k);
  }
  return reduce(std::move(y), k);
}

ZqVec FieldSpec::sigma(const ZqVec& a, int k) const {
  if (f_ == 1) return reduce(a, k);
  ZqVec out = zero_vec();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += a[i] * sigma_powers_[i][j];
    }
  }
  return reduce(std::move(out), k);
}

ZqVec FieldSpec::sigma_inv(const ZqVec& a, int k) const {
  ZqVec out = reduce(a, k);
  for (int i = 1; i < f_; ++i) out = sigma(out, k);
  return out;
}

std::optional<int> FieldSpec::valuation(const ZqVec& a) const {
  std::optional<int> best;
  for (const auto& c : a) {
    if (c == 0) continue;
    const int v = static_cast<int>(mpz_remove(Integer().get_mpz_t(),
                                              c.get_mpz_t(),
                                              Integer(p_).get_mpz_t()));
    if (!best || v < *best) best = v;
  }
  return best;
}

ZqVec FieldSpec::divide_p_power(const ZqVec& a, int k) const {
  ZqVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_divexact(out[i].get_mpz_t(), a[i].get_mpz_t(), p_power(k).get_mpz_t());
  }
  return out;
}

void FieldSpec::lift_frobenius() {
  const auto f = static_cast<std::size_t>(f_);
  sigma_powers_.assign(1, one_vec());
  if (f == 1) return;

  // g(x) and g'(x) evaluated in Z_q / p^N by Horner.
  auto eval = [&](const ZqVec& x, bool derivative) {
    ZqVec acc = zero_vec();
    const std::size_t top = modulus_.size() - 1;
    for (std::size_t d = top + 1; d-- > 0;) {
      Integer coeff = modulus_[d];
      if (derivative) {
        if (d == 0) continue;
        coeff *= static_cast<long>(d);
      }
      acc = mul(acc, x, N_);
      acc[0] += coeff;
      acc = reduce(std::move(acc), N_);
    }
    return acc;
  };

  // x0 = t^p mod (p, g).
  ZqVec t = zero_vec();
  t[1] = 1;
  ZqVec x = one_vec();
  for (std::int64_t e = 0; e < p_; ++e) x = mul(x, t, 1);
  bool converged = false;
  for (int iter = 0; iter < 64; ++iter) {
    const ZqVec gx = eval(x, false);
    if (!valuation(gx)) {
      converged = true;
      break;
    }
    const ZqVec dg = eval(x, true);
    x = sub(x, mul(gx, inv_unit(dg, N_), N_), N_);
  }
  if (!converged) {
    fail(ErrorCode::kFrobeniusLiftFailure,
         "Hensel iteration for sigma(t) did not converge");
  }
  for (std::size_t i = 1; i < f; ++i) {
    sigma_powers_.push_back(mul(sigma_powers_.back(), x, N_));
  }
}

// ---------------------------------------------------------------------------

PadicScalar PadicScalar::zero(FieldSpecPtr spec) {
  const int n = spec->N();
  return zero(std::move(spec), n);
}

PadicScalar PadicScalar::zero(FieldSpecPtr spec, std::int64_t bound) {
  PadicScalar z;
  z.spec_ = std::move(spec);
  z.zero_ = true;
  z.val_ = std::min(bound, kExactBound);
  return z;
}

PadicScalar PadicScalar::exact_zero(FieldSpecPtr spec) { return zero(std::move(spec), kExactBound); }

PadicScalar PadicScalar::one(FieldSpecPtr spec) {
  ZqVec u = spec->one_vec();
  const int n = spec->N();
  return from_unit(std::move(spec), 0, u, n);
}

PadicScalar PadicScalar::from_integer(FieldSpecPtr spec, const Integer& n) {
  ZqVec v = spec->zero_vec();
  v[0] = n;
  if (n == 0) return exact_zero(std::move(spec));
  // Extract the exact valuation so the unit keeps N digits.
  Integer unit;
  const auto k = static_cast<std::int64_t>(
      mpz_remove(unit.get_mpz_t(), n.get_mpz_t(), Integer(spec->p()).get_mpz_t()));
  v[0] = unit;
  const int digits = spec->N();
  return from_unit(std::move(spec), k, v, digits);
}

PadicScalar PadicScalar::from_rational(FieldSpecPtr spec, const Rational& q) {
  if (q == 0) return exact_zero(std::move(spec));
  const PadicScalar num = from_integer(spec, q.get_num());
  const PadicScalar den = from_integer(spec, q.get_den());
  return num / den;
}

PadicScalar PadicScalar::from_zq(FieldSpecPtr spec, const ZqVec& value,
                                 int digits, std::int64_t shift) {
  if (digits <= 0) return zero(std::move(spec), shift + digits);
  ZqVec reduced = spec->reduce(value, digits);
  const auto k = spec->valuation(reduced);
  if (!k || *k >= digits) return zero(std::move(spec), shift + digits);
  ZqVec unit = spec->divide_p_power(reduced, *k);
  return from_unit(std::move(spec), shift + *k, unit, digits - *k);
}

PadicScalar PadicScalar::from_unit(FieldSpecPtr spec, std::int64_t valuation,
                                   const ZqVec& unit, int relative) {
  if (relative <= 0) {
    fail(ErrorCode::kPrecisionExhausted, "no surviving relative precision");
  }
  relative = std::min(relative, spec->N());
  PadicScalar s;
  s.unit_ = spec->reduce(unit, relative);
  if (spec->valuation(spec->reduce(s.unit_, 1)).value_or(1) != 0) {
    fail(ErrorCode::kInternalInvariantViolation, "unit is not invertible mod p");
  }
  s.spec_ = std::move(spec);
  s.zero_ = false;
  s.val_ = valuation;
  s.rel_ = relative;
  return s;
}

PadicScalar PadicScalar::generator(FieldSpecPtr spec) {
  ZqVec t = spec->zero_vec();
  if (spec->f() == 1) {
    t[0] = -spec->modulus()[0];
  } else {
    t[1] = 1;
  }
  const int n = spec->N();
  return from_zq(std::move(spec), t, n);
}

std::optional<std::int64_t> PadicScalar::valuation() const {
  if (zero_) return std::nullopt;
  return val_;
}

std::int64_t PadicScalar::absolute_precision() const {
  return zero_ ? val_ : val_ + rel_;
}

void PadicScalar::require_same_field(const PadicScalar& o) const {
  if (spec_.get() != o.spec_.get() && !spec_->same_as(*o.spec_)) {
    fail(ErrorCode::kFieldSpecMismatch, "scalars live over different fields");
  }
}

PadicScalar PadicScalar::operator-() const {
  if (zero_) return *this;
  PadicScalar r = *this;
  for (auto& c : r.unit_) c = -c;
  r.unit_ = spec_->reduce(std::move(r.unit_), rel_);
  return r;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  require_same_field(o);
  const std::int64_t abs = std::min(absolute_precision(), o.absolute_precision());
  if (zero_ && o.zero_) return zero(spec_, abs);
  if (zero_ || o.zero_) {
    const PadicScalar& nz = zero_ ? o : *this;
    if (nz.val_ >= abs) return zero(spec_, abs);
    return from_unit(spec_, nz.val_, nz.unit_, static_cast<int>(abs - nz.val_));
  }
  const std::int64_t m = std::min(val_, o.val_);
  const std::int64_t known = abs - m;
  if (known <= 0) return zero(spec_, abs);
  const int k = static_cast<int>(known);
  ZqVec sum = spec_->zero_vec();
  auto accumulate = [&](const PadicScalar& s) {
    const std::int64_t shift = s.val_ - m;
    if (shift >= k) return;
    const Integer& factor = spec_->p_power(static_cast<int>(shift));
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += s.unit_[i] * factor;
  };
  accumulate(*this);
  accumulate(o);
  return from_zq(spec_, sum, k, m);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  require_same_field(o);
  if (is_exact_zero() || o.is_exact_zero()) return exact_zero(spec_);
  if (zero_ || o.zero_) return zero(spec_, val_ + o.val_);
  const int rel = std::min(rel_, o.rel_);
  return from_unit(spec_, val_ + o.val_, spec_->mul(unit_, o.unit_, rel), rel);
}

PadicScalar PadicScalar::inverse() const {
  if (zero_) fail(ErrorCode::kDivisionByZero, "inverse of a zero scalar");
  return from_unit(spec_, -val_, spec_->inv_unit(unit_, rel_), rel_);
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const {
  require_same_field(o);
  if (o.zero_) fail(ErrorCode::kDivisionByZero, "division by a zero scalar");
  return *this * o.inverse();
}

PadicScalar PadicScalar::sigma() const {
  if (zero_ || spec_->f() == 1) return *this;
  return from_unit(spec_, val_, spec_->sigma(unit_, rel_), rel_);
}

PadicScalar PadicScalar::sigma_inv() const {
  if (zero_ || spec_->f() == 1) return *this;
  return from_unit(spec_, val_, spec_->sigma_inv(unit_, rel_), rel_);
}

PadicScalar PadicScalar::sigma_power(int k) const {
  const int f = spec_->f();
  k %= f;
  if (k < 0) k += f;
  PadicScalar r = *this;
  for (int i = 0; i < k; ++i) r = r.sigma();
  return r;
}

PadicScalar PadicScalar::shifted(std::int64_t k) const {
  if (is_exact_zero()) return *this;
  PadicScalar r = *this;
  r.val_ += k;
  return r;
}

PadicScalar PadicScalar::truncated(std::int64_t bound) const {
  if (bound >= absolute_precision()) return *this;
  if (zero_ || val_ >= bound) return zero(spec_, bound);
  return from_unit(spec_, val_, unit_, static_cast<int>(bound - val_));
}

bool PadicScalar::is_integral() const {
  if (!zero_) return val_ >= 0;
  if (val_ >= 0) return true;
  fail(ErrorCode::kInsufficientPrecision,
       "integrality of a zero known only modulo p^" + std::to_string(val_));
}

std::optional<Rational> PadicScalar::as_rational_hint() const {
  if (zero_) return Rational(0);
  for (std::size_t i = 1; i < unit_.size(); ++i) {
    if (unit_[i] != 0) return std::nullopt;
  }
  // Small-denominator reconstruction of the unit: find d <= 64 prime to p
  // with u*d congruent to a numerator n, |n| well below the modulus.
  const Integer& m = spec_->p_power(rel_);
  for (long d = 1; d <= 64; ++d) {
    if (d % spec_->p() == 0) continue;
    Integer n = floor_mod(unit_[0] * d, m);
    if (2 * n > m) n -= m;
    if (n * n * 4 * d * d >= m) continue;
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), Integer(spec_->p()).get_mpz_t(),
               static_cast<unsigned long>(val_ >= 0 ? val_ : -val_));
    Rational q(n, d);
    if (val_ >= 0) {
      q *= scale;
    } else {
      q /= scale;
    }
    q.canonicalize();
    return q;
  }
  return std::nullopt;
}

std::vector<PadicScalar> PadicScalar::prime_coordinates() const {
  FieldSpecPtr base = spec_->prime_subfield();
  std::vector<PadicScalar> out;
  out.reserve(static_cast<std::size_t>(spec_->f()));
  for (int i = 0; i < spec_->f(); ++i) {
    if (zero_) {
      out.push_back(zero(base, val_));
    } else {
      out.push_back(from_zq(base, {unit_[static_cast<std::size_t>(i)]}, rel_, val_));
    }
  }
  return out;
}

PadicScalar PadicScalar::from_prime_coordinates(FieldSpecPtr spec,
                                                const std::vector<PadicScalar>& c) {
  PadicScalar acc = exact_zero(spec);
  PadicScalar power = one(spec);
  const PadicScalar t = generator(spec);
  for (std::size_t i = 0; i < c.size(); ++i) {
    PadicScalar lifted;
    if (c[i].is_zero()) {
      lifted = zero(spec, c[i].precision_bound());
    } else {
      ZqVec u = spec->zero_vec();
      u[0] = c[i].unit()[0];
      lifted = from_unit(spec, *c[i].valuation(), u, c[i].relative_precision());
    }
    acc += lifted * power;
    power *= t;
  }
  return acc;
}

std::string PadicScalar::to_string() const {
  std::ostringstream os;
  if (is_exact_zero()) return "0";
  if (zero_) {
    os << "O(p^" << val_ << ")";
    return os.str();
  }
  os << "p^" << val_ << "*(";
  for (std::size_t i = 0; i < unit_.size(); ++i) {
    if (i) os << ",";
    os << unit_[i].get_str();
  }
  os << ")+O(p^" << absolute_precision() << ")";
  return os.str();
}

}  // namespace isolab
