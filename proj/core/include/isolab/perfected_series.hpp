#pragma once

// Truncated model of the ring S of perfected power series over F_{p^k}:
// finite sums of a_I X^I with I in (Z_{>=0}[1/p])^n, taken modulo the ideal of
// terms with |I|_inf > D.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "isolab/padic.hpp"

namespace isolab {

// Element of F_{p^k} in the basis 1, t, ..., t^{k-1}, t a root of the
// canonical modulus of degree k.
using FqElem = std::vector<std::int64_t>;

class FiniteField;
using FiniteFieldPtr = std::shared_ptr<const FiniteField>;

class FiniteField {
 public:
  static FiniteFieldPtr make(std::int64_t p, int k);

  std::int64_t p() const { return p_; }
  int k() const { return k_; }
  const std::vector<std::int64_t>& modulus() const { return modulus_; }
  bool same_as(const FiniteField& o) const { return p_ == o.p_ && k_ == o.k_; }

  FqElem zero() const { return FqElem(static_cast<std::size_t>(k_), 0); }
  FqElem one() const;
  FqElem from_int(std::int64_t c) const;
  // Reduces coordinates into [0, p); checks the length.
  FqElem normalize(FqElem a) const;
  bool is_zero(const FqElem& a) const;

  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem pow(const FqElem& a, const Integer& e) const;
  FqElem frobenius(const FqElem& a) const;      // a^p
  FqElem frobenius_inv(const FqElem& a) const;  // the unique b with b^p = a

 private:
  FiniteField(std::int64_t p, int k);
  std::int64_t p_;
  int k_;
  std::vector<std::int64_t> modulus_;
};

using Exponent = std::vector<Rational>;

class PerfectedSeries {
 public:
  PerfectedSeries() = default;
  PerfectedSeries(FiniteFieldPtr field, int nvars, Rational degree_bound);

  std::int64_t p() const { return field_->p(); }
  int nvars() const { return nvars_; }
  const FiniteFieldPtr& field() const { return field_; }
  const Rational& degree_bound() const { return bound_; }
  const std::map<Exponent, FqElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds c X^I; validates I and drops it when |I|_inf > D.
  void add_term(const Exponent& exponent, const FqElem& coeff);
  FqElem coefficient(const Exponent& exponent) const;
  FqElem constant_term() const;

  static PerfectedSeries monomial(FiniteFieldPtr field, int nvars, Rational degree_bound,
                                  const Exponent& exponent, const FqElem& coeff);
  static PerfectedSeries variable(FiniteFieldPtr field, int nvars, Rational degree_bound,
                                  int index);

  bool operator==(const PerfectedSeries& o) const;

 private:
  FiniteFieldPtr field_;
  int nvars_ = 0;
  Rational bound_;
  std::map<Exponent, FqElem> terms_;
};

Rational max_norm(const Exponent& e);
// -ord_p(I): the largest k such that some coordinate has denominator p^k.
int neg_ord(const Exponent& e, std::int64_t p);
bool is_integral_exponent(const Exponent& e);
nlohmann::json exponent_to_json(const Exponent& e, std::int64_t p);

void check_compatible(const PerfectedSeries& a, const PerfectedSeries& b);

PerfectedSeries ps_add(const PerfectedSeries& a, const PerfectedSeries& b);
PerfectedSeries ps_sub(const PerfectedSeries& a, const PerfectedSeries& b);
PerfectedSeries ps_mul(const PerfectedSeries& a, const PerfectedSeries& b);
PerfectedSeries ps_scalar(const FqElem& c, const PerfectedSeries& a);
PerfectedSeries ps_pow(const PerfectedSeries& a, std::uint64_t e);

enum class FrobeniusDirection { kForward, kInverse };
enum class FrobeniusFlavor { kRelative, kAbsolute };

// Forward keeps the degree bound D; inverse yields a class modulo degree D/p.
PerfectedSeries ps_frobenius(const PerfectedSeries& a, FrobeniusDirection dir,
                             FrobeniusFlavor flavor);

enum class IdealKind { kPower, kFrobenius };

// kFrobenius drops terms in (X_1^{p^m}, ..., X_n^{p^m}); kPower drops terms
// in (X_1, ..., X_n)^m, i.e. those with sum floor(I_i) >= m.
PerfectedSeries ps_truncate_ideal(const PerfectedSeries& a, IdealKind kind, int m);

// Variables of `a` become variables offset .. offset + nvars(a) - 1 of a ring
// with total_vars variables.
PerfectedSeries ps_embed(const PerfectedSeries& a, int total_vars, int offset);

// f(g_1, ..., g_a, h_1, ..., h_b) for f with integer exponents in a + b
// variables. Every g_i, h_j must have zero constant term.
PerfectedSeries ps_compose(const PerfectedSeries& f, const std::vector<PerfectedSeries>& g,
                           const std::vector<PerfectedSeries>& h);

struct RestrictedParams {
  int s = 0;
  int r = 0;
  int n0 = 0;
};

void validate(const RestrictedParams& params);

enum class MembershipMethod { kDefinitional, kClosedForm, kBoth };

struct TermVerdict {
  bool definitional = true;     // strict window
  bool definitional_le = true;  // window with <=
  bool closed_form = true;
  bool boundary = false;        // |I|_inf = p^{n(s-r)} for some n >= n0
  int definitional_bound = 0;   // allowed -ord_p under the strict window
  int closed_form_bound = 0;
};

TermVerdict restricted_term_verdict(const Exponent& e, std::int64_t p,
                                    const RestrictedParams& params);

struct MembershipReport {
  bool member = true;
  std::optional<bool> definitional;
  std::optional<bool> definitional_le;
  std::optional<bool> closed_form;
  bool agree = true;            // on non-boundary terms, when both ran
  std::size_t boundary_terms = 0;
  std::size_t disagreements = 0;
  nlohmann::json witness;       // first failing term, null for members
  nlohmann::json first_disagreement;
};

MembershipReport membership_restricted(const PerfectedSeries& a, const RestrictedParams& params,
                                       MembershipMethod method);

struct EcdReport {
  bool member = true;
  nlohmann::json witness;
};

EcdReport membership_ecd(const PerfectedSeries& a, const Rational& e, const Rational& c,
                         const Rational& d);

enum class PoweredBlock { kG, kH };

struct RigidityReport {
  struct Congruence {
    int n = 0;
    std::int64_t d = 0;
    bool pass = true;
    nlohmann::json witness;
  };
  std::vector<Congruence> congruences;
  bool all_congruences = true;
  bool ratio_ok = true;
  bool evaluation_zero = true;
  nlohmann::json evaluation_witness;
};

RigidityReport rigidity_check(const PerfectedSeries& f, const std::vector<PerfectedSeries>& g,
                              const std::vector<PerfectedSeries>& h, int r,
                              const std::vector<std::int64_t>& d_seq, PoweredBlock powered);

struct SlopeExponents {
  Integer a;
  Integer r;
  Integer s;
};

SlopeExponents slope_exponents(const Rational& mu1, const Rational& mu0);

}  // namespace isolab
