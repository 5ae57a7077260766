#include "isolab/perfected_series.hpp"

#include <algorithm>
#include <utility>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

Integer ipow(std::int64_t p, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}

Rational rpow(const Rational& x, unsigned long e) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Exponent e with den(x) = p^e, or -1 when the denominator is not a p-power.
int p_power_exponent(const Integer& den, std::int64_t p) {
  Integer d = den;
  int e = 0;
  while (d > 1) {
    if (!mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) return -1;
    d /= p;
    ++e;
  }
  return e;
}

nlohmann::json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Integer floor_rational(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// Floor division for integers with positive divisor.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Largest k with p^k <= x, for x > 0.
Integer floor_log(const Rational& x, std::int64_t p) {
  Integer k = 0;
  Rational pow = 1;
  if (x >= 1) {
    while (pow * p <= x) {
      pow *= p;
      ++k;
    }
  } else {
    while (pow > x) {
      pow /= p;
      --k;
    }
  }
  return k;
}

int to_int(const Integer& n, const char* what) {
  if (!n.fits_sint_p()) fail(ErrorCode::kPreconditionViolated, std::string(what) + " out of range");
  return static_cast<int>(n.get_si());
}

}  // namespace

FiniteField::FiniteField(std::int64_t p, int k) : p_(p), k_(k) {}

FiniteFieldPtr FiniteField::make(std::int64_t p, int k) {
  if (!is_prime(p)) fail(ErrorCode::kPreconditionViolated, "coefficient characteristic must be prime");
  if (k < 1) fail(ErrorCode::kPreconditionViolated, "coefficient field degree must be >= 1");
  auto field = std::shared_ptr<FiniteField>(new FiniteField(p, k));
  field->modulus_ = canonical_modulus(p, k);
  return field;
}

FqElem FiniteField::one() const { return from_int(1); }

FqElem FiniteField::from_int(std::int64_t c) const {
  FqElem r = zero();
  r[0] = mod_p(c, p_);
  return r;
}

FqElem FiniteField::normalize(FqElem a) const {
  if (a.size() != static_cast<std::size_t>(k_)) {
    fail(ErrorCode::kParameterMismatch, "coefficient has the wrong number of coordinates",
         {{"expected", k_}, {"got", a.size()}});
  }
  for (auto& c : a) c = mod_p(c, p_);
  return a;
}

bool FiniteField::is_zero(const FqElem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::int64_t c) { return c == 0; });
}

FqElem FiniteField::add(const FqElem& a, const FqElem& b) const {
  FqElem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(a[i] + b[i], p_);
  return r;
}

FqElem FiniteField::sub(const FqElem& a, const FqElem& b) const {
  FqElem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(a[i] - b[i], p_);
  return r;
}

FqElem FiniteField::neg(const FqElem& a) const { return sub(zero(), a); }

FqElem FiniteField::mul(const FqElem& a, const FqElem& b) const {
  const auto k = static_cast<std::size_t>(k_);
  std::vector<std::int64_t> prod(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      prod[i + j] = mod_p(prod[i + j] + a[i] * b[j], p_);
    }
  }
  for (std::size_t d = prod.size(); d-- > k;) {
    const std::int64_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i < k; ++i) {
      prod[d - k + i] = mod_p(prod[d - k + i] - c * modulus_[i], p_);
    }
    prod[d] = 0;
  }
  prod.resize(k);
  return prod;
}

FqElem FiniteField::pow(const FqElem& a, const Integer& e) const {
  FqElem result = one();
  FqElem base = a;
  Integer n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

FqElem FiniteField::frobenius(const FqElem& a) const { return pow(a, Integer(p_)); }

FqElem FiniteField::frobenius_inv(const FqElem& a) const {
  return pow(a, ipow(p_, static_cast<unsigned long>(k_ - 1)));
}

PerfectedSeries::PerfectedSeries(FiniteFieldPtr field, int nvars, Rational degree_bound)
    : field_(std::move(field)), nvars_(nvars), bound_(std::move(degree_bound)) {
  if (!field_) fail(ErrorCode::kPreconditionViolated, "series needs a coefficient field");
  if (nvars_ < 1) fail(ErrorCode::kPreconditionViolated, "series needs at least one variable");
  bound_.canonicalize();
  if (bound_ < 0) fail(ErrorCode::kPreconditionViolated, "degree bound must be nonnegative");
}

void PerfectedSeries::add_term(const Exponent& exponent, const FqElem& coeff) {
  if (exponent.size() != static_cast<std::size_t>(nvars_)) {
    fail(ErrorCode::kParameterMismatch, "exponent length differs from the number of variables",
         {{"expected", nvars_}, {"got", exponent.size()}});
  }
  Exponent e = exponent;
  for (auto& x : e) {
    x.canonicalize();
    if (x < 0) fail(ErrorCode::kPreconditionViolated, "exponents must be nonnegative");
    if (p_power_exponent(x.get_den(), p()) < 0) {
      fail(ErrorCode::kPreconditionViolated, "exponent denominators must be powers of p",
           {{"exp", x.get_str()}});
    }
  }
  if (max_norm(e) > bound_) return;
  const FqElem c = field_->normalize(coeff);
  if (field_->is_zero(c)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(std::move(e), c);
    return;
  }
  it->second = field_->add(it->second, c);
  if (field_->is_zero(it->second)) terms_.erase(it);
}

FqElem PerfectedSeries::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? field_->zero() : it->second;
}

FqElem PerfectedSeries::constant_term() const {
  return coefficient(Exponent(static_cast<std::size_t>(nvars_), Rational(0)));
}

PerfectedSeries PerfectedSeries::monomial(FiniteFieldPtr field, int nvars, Rational degree_bound,
                                          const Exponent& exponent, const FqElem& coeff) {
  PerfectedSeries s(std::move(field), nvars, std::move(degree_bound));
  s.add_term(exponent, coeff);
  return s;
}

PerfectedSeries PerfectedSeries::variable(FiniteFieldPtr field, int nvars, Rational degree_bound,
                                          int index) {
  if (index < 0 || index >= nvars) fail(ErrorCode::kPreconditionViolated, "variable index out of range");
  Exponent e(static_cast<std::size_t>(nvars), Rational(0));
  e[static_cast<std::size_t>(index)] = 1;
  const FqElem one = field->one();
  return monomial(std::move(field), nvars, std::move(degree_bound), e, one);
}

bool PerfectedSeries::operator==(const PerfectedSeries& o) const {
  return field_->same_as(*o.field_) && nvars_ == o.nvars_ && bound_ == o.bound_ &&
         terms_ == o.terms_;
}

Rational max_norm(const Exponent& e) {
  Rational m = 0;
  for (const auto& x : e) m = std::max(m, x);
  return m;
}

int neg_ord(const Exponent& e, std::int64_t p) {
  int k = 0;
  for (const auto& x : e) k = std::max(k, p_power_exponent(x.get_den(), p));
  return k;
}

bool is_integral_exponent(const Exponent& e) {
  return std::all_of(e.begin(), e.end(), [](const Rational& x) { return x.get_den() == 1; });
}

nlohmann::json exponent_to_json(const Exponent& e, std::int64_t p) {
  auto out = nlohmann::json::array();
  for (const auto& x : e) {
    out.push_back({{"num", integer_to_json(x.get_num())},
                   {"pexp", p_power_exponent(x.get_den(), p)}});
  }
  return out;
}

void check_compatible(const PerfectedSeries& a, const PerfectedSeries& b) {
  if (!a.field()->same_as(*b.field()) || a.nvars() != b.nvars()) {
    fail(ErrorCode::kParameterMismatch, "series parameters differ",
         {{"left", {{"p", a.p()}, {"k", a.field()->k()}, {"nvars", a.nvars()}}},
          {"right", {{"p", b.p()}, {"k", b.field()->k()}, {"nvars", b.nvars()}}}});
  }
}

PerfectedSeries ps_add(const PerfectedSeries& a, const PerfectedSeries& b) {
  check_compatible(a, b);
  PerfectedSeries r(a.field(), a.nvars(), std::min(a.degree_bound(), b.degree_bound()));
  for (const auto& [e, c] : a.terms()) r.add_term(e, c);
  for (const auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

PerfectedSeries ps_sub(const PerfectedSeries& a, const PerfectedSeries& b) {
  check_compatible(a, b);
  PerfectedSeries r(a.field(), a.nvars(), std::min(a.degree_bound(), b.degree_bound()));
  for (const auto& [e, c] : a.terms()) r.add_term(e, c);
  for (const auto& [e, c] : b.terms()) r.add_term(e, a.field()->neg(c));
  return r;
}

PerfectedSeries ps_mul(const PerfectedSeries& a, const PerfectedSeries& b) {
  check_compatible(a, b);
  const Rational bound = std::min(a.degree_bound(), b.degree_bound());
  PerfectedSeries r(a.field(), a.nvars(), bound);
  const auto& field = *a.field();
  Exponent sum(static_cast<std::size_t>(a.nvars()));
  for (const auto& [ea, ca] : a.terms()) {
    if (max_norm(ea) > bound) continue;
    for (const auto& [eb, cb] : b.terms()) {
      bool inside = true;
      for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] = ea[i] + eb[i];
        if (sum[i] > bound) {
          inside = false;
          break;
        }
      }
      if (inside) r.add_term(sum, field.mul(ca, cb));
    }
  }
  return r;
}

PerfectedSeries ps_scalar(const FqElem& c, const PerfectedSeries& a) {
  const FqElem cn = a.field()->normalize(c);
  PerfectedSeries r(a.field(), a.nvars(), a.degree_bound());
  for (const auto& [e, x] : a.terms()) r.add_term(e, a.field()->mul(cn, x));
  return r;
}

PerfectedSeries ps_pow(const PerfectedSeries& a, std::uint64_t e) {
  PerfectedSeries result = PerfectedSeries::monomial(
      a.field(), a.nvars(), a.degree_bound(),
      Exponent(static_cast<std::size_t>(a.nvars()), Rational(0)), a.field()->one());
  PerfectedSeries base = a;
  while (e > 0) {
    if (e & 1U) result = ps_mul(result, base);
    e >>= 1U;
    if (e > 0) base = ps_mul(base, base);
  }
  return result;
}

PerfectedSeries ps_frobenius(const PerfectedSeries& a, FrobeniusDirection dir,
                             FrobeniusFlavor flavor) {
  const auto& field = *a.field();
  const bool forward = dir == FrobeniusDirection::kForward;
  const Rational bound = forward ? a.degree_bound() : Rational(a.degree_bound() / a.p());
  PerfectedSeries r(a.field(), a.nvars(), bound);
  for (const auto& [e, c] : a.terms()) {
    Exponent img = e;
    for (auto& x : img) {
      if (forward) {
        x *= a.p();
      } else {
        x /= a.p();
      }
    }
    FqElem coeff = c;
    if (flavor == FrobeniusFlavor::kAbsolute) {
      coeff = forward ? field.frobenius(c) : field.frobenius_inv(c);
    }
    r.add_term(img, coeff);
  }
  return r;
}

PerfectedSeries ps_truncate_ideal(const PerfectedSeries& a, IdealKind kind, int m) {
  if (m < 0) fail(ErrorCode::kPreconditionViolated, "ideal exponent must be nonnegative");
  PerfectedSeries r(a.field(), a.nvars(), a.degree_bound());
  const Integer cap = ipow(a.p(), static_cast<unsigned long>(m));
  for (const auto& [e, c] : a.terms()) {
    bool inside = false;
    if (kind == IdealKind::kFrobenius) {
      inside = std::any_of(e.begin(), e.end(), [&](const Rational& x) { return x >= cap; });
    } else {
      Integer total = 0;
      for (const auto& x : e) total += floor_rational(x);
      inside = total >= m;
    }
    if (!inside) r.add_term(e, c);
  }
  return r;
}

PerfectedSeries ps_embed(const PerfectedSeries& a, int total_vars, int offset) {
  if (offset < 0 || offset + a.nvars() > total_vars) {
    fail(ErrorCode::kPreconditionViolated, "embedding does not fit the target ring");
  }
  PerfectedSeries r(a.field(), total_vars, a.degree_bound());
  for (const auto& [e, c] : a.terms()) {
    Exponent img(static_cast<std::size_t>(total_vars), Rational(0));
    for (std::size_t i = 0; i < e.size(); ++i) img[static_cast<std::size_t>(offset) + i] = e[i];
    r.add_term(img, c);
  }
  return r;
}

PerfectedSeries ps_compose(const PerfectedSeries& f, const std::vector<PerfectedSeries>& g,
                           const std::vector<PerfectedSeries>& h) {
  std::vector<const PerfectedSeries*> args;
  for (const auto& s : g) args.push_back(&s);
  for (const auto& s : h) args.push_back(&s);
  if (args.empty() || static_cast<int>(args.size()) != f.nvars()) {
    fail(ErrorCode::kParameterMismatch, "f must have one variable per substituted series",
         {{"nvars", f.nvars()}, {"series", args.size()}});
  }
  for (const auto& [e, c] : f.terms()) {
    if (!is_integral_exponent(e)) {
      fail(ErrorCode::kPreconditionViolated, "f must be an ordinary power series",
           {{"exp", exponent_to_json(e, f.p())}});
    }
  }
  Rational bound = args.front()->degree_bound();
  for (std::size_t i = 0; i < args.size(); ++i) {
    check_compatible(*args.front(), *args[i]);
    if (!f.field()->same_as(*args[i]->field())) {
      fail(ErrorCode::kParameterMismatch, "f and the substituted series use different fields");
    }
    if (!args[i]->field()->is_zero(args[i]->constant_term())) {
      const bool in_g = i < g.size();
      fail(ErrorCode::kNonzeroConstantTerm, "substituted series must have zero constant term",
           {{"block", in_g ? "g" : "h"}, {"index", in_g ? i : i - g.size()}});
    }
    bound = std::min(bound, args[i]->degree_bound());
  }

  const auto& field = *f.field();
  const int m = args.front()->nvars();
  const PerfectedSeries one = PerfectedSeries::monomial(
      f.field(), m, bound, Exponent(static_cast<std::size_t>(m), Rational(0)), field.one());
  // powers[i][k] = args[i]^k, extended on demand.
  std::vector<std::vector<PerfectedSeries>> powers(args.size(), std::vector<PerfectedSeries>{one});
  auto power = [&](std::size_t i, unsigned long k) -> const PerfectedSeries& {
    auto& cache = powers[i];
    while (cache.size() <= k) cache.push_back(ps_mul(cache.back(), *args[i]));
    return cache[k];
  };

  PerfectedSeries result(f.field(), m, bound);
  for (const auto& [e, c] : f.terms()) {
    PerfectedSeries term = one;
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      const unsigned long k = e[i].get_num().get_ui();
      if (k > 0) term = ps_mul(term, power(i, k));
    }
    for (const auto& [te, tc] : term.terms()) result.add_term(te, field.mul(c, tc));
  }
  return result;
}

void validate(const RestrictedParams& params) {
  if (!(0 < params.r && params.r < params.s) || params.n0 < 0) {
    fail(ErrorCode::kPreconditionViolated, "restricted parameters need 0 < r < s and n0 >= 0",
         {{"s", params.s}, {"r", params.r}, {"n0", params.n0}});
  }
}

TermVerdict restricted_term_verdict(const Exponent& e, std::int64_t p,
                                    const RestrictedParams& params) {
  TermVerdict v;
  const int k = neg_ord(e, p);
  const Rational norm = max_norm(e);
  if (norm == 0) return v;
  const int gap = params.s - params.r;

  // Smallest n >= n0 whose window contains the term; windows grow with n and
  // integrality of p^{nr} I weakens with n, so this n is the binding one.
  int n_strict = params.n0;
  while (Rational(ipow(p, static_cast<unsigned long>(n_strict * gap))) <= norm) ++n_strict;
  int n_le = params.n0;
  while (Rational(ipow(p, static_cast<unsigned long>(n_le * gap))) < norm) ++n_le;

  v.definitional_bound = params.r * n_strict;
  v.definitional = k <= v.definitional_bound;
  v.definitional_le = k <= params.r * n_le;
  v.boundary = n_strict != n_le;

  const Integer lg = floor_log(norm, p);
  const Integer cf = params.s * floor_div(lg, Integer(gap)) + 1;
  v.closed_form_bound = std::max(params.n0, to_int(cf, "closed-form bound"));
  v.closed_form = k <= v.closed_form_bound;
  return v;
}

MembershipReport membership_restricted(const PerfectedSeries& a, const RestrictedParams& params,
                                       MembershipMethod method) {
  validate(params);
  const bool run_def = method != MembershipMethod::kClosedForm;
  const bool run_cf = method != MembershipMethod::kDefinitional;
  MembershipReport report;
  bool def_ok = true;
  bool def_le_ok = true;
  bool cf_ok = true;
  nlohmann::json def_witness;
  nlohmann::json cf_witness;
  for (const auto& [e, c] : a.terms()) {
    const TermVerdict v = restricted_term_verdict(e, a.p(), params);
    const int k = neg_ord(e, a.p());
    if (v.boundary) ++report.boundary_terms;
    if (!v.definitional && def_ok) {
      def_ok = false;
      def_witness = {{"exp", exponent_to_json(e, a.p())},
                     {"neg_ord", k},
                     {"bound", v.definitional_bound},
                     {"method", "definitional"}};
    }
    if (!v.definitional_le) def_le_ok = false;
    if (!v.closed_form && cf_ok) {
      cf_ok = false;
      cf_witness = {{"exp", exponent_to_json(e, a.p())},
                    {"neg_ord", k},
                    {"bound", v.closed_form_bound},
                    {"method", "closed_form"}};
    }
    if (run_def && run_cf && !v.boundary && v.definitional != v.closed_form) {
      if (report.disagreements == 0) {
        report.first_disagreement = {{"exp", exponent_to_json(e, a.p())},
                                     {"neg_ord", k},
                                     {"definitional_bound", v.definitional_bound},
                                     {"closed_form_bound", v.closed_form_bound}};
      }
      ++report.disagreements;
    }
  }
  if (run_def) {
    report.definitional = def_ok;
    report.definitional_le = def_le_ok;
  }
  if (run_cf) report.closed_form = cf_ok;
  report.agree = report.disagreements == 0;
  if (run_def) {
    report.member = def_ok;
    report.witness = def_witness;
  } else {
    report.member = cf_ok;
    report.witness = cf_witness;
  }
  return report;
}

EcdReport membership_ecd(const PerfectedSeries& a, const Rational& e, const Rational& c,
                         const Rational& d) {
  if (e <= 0 || c <= 0 || d < 0) {
    fail(ErrorCode::kPreconditionViolated, "need E > 0, C > 0, d >= 0",
         {{"E", e.get_str()}, {"C", c.get_str()}, {"d", d.get_str()}});
  }
  Rational en = e;
  en.canonicalize();
  if (!en.get_num().fits_ulong_p() || !en.get_den().fits_ulong_p()) {
    fail(ErrorCode::kPreconditionViolated, "exponent E too large");
  }
  const unsigned long u = en.get_num().get_ui();
  const unsigned long w = en.get_den().get_ui();
  const Rational cw = rpow(c, w);
  EcdReport report;
  for (const auto& [ex, coeff] : a.terms()) {
    const int k = neg_ord(ex, a.p());
    if (k == 0) continue;
    const Rational base = max_norm(ex) + d;
    // p^k > 1, so the max with 1 only matters through C (|I| + d)^E.
    const Rational lhs(ipow(a.p(), static_cast<unsigned long>(k) * w));
    const Rational rhs = cw * rpow(base, u);
    if (lhs > rhs) {
      report.member = false;
      report.witness = {{"exp", exponent_to_json(ex, a.p())}, {"neg_ord", k}};
      break;
    }
  }
  return report;
}

RigidityReport rigidity_check(const PerfectedSeries& f, const std::vector<PerfectedSeries>& g,
                              const std::vector<PerfectedSeries>& h, int r,
                              const std::vector<std::int64_t>& d_seq, PoweredBlock powered) {
  if (d_seq.empty()) fail(ErrorCode::kSequenceTooShort, "d_seq must be nonempty");
  if (r < 1) fail(ErrorCode::kPreconditionViolated, "r must be positive", {{"r", r}});
  if (g.empty() || h.empty()) {
    fail(ErrorCode::kPreconditionViolated, "both blocks g and h must be nonempty");
  }
  Rational bound = g.front().degree_bound();
  for (const auto& s : g) bound = std::min(bound, s.degree_bound());
  for (const auto& s : h) bound = std::min(bound, s.degree_bound());
  const Integer certifiable = floor_rational(bound);
  for (std::size_t n = 0; n < d_seq.size(); ++n) {
    if (d_seq[n] < 0) {
      fail(ErrorCode::kPreconditionViolated, "d_n must be nonnegative", {{"n", n}, {"d", d_seq[n]}});
    }
    if (Integer(static_cast<long>(d_seq[n])) > certifiable) {
      fail(ErrorCode::kDegreeBoundTooSmall, "degree bound cannot certify the congruence",
           {{"n", n}, {"d", d_seq[n]}, {"D", bound.get_str()}});
    }
  }

  RigidityReport report;
  const std::int64_t p = f.p();
  // ratio_ok: q^n / d_n strictly decreasing, with d_n = 0 read as infinity.
  std::optional<Rational> prev;
  bool prev_infinite = false;
  for (std::size_t n = 0; n < d_seq.size(); ++n) {
    const bool infinite = d_seq[n] == 0;
    Rational value;
    if (!infinite) {
      value = Rational(ipow(p, static_cast<unsigned long>(r) * n), Integer(static_cast<long>(d_seq[n])));
      value.canonicalize();
    }
    if (n > 0) {
      const bool decreasing = infinite ? false : (prev_infinite || value < *prev);
      if (!decreasing) report.ratio_ok = false;
    }
    prev = value;
    prev_infinite = infinite;
  }

  std::vector<PerfectedSeries> g_pow = g;
  std::vector<PerfectedSeries> h_pow = h;
  auto& block = powered == PoweredBlock::kG ? g_pow : h_pow;
  for (std::size_t n = 0; n < d_seq.size(); ++n) {
    if (n > 0) {
      // Raising to q = p^r is r applications of the absolute Frobenius.
      for (auto& s : block) {
        for (int i = 0; i < r; ++i) {
          s = ps_frobenius(s, FrobeniusDirection::kForward, FrobeniusFlavor::kAbsolute);
        }
      }
    }
    const PerfectedSeries value = ps_compose(f, g_pow, h_pow);
    const PerfectedSeries rest =
        ps_truncate_ideal(value, IdealKind::kPower, static_cast<int>(d_seq[n]));
    RigidityReport::Congruence cong;
    cong.n = static_cast<int>(n);
    cong.d = d_seq[n];
    cong.pass = rest.is_zero();
    if (!cong.pass) {
      cong.witness = {{"exp", exponent_to_json(rest.terms().begin()->first, p)}};
      report.all_congruences = false;
    }
    report.congruences.push_back(std::move(cong));
  }

  const int m = g.front().nvars();
  std::vector<PerfectedSeries> g2;
  std::vector<PerfectedSeries> h2;
  for (const auto& s : g) g2.push_back(ps_embed(s, 2 * m, 0));
  for (const auto& s : h) h2.push_back(ps_embed(s, 2 * m, m));
  const PerfectedSeries joint = ps_compose(f, g2, h2);
  report.evaluation_zero = joint.is_zero();
  if (!report.evaluation_zero) {
    report.evaluation_witness = {{"exp", exponent_to_json(joint.terms().begin()->first, p)}};
  }
  return report;
}

SlopeExponents slope_exponents(const Rational& mu1, const Rational& mu0) {
  if (mu0 >= mu1) {
    fail(ErrorCode::kSlopeOrderViolated, "need mu0 < mu1",
         {{"mu1", mu1.get_str()}, {"mu0", mu0.get_str()}});
  }
  if (mu0 <= 0 || mu1 > 1) {
    fail(ErrorCode::kPreconditionViolated, "need 0 < mu0 < mu1 <= 1",
         {{"mu1", mu1.get_str()}, {"mu0", mu0.get_str()}});
  }
  Rational m1 = mu1;
  Rational m0 = mu0;
  m1.canonicalize();
  m0.canonicalize();
  SlopeExponents out;
  mpz_lcm(out.a.get_mpz_t(), m1.get_num_mpz_t(), m0.get_num_mpz_t());
  out.r = out.a * m1.get_den() / m1.get_num();
  out.s = out.a * m0.get_den() / m0.get_num();
  if (out.s <= out.r) fail(ErrorCode::kInternalInvariantViolation, "expected s > r");
  return out;
}

}  // namespace isolab
