#include "isolab/isocrystal.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Polynomial arithmetic over Z_q / p^k, coefficients low-to-high.
using ZqPoly = std::vector<ZqVec>;

ZqPoly zq_poly_mul(const FieldSpec& s, const ZqPoly& a, const ZqPoly& b, int k) {
  ZqPoly c(a.size() + b.size() - 1, s.zero_vec());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = s.add(c[i + j], s.mul(a[i], b[j], k), k);
    }
  }
  return c;
}

Matrix stack_rows(const Matrix& top, const Matrix& bottom) {
  return top.transpose().hcat(bottom.transpose()).transpose();
}

bool zq_poly_is_zero(const FieldSpec& s, const ZqPoly& a) {
  return std::all_of(a.begin(), a.end(),
                     [&](const ZqVec& c) { return !s.valuation(c).has_value(); });
}

}  // namespace

SlopeMultiset make_slope_multiset(std::vector<Rational> slopes) {
  std::map<Rational, int> counts;
  for (auto& s : slopes) {
    s.canonicalize();
    ++counts[s];
  }
  SlopeMultiset out;
  for (const auto& [slope, mult] : counts) out.push_back({slope, mult});
  return out;
}

std::vector<Rational> expand(const SlopeMultiset& s) {
  std::vector<Rational> out;
  for (const auto& e : s) {
    for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.slope);
  }
  return out;
}

int total_multiplicity(const SlopeMultiset& s) {
  int total = 0;
  for (const auto& e : s) total += e.multiplicity;
  return total;
}

bool operator==(const SlopeEntry& a, const SlopeEntry& b) {
  return a.slope == b.slope && a.multiplicity == b.multiplicity;
}

Isocrystal::Isocrystal(Matrix frobenius) : frobenius_(std::move(frobenius)) {
  if (!frobenius_.square()) {
    fail(ErrorCode::kMalformedInput, "Frobenius matrix must be square");
  }
  if (frobenius_.rows() > 0 && isolab::rank(frobenius_) != frobenius_.rows()) {
    fail(ErrorCode::kNonInvertible, "Frobenius matrix is singular to precision");
  }
}

Isocrystal Isocrystal::diagonal(FieldSpecPtr spec, const std::vector<Rational>& entries) {
  std::vector<PadicScalar> d;
  for (const auto& e : entries) d.push_back(PadicScalar::from_rational(spec, e));
  return Isocrystal(Matrix::diagonal(d));
}

Matrix Isocrystal::apply(const Matrix& v) const { return frobenius_ * v.sigma(); }

Matrix Isocrystal::apply_inverse(const Matrix& v) const {
  return (inverse(frobenius_) * v).sigma_inv();
}

Matrix Isocrystal::linearized() const {
  Matrix l = frobenius_;
  for (int i = 1; i < spec()->f(); ++i) l = l * frobenius_.sigma_power(i);
  return l;
}

Isocrystal Isocrystal::change_basis(const Matrix& a) const {
  return Isocrystal(inverse(a) * frobenius_ * a.sigma());
}

Isocrystal Isocrystal::twisted(std::int64_t k) const {
  return Isocrystal(frobenius_.shifted(k));
}

Isocrystal direct_sum(const Isocrystal& a, const Isocrystal& b) {
  const std::size_t n = a.rank(), m = b.rank();
  Matrix f(a.spec(), n + m, n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) f(i, j) = a.frobenius()(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) f(n + i, n + j) = b.frobenius()(i, j);
  }
  return Isocrystal(std::move(f));
}

SlopeMultiset root_valuations(const Poly& poly) {
  const std::size_t n = poly.size() - 1;
  if (poly.empty() || poly.back().is_zero()) {
    fail(ErrorCode::kPreconditionViolated, "leading coefficient must be nonzero");
  }
  if (poly.front().is_zero()) {
    fail(ErrorCode::kNonInvertible, "constant coefficient is zero to precision",
         {{"bound", poly.front().precision_bound()}});
  }
  // Lower convex hull of (i, v(c_i)) over certified nonzero coefficients.
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (std::size_t i = 0; i <= n; ++i) {
    if (auto v = poly[i].valuation()) pts.emplace_back(static_cast<std::int64_t>(i), *v);
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> hull;
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  for (const auto& pt : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) {
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  // A zero coefficient with bound b at index k is harmless iff b lies on or
  // above the hull at k.
  for (std::size_t i = 0; i <= n; ++i) {
    if (!poly[i].is_zero()) continue;
    const auto k = static_cast<std::int64_t>(i);
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
      const auto& [x0, y0] = hull[s];
      const auto& [x1, y1] = hull[s + 1];
      if (k < x0 || k > x1) continue;
      const Rational height = Rational(y0) + Rational(y1 - y0, x1 - x0) * (k - x0);
      if (Rational(poly[i].precision_bound()) < height) {
        fail(ErrorCode::kInsufficientPrecision,
             "Newton polygon not certified at coefficient " + std::to_string(i),
             {{"index", i}, {"bound", poly[i].precision_bound()}});
      }
      break;
    }
  }
  std::vector<Rational> roots;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const auto& [x0, y0] = hull[s];
    const auto& [x1, y1] = hull[s + 1];
    Rational v(y0 - y1, x1 - x0);
    v.canonicalize();
    for (std::int64_t r = 0; r < x1 - x0; ++r) roots.push_back(v);
  }
  return make_slope_multiset(std::move(roots));
}

SlopeMultiset newton_slopes(const Isocrystal& m) {
  if (m.rank() == 0) return {};
  const Poly cp = charpoly(m.linearized());
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (!cp[i].sigma().same_to_precision(cp[i])) {
      fail(ErrorCode::kInternalInvariantViolation,
           "characteristic polynomial is not sigma-invariant",
           {{"index", i}});
    }
  }
  SlopeMultiset roots = root_valuations(cp);
  for (auto& e : roots) {
    e.slope /= m.spec()->f();
    e.slope.canonicalize();
  }
  return roots;
}

namespace {

// Factorization of Q(U) = P(p^c U) / p^e into (A, B) with B monic, roots of
// B of positive valuation and roots of A of negative valuation. Coefficients
// are returned in the U scale, all known to the same absolute precision.
std::pair<Poly, Poly> split_scaled(const Poly& poly, std::int64_t c) {
  const auto& spec = poly.back().spec();
  const FieldSpec& s = *spec;
  const std::size_t n = poly.size() - 1;

  // Q(U) = P(p^c U), normalized to be primitive.
  Poly q(n + 1);
  for (std::size_t i = 0; i <= n; ++i) q[i] = poly[i].shifted(c * static_cast<std::int64_t>(i));
  std::optional<std::int64_t> e;
  for (const auto& x : q) {
    if (auto v = x.valuation(); v && (!e || *v < *e)) e = v;
  }
  std::int64_t digits = std::numeric_limits<std::int64_t>::max();
  for (auto& x : q) {
    x = x.shifted(-*e);
    digits = std::min(digits, x.absolute_precision());
  }
  digits = std::min<std::int64_t>(digits, s.N());
  if (digits <= 0) {
    fail(ErrorCode::kInsufficientPrecision, "no precision left for Hensel lifting");
  }
  const int k_digits = static_cast<int>(digits);

  ZqPoly target(n + 1, s.zero_vec());
  std::optional<std::size_t> vertex;
  for (std::size_t i = 0; i <= n; ++i) {
    if (q[i].is_zero()) continue;
    const std::int64_t v = *q[i].valuation();
    if (v < 0) fail(ErrorCode::kInternalInvariantViolation, "normalization failed");
    if (v >= k_digits) continue;
    target[i] = s.scale(q[i].unit(), s.p_power(static_cast<int>(v)), k_digits);
    if (v == 0) {
      if (vertex) {
        fail(ErrorCode::kInternalInvariantViolation,
             "split point is not strictly between root valuations");
      }
      vertex = i;
    }
  }
  const std::size_t k = *vertex;

  // Q = B * A with B monic of degree k (B = U^k mod p) and A = unit mod p.
  ZqPoly b(k + 1, s.zero_vec());
  b[k] = s.one_vec();
  const ZqVec a0 = target[k];
  ZqPoly a{a0};
  const ZqVec t = s.inv_unit(a0, k_digits);

  bool done = false;
  for (int iter = 0; iter <= k_digits + 1; ++iter) {
    ZqPoly err = target;
    ZqPoly prod = zq_poly_mul(s, b, a, k_digits);
    for (std::size_t i = 0; i < prod.size(); ++i) {
      if (i >= err.size()) err.push_back(s.zero_vec());
      err[i] = s.sub(err[i], prod[i], k_digits);
    }
    if (zq_poly_is_zero(s, err)) {
      done = true;
      break;
    }
    // T*E = quo * B + rem with B monic.
    ZqPoly te;
    for (const auto& coeff : err) te.push_back(s.mul(t, coeff, k_digits));
    ZqPoly quo(te.size() > k ? te.size() - k : 1, s.zero_vec());
    for (std::size_t d = te.size(); d-- > k;) {
      const ZqVec lead = te[d];
      quo[d - k] = lead;
      for (std::size_t i = 0; i <= k; ++i) {
        te[d - k + i] = s.sub(te[d - k + i], s.mul(lead, b[i], k_digits), k_digits);
      }
    }
    for (std::size_t i = 0; i < k; ++i) b[i] = s.add(b[i], te[i], k_digits);
    if (a.size() < quo.size()) a.resize(quo.size(), s.zero_vec());
    for (std::size_t i = 0; i < quo.size(); ++i) {
      a[i] = s.add(a[i], s.mul(a0, quo[i], k_digits), k_digits);
    }
    a.resize(n - k + 1, s.zero_vec());
  }
  if (!done) fail(ErrorCode::kInternalInvariantViolation, "Hensel lifting did not converge");

  Poly high(k + 1), low(n - k + 1);
  for (std::size_t i = 0; i <= k; ++i) high[i] = PadicScalar::from_zq(spec, b[i], k_digits);
  for (std::size_t i = 0; i <= n - k; ++i) low[i] = PadicScalar::from_zq(spec, a[i], k_digits);
  return {std::move(low), std::move(high)};
}

}  // namespace

std::pair<Poly, Poly> split_at_valuation(const Poly& poly, std::int64_t c) {
  auto [low, high] = split_scaled(poly, c);
  // Back to T = p^c U.
  const std::size_t k = high.size() - 1;
  for (std::size_t i = 0; i <= k; ++i) high[i] = high[i].shifted(c * static_cast<std::int64_t>(k - i));
  for (std::size_t i = 0; i < low.size(); ++i) low[i] = low[i].shifted(-c * static_cast<std::int64_t>(i));
  return {std::move(low), std::move(high)};
}

std::vector<SlopeBlock> slope_split(const Isocrystal& m) {
  const SlopeMultiset slopes = newton_slopes(m);
  const auto& spec = m.spec();
  const std::size_t n = m.rank();
  if (slopes.size() <= 1) {
    std::vector<SlopeBlock> out;
    if (!slopes.empty()) {
      out.push_back({slopes[0].slope, slopes[0].multiplicity, Matrix::identity(spec, n)});
    }
    return out;
  }

  // Root valuations of L are f * slope. Raise L to a power b so an integer
  // separates each consecutive pair of scaled valuations.
  std::vector<Rational> mu;
  for (const auto& e : slopes) mu.push_back(e.slope * spec->f());
  std::int64_t b = 1;
  std::vector<std::int64_t> breaks;
  for (;; ++b) {
    breaks.clear();
    bool ok = true;
    for (std::size_t j = 0; j + 1 < mu.size(); ++j) {
      const Integer cj = floor_of(mu[j] * b) + 1;
      if (Rational(cj) >= mu[j + 1] * b) {
        ok = false;
        break;
      }
      breaks.push_back(cj.get_si());
    }
    if (ok) break;
  }

  const Matrix l = m.linearized();
  Matrix lb = l;
  for (std::int64_t i = 1; i < b; ++i) lb = lb * l;

  // Every break splits the full characteristic polynomial, so no factor
  // inherits the precision loss of an earlier one. Block j is the common
  // kernel of the factor below c_j and the factor above c_{j-1}.
  const Poly cp = charpoly(lb);
  std::vector<Matrix> below, above;
  for (std::int64_t c : breaks) {
    auto [low, high] = split_scaled(cp, c);
    const Matrix scaled = lb.shifted(-c);
    below.push_back(evaluate(low, scaled));
    above.push_back(evaluate(high, scaled));
  }

  std::vector<SlopeBlock> blocks;
  Matrix all(spec, n, 0);
  for (std::size_t j = 0; j < slopes.size(); ++j) {
    Matrix conditions(spec, 0, n);
    if (j < breaks.size()) conditions = below[j];
    if (j > 0) conditions = j < breaks.size() ? stack_rows(conditions, above[j - 1]) : above[j - 1];
    Matrix ker = kernel(conditions);
    if (ker.cols() != static_cast<std::size_t>(slopes[j].multiplicity)) {
      fail(ErrorCode::kInsufficientPrecision,
           "slope block kernel has the wrong dimension",
           {{"expected", slopes[j].multiplicity}, {"found", ker.cols()}});
    }
    ker = saturate(ker);
    if (!spans_contain(ker, m.apply(ker))) {
      fail(ErrorCode::kInternalInvariantViolation, "slope block is not Phi-stable");
    }
    all = all.hcat(ker);
    blocks.push_back({slopes[j].slope, slopes[j].multiplicity, std::move(ker)});
  }
  if (isolab::rank(all) != n) {
    fail(ErrorCode::kInsufficientPrecision, "slope blocks do not span the space");
  }
  return blocks;
}

Isocrystal internal_hom(const Isocrystal& y, const Isocrystal& z) {
  if (!y.spec()->same_as(*z.spec())) {
    fail(ErrorCode::kFieldSpecMismatch, "internal hom of isocrystals over different fields");
  }
  const std::size_t ny = y.rank(), nz = z.rank();
  const Matrix left = inverse(y.frobenius()).transpose();  // (F_Y^{-1})^T
  const Matrix& right = z.frobenius();
  Matrix k(y.spec(), ny * nz, ny * nz);
  // (A kron B)[(i + a*nz), (j + b*nz)] = A[a][b] * B[i][j]
  for (std::size_t a = 0; a < ny; ++a) {
    for (std::size_t bcol = 0; bcol < ny; ++bcol) {
      const PadicScalar& lab = left(a, bcol);
      if (lab.is_zero() && lab.precision_bound() >= y.spec()->N()) continue;
      for (std::size_t i = 0; i < nz; ++i) {
        for (std::size_t j = 0; j < nz; ++j) {
          k(i + a * nz, j + bcol * nz) = lab * right(i, j);
        }
      }
    }
  }
  return Isocrystal(std::move(k));
}

bool SlopePredicate::matches(const Rational& slope) const {
  switch (kind) {
    case Kind::kNonPositive: return slope <= 0;
    case Kind::kNegative: return slope < 0;
    case Kind::kEqual: return slope == value;
  }
  return false;
}

Isocrystal restrict_to(const Isocrystal& m, const Matrix& basis) {
  if (basis.cols() == 0) return Isocrystal(Matrix(m.spec(), 0, 0));
  auto f = solve(basis, m.apply(basis));
  if (!f) {
    fail(ErrorCode::kInternalInvariantViolation, "subspace is not Phi-stable");
  }
  return Isocrystal(std::move(*f));
}

SlopePart slope_part(const Isocrystal& m, const SlopePredicate& predicate) {
  Matrix embedding(m.spec(), m.rank(), 0);
  for (const auto& block : slope_split(m)) {
    if (predicate.matches(block.slope)) embedding = embedding.hcat(block.basis);
  }
  Isocrystal part = restrict_to(m, embedding);
  return {std::move(part), std::move(embedding)};
}

}  // namespace isolab
