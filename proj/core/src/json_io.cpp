#include "isolab/json_io.hpp"

#include <algorithm>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what, json witness = nullptr) {
  fail(ErrorCode::kMalformedInput, what, std::move(witness));
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

long int_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return j.get<long>();
  if (j.is_string()) {
    Integer n;
    if (n.set_str(j.get<std::string>(), 10) == 0 && n.fits_slong_p()) return n.get_si();
  }
  malformed(std::string(what) + " must be an integer", j);
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer n;
    if (n.set_str(j.get<std::string>(), 10) == 0) return n;
  }
  malformed("expected an integer", j);
}

json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (d == static_cast<double>(static_cast<long>(d))) return Rational(static_cast<long>(d));
    malformed("non-integer numbers must be written as \"a/b\" strings", j);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Rational q;
    if (!s.empty() && s.find_first_not_of("+-0123456789/") == std::string::npos &&
        q.set_str(s[0] == '+' ? s.substr(1) : s, 10) == 0 && q.get_den() != 0) {
      q.canonicalize();
      return q;
    }
  }
  malformed("expected a rational number", j);
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

FieldSpecPtr field_spec_from_json(const json& j, int default_precision) {
  if (!j.is_object()) malformed("field must be an object", j);
  const long p = int_from_json(require(j, "p"), "p");
  const long f = j.contains("f") ? int_from_json(j.at("f"), "f") : 1;
  const long n = j.contains("N") ? int_from_json(j.at("N"), "N") : default_precision;
  if (p < 2 || !is_prime(p)) fail(ErrorCode::kPreconditionViolated, "p must be prime", {{"p", p}});
  if (f < 1 || f > 64) fail(ErrorCode::kPreconditionViolated, "f must lie in [1, 64]", {{"f", f}});
  if (n < 1 || n > 100000) fail(ErrorCode::kPreconditionViolated, "N must be positive", {{"N", n}});
  return FieldSpec::make(p, static_cast<int>(f), static_cast<int>(n));
}

json field_spec_to_json(const FieldSpec& spec) {
  return {{"p", spec.p()}, {"f", spec.f()}, {"N", spec.N()}};
}

PadicScalar scalar_from_json(const FieldSpecPtr& spec, const json& j) {
  if (!j.is_object()) return PadicScalar::from_rational(spec, rational_from_json(j));
  if (j.contains("coords")) {
    const json& c = j.at("coords");
    if (!c.is_array() || c.size() > static_cast<std::size_t>(spec->f())) {
      malformed("coords must list at most f rationals", j);
    }
    PadicScalar acc = PadicScalar::exact_zero(spec);
    PadicScalar power = PadicScalar::one(spec);
    const PadicScalar t = PadicScalar::generator(spec);
    for (const auto& q : c) {
      acc += PadicScalar::from_rational(spec, rational_from_json(q)) * power;
      power *= t;
    }
    return acc;
  }
  if (j.contains("zero")) {
    const long bound = j.contains("bound") ? int_from_json(j.at("bound"), "bound") : spec->N();
    return PadicScalar::zero(spec, bound);
  }
  const long v = int_from_json(require(j, "valuation"), "valuation");
  const json& u = require(j, "unit");
  if (!u.is_array() || u.empty() || u.size() > static_cast<std::size_t>(spec->f())) {
    malformed("unit must list between 1 and f integers", j);
  }
  ZqVec unit = spec->zero_vec();
  for (std::size_t i = 0; i < u.size(); ++i) unit[i] = integer_from_json(u[i]);
  const long digits = j.contains("digits") ? int_from_json(j.at("digits"), "digits") : spec->N();
  if (digits < 1) malformed("digits must be positive", j);
  const ZqVec reduced = spec->reduce(unit, 1);
  if (std::all_of(reduced.begin(), reduced.end(), [](const Integer& x) { return x == 0; })) {
    malformed("unit must not be divisible by p", j);
  }
  return PadicScalar::from_unit(spec, v, unit, static_cast<int>(digits));
}

json scalar_to_json(const PadicScalar& s) {
  if (s.is_exact_zero()) return "0";
  if (s.is_zero()) return {{"zero", true}, {"bound", s.precision_bound()}};
  if (auto q = s.as_rational_hint()) return rational_to_string(*q);
  json unit = json::array();
  for (const auto& c : s.unit()) unit.push_back(integer_to_json(c));
  return {{"valuation", *s.valuation()}, {"unit", unit}, {"digits", s.relative_precision()}};
}

Matrix matrix_from_json(const FieldSpecPtr& spec, const json& j) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a nonempty array of rows", j);
  const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) malformed("matrix rows must be nonempty arrays", j);
  Matrix m(spec, j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) malformed("matrix rows must have equal length", j);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(spec, j[r][c]);
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix vector_from_json(const FieldSpecPtr& spec, const json& j) {
  if (!j.is_array() || j.empty()) malformed("vector must be a nonempty array", j);
  std::vector<PadicScalar> entries;
  for (const auto& x : j) entries.push_back(scalar_from_json(spec, x));
  return Matrix::from_column(entries);
}

json vector_to_json(const Matrix& column) {
  json out = json::array();
  for (std::size_t r = 0; r < column.rows(); ++r) {
    for (std::size_t c = 0; c < column.cols(); ++c) out.push_back(scalar_to_json(column(r, c)));
  }
  return out;
}

Isocrystal isocrystal_from_json(const json& j, int default_precision) {
  if (!j.is_object()) malformed("isocrystal must be an object", j);
  const json& field = j.contains("spec") ? j.at("spec") : require(j, "field");
  const FieldSpecPtr spec = field_spec_from_json(field, default_precision);
  Isocrystal m(matrix_from_json(spec, require(j, "frobenius")));
  if (j.contains("rank") && int_from_json(j.at("rank"), "rank") != static_cast<long>(m.rank())) {
    malformed("rank does not match the Frobenius matrix", j.at("rank"));
  }
  return m;
}

json isocrystal_to_json(const Isocrystal& m) {
  return {{"spec", field_spec_to_json(*m.spec())},
          {"rank", m.rank()},
          {"frobenius", matrix_to_json(m.frobenius())}};
}

DieudonneLieAlgebra dla_from_json(const json& j, int default_precision) {
  const json& iso = j.contains("iso") ? j.at("iso") : j;
  DieudonneLieAlgebra a = DieudonneLieAlgebra::abelian(isocrystal_from_json(iso, default_precision));
  const std::size_t n = a.dim();
  if (j.contains("bracket")) {
    const json& entries = j.at("bracket");
    if (!entries.is_array()) malformed("bracket must be an array", entries);
    if (!entries.empty() && entries.at(0).is_array()) {
      // Full table: bracket[i][j][k] is the coefficient of e_k in [e_i, e_j].
      if (entries.size() != n) malformed("bracket table must be n x n x n", entries);
      for (std::size_t i = 0; i < n; ++i) {
        if (!entries[i].is_array() || entries[i].size() != n) malformed("bracket table must be n x n x n", entries);
        for (std::size_t k = 0; k < n; ++k) {
          const json& v = entries[i][k];
          if (!v.is_array() || v.size() != n) malformed("bracket table must be n x n x n", entries);
          for (std::size_t r = 0; r < n; ++r) a.bracket[i][k][r] = scalar_from_json(a.spec(), v[r]);
        }
      }
    } else {
      std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
      for (const auto& e : entries) {
        const long i = int_from_json(require(e, "i"), "i");
        const long k = int_from_json(require(e, "j"), "j");
        if (i < 0 || k < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(k) >= n) {
          malformed("bracket index out of range", e);
        }
        const Matrix v = vector_from_json(a.spec(), require(e, "value"));
        if (v.rows() != n) malformed("bracket value must have one entry per basis vector", e);
        const auto ui = static_cast<std::size_t>(i);
        const auto uk = static_cast<std::size_t>(k);
        for (std::size_t r = 0; r < n; ++r) a.bracket[ui][uk][r] = v(r, 0);
        given[ui][uk] = true;
        if (!given[uk][ui]) {
          for (std::size_t r = 0; r < n; ++r) a.bracket[uk][ui][r] = -v(r, 0);
        }
      }
    }
  }
  if (j.contains("lattice") && !j.at("lattice").is_null()) {
    Matrix l = matrix_from_json(a.spec(), j.at("lattice"));
    if (l.rows() != n) malformed("lattice generators must have one row per basis vector", j.at("lattice"));
    a.lattice = std::move(l);
  }
  return a;
}

json dla_to_json(const DieudonneLieAlgebra& a) {
  const std::size_t n = a.dim();
  json table = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < n; ++k) {
      json value = json::array();
      for (std::size_t r = 0; r < n; ++r) value.push_back(scalar_to_json(a.bracket[i][k][r]));
      row.push_back(std::move(value));
    }
    table.push_back(std::move(row));
  }
  return {{"iso", isocrystal_to_json(a.iso)},
          {"bracket", table},
          {"lattice", a.lattice ? matrix_to_json(*a.lattice) : json(nullptr)}};
}

json slopes_to_json(const SlopeMultiset& s, bool classical) {
  SlopeMultiset shown = s;
  if (classical) {
    for (auto& e : shown) e.slope = -e.slope;
    std::sort(shown.begin(), shown.end(),
              [](const SlopeEntry& a, const SlopeEntry& b) { return a.slope < b.slope; });
  }
  json out = json::array();
  for (const auto& e : shown) out.push_back({rational_to_string(e.slope), e.multiplicity});
  return out;
}

PerfectedSeries series_from_json(const json& j) {
  const long p = int_from_json(require(j, "p"), "p");
  const long nvars = int_from_json(require(j, "nvars"), "nvars");
  long k = 1;
  if (j.contains("field")) {
    const json& field = j.at("field");
    if (field.contains("p") && int_from_json(field.at("p"), "field.p") != p) {
      fail(ErrorCode::kParameterMismatch, "field characteristic differs from p");
    }
    if (field.contains("k")) k = int_from_json(field.at("k"), "field.k");
  }
  if (p < 2 || !is_prime(p)) fail(ErrorCode::kPreconditionViolated, "p must be prime", {{"p", p}});
  if (k < 1 || k > 64) fail(ErrorCode::kPreconditionViolated, "k must lie in [1, 64]", {{"k", k}});
  if (nvars < 1 || nvars > 64) {
    fail(ErrorCode::kPreconditionViolated, "nvars must lie in [1, 64]", {{"nvars", nvars}});
  }
  const Rational bound = rational_from_json(require(j, "D"));
  PerfectedSeries s(FiniteField::make(p, static_cast<int>(k)), static_cast<int>(nvars), bound);
  const json& terms = require(j, "terms");
  if (!terms.is_array()) malformed("terms must be an array", terms);
  Integer pz(static_cast<long>(p));
  for (const auto& t : terms) {
    const json& ex = require(t, "exp");
    if (!ex.is_array()) malformed("exp must be an array", t);
    Exponent e;
    for (const auto& c : ex) {
      if (c.is_object()) {
        const Integer num = integer_from_json(require(c, "num"));
        const long pexp = int_from_json(require(c, "pexp"), "pexp");
        if (pexp < 0 || pexp > 4096) malformed("pexp out of range", c);
        Integer den;
        mpz_pow_ui(den.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(pexp));
        Rational q(num, den);
        q.canonicalize();
        e.push_back(q);
      } else {
        e.push_back(rational_from_json(c));
      }
      Integer den = e.back().get_den();
      while (den % pz == 0) den /= pz;
      if (den != 1 || e.back() < 0) malformed("exponents must be nonnegative with p-power denominators", c);
    }
    FqElem coeff;
    const json& cj = t.contains("coeff") ? t.at("coeff") : json(1);
    if (cj.is_array()) {
      for (const auto& c : cj) coeff.push_back(int_from_json(c, "coeff"));
    } else {
      coeff = s.field()->from_int(int_from_json(cj, "coeff"));
    }
    s.add_term(e, coeff);
  }
  return s;
}

json series_to_json(const PerfectedSeries& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) {
    terms.push_back({{"exp", exponent_to_json(e, s.p())}, {"coeff", c}});
  }
  return {{"p", s.p()},
          {"nvars", s.nvars()},
          {"field", {{"p", s.p()}, {"k", s.field()->k()}}},
          {"D", rational_to_string(s.degree_bound())},
          {"terms", terms}};
}

}  // namespace isolab
