#include "isolab/bch.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "isolab/errors.hpp"
#include "isolab/json_io.hpp"

namespace isolab {

namespace {

void check_degree(int c) {
  if (c < 1) fail(ErrorCode::kPreconditionViolated, "degree must be positive", {{"c", c}});
  if (c > kMaxBchDegree) {
    fail(ErrorCode::kDegreeTooLarge, "BCH degree beyond the configured bound",
         {{"c", c}, {"max", kMaxBchDegree}});
  }
}

void add_to(AssocPoly& acc, const AssocPoly& p, const Rational& scale) {
  for (const auto& [w, c] : p) {
    Rational& slot = acc[w];
    slot += c * scale;
    if (slot == 0) acc.erase(w);
  }
}

AssocPoly multiply(const AssocPoly& a, const AssocPoly& b, std::size_t max_len) {
  AssocPoly out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (wa.size() + wb.size() > max_len) continue;
      Rational& slot = out[wa + wb];
      slot += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

AssocPoly commutator(const AssocPoly& a, const AssocPoly& b) {
  const std::size_t unlimited = std::numeric_limits<std::size_t>::max();
  AssocPoly out = multiply(a, b, unlimited);
  add_to(out, multiply(b, a, unlimited), -1);
  return out;
}

AssocPoly homogeneous_part(const AssocPoly& p, std::size_t d) {
  AssocPoly out;
  for (const auto& [w, c] : p) {
    if (w.size() == d) out.emplace(w, c);
  }
  return out;
}

Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

FreeLieElement from_assoc(const AssocPoly& p, int c) {
  FreeLieElement out;
  out.degree = c;
  for (int d = 1; d <= c; ++d) {
    const AssocPoly part = homogeneous_part(p, static_cast<std::size_t>(d));
    // Dynkin-Specht-Wever: a homogeneous Lie polynomial P of degree d
    // satisfies theta(P) = d P for the left-normed bracketing map theta.
    AssocPoly theta;
    for (const auto& [w, coeff] : part) add_to(theta, left_normed_expansion(w), coeff);
    AssocPoly scaled;
    add_to(scaled, part, d);
    if (theta != scaled) {
      fail(ErrorCode::kInternalInvariantViolation, "series is not a Lie polynomial",
           {{"degree", d}});
    }
    for (auto& t : lyndon_coordinates(part, d).terms) out.terms.push_back(std::move(t));
  }
  return out;
}

FreeLieElement compute_bch(int c) {
  const auto max_len = static_cast<std::size_t>(c);
  auto exp_of = [&](char letter) {
    AssocPoly e;
    for (int k = 0; k <= c; ++k) e[Word(static_cast<std::size_t>(k), letter)] = Rational(1, factorial(k));
    return e;
  };
  AssocPoly w = multiply(exp_of('X'), exp_of('Y'), max_len);
  w.erase("");
  AssocPoly log, power = w;
  for (int k = 1; k <= c; ++k) {
    add_to(log, power, Rational(k % 2 == 1 ? 1 : -1, k));
    power = multiply(power, w, max_len);
  }
  return from_assoc(log, c);
}

}  // namespace

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!(w < w.substr(i))) return false;
  }
  return true;
}

std::vector<Word> lyndon_words(int max_length) {
  // Duval's generation in lexicographic order.
  std::vector<Word> out;
  if (max_length < 1) return out;
  Word w = "X";
  const char last = 'Y';
  while (!w.empty()) {
    out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(max_length)) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == last) w.pop_back();
    if (!w.empty()) w.back() = 'Y';
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    const Word v = w.substr(i);
    if (is_lyndon(v)) return {w.substr(0, i), v};
  }
  fail(ErrorCode::kPreconditionViolated, "word has no standard factorization", {{"word", w}});
}

AssocPoly lyndon_bracket_expansion(const Word& w) {
  if (w.size() == 1) return {{w, Rational(1)}};
  const auto [u, v] = standard_factorization(w);
  return commutator(lyndon_bracket_expansion(u), lyndon_bracket_expansion(v));
}

AssocPoly left_normed_expansion(const Word& w) {
  AssocPoly acc{{w.substr(0, 1), Rational(1)}};
  for (std::size_t i = 1; i < w.size(); ++i) acc = commutator(acc, {{w.substr(i, 1), Rational(1)}});
  return acc;
}

AssocPoly to_associative(const FreeLieElement& e) {
  AssocPoly out;
  for (const auto& t : e.terms) add_to(out, lyndon_bracket_expansion(t.word), t.coeff);
  return out;
}

FreeLieElement lyndon_coordinates(const AssocPoly& p, int degree) {
  AssocPoly rest = p;
  FreeLieElement out;
  out.degree = degree;
  while (!rest.empty()) {
    auto it = std::min_element(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
      return a.first.size() != b.first.size() ? a.first.size() < b.first.size()
                                              : a.first < b.first;
    });
    const Word w = it->first;
    const Rational c = it->second;
    if (!is_lyndon(w)) {
      fail(ErrorCode::kInternalInvariantViolation, "leading word is not Lyndon", {{"word", w}});
    }
    out.terms.push_back({w, c});
    add_to(rest, lyndon_bracket_expansion(w), -c);
  }
  return out;
}

FreeLieElement bch_series(int c) {
  check_degree(c);
  static const FreeLieElement table = compute_bch(kMaxBchDegree);
  FreeLieElement out;
  out.degree = c;
  for (const auto& t : table.terms) {
    if (t.word.size() <= static_cast<std::size_t>(c)) out.terms.push_back(t);
  }
  return out;
}

FreeLieElement bch_series_dynkin(int c) {
  check_degree(c);
  AssocPoly total;
  // Blocks (r_i, s_i) with r_i + s_i >= 1 and total length at most c.
  std::vector<std::pair<int, int>> blocks;
  std::function<void(int)> visit = [&](int used) {
    if (!blocks.empty()) {
      const auto k = static_cast<long>(blocks.size());
      Word w;
      Integer denom = used;
      for (const auto& [r, s] : blocks) {
        w.append(static_cast<std::size_t>(r), 'X');
        w.append(static_cast<std::size_t>(s), 'Y');
        denom *= factorial(r) * factorial(s);
      }
      Rational coeff(k % 2 == 1 ? 1 : -1, 1);
      coeff /= Rational(k) * Rational(denom);
      add_to(total, left_normed_expansion(w), coeff);
    }
    for (int r = 0; used + r <= c; ++r) {
      for (int s = 0; used + r + s <= c; ++s) {
        if (r + s == 0) continue;
        blocks.emplace_back(r, s);
        visit(used + r + s);
        blocks.pop_back();
      }
    }
  };
  visit(0);
  FreeLieElement out;
  out.degree = c;
  for (int d = 1; d <= c; ++d) {
    for (auto& t : lyndon_coordinates(homogeneous_part(total, static_cast<std::size_t>(d)), d).terms) {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

std::set<long> denominator_profile(int c) {
  std::set<long> primes;
  for (const auto& t : bch_series(c).terms) {
    Integer d = t.coeff.get_den();
    for (long q = 2; d > 1; ++q) {
      while (d % q == 0) {
        primes.insert(q);
        d /= q;
      }
    }
  }
  return primes;
}

nlohmann::json to_json(const FreeLieElement& e) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : e.terms) out.push_back({{"word", t.word}, {"coeff", t.coeff.get_str()}});
  return out;
}

Matrix group_mul(const DieudonneLieAlgebra& a, const Matrix& x, const Matrix& y) {
  const int cls = lower_central_series(a).nilpotency_class;
  if (cls <= 1) return x + y;
  check_degree(cls);
  std::map<Word, Matrix> memo;
  std::function<const Matrix&(const Word&)> value = [&](const Word& w) -> const Matrix& {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    Matrix v;
    if (w == "X") {
      v = x;
    } else if (w == "Y") {
      v = y;
    } else {
      const auto [u, s] = standard_factorization(w);
      const Matrix left = value(u);
      v = lie_bracket(a, left, value(s));
    }
    return memo.emplace(w, std::move(v)).first->second;
  };
  Matrix out = x + y;
  for (const auto& t : bch_series(cls).terms) {
    if (t.word.size() < 2) continue;
    out = out + value(t.word).scaled(PadicScalar::from_rational(a.spec(), t.coeff));
  }
  return out;
}

SamplePairs random_lattice_pairs(const DieudonneLieAlgebra& a, std::size_t count,
                                 std::uint64_t seed, int bound) {
  const Matrix lattice = a.lattice ? *a.lattice : Matrix::identity(a.spec(), a.dim());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  auto draw = [&] {
    std::vector<std::vector<Rational>> coords(lattice.cols(), std::vector<Rational>(1));
    for (auto& row : coords) row[0] = dist(rng);
    return lattice * Matrix::from_rationals(a.spec(), coords);
  };
  SamplePairs out;
  for (std::size_t i = 0; i < count; ++i) {
    Matrix x = draw();
    Matrix y = draw();
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

LatticeClosureReport lattice_closure_check(const DieudonneLieAlgebra& a,
                                           const SamplePairs& samples) {
  const Matrix lattice = a.lattice ? *a.lattice : Matrix::identity(a.spec(), a.dim());
  LatticeClosureReport rep;
  rep.nilpotency_class = lower_central_series(a).nilpotency_class;
  rep.p_gt_n = a.spec()->p() > rep.nilpotency_class;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [x, y] = samples[i];
    ++rep.samples_checked;
    const Matrix prod = group_mul(a, x, y);
    if (!lattice_contains(lattice, prod)) {
      rep.closed = false;
      rep.witness = {{"sample", i},
                     {"x", vector_to_json(x)},
                     {"y", vector_to_json(y)},
                     {"product", vector_to_json(prod)}};
      break;
    }
  }
  return rep;
}

RhoSplit rho_split(const DieudonneLieAlgebra& a) {
  std::vector<SlopeBlock> blocks;
  try {
    blocks = slope_split(a.iso);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientPrecision) throw;
    fail(ErrorCode::kSplitUnavailable, "no F-equivariant complement at this precision",
         e.witness());
  }
  if (blocks.empty()) fail(ErrorCode::kSplitUnavailable, "empty algebra");
  const Matrix lattice = a.lattice ? *a.lattice : Matrix::identity(a.spec(), a.dim());
  RhoSplit s;
  s.minimal_slope = blocks.front().slope;
  s.b = blocks.front().basis;
  s.c = Matrix(a.spec(), a.dim(), 0);
  for (std::size_t i = 1; i < blocks.size(); ++i) s.c = s.c.hcat(blocks[i].basis);
  s.b_plus = intersect_lattice(lattice, s.b);
  s.c_plus = intersect_lattice(lattice, s.c);
  return s;
}

namespace {

Matrix split_coordinates(const RhoSplit& s, const Matrix& v) {
  auto coords = solve(s.b.hcat(s.c), v);
  if (!coords) fail(ErrorCode::kSplitUnavailable, "vector is not in b + c");
  return *coords;
}

}  // namespace

Matrix rho_project(const RhoSplit& s, const Matrix& v) {
  const Matrix coords = split_coordinates(s, v);
  return s.b * coords.block(0, 0, s.b.cols(), coords.cols());
}

RhoDefectResult rho_defect(const DieudonneLieAlgebra& a, const Matrix& x_prime,
                           const Matrix& x, int n) {
  return rho_defect(a, rho_split(a), x_prime, x, n);
}

RhoDefectResult rho_defect(const DieudonneLieAlgebra& a, const RhoSplit& split,
                           const Matrix& x_prime, const Matrix& x, int n) {
  if (n < 0) fail(ErrorCode::kPreconditionViolated, "n must be nonnegative", {{"n", n}});
  const Matrix lattice = a.lattice ? *a.lattice : Matrix::identity(a.spec(), a.dim());
  if (!lattice_contains(lattice, x_prime)) {
    fail(ErrorCode::kPreconditionViolated, "x' is not in the lattice");
  }
  const Matrix coords = split_coordinates(split, x);
  const Matrix c_part = split.c * coords.block(split.b.cols(), 0, split.c.cols(), 1);
  if (!lattice_contains(split.c_plus, c_part.shifted(n))) {
    fail(ErrorCode::kPreconditionViolated, "c-component of x is not in p^-n c+");
  }
  RhoDefectResult r;
  r.minimal_slope = split.minimal_slope;
  r.nilpotency_class = lower_central_series(a).nilpotency_class;
  r.p_gt_n = a.spec()->p() > r.nilpotency_class;
  r.defect = rho_project(split, group_mul(a, x_prime, x)) - rho_project(split, x) -
             rho_project(split, x_prime);
  r.in_scaled_lattice = lattice_contains(split.b_plus, r.defect.shifted(n));
  return r;
}

}  // namespace isolab
