#include "oracles.hpp"

#include <numeric>
#include <vector>

namespace isolab::testing {

namespace {

using Dense = std::vector<std::vector<Rational>>;

Dense dense_zero(std::size_t n) { return Dense(n, std::vector<Rational>(n, Rational(0))); }

Dense dense_identity(std::size_t n) {
  Dense m = dense_zero(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Dense dense_mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense r = dense_zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j] != 0) r[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return r;
}

void dense_axpy(Dense& y, const Rational& s, const Dense& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (x[i][j] != 0) y[i][j] += s * x[i][j];
    }
  }
}

// exp of a nilpotent matrix with N^{c+1} = 0.
Dense dense_exp(const Dense& n, int c) {
  Dense result = dense_identity(n.size());
  Dense power = dense_identity(n.size());
  Rational fact = 1;
  for (int k = 1; k <= c; ++k) {
    power = dense_mul(power, n);
    fact *= k;
    dense_axpy(result, Rational(1) / fact, power);
  }
  return result;
}

}  // namespace

std::map<std::string, Rational> bch_matrix_oracle(int c) {
  std::vector<std::string> words{""};
  for (std::size_t start = 0; start < words.size(); ++start) {
    if (static_cast<int>(words[start].size()) == c) continue;
    words.push_back(words[start] + "X");
    words.push_back(words[start] + "Y");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
  const std::size_t n = words.size();

  auto left_mult = [&](char letter) {
    Dense m = dense_zero(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<int>(words[j].size()) == c) continue;
      m[index.at(std::string(1, letter) + words[j])][j] = 1;
    }
    return m;
  };

  const Dense prod = dense_mul(dense_exp(left_mult('X'), c), dense_exp(left_mult('Y'), c));
  Dense nil = prod;
  for (std::size_t i = 0; i < n; ++i) nil[i][i] -= 1;
  Dense log = dense_zero(n);
  Dense power = dense_identity(n);
  for (int k = 1; k <= c; ++k) {
    power = dense_mul(power, nil);
    dense_axpy(log, Rational(k % 2 == 1 ? 1 : -1, k), power);
  }

  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (log[i][0] != 0) out[words[i]] = log[i][0];
  }
  return out;
}

PerfectedSeries naive_compose(const PerfectedSeries& f, const std::vector<PerfectedSeries>& g,
                              const std::vector<PerfectedSeries>& h) {
  std::vector<PerfectedSeries> args = g;
  args.insert(args.end(), h.begin(), h.end());
  const int m = args.front().nvars();
  Rational bound = args.front().degree_bound();
  for (const auto& a : args) bound = std::min(bound, a.degree_bound());
  const Exponent zero(static_cast<std::size_t>(m), Rational(0));
  PerfectedSeries result(f.field(), m, bound);
  for (const auto& [e, c] : f.terms()) {
    PerfectedSeries term = PerfectedSeries::monomial(f.field(), m, bound, zero, f.field()->one());
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned long k = 0; k < e[i].get_num().get_ui(); ++k) term = ps_mul(term, args[i]);
    }
    result = ps_add(result, ps_scalar(c, term));
  }
  return result;
}

Matrix isoclinic_block(const FieldSpecPtr& spec, int a, int b) {
  Matrix m(spec, static_cast<std::size_t>(b), static_cast<std::size_t>(b));
  const Rational top(Integer(1), Integer(spec->p_power(a)));
  if (b == 1) {
    m(0, 0) = PadicScalar::from_rational(spec, top);
    return m;
  }
  for (int i = 0; i + 1 < b; ++i) {
    m(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = PadicScalar::one(spec);
  }
  m(0, static_cast<std::size_t>(b - 1)) = PadicScalar::from_rational(spec, top);
  return m;
}

DieudonneLieAlgebra random_negative_dla(std::mt19937_64& rng, int max_rank,
                                        RandomDlaStats* stats) {
  static const std::int64_t kPrimes[] = {2, 3, 5, 7};
  const std::int64_t p = kPrimes[std::uniform_int_distribution<int>(0, 3)(rng)];
  const int f = std::uniform_int_distribution<int>(0, 4)(rng) == 0 ? 2 : 1;
  const FieldSpecPtr spec = FieldSpec::make(p, f, 30);
  const int rank = std::uniform_int_distribution<int>(1, max_rank)(rng);

  // Blocks of slope -a/b with 0 < a <= b, gcd(a, b) = 1. Half of the
  // algebras of rank >= 3 use a slope -1/2 block and slope -1 lines with
  // phi = -1/p, matching phi on the exterior square of the -1/2 block so
  // that brackets exist over Q_p.
  std::vector<std::pair<int, int>> blocks;
  int left = rank;
  bool twisted_lines = false;
  if (rank >= 3 && std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    blocks = {{1, 2}, {1, 1}};
    left -= 3;
    twisted_lines = true;
  }
  while (left > 0) {
    const int b = std::uniform_int_distribution<int>(1, left)(rng);
    std::vector<int> numerators;
    for (int a = 1; a <= b; ++a) {
      if (std::gcd(a, b) == 1) numerators.push_back(a);
    }
    const int a = numerators[std::uniform_int_distribution<std::size_t>(0, numerators.size() - 1)(rng)];
    blocks.emplace_back(a, b);
    left -= b;
  }

  const auto n = static_cast<std::size_t>(rank);
  Matrix frob(spec, n, n);
  std::size_t offset = 0;
  for (const auto& [a, b] : blocks) {
    Matrix blk = isoclinic_block(spec, a, b);
    if (twisted_lines && a == 1 && b == 1) blk = -blk;
    for (std::size_t i = 0; i < blk.rows(); ++i) {
      for (std::size_t j = 0; j < blk.cols(); ++j) frob(offset + i, offset + j) = blk(i, j);
    }
    offset += blk.rows();
  }

  // Unimodular change of basis: unit lower times unit upper triangular.
  std::uniform_int_distribution<int> small(-2, 2);
  std::vector<std::vector<Rational>> lower(n, std::vector<Rational>(n, Rational(0)));
  std::vector<std::vector<Rational>> upper = lower;
  for (std::size_t i = 0; i < n; ++i) {
    lower[i][i] = 1;
    upper[i][i] = 1;
    for (std::size_t j = 0; j < i; ++j) lower[i][j] = small(rng);
    for (std::size_t j = i + 1; j < n; ++j) upper[i][j] = small(rng);
  }
  const Matrix change = Matrix::from_rationals(spec, lower) * Matrix::from_rationals(spec, upper);
  const Isocrystal iso = Isocrystal(frob).change_basis(change);

  DieudonneLieAlgebra result = DieudonneLieAlgebra::abelian(iso);
  const std::vector<StructureConstants> basis = equivariant_brackets(iso);
  if (stats) ++stats->generated;
  if (basis.empty()) return result;

  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int attempt = 0; attempt < 8; ++attempt) {
    DieudonneLieAlgebra candidate = DieudonneLieAlgebra::abelian(iso);
    // Early attempts combine the whole basis, later ones single elements.
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const bool use = attempt < 4 ? true : b == pick(rng);
      const int coeff = use ? small(rng) : 0;
      if (coeff == 0) continue;
      const PadicScalar c = PadicScalar::from_integer(spec, coeff);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) {
            candidate.bracket[i][j][k] += c * basis[b][i][j][k];
          }
        }
      }
    }
    if (dla_validate(candidate).bracket_laws()) {
      bool nonzero = false;
      for (const auto& row : candidate.bracket) {
        for (const auto& v : row) {
          for (const auto& x : v) nonzero = nonzero || !x.is_zero();
        }
      }
      if (stats && nonzero) ++stats->nonabelian;
      return candidate;
    }
    if (stats) ++stats->rejected_brackets;
  }
  return result;
}

}  // namespace isolab::testing
