#include "isolab/root_newton.hpp"

#include <map>
#include <string>

#include "isolab/dieudonne_lie.hpp"
#include "isolab/errors.hpp"

namespace isolab {

namespace {

using IndexPair = std::pair<int, int>;

// Index pairs (a, b), a < b, whose root spaces make up the positive part.
std::vector<IndexPair> positive_pairs(GroupType type, int n) {
  std::vector<IndexPair> out;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (type == GroupType::kGL) {
        out.emplace_back(a, b);
        continue;
      }
      const IndexPair mirror{n - 1 - b, n - 1 - a};
      if (mirror < IndexPair{a, b}) continue;
      if (type == GroupType::kSO && b == n - 1 - a) continue;
      out.emplace_back(a, b);
    }
  }
  return out;
}

QMatrix form_matrix(GroupType type, int n) {
  QMatrix j = q_zero(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const bool negative = type == GroupType::kGSp && i >= n / 2;
    j[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1 - i)] = negative ? -1 : 1;
  }
  return j;
}

QVector flatten(const QMatrix& m) {
  QVector v;
  for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
  return v;
}

// Matrices supported on `support` satisfying X^T J + J X = 0.
std::vector<QMatrix> form_preserving(GroupType type, int n, const std::vector<IndexPair>& support) {
  const auto un = static_cast<std::size_t>(n);
  if (type == GroupType::kGL) {
    std::vector<QMatrix> out;
    for (const auto& [a, b] : support) {
      QMatrix e = q_zero(un, un);
      e[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
      out.push_back(std::move(e));
    }
    return out;
  }
  const QMatrix j = form_matrix(type, n);
  QMatrix constraints = q_zero(un * un, support.size());
  for (std::size_t u = 0; u < support.size(); ++u) {
    const auto a = static_cast<std::size_t>(support[u].first);
    const auto b = static_cast<std::size_t>(support[u].second);
    // X = E_ab: (X^T J)_{bc} = J_{ac}, (J X)_{cb} = J_{ca}.
    for (std::size_t c = 0; c < un; ++c) {
      constraints[b * un + c][u] += j[a][c];
      constraints[c * un + b][u] += j[c][a];
    }
  }
  std::vector<QMatrix> out;
  for (const auto& v : q_kernel(constraints, support.size())) {
    QMatrix x = q_zero(un, un);
    for (std::size_t u = 0; u < support.size(); ++u) {
      x[static_cast<std::size_t>(support[u].first)][static_cast<std::size_t>(support[u].second)] = v[u];
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

std::string_view group_type_name(GroupType t) {
  switch (t) {
    case GroupType::kGL: return "GL";
    case GroupType::kGSp: return "GSp";
    case GroupType::kSO: return "SO";
  }
  return "GL";
}

GroupType parse_group_type(std::string_view name) {
  if (name == "GL") return GroupType::kGL;
  if (name == "GSp") return GroupType::kGSp;
  if (name == "SO") return GroupType::kSO;
  fail(ErrorCode::kUnsupportedType, "unsupported group type", {{"type", std::string(name)}});
}

int RootDatumWithCochar::rank_parameter() const {
  return type == GroupType::kGSp ? n / 2 : n;
}

RootDatumWithCochar make_root_datum(GroupType type, int n, std::vector<Rational> nu) {
  if (n < 1 || (type == GroupType::kGSp && n % 2 != 0)) {
    fail(ErrorCode::kInvalidRootDatum, "invalid size for the group type",
         {{"type", std::string(group_type_name(type))}, {"n", n}});
  }
  if (nu.size() != static_cast<std::size_t>(n)) {
    fail(ErrorCode::kInvalidRootDatum, "nu has the wrong length",
         {{"expected", n}, {"found", nu.size()}});
  }
  for (auto& x : nu) x.canonicalize();
  if (type != GroupType::kGL) {
    const Rational c = nu.front() + nu.back();
    for (int i = 0; i < n; ++i) {
      if (nu[static_cast<std::size_t>(i)] + nu[static_cast<std::size_t>(n - 1 - i)] != c) {
        fail(ErrorCode::kInvalidRootDatum, "nu does not factor through the torus of the group",
             {{"index", i}});
      }
    }
  }
  RootDatumWithCochar d;
  d.type = type;
  d.n = n;
  d.nu = std::move(nu);
  d.two_rho.assign(static_cast<std::size_t>(n), 0);
  for (const auto& [a, b] : positive_pairs(type, n)) {
    std::vector<int> root(static_cast<std::size_t>(n), 0);
    root[static_cast<std::size_t>(a)] = 1;
    root[static_cast<std::size_t>(b)] = -1;
    for (int i = 0; i < n; ++i) d.two_rho[static_cast<std::size_t>(i)] += root[static_cast<std::size_t>(i)];
    if (pairing(root, d.nu) < 0) {
      fail(ErrorCode::kInvalidRootDatum, "nu is not dominant",
           {{"root", {a, b}}, {"pairing", pairing(root, d.nu).get_str()}});
    }
    d.positive_roots.push_back(std::move(root));
  }
  return d;
}

std::vector<Rational> classical_to_covariant(const std::vector<Rational>& nu) {
  std::vector<Rational> out(nu.rbegin(), nu.rend());
  for (auto& x : out) x = -x;
  return out;
}

Rational pairing(const std::vector<int>& root, const std::vector<Rational>& nu) {
  Rational s = 0;
  for (std::size_t i = 0; i < root.size(); ++i) {
    if (root[i] != 0) s += nu[i] * root[i];
  }
  return s;
}

SlopeMultiset slope_multiset_from_roots(const RootDatumWithCochar& d) {
  std::vector<Rational> slopes;
  for (const auto& root : d.positive_roots) {
    const Rational v = pairing(root, d.nu);
    if (v > 0) slopes.push_back(-v);
  }
  return make_slope_multiset(std::move(slopes));
}

Rational leaf_dimension(const RootDatumWithCochar& d) {
  Rational total = pairing(d.two_rho, d.nu);
  total.canonicalize();
  const Rational check = pdiv_dimension(slope_multiset_from_roots(d), SlopeRange::kNonPositive);
  if (check != total) {
    fail(ErrorCode::kInternalInvariantViolation, "<2rho, nu> differs from the slope dimension",
         {{"two_rho_pairing", total.get_str()}, {"slope_dimension", check.get_str()}});
  }
  return total;
}

std::vector<QMatrix> lie_algebra_basis(GroupType type, int n) {
  std::vector<IndexPair> all;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) all.emplace_back(a, b);
  }
  std::vector<QMatrix> basis = form_preserving(type, n, all);
  if (type == GroupType::kGSp) basis.push_back(q_identity(static_cast<std::size_t>(n)));
  return basis;
}

std::vector<QMatrix> unipotent_radical_basis(const RootDatumWithCochar& d) {
  std::vector<IndexPair> support;
  for (int a = 0; a < d.n; ++a) {
    for (int b = 0; b < d.n; ++b) {
      if (d.nu[static_cast<std::size_t>(a)] > d.nu[static_cast<std::size_t>(b)]) support.emplace_back(a, b);
    }
  }
  return form_preserving(d.type, d.n, support);
}

int unipotent_nilpotency(const RootDatumWithCochar& d) {
  const std::vector<QMatrix> top = unipotent_radical_basis(d);
  std::vector<QMatrix> current = top;
  int length = 0;
  while (!current.empty()) {
    ++length;
    std::vector<QVector> brackets;
    std::vector<QMatrix> mats;
    for (const auto& x : top) {
      for (const auto& y : current) {
        QMatrix c = q_commutator(x, y);
        brackets.push_back(flatten(c));
        mats.push_back(std::move(c));
      }
    }
    std::vector<QMatrix> next;
    QMatrix reduced;
    for (std::size_t i = 0; i < brackets.size(); ++i) {
      QMatrix trial = reduced;
      trial.push_back(brackets[i]);
      if (q_rank(trial) > reduced.size()) {
        reduced.push_back(brackets[i]);
        next.push_back(mats[i]);
      }
    }
    if (next.size() >= current.size()) {
      fail(ErrorCode::kNotNilpotent, "Lie U_nu is not nilpotent");
    }
    current = std::move(next);
  }
  return length;
}

CoxeterGateReport coxeter_gate(const RootDatumWithCochar& d, std::int64_t p) {
  if (!is_prime(p)) fail(ErrorCode::kPreconditionViolated, "p must be prime", {{"p", p}});
  CoxeterGateReport r;
  switch (d.type) {
    case GroupType::kGL:
      r.h = d.n;
      r.h_coxeter = d.n;
      break;
    case GroupType::kGSp:
      r.h = d.n;
      r.h_coxeter = d.n;
      break;
    case GroupType::kSO:
      r.h = 2 * (d.n - 1);
      r.h_coxeter = d.n % 2 == 1 ? d.n - 1 : d.n - 2;
      break;
  }
  r.n_class = unipotent_nilpotency(d);
  r.p_ge_h = p >= r.h;
  r.p_gt_n = p > r.n_class;
  r.class_bound_holds = r.n_class <= r.h - 1;
  return r;
}

Isocrystal adjoint_isocrystal(const RootDatumWithCochar& d, const Matrix& b) {
  const auto n = static_cast<std::size_t>(d.n);
  if (b.rows() != n || b.cols() != n) {
    fail(ErrorCode::kPreconditionViolated, "b has the wrong size");
  }
  const auto& spec = b.spec();
  const Matrix binv = inverse(b);
  Matrix k(spec, n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t a = 0; a < n; ++a) {
        if (b(i, a).is_zero()) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (binv(c, j).is_zero()) continue;
          k(i * n + j, a * n + c) = b(i, a) * binv(c, j);
        }
      }
    }
  }
  const Isocrystal gl(std::move(k));
  if (d.type == GroupType::kGL) return gl;
  const std::vector<QMatrix> basis = lie_algebra_basis(d.type, d.n);
  std::vector<std::vector<Rational>> rows(n * n, std::vector<Rational>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const QVector v = flatten(basis[c]);
    for (std::size_t r = 0; r < v.size(); ++r) rows[r][c] = v[r];
  }
  return restrict_to(gl, Matrix::from_rationals(spec, rows));
}

Matrix diagonal_representative(const FieldSpecPtr& spec, const RootDatumWithCochar& d) {
  std::vector<PadicScalar> diag;
  for (const auto& x : d.nu) {
    if (x.get_den() != 1) {
      fail(ErrorCode::kPreconditionViolated, "diagonal representative needs integral nu",
           {{"coordinate", x.get_str()}});
    }
    diag.push_back(PadicScalar::one(spec).shifted(-x.get_num().get_si()));
  }
  return Matrix::diagonal(diag);
}

}  // namespace isolab
