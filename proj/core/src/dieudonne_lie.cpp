#include "isolab/dieudonne_lie.hpp"

#include <functional>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

PadicScalar acc_zero(const FieldSpecPtr& spec) {
  return PadicScalar::exact_zero(spec);
}

Matrix basis_vector(const FieldSpecPtr& spec, std::size_t n, std::size_t i) {
  Matrix v(spec, n, 1);
  v(i, 0) = PadicScalar::one(spec);
  return v;
}

Matrix bracket_vector(const DieudonneLieAlgebra& a, std::size_t i, std::size_t j) {
  Matrix v(a.spec(), a.dim(), 1);
  for (std::size_t k = 0; k < a.dim(); ++k) v(k, 0) = a.bracket[i][j][k];
  return v;
}

// Q_p-kernel of a Q_p-linear map from Q_p^m to a Q_q-vector, given the image
// of each standard basis vector.
Matrix qp_solution_space(const FieldSpecPtr& spec, std::size_t unknowns,
                         const std::function<std::vector<PadicScalar>(std::size_t)>& image) {
  const FieldSpecPtr qp = spec->prime_subfield();
  std::vector<std::vector<PadicScalar>> columns;
  std::size_t rows = 0;
  for (std::size_t u = 0; u < unknowns; ++u) {
    std::vector<PadicScalar> col;
    for (const auto& x : image(u)) {
      for (auto& c : x.prime_coordinates()) col.push_back(std::move(c));
    }
    rows = col.size();
    columns.push_back(std::move(col));
  }
  Matrix m(qp, rows, unknowns);
  for (std::size_t u = 0; u < unknowns; ++u) {
    for (std::size_t r = 0; r < rows; ++r) m(r, u) = columns[u][r];
  }
  if (rows == 0) return Matrix::identity(qp, unknowns);
  return kernel(m);
}

// The Q_q-scalar t^l lifted from prime coordinate index l.
PadicScalar coordinate_unit(const FieldSpecPtr& spec, int l) {
  std::vector<PadicScalar> c(static_cast<std::size_t>(spec->f()),
                             PadicScalar::exact_zero(spec->prime_subfield()));
  c[static_cast<std::size_t>(l)] = PadicScalar::one(spec->prime_subfield());
  return PadicScalar::from_prime_coordinates(spec, c);
}

PadicScalar from_qp_coords(const FieldSpecPtr& spec, const Matrix& sol, std::size_t col,
                           std::size_t offset) {
  std::vector<PadicScalar> c;
  for (int l = 0; l < spec->f(); ++l) c.push_back(sol(offset + static_cast<std::size_t>(l), col));
  return PadicScalar::from_prime_coordinates(spec, c);
}

void append_entries(std::vector<PadicScalar>& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
}

}  // namespace

DieudonneLieAlgebra DieudonneLieAlgebra::abelian(Isocrystal iso) {
  DieudonneLieAlgebra a;
  a.bracket = zero_brackets(iso.spec(), iso.rank());
  a.iso = std::move(iso);
  return a;
}

StructureConstants zero_brackets(const FieldSpecPtr& spec, std::size_t n) {
  return StructureConstants(
      n, std::vector<std::vector<PadicScalar>>(n, std::vector<PadicScalar>(n, PadicScalar::exact_zero(spec))));
}

Matrix lie_bracket(const DieudonneLieAlgebra& a, const Matrix& x, const Matrix& y) {
  const std::size_t n = a.dim();
  Matrix out(a.spec(), n, 1);
  for (std::size_t k = 0; k < n; ++k) out(k, 0) = acc_zero(a.spec());
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i, 0).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || y(j, 0).is_zero()) continue;
      const PadicScalar xy = x(i, 0) * y(j, 0);
      for (std::size_t k = 0; k < n; ++k) {
        if (a.bracket[i][j][k].is_zero()) continue;
        out(k, 0) += xy * a.bracket[i][j][k];
      }
    }
  }
  return out;
}

bool certified_equal(const PadicScalar& a, const PadicScalar& b) {
  const PadicScalar d = a - b;
  if (!d.is_zero()) return false;
  std::optional<std::int64_t> ref;
  for (const auto* x : {&a, &b}) {
    if (auto v = x->valuation(); v && (!ref || *v < *ref)) ref = v;
  }
  if (ref && d.precision_bound() <= *ref) {
    fail(ErrorCode::kInsufficientPrecision, "equality undetermined at this precision",
         {{"bound", d.precision_bound()}, {"valuation", *ref}});
  }
  return true;
}

bool certified_equal(const Matrix& a, const Matrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!certified_equal(a(i, j), b(i, j))) return false;
    }
  }
  return true;
}

bool ValidationReport::all() const {
  return antisymmetry.ok && jacobi.ok && f_equivariance.ok &&
         (!lattice_dieudonne || lattice_dieudonne->ok) &&
         (!lattice_bracket_closure || lattice_bracket_closure->ok);
}

ValidationReport dla_validate(const DieudonneLieAlgebra& a) {
  const std::size_t n = a.dim();
  const auto& spec = a.spec();
  ValidationReport rep;

  for (std::size_t i = 0; i < n && rep.antisymmetry.ok; ++i) {
    for (std::size_t j = i; j < n && rep.antisymmetry.ok; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!certified_equal(a.bracket[i][j][k], -a.bracket[j][i][k])) {
          rep.antisymmetry = {false, {{"i", i}, {"j", j}, {"k", k}}};
          break;
        }
      }
    }
  }

  for (std::size_t i = 0; i < n && rep.jacobi.ok; ++i) {
    for (std::size_t j = i + 1; j < n && rep.jacobi.ok; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const Matrix ei = basis_vector(spec, n, i), ej = basis_vector(spec, n, j),
                     ek = basis_vector(spec, n, k);
        const Matrix t1 = lie_bracket(a, ei, bracket_vector(a, j, k));
        const Matrix t2 = lie_bracket(a, ej, bracket_vector(a, k, i));
        const Matrix t3 = lie_bracket(a, ek, bracket_vector(a, i, j));
        if (!certified_equal(t1 + t2, -t3)) {
          rep.jacobi = {false, {{"i", i}, {"j", j}, {"k", k}}};
          break;
        }
      }
    }
  }

  const Matrix& f = a.iso.frobenius();
  for (std::size_t i = 0; i < n && rep.f_equivariance.ok; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Matrix lhs = lie_bracket(a, f.col(i), f.col(j));
      const Matrix rhs = a.iso.apply(bracket_vector(a, i, j));
      if (!certified_equal(lhs, rhs)) {
        rep.f_equivariance = {false, {{"i", i}, {"j", j}}};
        break;
      }
    }
  }

  if (a.lattice) {
    const Matrix& l = *a.lattice;
    const Matrix phi_l = a.iso.apply(l);
    Check dieu;
    for (std::size_t j = 0; j < l.cols() && dieu.ok; ++j) {
      if (!lattice_contains(phi_l, l.col(j))) {
        dieu = {false, {{"containment", "M in phi(M)"}, {"column", j}}};
      } else if (!lattice_contains(l.shifted(-1), phi_l.col(j))) {
        dieu = {false, {{"containment", "phi(M) in M/p"}, {"column", j}}};
      }
    }
    rep.lattice_dieudonne = dieu;

    Check closure;
    for (std::size_t i = 0; i < l.cols() && closure.ok; ++i) {
      for (std::size_t j = i + 1; j < l.cols(); ++j) {
        if (!lattice_contains(l, lie_bracket(a, l.col(i), l.col(j)))) {
          closure = {false, {{"i", i}, {"j", j}}};
          break;
        }
      }
    }
    rep.lattice_bracket_closure = closure;
  }
  return rep;
}

LowerCentralSeries lower_central_series(const DieudonneLieAlgebra& a) {
  const std::size_t n = a.dim();
  const auto& spec = a.spec();
  LowerCentralSeries out;
  Matrix current = Matrix::identity(spec, n);
  out.chain.push_back(current);
  while (current.cols() > 0) {
    Matrix brackets(spec, n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const Matrix ek = basis_vector(spec, n, k);
      for (std::size_t c = 0; c < current.cols(); ++c) {
        brackets = brackets.hcat(lie_bracket(a, ek, current.col(c)));
      }
    }
    Matrix next = brackets.cols() == 0 ? brackets : column_span(brackets);
    if (next.cols() >= current.cols()) {
      fail(ErrorCode::kNotNilpotent, "lower central series stabilizes at a nonzero subspace",
           {{"step", out.chain.size()}, {"dimension", next.cols()}});
    }
    current = std::move(next);
    out.chain.push_back(current);
  }
  out.nilpotency_class = static_cast<int>(out.chain.size()) - 1;
  return out;
}

Matrix intersect_lattice(const Matrix& lattice, const Matrix& subspace) {
  if (subspace.cols() == 0) return Matrix(lattice.spec(), lattice.rows(), 0);
  auto coords = solve(lattice, subspace);
  if (!coords) {
    fail(ErrorCode::kPreconditionViolated, "subspace is not inside the lattice span");
  }
  return lattice * saturate(*coords);
}

bool lattice_contains(const Matrix& lattice, const Matrix& v) {
  if (lattice.cols() == 0) return v.is_zero();
  auto coords = solve(lattice, v);
  return coords && coords->is_integral();
}

LatticeFiltration lattice_filtration(const DieudonneLieAlgebra& a) {
  if (!a.lattice) fail(ErrorCode::kPreconditionViolated, "lattice required");
  const LowerCentralSeries lcs = lower_central_series(a);
  LatticeFiltration out;
  for (const auto& sub : lcs.chain) out.lattices.push_back(intersect_lattice(*a.lattice, sub));
  const Matrix& top = *a.lattice;
  for (std::size_t i = 0; i + 1 < out.lattices.size() && out.closure.ok; ++i) {
    const Matrix& li = out.lattices[i];
    for (std::size_t b = 0; b < top.cols() && out.closure.ok; ++b) {
      for (std::size_t g = 0; g < li.cols(); ++g) {
        if (!lattice_contains(out.lattices[i + 1], lie_bracket(a, top.col(b), li.col(g)))) {
          out.closure = {false, {{"level", i}, {"lattice_column", b}, {"filtration_column", g}}};
          break;
        }
      }
    }
  }
  return out;
}

Rational pdiv_dimension(const SlopeMultiset& slopes, SlopeRange range) {
  Rational total = 0;
  for (const auto& e : slopes) {
    const bool ok = range == SlopeRange::kDieudonne ? (e.slope >= -1 && e.slope <= 0)
                                                    : e.slope <= 0;
    if (!ok) {
      fail(ErrorCode::kSlopeOutOfRange, "slope outside the admissible range",
           {{"slope", e.slope.get_str()}});
    }
    total -= e.slope * e.multiplicity;
  }
  total.canonicalize();
  return total;
}

CenterReport minimal_slope_center_check(const DieudonneLieAlgebra& a) {
  const SlopeMultiset slopes = newton_slopes(a.iso);
  for (const auto& e : slopes) {
    if (e.slope >= 0) {
      fail(ErrorCode::kSlopeNotStrictlyNegative, "all slopes must be strictly negative",
           {{"slope", e.slope.get_str()}});
    }
  }
  CenterReport rep;
  const ValidationReport v = dla_validate(a);
  rep.bracket_laws_hold = v.bracket_laws() && v.f_equivariance.ok;
  if (slopes.empty()) return rep;
  rep.minimal_slope = slopes.front().slope;
  const SlopePart part = slope_part(a.iso, SlopePredicate::equal(rep.minimal_slope));
  rep.block_dim = part.embedding.cols();
  const std::size_t n = a.dim();
  for (std::size_t c = 0; c < part.embedding.cols() && rep.central; ++c) {
    for (std::size_t k = 0; k < n; ++k) {
      const Matrix br = lie_bracket(a, part.embedding.col(c), basis_vector(a.spec(), n, k));
      if (!br.is_zero()) {
        rep.central = false;
        rep.witness = {{"block_column", c}, {"basis_index", k}};
        break;
      }
    }
  }
  return rep;
}

AutResult aut_lie_algebra(const DieudonneLieAlgebra& a, AutMode mode) {
  const auto& spec = a.spec();
  const std::size_t n = a.dim();
  const auto f = static_cast<std::size_t>(spec->f());
  const Matrix& frob = a.iso.frobenius();

  auto unknown_matrix = [&](std::size_t u) {
    const std::size_t entry = u / f;
    Matrix g(spec, n, n);
    g(entry / n, entry % n) = coordinate_unit(spec, static_cast<int>(u % f));
    return g;
  };

  auto image = [&](std::size_t u) {
    const Matrix g = unknown_matrix(u);
    std::vector<PadicScalar> out;
    append_entries(out, g * frob - frob * g.sigma());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Matrix ei = basis_vector(spec, n, i), ej = basis_vector(spec, n, j);
        Matrix r = lie_bracket(a, ei, g * ej) + lie_bracket(a, g * ei, ej);
        if (mode == AutMode::kDerivation) r = g * bracket_vector(a, i, j) - r;
        append_entries(out, r);
      }
    }
    return out;
  };

  const Matrix sol = qp_solution_space(spec, n * n * f, image);
  AutResult out;
  out.quadratic_term_excluded = mode == AutMode::kLinearized;
  out.dimension = static_cast<int>(sol.cols());
  for (std::size_t c = 0; c < sol.cols(); ++c) {
    Matrix g(spec, n, n);
    for (std::size_t e = 0; e < n * n; ++e) g(e / n, e % n) = from_qp_coords(spec, sol, c, e * f);
    out.basis.push_back(std::move(g));
  }
  return out;
}

Matrix smallest_f_stable_subalgebra(const DieudonneLieAlgebra& a, const Matrix& generators) {
  const std::size_t n = a.dim();
  Matrix current = generators.cols() == 0 ? generators : column_span(generators);
  if (current.cols() == 0) return Matrix(a.spec(), n, 0);
  for (;;) {
    Matrix grown = current.hcat(a.iso.apply(current)).hcat(a.iso.apply_inverse(current));
    for (std::size_t i = 0; i < current.cols(); ++i) {
      for (std::size_t j = i + 1; j < current.cols(); ++j) {
        grown = grown.hcat(lie_bracket(a, current.col(i), current.col(j)));
      }
    }
    Matrix next = column_span(grown);
    if (next.cols() == current.cols()) break;
    current = std::move(next);
  }
  return current;
}

std::vector<StructureConstants> equivariant_brackets(const Isocrystal& iso) {
  const auto& spec = iso.spec();
  const std::size_t n = iso.rank();
  const auto f = static_cast<std::size_t>(spec->f());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  const std::size_t per_pair = n * f;

  auto constants_for = [&](std::size_t u) {
    DieudonneLieAlgebra a;
    a.iso = iso;
    a.bracket = zero_brackets(spec, n);
    const auto [i, j] = pairs[u / per_pair];
    const std::size_t k = (u % per_pair) / f;
    const PadicScalar c = coordinate_unit(spec, static_cast<int>(u % f));
    a.bracket[i][j][k] = c;
    a.bracket[j][i][k] = -c;
    return a;
  };

  auto image = [&](std::size_t u) {
    const DieudonneLieAlgebra a = constants_for(u);
    const Matrix& frob = iso.frobenius();
    std::vector<PadicScalar> out;
    for (const auto& [i, j] : pairs) {
      append_entries(out, lie_bracket(a, frob.col(i), frob.col(j)) -
                              iso.apply(bracket_vector(a, i, j)));
    }
    return out;
  };

  const Matrix sol = qp_solution_space(spec, pairs.size() * per_pair, image);
  std::vector<StructureConstants> out;
  for (std::size_t c = 0; c < sol.cols(); ++c) {
    StructureConstants sc = zero_brackets(spec, n);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [i, j] = pairs[p];
      for (std::size_t k = 0; k < n; ++k) {
        const PadicScalar v = from_qp_coords(spec, sol, c, p * per_pair + k * f);
        sc[i][j][k] = v;
        sc[j][i][k] = -v;
      }
    }
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace isolab
