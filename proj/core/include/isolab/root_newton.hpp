#pragma once

// Split classical groups in their standard matrix realizations, a rational
// Newton cocharacter nu, and the slope data of Lie U_nu.
//
// Coordinates are those of the diagonal torus of GL(n). For GSp(2g) and SO(n)
// the form is antidiagonal, so diag(t_1, ..., t_n) lies in the group iff
// t_i * t_{n+1-i} is independent of i. Accordingly nu must satisfy
// nu_i + nu_{n+1-i} = const. Slopes follow the covariant normalization:
// the root alpha contributes slope -<alpha, nu>.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isolab/isocrystal.hpp"
#include "isolab/rational_linalg.hpp"

namespace isolab {

enum class GroupType { kGL, kGSp, kSO };

std::string_view group_type_name(GroupType t);
GroupType parse_group_type(std::string_view name);

struct RootDatumWithCochar {
  GroupType type = GroupType::kGL;
  int n = 0;  // size of the matrix realization
  std::vector<std::vector<int>> positive_roots;
  std::vector<int> two_rho;
  std::vector<Rational> nu;

  int rank_parameter() const;  // n for GL, g for GSp(2g), n for SO(n)
};

// Validates the shape, the torus symmetry of nu and its dominance.
RootDatumWithCochar make_root_datum(GroupType type, int n, std::vector<Rational> nu);

// Reversed and negated: the dominant representative of -nu, mapping the
// classical (contravariant) sign convention to the covariant one.
std::vector<Rational> classical_to_covariant(const std::vector<Rational>& nu);

Rational pairing(const std::vector<int>& root, const std::vector<Rational>& nu);

SlopeMultiset slope_multiset_from_roots(const RootDatumWithCochar& d);
Rational leaf_dimension(const RootDatumWithCochar& d);

// Lie G and Lie U_nu as subspaces of gl_n (bases of n x n rational matrices).
std::vector<QMatrix> lie_algebra_basis(GroupType type, int n);
std::vector<QMatrix> unipotent_radical_basis(const RootDatumWithCochar& d);
int unipotent_nilpotency(const RootDatumWithCochar& d);

struct CoxeterGateReport {
  int h = 0;           // from the table GL(n): n, GSp(2g): 2g, SO(n): 2(n-1)
  int h_coxeter = 0;   // Coxeter number of the root system
  int n_class = 0;
  bool p_ge_h = false;
  bool p_gt_n = false;
  bool class_bound_holds = false;  // n_class <= h - 1
};

CoxeterGateReport coxeter_gate(const RootDatumWithCochar& d, std::int64_t p);

// Frobenius X -> b sigma(X) b^{-1} on Lie G.
Isocrystal adjoint_isocrystal(const RootDatumWithCochar& d, const Matrix& b);

// b = diag(p^{-nu_i}) for integral nu.
Matrix diagonal_representative(const FieldSpecPtr& spec, const RootDatumWithCochar& d);

}  // namespace isolab
