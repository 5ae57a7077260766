#pragma once

// Test-only reference implementations, written independently of the library
// code paths they check.

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "isolab/bch.hpp"
#include "isolab/dieudonne_lie.hpp"
#include "isolab/perfected_series.hpp"

namespace isolab::testing {

// log(exp(X) exp(Y)) in Q<X, Y> truncated above degree c, computed with dense
// rational matrices of the left-regular representation on words of length
// <= c. Keys are words over 'X', 'Y'; zero coefficients are omitted.
std::map<std::string, Rational> bch_matrix_oracle(int c);

// f(g, h) by repeated ps_mul/ps_add, with no power caching.
PerfectedSeries naive_compose(const PerfectedSeries& f, const std::vector<PerfectedSeries>& g,
                              const std::vector<PerfectedSeries>& h);

struct RandomDlaStats {
  std::size_t generated = 0;
  std::size_t nonabelian = 0;
  std::size_t rejected_brackets = 0;
};

// Dieudonne-Lie algebra of rank <= max_rank whose slopes lie in [-1, 0):
// a block sum of isoclinic pieces in a random unimodular basis (biased toward
// slopes -1/2 and -1, whose sums allow nonzero brackets), with a bracket
// drawn from the F-equivariant antisymmetric brackets and kept only if the
// Jacobi identity holds.
DieudonneLieAlgebra random_negative_dla(std::mt19937_64& rng, int max_rank,
                                        RandomDlaStats* stats = nullptr);

// Isoclinic block of slope -a/b: F e_i = e_{i+1}, F e_{b-1} = p^{-a} e_0.
Matrix isoclinic_block(const FieldSpecPtr& spec, int a, int b);

}  // namespace isolab::testing
