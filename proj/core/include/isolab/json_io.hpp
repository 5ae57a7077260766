#pragma once

// JSON schemas shared by the CLI, the corpus and the tests. Malformed input
// raises Error(MalformedInput).

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "isolab/dieudonne_lie.hpp"
#include "isolab/isocrystal.hpp"
#include "isolab/perfected_series.hpp"

namespace isolab {

// Integers, "a/b" strings and integer-valued JSON numbers.
Rational rational_from_json(const nlohmann::json& j);
std::string rational_to_string(const Rational& q);

// {"p": p, "f": f, "N": N}; f defaults to 1 and N to default_precision.
FieldSpecPtr field_spec_from_json(const nlohmann::json& j, int default_precision);
nlohmann::json field_spec_to_json(const FieldSpec& spec);

// Accepted scalar forms:
//   rational (number or "a/b"), an element of Q_p;
//   {"coords": [q_0, ..., q_{f-1}]} for sum q_i t^i;
//   {"valuation": v, "unit": [u_0, ...], "digits": d} for p^v * u + O(p^{v+d});
//   {"zero": true, "bound": b} for O(p^b).
PadicScalar scalar_from_json(const FieldSpecPtr& spec, const nlohmann::json& j);
nlohmann::json scalar_to_json(const PadicScalar& s);

// Array of rows.
Matrix matrix_from_json(const FieldSpecPtr& spec, const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
// Flat array read as a column vector.
Matrix vector_from_json(const FieldSpecPtr& spec, const nlohmann::json& j);
nlohmann::json vector_to_json(const Matrix& column);

// {"spec": {...}, "rank": n, "frobenius": [[...], ...]}; "field" is accepted
// in place of "spec" and "rank" is optional on input.
Isocrystal isocrystal_from_json(const nlohmann::json& j, int default_precision);
nlohmann::json isocrystal_to_json(const Isocrystal& m);

// {"iso": isocrystal, "bracket": table, "lattice": rows | null}, where table is
// the full n x n x n array bracket[i][j][k] or a list of entries
// {"i": i, "j": j, "value": [c_0, ...]} giving [e_i, e_j], with (j, i) filled
// by antisymmetry unless listed. The isocrystal keys may also sit at the top
// level. The lattice is generated by the columns of its matrix.
DieudonneLieAlgebra dla_from_json(const nlohmann::json& j, int default_precision);
nlohmann::json dla_to_json(const DieudonneLieAlgebra& a);

// [["-1", 1], ["0", 1]]; `classical` maps every slope to its negative.
nlohmann::json slopes_to_json(const SlopeMultiset& s, bool classical = false);

// {"p", "nvars", "field": {"p", "k"}, "D", "terms": [{"exp": [{"num", "pexp"}], "coeff": [...]}]}
PerfectedSeries series_from_json(const nlohmann::json& j);
nlohmann::json series_to_json(const PerfectedSeries& s);

}  // namespace isolab
