#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "isolab/bch.hpp"
#include "isolab/dieudonne_lie.hpp"
#include "isolab/errors.hpp"
#include "isolab/isocrystal.hpp"
#include "isolab/json_io.hpp"
#include "isolab/perfected_series.hpp"
#include "isolab/root_newton.hpp"

namespace isolab::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string in;
  std::optional<int> precision;
  bool classical = false;

  std::string type;
  int n = 0;
  std::string nu;
  std::int64_t p = 0;

  int degree = 0;
  std::string x;
  std::string y;
  std::string x_prime;
  int level = 0;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  int bound = 5;
  std::string mode = "derivation";
  std::string predicate = "negative";

  std::string params;
  std::string method = "both";
  std::string degree_bound;
  std::string e;
  std::string c;
  std::string d;
  int r = 0;
  std::string d_seq;
  std::string powered;
  std::string mu1;
  std::string mu0;
};

[[noreturn]] void malformed(const std::string& what) { fail(ErrorCode::kMalformedInput, what); }

json read_json(const std::string& path) {
  if (path.empty()) malformed("--in is required");
  if (path == "-") return json::parse(std::cin);
  std::ifstream file(path);
  if (!file) malformed("cannot open " + path);
  return json::parse(file);
}

void apply_precision(json& j, int precision) {
  if (!j.is_object()) return;
  for (const char* key : {"field", "spec"}) {
    if (j.contains(key) && j[key].is_object()) j[key]["N"] = precision;
  }
  if (j.contains("iso")) apply_precision(j["iso"], precision);
}

// Input JSON with the precision flag applied to the field description.
json read_field_input(const Options& o) {
  json j = read_json(o.in);
  if (o.precision) apply_precision(j, *o.precision);
  return j;
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) malformed("empty entry in list \"" + text + "\"");
    out.push_back(rational_from_json(json(item.substr(b, e - b + 1))));
  }
  if (out.empty()) malformed("empty list");
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& q : parse_list(text)) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) malformed("expected integers in \"" + text + "\"");
    out.push_back(q.get_num().get_si());
  }
  return out;
}

json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return rational_to_string(q);
}

json integer_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

json check_json(const Check& c) { return {{"ok", c.ok}, {"witness", c.witness}}; }

Rational shown_slope(const Rational& s, const Options& o) { return o.classical ? Rational(-s) : s; }

DieudonneLieAlgebra read_dla(const Options& o) {
  return dla_from_json(read_field_input(o), o.precision.value_or(default_precision()));
}

Isocrystal read_iso(const Options& o) {
  return isocrystal_from_json(read_field_input(o), o.precision.value_or(default_precision()));
}

Matrix vector_arg(const DieudonneLieAlgebra& a, const std::string& flag, const json& input,
                  const char* key) {
  Matrix v;
  if (!flag.empty()) {
    std::vector<PadicScalar> entries;
    for (const auto& q : parse_list(flag)) entries.push_back(PadicScalar::from_rational(a.spec(), q));
    v = Matrix::from_column(entries);
  } else if (input.contains(key)) {
    v = vector_from_json(a.spec(), input.at(key));
  } else {
    malformed(std::string("vector --") + key + " is required");
  }
  if (v.rows() != a.dim()) malformed(std::string("vector ") + key + " has the wrong length");
  return v;
}

RootDatumWithCochar root_datum(const Options& o) {
  if (o.type.empty()) malformed("--type is required");
  if (o.nu.empty()) malformed("--nu is required");
  std::vector<Rational> nu = parse_list(o.nu);
  if (o.classical) nu = classical_to_covariant(nu);
  const int n = o.n > 0 ? o.n : static_cast<int>(nu.size());
  return make_root_datum(parse_group_type(o.type), n, std::move(nu));
}

PerfectedSeries read_series(const Options& o) {
  PerfectedSeries s = series_from_json(read_json(o.in));
  if (o.degree_bound.empty()) return s;
  const Rational bound = std::min(rational_from_json(json(o.degree_bound)), s.degree_bound());
  PerfectedSeries t(s.field(), s.nvars(), bound);
  for (const auto& [e, c] : s.terms()) t.add_term(e, c);
  return t;
}

json cmd_slopes(const Options& o) {
  return {{"slopes", slopes_to_json(newton_slopes(read_iso(o)), o.classical)}};
}

json cmd_split(const Options& o) {
  json blocks = json::array();
  for (const auto& b : slope_split(read_iso(o))) {
    blocks.push_back({{"slope", rational_to_string(shown_slope(b.slope, o))},
                      {"multiplicity", b.multiplicity},
                      {"basis", matrix_to_json(b.basis)}});
  }
  if (o.classical) {
    std::reverse(blocks.begin(), blocks.end());
  }
  return {{"blocks", blocks}};
}

json cmd_hom(const Options& o) {
  json j = read_json(o.in);
  if (!j.is_object() || !j.contains("Y") || !j.contains("Z")) malformed("hom input needs \"Y\" and \"Z\"");
  if (o.precision) {
    apply_precision(j["Y"], *o.precision);
    apply_precision(j["Z"], *o.precision);
  }
  const int n = o.precision.value_or(default_precision());
  const Isocrystal h = internal_hom(isocrystal_from_json(j["Y"], n), isocrystal_from_json(j["Z"], n));
  json out = isocrystal_to_json(h);
  out["rank"] = h.rank();
  out["slopes"] = slopes_to_json(newton_slopes(h), o.classical);
  return out;
}

json cmd_dla_check(const Options& o) {
  const ValidationReport v = dla_validate(read_dla(o));
  json out = {{"antisymmetry", check_json(v.antisymmetry)},
              {"jacobi", check_json(v.jacobi)},
              {"f_equivariance", check_json(v.f_equivariance)},
              {"valid", v.all()}};
  if (v.lattice_dieudonne) out["lattice_dieudonne"] = check_json(*v.lattice_dieudonne);
  if (v.lattice_bracket_closure) out["lattice_bracket_closure"] = check_json(*v.lattice_bracket_closure);
  return out;
}

json cmd_lcs(const Options& o) {
  const DieudonneLieAlgebra a = read_dla(o);
  const LowerCentralSeries lcs = lower_central_series(a);
  json dims = json::array();
  for (const auto& m : lcs.chain) dims.push_back(m.cols());
  json out = {{"nilpotency_class", lcs.nilpotency_class}, {"dims", dims}};
  if (a.lattice) {
    const LatticeFiltration f = lattice_filtration(a);
    json ranks = json::array();
    for (const auto& m : f.lattices) ranks.push_back(m.cols());
    out["lattice_filtration"] = {{"ranks", ranks}, {"closure", check_json(f.closure)}};
  }
  return out;
}

json cmd_bch_table(const Options& o) {
  const FreeLieElement z = bch_series(o.degree);
  json denominators = json::array();
  for (long d : denominator_profile(o.degree)) denominators.push_back(d);
  return {{"degree", o.degree}, {"terms", to_json(z)}, {"denominator_primes", denominators}};
}

json cmd_bch_mul(const Options& o) {
  const json input = read_field_input(o);
  const DieudonneLieAlgebra a = dla_from_json(input, o.precision.value_or(default_precision()));
  const Matrix x = vector_arg(a, o.x, input, "x");
  const Matrix y = vector_arg(a, o.y, input, "y");
  return {{"product", vector_to_json(group_mul(a, x, y))},
          {"nilpotency_class", lower_central_series(a).nilpotency_class}};
}

json cmd_lattice_closure(const Options& o) {
  const DieudonneLieAlgebra a = read_dla(o);
  const LatticeClosureReport r =
      lattice_closure_check(a, random_lattice_pairs(a, o.samples, o.seed, o.bound));
  return {{"closed", r.closed},
          {"nilpotency_class", r.nilpotency_class},
          {"p_gt_n", r.p_gt_n},
          {"samples_checked", r.samples_checked},
          {"witness", r.witness}};
}

json cmd_leafdim(const Options& o) {
  const RootDatumWithCochar d = root_datum(o);
  return {{"dim", rational_json(leaf_dimension(d))}};
}

json cmd_slope_roots(const Options& o) {
  return {{"slopes", slopes_to_json(slope_multiset_from_roots(root_datum(o)), o.classical)}};
}

json cmd_nilclass(const Options& o) {
  return {{"nilpotency_class", unipotent_nilpotency(root_datum(o))}};
}

json cmd_coxeter_gate(const Options& o) {
  if (o.p <= 0) malformed("--p is required");
  const CoxeterGateReport r = coxeter_gate(root_datum(o), o.p);
  return {{"h", r.h},
          {"h_coxeter", r.h_coxeter},
          {"n_class", r.n_class},
          {"p_ge_h", r.p_ge_h},
          {"p_gt_n", r.p_gt_n},
          {"class_bound_holds", r.class_bound_holds}};
}

json cmd_perf_member(const Options& o) {
  const auto params = parse_int_list(o.params);
  if (params.size() != 3) malformed("--params expects s,r,n0");
  MembershipMethod method = MembershipMethod::kBoth;
  if (o.method == "definitional") {
    method = MembershipMethod::kDefinitional;
  } else if (o.method == "closed_form") {
    method = MembershipMethod::kClosedForm;
  } else if (o.method != "both") {
    malformed("--method must be definitional, closed_form or both");
  }
  const RestrictedParams rp{static_cast<int>(params[0]), static_cast<int>(params[1]),
                            static_cast<int>(params[2])};
  const MembershipReport r = membership_restricted(read_series(o), rp, method);
  json out = {{"member", r.member}, {"witness", r.witness}};
  if (r.definitional) {
    out["definitional"] = *r.definitional;
    out["definitional_le"] = *r.definitional_le;
  }
  if (r.closed_form) out["closed_form"] = *r.closed_form;
  if (r.definitional && r.closed_form) {
    out["agree"] = r.agree;
    out["boundary_terms"] = r.boundary_terms;
    out["disagreements"] = r.disagreements;
    out["first_disagreement"] = r.first_disagreement;
  }
  return out;
}

json cmd_perf_ecd(const Options& o) {
  if (o.e.empty() || o.c.empty() || o.d.empty()) malformed("--E, --C and --d are required");
  const EcdReport r = membership_ecd(read_series(o), rational_from_json(json(o.e)),
                                     rational_from_json(json(o.c)), rational_from_json(json(o.d)));
  return {{"member", r.member}, {"witness", r.witness}};
}

json cmd_rigidity(const Options& o) {
  const json j = read_json(o.in);
  if (!j.is_object()) malformed("rigidity input must be an object");
  const PerfectedSeries f = series_from_json(j.at("f"));
  std::vector<PerfectedSeries> g;
  std::vector<PerfectedSeries> h;
  for (const auto& s : j.at("g")) g.push_back(series_from_json(s));
  for (const auto& s : j.at("h")) h.push_back(series_from_json(s));
  const int r = o.r > 0 ? o.r : j.value("r", 0);
  std::vector<std::int64_t> d_seq;
  if (!o.d_seq.empty()) {
    d_seq = parse_int_list(o.d_seq);
  } else if (j.contains("d_seq")) {
    d_seq = j.at("d_seq").get<std::vector<std::int64_t>>();
  }
  const std::string powered = !o.powered.empty() ? o.powered : j.value("powered", std::string("h"));
  if (powered != "g" && powered != "h") malformed("powered block must be g or h");
  const RigidityReport rep =
      rigidity_check(f, g, h, r, d_seq, powered == "g" ? PoweredBlock::kG : PoweredBlock::kH);
  json cong = json::array();
  for (const auto& c : rep.congruences) {
    cong.push_back({{"n", c.n}, {"d", c.d}, {"pass", c.pass}, {"witness", c.witness}});
  }
  return {{"congruences", cong},
          {"all_congruences", rep.all_congruences},
          {"ratio_ok", rep.ratio_ok},
          {"evaluation_zero", rep.evaluation_zero},
          {"evaluation_witness", rep.evaluation_witness}};
}

json cmd_slope_exponents(const Options& o) {
  if (o.mu1.empty() || o.mu0.empty()) malformed("--mu1 and --mu0 are required");
  const SlopeExponents s =
      slope_exponents(rational_from_json(json(o.mu1)), rational_from_json(json(o.mu0)));
  return {{"a", integer_json(s.a)}, {"r", integer_json(s.r)}, {"s", integer_json(s.s)}};
}

json cmd_slope_part(const Options& o) {
  const Isocrystal m = read_iso(o);
  SlopePredicate predicate = SlopePredicate::negative();
  if (o.predicate == "non_positive") {
    predicate = SlopePredicate::non_positive();
  } else if (o.predicate != "negative") {
    const Rational value = rational_from_json(json(o.predicate));
    predicate = SlopePredicate::equal(o.classical ? Rational(-value) : value);
  }
  const SlopePart part = slope_part(m, predicate);
  return {{"rank", part.part.rank()},
          {"embedding", part.part.rank() ? matrix_to_json(part.embedding) : json::array()},
          {"slopes", slopes_to_json(newton_slopes(part.part), o.classical)}};
}

json cmd_center_check(const Options& o) {
  const CenterReport r = minimal_slope_center_check(read_dla(o));
  return {{"central", r.central},
          {"minimal_slope", rational_to_string(shown_slope(r.minimal_slope, o))},
          {"block_dim", r.block_dim},
          {"bracket_laws_hold", r.bracket_laws_hold},
          {"witness", r.witness}};
}

json cmd_aut(const Options& o) {
  AutMode mode = AutMode::kDerivation;
  if (o.mode == "linearized") {
    mode = AutMode::kLinearized;
  } else if (o.mode != "derivation") {
    malformed("--mode must be derivation or linearized");
  }
  const AutResult r = aut_lie_algebra(read_dla(o), mode);
  json basis = json::array();
  for (const auto& m : r.basis) basis.push_back(matrix_to_json(m));
  return {{"dimension", r.dimension},
          {"quadratic_term_excluded", r.quadratic_term_excluded},
          {"basis", basis}};
}

json cmd_subalgebra(const Options& o) {
  const json input = read_field_input(o);
  const DieudonneLieAlgebra a = dla_from_json(input, o.precision.value_or(default_precision()));
  if (!input.contains("generators") || !input["generators"].is_array()) {
    malformed("subalgebra input needs \"generators\"");
  }
  Matrix gens(a.spec(), a.dim(), 0);
  for (const auto& g : input["generators"]) {
    const Matrix v = vector_from_json(a.spec(), g);
    if (v.rows() != a.dim()) malformed("generator has the wrong length");
    gens = gens.hcat(v);
  }
  const Matrix b = smallest_f_stable_subalgebra(a, gens);
  return {{"dimension", b.cols()}, {"basis", b.cols() ? matrix_to_json(b) : json::array()}};
}

json cmd_rho_defect(const Options& o) {
  const json input = read_field_input(o);
  const DieudonneLieAlgebra a = dla_from_json(input, o.precision.value_or(default_precision()));
  const Matrix xp = vector_arg(a, o.x_prime, input, "xprime");
  const Matrix x = vector_arg(a, o.x, input, "x");
  const RhoDefectResult r = rho_defect(a, xp, x, o.level);
  return {{"defect", vector_to_json(r.defect)},
          {"in_scaled_lattice", r.in_scaled_lattice},
          {"p_gt_n", r.p_gt_n},
          {"nilpotency_class", r.nilpotency_class},
          {"minimal_slope", rational_to_string(shown_slope(r.minimal_slope, o))}};
}

using Handler = std::function<json(const Options&)>;

void add_common(CLI::App* sub, Options& o, bool file_input, bool field_input) {
  if (file_input) sub->add_option("--in", o.in, "Input JSON file, - for stdin")->required();
  if (field_input) {
    sub->add_option("--precision,-N", o.precision, "p-adic precision N (default ISOLAB_PRECISION)")
        ->check(CLI::PositiveNumber);
  }
  sub->add_flag("--classical", o.classical, "Report slopes in the classical sign convention");
}

void add_root_options(CLI::App* sub, Options& o) {
  sub->add_option("--type", o.type, "Group type: GL, GSp or SO")->required();
  sub->add_option("--n", o.n, "Size of the matrix realization");
  sub->add_option("--nu", o.nu, "Newton cocharacter, comma separated")->required();
}

}  // namespace

int default_precision() {
  const char* env = std::getenv("ISOLAB_PRECISION");
  if (env == nullptr || *env == '\0') return kDefaultPrecision;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 100000) return kDefaultPrecision;
  return static_cast<int>(v);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"isolab: isocrystals, Dieudonne-Lie algebras and perfected power series"};
  app.require_subcommand(1);
  std::map<std::string, Handler> handlers;

  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    handlers[name] = std::move(h);
    return app.add_subcommand(name, help);
  };

  add_common(add("slopes", "Newton slopes of an isocrystal", cmd_slopes), o, true, true);
  add_common(add("split", "Slope decomposition of an isocrystal", cmd_split), o, true, true);
  add_common(add("hom", "Internal Hom of two isocrystals", cmd_hom), o, true, true);
  auto* part = add("slope-part", "Part of an isocrystal with the selected slopes", cmd_slope_part);
  add_common(part, o, true, true);
  part->add_option("--predicate", o.predicate, "negative, non_positive or a slope value");
  add_common(add("dla-check", "Validate a Dieudonne-Lie algebra", cmd_dla_check), o, true, true);
  add_common(add("lcs", "Lower central series and lattice filtration", cmd_lcs), o, true, true);
  add_common(add("center-check", "Minimal slope part is central", cmd_center_check), o, true, true);

  auto* aut = add("aut", "Lie algebra of the automorphism group", cmd_aut);
  add_common(aut, o, true, true);
  aut->add_option("--mode", o.mode, "derivation or linearized");

  add_common(add("subalgebra", "Smallest F-stable subalgebra containing generators", cmd_subalgebra),
             o, true, true);

  auto* table = add("bch-table", "BCH series in the Lyndon basis", cmd_bch_table);
  table->add_option("--degree,-c", o.degree, "Truncation degree")->required();

  auto* mul = add("bch-mul", "Group law x * y", cmd_bch_mul);
  add_common(mul, o, true, true);
  mul->add_option("--x", o.x, "Comma separated coordinates of x");
  mul->add_option("--y", o.y, "Comma separated coordinates of y");

  auto* closure = add("lattice-closure", "Random test of lattice closure under the group law",
                      cmd_lattice_closure);
  add_common(closure, o, true, true);
  closure->add_option("--samples", o.samples, "Number of random pairs");
  closure->add_option("--seed", o.seed, "Random seed");
  closure->add_option("--bound", o.bound, "Coordinate bound for samples");

  auto* rho = add("rho-defect", "Defect of the projection onto the minimal slope part",
                  cmd_rho_defect);
  add_common(rho, o, true, true);
  rho->add_option("--x", o.x, "Comma separated coordinates of x");
  rho->add_option("--xprime", o.x_prime, "Comma separated coordinates of x'");
  rho->add_option("--level", o.level, "Exponent n")->check(CLI::NonNegativeNumber);

  for (auto [name, help, handler] :
       {std::tuple<const char*, const char*, Handler>{"leafdim", "Central leaf dimension <2rho, nu>",
                                                      cmd_leafdim},
        {"slope-roots", "Slopes of Lie U_nu from the roots", cmd_slope_roots},
        {"nilclass", "Nilpotency class of U_nu", cmd_nilclass}}) {
    auto* sub = add(name, help, handler);
    add_common(sub, o, false, false);
    add_root_options(sub, o);
  }
  auto* gate = add("coxeter-gate", "Compare p with h(G) and the class of U_nu", cmd_coxeter_gate);
  add_common(gate, o, false, false);
  add_root_options(gate, o);
  gate->add_option("--p", o.p, "Prime p")->required();

  auto* member = add("perf-member", "Restricted perfection membership", cmd_perf_member);
  member->add_option("--in", o.in, "Series JSON file")->required();
  member->add_option("--params", o.params, "s,r,n0")->required();
  member->add_option("--method", o.method, "definitional, closed_form or both");
  member->add_option("--D", o.degree_bound, "Truncate at a smaller degree bound");

  auto* ecd = add("perf-ecd", "(E, C, d) membership", cmd_perf_ecd);
  ecd->add_option("--in", o.in, "Series JSON file")->required();
  ecd->add_option("--E", o.e, "Exponent E > 0")->required();
  ecd->add_option("--C", o.c, "Constant C > 0")->required();
  ecd->add_option("--d", o.d, "Shift d >= 0")->required();
  ecd->add_option("--D", o.degree_bound, "Truncate at a smaller degree bound");

  auto* rig = add("rigidity", "Rigidity criterion checker", cmd_rigidity);
  rig->add_option("--in", o.in, "JSON with f, g, h and optionally r, d_seq, powered")->required();
  rig->add_option("--r", o.r, "q = p^r");
  rig->add_option("--d-seq", o.d_seq, "Comma separated d_0, d_1, ...");
  rig->add_option("--powered", o.powered, "Powered block: g or h");

  auto* se = add("slope-exponents", "Integers (a, r, s) with a/r = mu1, a/s = mu0",
                 cmd_slope_exponents);
  se->add_option("--mu1", o.mu1, "Larger slope magnitude")->required();
  se->add_option("--mu0", o.mu0, "Smaller slope magnitude")->required();

  std::vector<std::string> argv_store{"isolab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  auto report = [&](std::string_view name, const std::string& message, const json& witness) {
    out << json{{"error", name}, {"message", message}, {"witness", witness}}.dump() << '\n';
  };

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report("MalformedInput", e.what(), nullptr);
    return kExitMalformed;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    out << handlers.at(name)(o).dump() << '\n';
    return kExitOk;
  } catch (const Error& e) {
    report(e.name(), e.what(), e.witness());
    return e.code() == ErrorCode::kMalformedInput ? kExitMalformed : kExitModuleError;
  } catch (const json::exception& e) {
    report("MalformedInput", e.what(), nullptr);
    return kExitMalformed;
  } catch (const std::exception& e) {
    err << "isolab: " << e.what() << '\n';
    report(error_name(ErrorCode::kInternalInvariantViolation), e.what(), nullptr);
    return kExitModuleError;
  }
}

}  // namespace isolab::cli
