#include "cxone/io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "cxone/error.hpp"

namespace cxone::io {

namespace {

void require_fields(const json& j, const std::set<std::string>& fields, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!fields.count(key)) throw InputError(where + ": unknown field \"" + key + "\"");
  for (const auto& f : fields)
    if (!j.contains(f)) throw InputError(where + ": missing field \"" + f + "\"");
}

const json& require_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  return j;
}

std::size_t decode_count(const json& j, const std::string& where) {
  Integer x = decode_integer(j, where);
  if (x < 0 || !x.fits_ulong_p()) throw InputError(where + ": expected a nonnegative count");
  return x.get_ui();
}

IntMatrix decode_int_matrix(const json& j, std::size_t cols, const std::string& where) {
  require_array(j, where);
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string at = where + "[" + std::to_string(r) + "]";
    require_array(j[r], at);
    if (j[r].size() != cols)
      throw InputError(at + ": expected " + std::to_string(cols) + " entries, got " + std::to_string(j[r].size()));
    IntVector row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(decode_integer(j[r][c], at));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, cols);
}

RationalVector decode_rational_vector(const json& j, const std::string& where) {
  require_array(j, where);
  RationalVector v;
  for (const auto& x : j) v.push_back(decode_rational(x, where));
  return v;
}

}  // namespace

json encode(const Integer& x) {
  static const Integer limit = Integer(1) << 53;
  if (abs(x) < limit) return json(x.get_si());
  return json(x.get_str());
}

json encode(const Rational& x) { return json(x.get_str()); }

json encode(double x) {
  if (!std::isfinite(x)) return json(nullptr);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return json(std::stod(buf));
}

json encode(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(encode(x));
  return a;
}

json encode(const RationalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(encode(x));
  return a;
}

json encode(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(encode(m.row(r)));
  return a;
}

Integer decode_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                                           : Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Integer x;
    if (s.empty() || x.set_str(s, 10) != 0) throw InputError(where + ": \"" + s + "\" is not an integer");
    return x;
  }
  throw InputError(where + ": expected an integer, got " + j.dump());
}

Rational decode_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(decode_integer(j, where));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Rational q;
    const bool bad_chars = s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos;
    if (bad_chars || q.set_str(s, 10) != 0) throw InputError(where + ": \"" + s + "\" is not a rational p/q");
    if (q.get_den() == 0) throw InputError(where + ": zero denominator");
    q.canonicalize();
    return q;
  }
  throw InputError(where + ": expected a rational string \"p/q\", got " + j.dump());
}

double decode_real(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return decode_rational(j, where).get_d();
  throw InputError(where + ": expected a number");
}

SubtorusRep decode_rep(const json& j) {
  require_fields(j, {"n", "presentation", "matrix"}, "rep");
  const std::size_t n = decode_count(j["n"], "rep.n");
  if (!j["presentation"].is_string()) throw InputError("rep.presentation: expected \"image\" or \"kernel\"");
  const std::string p = j["presentation"].get<std::string>();
  IntMatrix m = decode_int_matrix(j["matrix"], n, "rep.matrix");
  if (p == "image") return SubtorusRep::from_image(std::move(m));
  if (p == "kernel") return SubtorusRep::from_kernel(std::move(m));
  throw InputError("rep.presentation: expected \"image\" or \"kernel\", got \"" + p + "\"");
}

json encode_rep(const SubtorusRep& rep) {
  return json{{"n", rep.n()},
              {"presentation", rep.presentation() == Presentation::Image ? "image" : "kernel"},
              {"matrix", encode(rep.matrix())}};
}

LocalModel decode_model(const json& j) {
  require_fields(j, {"d", "rep", "alpha", "h0_basis"}, "model");
  const std::size_t d = decode_count(j["d"], "model.d");
  SubtorusRep rep = decode_rep(j["rep"]);
  RationalVector alpha = decode_rational_vector(j["alpha"], "model.alpha");
  IntMatrix h0 = decode_int_matrix(j["h0_basis"], d, "model.h0_basis");
  return LocalModel(d, std::move(rep), std::move(alpha), std::move(h0));
}

CoadjointInput decode_coadjoint(const json& j) {
  require_fields(j, {"family", "rank", "base_point"}, "orbit");
  CoadjointInput in;
  if (!j["family"].is_string()) throw InputError("orbit.family: expected \"B\" or \"D\"");
  const std::string f = j["family"].get<std::string>();
  if (f == "B")
    in.family = RootFamily::B;
  else if (f == "D")
    in.family = RootFamily::D;
  else
    throw InputError("orbit.family: expected \"B\" or \"D\", got \"" + f + "\"");
  in.rank = decode_count(j["rank"], "orbit.rank");
  in.base_point = decode_rational_vector(j["base_point"], "orbit.base_point");
  return in;
}

DhInput decode_dh(const json& j) {
  require_fields(j, {"rep", "radius", "grid"}, "dh");
  DhInput in;
  in.rep = decode_rep(j["rep"]);
  in.radius = decode_real(j["radius"], "dh.radius");
  const json& g = j["grid"];
  require_fields(g, {"lo", "hi", "bins"}, "dh.grid");
  for (const auto& x : require_array(g["lo"], "dh.grid.lo")) in.grid.lo.push_back(decode_real(x, "dh.grid.lo"));
  for (const auto& x : require_array(g["hi"], "dh.grid.hi")) in.grid.hi.push_back(decode_real(x, "dh.grid.hi"));
  for (const auto& x : require_array(g["bins"], "dh.grid.bins")) in.grid.counts.push_back(decode_count(x, "dh.grid.bins"));
  if (in.grid.lo.size() != in.grid.counts.size() || in.grid.hi.size() != in.grid.counts.size())
    throw InputError("dh.grid: lo, hi and bins must have equal length");
  return in;
}

json encode(const FiberCheckReport& r) {
  return json{{"trials", r.trials},
              {"passes", r.passes},
              {"invariance_passes", r.invariance_passes},
              {"projected_pair_passes", r.projected_pair_passes},
              {"preimage_pair_passes", r.preimage_pair_passes},
              {"max_invariance_error", encode(r.max_invariance_error)},
              {"max_orbit_distance", encode(r.max_orbit_distance)}};
}

json encode(const SurjectivityReport& r) {
  return json{{"targets", r.targets}, {"successes", r.successes}, {"max_error", encode(r.max_error)}};
}

json encode(const SubmersionSampleReport& r) {
  return json{{"samples", r.samples},
              {"rank_failures", r.rank_failures},
              {"max_witness_error", encode(r.max_witness_error)},
              {"min_dp_witness", encode(r.min_dp_witness)}};
}

json encode(const BallCertificate& c) {
  return json{{"point", encode(c.point)},
              {"normal", encode(c.normal)},
              {"side", to_string(c.side)},
              {"differences_span_codim_one", c.differences_span_codim_one},
              {"unique_fixed_point_on_side", c.unique_fixed_point_on_side},
              {"valid", c.valid}};
}

json encode(const WeylElement& w) {
  return json{{"permutation", w.permutation}, {"signs", w.signs}, {"flipped_coordinates", w.flipped_coordinates()}};
}

json encode(const PackingReport& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(encode(c));
  json alts = json::array();
  for (const auto& h : r.alternative_hyperplanes) alts.push_back(encode(h));
  std::size_t valid = 0;
  for (const auto& c : r.certificates) valid += c.valid;
  return json{{"complexity_one", r.complexity_one},
              {"found", r.found},
              {"balls", r.found ? 2 : 0},
              {"hyperplane", r.found ? encode(r.hyperplane) : json(nullptr)},
              {"certificates", certs},
              {"valid_certificates", valid},
              {"weyl_element", r.weyl_element ? encode(*r.weyl_element) : json(nullptr)},
              {"complement_measure_zero", r.complement_measure_zero},
              {"alternative_hyperplanes", alts},
              {"candidates_examined", r.candidates_examined}};
}

json encode(const MomentPolytope& p) {
  json verts = json::array();
  for (const auto& v : p.vertices) verts.push_back(encode(v));
  json facets = json::array();
  for (const auto& f : p.facets)
    facets.push_back(json{{"normal", encode(f.normal)}, {"offset", encode(f.offset)}, {"vertices", f.vertices}});
  return json{{"dimension", p.dimension}, {"vertices", verts}, {"facets", facets}};
}

json encode_orbit(const RootSystemOrbit& o) {
  json points = json::array();
  for (std::size_t i = 0; i < o.fixed_points.size(); ++i) {
    json w = json::array();
    for (const auto& a : o.weights[i]) w.push_back(encode(a));
    points.push_back(json{{"point", encode(o.fixed_points[i])}, {"isotropy_weights", w}});
  }
  return json{{"family", to_string(o.system.family)},
              {"rank", o.system.rank},
              {"base_point", encode(o.base_point)},
              {"root_count", o.system.roots.size()},
              {"weyl_group_order", encode(o.system.weyl_group_order())},
              {"fixed_points", points},
              {"weight_count", o.weight_count},
              {"complexity", o.complexity}};
}

}  // namespace cxone::io
