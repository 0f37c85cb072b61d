#pragma once

// JSON encodings of the library's inputs and reports. Parsers throw
// InputError on malformed data; unknown fields are rejected.
//
// Conventions: rationals are strings "p/q" (or "p"); integers are JSON
// numbers when |x| < 2^53 and decimal strings otherwise; doubles are rounded
// to 12 significant digits.

#include <json.hpp>

#include <cstdint>
#include <string>

#include "cxone/coadjoint.hpp"
#include "cxone/dh.hpp"
#include "cxone/lattice.hpp"
#include "cxone/local_model.hpp"
#include "cxone/rep.hpp"

namespace cxone::io {

using json = nlohmann::json;

json encode(const Integer& x);
json encode(const Rational& x);
json encode(double x);
json encode(const IntVector& v);
json encode(const RationalVector& v);
json encode(const IntMatrix& m);  // list of rows

Integer decode_integer(const json& j, const std::string& where);
Rational decode_rational(const json& j, const std::string& where);
double decode_real(const json& j, const std::string& where);

/// {"n": int, "presentation": "image"|"kernel", "matrix": [[int,...],...]}
SubtorusRep decode_rep(const json& j);
json encode_rep(const SubtorusRep& rep);

/// {"d": int, "rep": <rep>, "alpha": ["p/q",...], "h0_basis": [[int,...],...]}
LocalModel decode_model(const json& j);

struct CoadjointInput {
  RootFamily family = RootFamily::B;
  std::size_t rank = 0;
  RationalVector base_point;
};

/// {"family": "B"|"D", "rank": int, "base_point": ["p/q",...]}
CoadjointInput decode_coadjoint(const json& j);

struct DhInput {
  SubtorusRep rep;
  double radius = 0.0;
  BinGrid grid;
};

/// {"rep": <rep>, "radius": number|"p/q", "grid": {"lo": [...], "hi": [...], "bins": [int,...]}}
DhInput decode_dh(const json& j);

json encode(const FiberCheckReport& r);
json encode(const SurjectivityReport& r);
json encode(const SubmersionSampleReport& r);
json encode(const BallCertificate& c);
json encode(const WeylElement& w);
json encode(const PackingReport& r);
json encode(const MomentPolytope& p);
json encode_orbit(const RootSystemOrbit& o);

}  // namespace cxone::io
