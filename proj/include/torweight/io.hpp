#pragma once

#include "torweight/ehrhart.hpp"
#include "torweight/error.hpp"
#include "torweight/fan.hpp"
#include "torweight/flag.hpp"
#include "torweight/pexp.hpp"
#include "torweight/weights.hpp"

#include "json.hpp"

#include <map>
#include <string>

namespace torweight::io {

using Json = nlohmann::json;

// Rationals are written as "p/q" strings; an integer JSON number or "p" is
// accepted on input. `where` names the field in error messages.
Rational rational_from_json(const Json& j, const std::string& where);
Json rational_to_json(const Rational& q);
Integer integer_from_json(const Json& j, const std::string& where);

// {"dim", "rays", "max_cones"}
RawFan fan_from_json(const Json& j);
Json fan_to_json(const RawFan& fan);

// {"vectors": [["p/q", ...], ...], "seed"?}
Flag flag_from_json(const Json& j);
Json flag_to_json(const Flag& flag);

// {"values": {"coneKey": int or "p/q"}, "rational": bool}. Non-integral
// values need "rational": true (NotIntegral).
Weight weight_from_json(const Json& j);
Json weight_to_json(const Weight& w);

// {"mu": {"alpha|beta": "p/q"}, "nu": {...}}; entries must name cones of the fan.
RRMatrix rr_from_json(const Json& j, const Fan& fan);
Json rr_to_json(const RRMatrix& m);

// {"cones": {"coneKey": [{"coeff": "p/q", "exp": ["p/q", ...]}, ...]}}
std::map<Cone, ExpSum> pexp_from_json(const Json& j, std::size_t dim);
Json pexp_to_json(const std::map<Cone, ExpSum>& data);

// {"ray_values": {"rayIndex": "p/q"}}
Divisor divisor_from_json(const Json& j);
Json divisor_to_json(const Divisor& d);

// "5,1" or "1/2,-3"
RatVector parse_vector(const std::string& text);

Json error_to_json(const Error& e);

// Throws FileNotFound, ParseError.
Json read_file(const std::string& path);
// Deterministic text: sorted keys, one-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace torweight::io
