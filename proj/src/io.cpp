#include "torweight/io.hpp"

#include <fstream>
#include <sstream>

namespace torweight::io {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) fail("ParseError", where + " must be a JSON object");
  auto it = j.find(name);
  if (it == j.end()) fail("ParseError", where + " lacks \"" + name + "\"");
  return *it;
}

const Json& array_of(const Json& j, const std::string& where) {
  if (!j.is_array()) fail("ParseError", where + " must be an array");
  return j;
}

const Json& object_of(const Json& j, const std::string& where) {
  if (!j.is_object()) fail("ParseError", where + " must be an object");
  return j;
}

int index_from_text(const std::string& s, const std::string& where) {
  Integer z = integer_from_json(Json(s), where);
  if (z < 0 || !z.fits_sint_p()) fail("ParseError", where + ": bad index '" + s + "'");
  return static_cast<int>(z.get_si());
}

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<std::uint64_t>())));
    return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  }
  if (!j.is_string()) fail("ParseError", where + ": expected an integer or a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail("ParseError", where + ": " + e.what());
  }
}

Json rational_to_json(const Rational& q) { return Json(to_string(q)); }

Integer integer_from_json(const Json& j, const std::string& where) {
  Rational q = rational_from_json(j, where);
  if (!is_integral(q)) fail("ParseError", where + ": expected an integer");
  return q.get_num();
}

RawFan fan_from_json(const Json& j) {
  RawFan raw;
  Integer d = integer_from_json(field(j, "dim", "fan"), "fan.dim");
  if (d < 1 || d > 64) fail("InvalidFan", "fan.dim must be between 1 and 64");
  raw.dim = static_cast<int>(d.get_si());
  const Json& rays = array_of(field(j, "rays", "fan"), "fan.rays");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::string w = "fan.rays[" + std::to_string(i) + "]";
    IntVector v;
    for (const auto& x : array_of(rays[i], w)) v.push_back(integer_from_json(x, w));
    raw.rays.push_back(std::move(v));
  }
  const Json& cones = array_of(field(j, "max_cones", "fan"), "fan.max_cones");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const std::string w = "fan.max_cones[" + std::to_string(i) + "]";
    Cone c;
    for (const auto& x : array_of(cones[i], w)) {
      Integer r = integer_from_json(x, w);
      if (r < 0 || !r.fits_sint_p()) fail("InvalidCone", w + " has a bad ray index");
      c.push_back(static_cast<int>(r.get_si()));
    }
    raw.max_cones.push_back(std::move(c));
  }
  return raw;
}

Json fan_to_json(const RawFan& fan) {
  Json rays = Json::array();
  for (const auto& r : fan.rays) {
    Json v = Json::array();
    for (const auto& x : r) v.push_back(integer_to_json(x));
    rays.push_back(std::move(v));
  }
  Json cones = Json::array();
  for (const auto& c : fan.max_cones) cones.push_back(c);
  return Json{{"dim", fan.dim}, {"rays", std::move(rays)}, {"max_cones", std::move(cones)}};
}

Flag flag_from_json(const Json& j) {
  Flag f;
  const Json& vs = array_of(field(j, "vectors", "flag"), "flag.vectors");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string w = "flag.vectors[" + std::to_string(i) + "]";
    RatVector v;
    for (const auto& x : array_of(vs[i], w)) v.push_back(rational_from_json(x, w));
    f.vectors.push_back(std::move(v));
  }
  auto it = j.find("seed");
  if (it != j.end() && !it->is_null()) {
    if (!it->is_number_unsigned()) fail("ParseError", "flag.seed must be a non-negative integer");
    f.seed = it->get<std::uint64_t>();
  }
  return f;
}

Json flag_to_json(const Flag& flag) {
  Json vs = Json::array();
  for (const auto& v : flag.vectors) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(rational_to_json(x));
    vs.push_back(std::move(row));
  }
  Json out{{"vectors", std::move(vs)}};
  if (flag.seed) out["seed"] = *flag.seed;
  return out;
}

Weight weight_from_json(const Json& j) {
  Weight w;
  auto it = j.is_object() ? j.find("rational") : j.end();
  if (it != j.end()) {
    if (!it->is_boolean()) fail("ParseError", "weight.rational must be a boolean");
    w.rational = it->get<bool>();
  }
  for (const auto& [k, v] : object_of(field(j, "values", "weight"), "weight.values").items()) {
    Cone c = parse_cone_key(k);
    if (cone_key(c) != k) fail("ParseError", "cone key '" + k + "' is not sorted");
    Rational x = rational_from_json(v, "weight.values[\"" + k + "\"]");
    if (!w.rational && !is_integral(x)) fail("NotIntegral", "value on cone '" + k + "' is not an integer");
    w.set(c, x);
  }
  return w;
}

Json weight_to_json(const Weight& w) {
  Json values = Json::object();
  for (const auto& [c, x] : w.values) {
    if (x == 0) continue;
    values[cone_key(c)] = is_integral(x) ? integer_to_json(x.get_num()) : rational_to_json(x);
  }
  return Json{{"values", std::move(values)}, {"rational", w.rational}};
}

RRMatrix rr_from_json(const Json& j, const Fan& fan) {
  RRMatrix m(fan);
  for (const char* name : {"mu", "nu"}) {
    auto it = j.is_object() ? j.find(name) : j.end();
    if (it == j.end()) {
      if (std::string(name) == "mu") fail("ParseError", "rr matrix lacks \"mu\"");
      continue;
    }
    for (const auto& [k, v] : object_of(*it, name).items()) {
      auto bar = k.find('|');
      if (bar == std::string::npos) fail("ParseError", "matrix key '" + k + "' lacks '|'");
      Cone a = parse_cone_key(k.substr(0, bar)), b = parse_cone_key(k.substr(bar + 1));
      if (!fan.contains(a) || !fan.contains(b)) fail("UnknownCone", "matrix key '" + k + "' names a cone outside the fan");
      Rational x = rational_from_json(v, std::string(name) + "[\"" + k + "\"]");
      if (std::string(name) == "mu")
        m.set_mu(a, b, x);
      else
        m.set_nu(a, b, x);
    }
  }
  return m;
}

Json rr_to_json(const RRMatrix& m) {
  auto entries = [](const std::map<std::pair<Cone, Cone>, Rational>& e) {
    Json o = Json::object();
    for (const auto& [ab, x] : e)
      if (x != 0) o[cone_key(ab.first) + "|" + cone_key(ab.second)] = rational_to_json(x);
    return o;
  };
  return Json{{"mu", entries(m.mu_entries())}, {"nu", entries(m.nu_entries())}};
}

std::map<Cone, ExpSum> pexp_from_json(const Json& j, std::size_t dim) {
  std::map<Cone, ExpSum> out;
  for (const auto& [k, terms] : object_of(field(j, "cones", "pexp"), "pexp.cones").items()) {
    Cone c = parse_cone_key(k);
    if (cone_key(c) != k) fail("ParseError", "cone key '" + k + "' is not sorted");
    const std::string w = "pexp.cones[\"" + k + "\"]";
    ExpSum s(dim);
    for (const auto& t : array_of(terms, w)) {
      Rational coeff = rational_from_json(field(t, "coeff", w), w + ".coeff");
      RatVector m;
      for (const auto& x : array_of(field(t, "exp", w), w + ".exp")) m.push_back(rational_from_json(x, w + ".exp"));
      if (m.size() != dim) fail("DimensionMismatch", w + ": exponent of length " + std::to_string(m.size()));
      s.add(m, coeff);
    }
    out.emplace(std::move(c), std::move(s));
  }
  return out;
}

Json pexp_to_json(const std::map<Cone, ExpSum>& data) {
  Json cones = Json::object();
  for (const auto& [c, s] : data) {
    Json terms = Json::array();
    for (const auto& [m, x] : s.terms()) {
      Json e = Json::array();
      for (const auto& y : m) e.push_back(rational_to_json(y));
      terms.push_back(Json{{"coeff", rational_to_json(x)}, {"exp", std::move(e)}});
    }
    cones[cone_key(c)] = std::move(terms);
  }
  return Json{{"cones", std::move(cones)}};
}

Divisor divisor_from_json(const Json& j) {
  Divisor d;
  for (const auto& [k, v] : object_of(field(j, "ray_values", "divisor"), "divisor.ray_values").items()) {
    Rational x = rational_from_json(v, "divisor.ray_values[\"" + k + "\"]");
    if (x != 0) d[index_from_text(k, "divisor.ray_values")] = x;
  }
  return d;
}

Json divisor_to_json(const Divisor& d) {
  Json o = Json::object();
  for (const auto& [r, x] : d)
    if (x != 0) o[std::to_string(r)] = rational_to_json(x);
  return Json{{"ray_values", std::move(o)}};
}

RatVector parse_vector(const std::string& text) {
  RatVector v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_rational(part));
  if (v.empty()) fail("ParseError", "empty vector '" + text + "'");
  return v;
}

Json error_to_json(const Error& e) {
  return Json{{"error",
               {{"code", e.code()},
                {"message", e.what()},
                {"class", e.error_class() == ErrorClass::input ? "input" : "internal"}}}};
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FileNotFound", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail("ParseError", path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

}  // namespace torweight::io
