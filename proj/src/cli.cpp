#include "torweight/cli.hpp"

#include "torweight/ehrhart.hpp"
#include "torweight/pexp.hpp"
#include "torweight/product.hpp"
#include "torweight/random.hpp"

#include <fstream>

namespace torweight::cli {

namespace {

using io::Json;

// streams of the run seed
constexpr std::uint64_t kFlagStream = 1;
constexpr std::uint64_t kDisplacementStream = 2;
constexpr std::uint64_t kDirectionStream = 3;
constexpr std::uint64_t kDivisorStream = 4;
constexpr std::size_t kOracleDivisors = 5;

const std::string& need(const std::string& path, const char* flag) {
  if (path.empty()) fail("MissingArgument", std::string("--") + flag + " is required");
  return path;
}

Fan load_fan(const RunConfig& c) { return Fan::validate(io::fan_from_json(io::read_file(need(c.fan, "fan")))); }

Weight load_weight(const Fan& fan, const std::string& path, const char* flag) {
  Weight w = io::weight_from_json(io::read_file(need(path, flag)));
  for (const auto& [cone, x] : w.values)
    if (!fan.contains(cone)) fail("UnknownCone", std::string("--") + flag + ": cone '" + cone_key(cone) + "' is not in the fan");
  return w;
}

Flag load_flag(const RunConfig& c, const Fan& fan) {
  if (!c.flag.empty()) return io::flag_from_json(io::read_file(c.flag));
  return sample_flag(fan, mix_seed(c.seed, kFlagStream));
}

RatVector load_displacement(const RunConfig& c, const Fan& fan) {
  if (c.displacement) return io::parse_vector(*c.displacement);
  return sample_displacement(fan, mix_seed(c.seed, kDisplacementStream));
}

Json vector_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(io::rational_to_json(x));
  return out;
}

void note(const RunConfig& c, std::ostream& log, const std::string& msg) {
  if (c.verbosity > 0) log << "torweight " << c.subcommand << ": " << msg << "\n";
}

}  // namespace

Json execute(const RunConfig& c, std::ostream& log) {
  const std::string& cmd = c.subcommand;
  if (cmd != "check" && cmd != "rr-matrix" && cmd != "product" && cmd != "forgetful" && cmd != "euler" &&
      cmd != "pair" && cmd != "oracle")
    fail("UnknownSubcommand", "unknown subcommand '" + cmd + "'");
  const Fan fan = load_fan(c);
  note(c, log, "fan with " + std::to_string(fan.cones().size()) + " cones");
  Json out;

  if (cmd == "check") {
    const Weight g = load_weight(fan, c.weight, "weight");
    const Flag flag = load_flag(c, fan);
    const Verdict v = is_grothendieck_weight(fan, g, flag);
    Json bad = Json::array();
    for (const auto& x : v.violations)
      bad.push_back(Json{{"cone", cone_key(x.alpha)}, {"coord", x.coord}, {"value", io::rational_to_json(x.value)}});
    out = Json{{"is_weight", v.ok}, {"integral", v.integral}, {"refined", v.refined}, {"violations", std::move(bad)},
               {"flag", io::flag_to_json(flag)}};
  } else if (cmd == "rr-matrix") {
    const Flag flag = load_flag(c, fan);
    out = io::rr_to_json(rr_matrix(fan, flag));
    out["flag"] = io::flag_to_json(flag);
  } else if (cmd == "product") {
    const Weight g1 = load_weight(fan, c.w1, "w1"), g2 = load_weight(fan, c.w2, "w2");
    const Flag flag = load_flag(c, fan);
    const RatVector v = load_displacement(c, fan);
    out = io::weight_to_json(gw_product(fan, g1, g2, flag, v));
    out["flag"] = io::flag_to_json(flag);
    out["displacement"] = vector_json(v);
  } else if (cmd == "forgetful") {
    const auto data = io::pexp_from_json(io::read_file(need(c.pexp, "pexp")), static_cast<std::size_t>(fan.dim()));
    const PExpFunction phi = validate_pexp(fan, data);
    const IntVector u = sample_direction(fan, mix_seed(c.seed, kDirectionStream));
    out = io::weight_to_json(forgetful(fan, phi, u));
    out["direction"] = vector_json(to_rational(u));
  } else if (cmd == "euler") {
    const Divisor d = io::divisor_from_json(io::read_file(need(c.divisor, "divisor")));
    out = io::weight_to_json(euler_char_cocycle(fan, d));
  } else if (cmd == "pair") {
    const Weight gy = load_weight(fan, c.wy, "wy"), ge = load_weight(fan, c.we, "we");
    const Flag flag = load_flag(c, fan);
    const RatVector v = load_displacement(c, fan);
    const Integer chi = pairing_euler(fan, gy, ge, flag, v);
    out = Json{{"chi", chi.fits_slong_p() ? Json(chi.get_si()) : Json(chi.get_str())},
               {"flag", io::flag_to_json(flag)},
               {"displacement", vector_json(v)}};
  } else {
    const Weight g = load_weight(fan, c.weight, "weight");
    const Flag flag = load_flag(c, fan);
    const bool balancing = is_grothendieck_weight(fan, g, flag).ok;
    const auto divisors = sample_ample(fan, kOracleDivisors, mix_seed(c.seed, kDivisorStream));
    std::vector<Polytope> ps;
    Json dj = Json::array();
    for (const auto& d : divisors) {
      ps.push_back(polytope_from_divisor(fan, d));
      dj.push_back(io::divisor_to_json(d));
    }
    note(c, log, "sampled " + std::to_string(ps.size()) + " ample divisors");
    const auto relations = ehrhart_relations(fan, ps);
    const bool ehrhart = ehrhart_membership(g, relations);
    out = Json{{"balancing", balancing},
               {"ehrhart", ehrhart},
               {"agree", balancing == ehrhart},
               {"relations", relations.size()},
               {"divisors", std::move(dj)},
               {"flag", io::flag_to_json(flag)}};
  }
  out["seed"] = c.seed;
  return out;
}

int exit_code(const Error& e) { return e.error_class() == ErrorClass::input ? 1 : 2; }

int run(const RunConfig& c, std::ostream& out, std::ostream& log) {
  Json result;
  int code = 0;
  try {
    result = execute(c, log);
  } catch (const Error& e) {
    result = io::error_to_json(e);
    code = exit_code(e);
  } catch (const std::exception& e) {
    result = io::error_to_json(Error("Internal", e.what(), ErrorClass::internal));
    code = 2;
  }
  if (code != 0) {
    result["seed"] = c.seed;
    log << "torweight: " << result["error"]["code"].get<std::string>() << ": "
        << result["error"]["message"].get<std::string>() << "\n";
    out << io::dump(result);
    return code;
  }
  if (c.out) {
    std::ofstream f(*c.out);
    if (!f) {
      Error e("CannotWrite", "cannot open " + *c.out + " for writing");
      result = io::error_to_json(e);
      result["seed"] = c.seed;
      out << io::dump(result);
      return 1;
    }
    f << io::dump(result);
  } else {
    out << io::dump(result);
  }
  return 0;
}

}  // namespace torweight::cli
