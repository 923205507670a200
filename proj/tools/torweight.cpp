#include "torweight/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using torweight::cli::RunConfig;
  RunConfig c;
  CLI::App app{"Grothendieck weights on complete fans"};
  app.require_subcommand(1);

  std::string displacement, out;
  auto common = [&](CLI::App* s) {
    s->add_option("--fan", c.fan, "fan.json")->required();
    s->add_option("--seed", c.seed, "run seed");
    s->add_option("--out", out, "write the result here instead of stdout");
    s->add_flag("-v,--verbose", c.verbosity, "progress on stderr");
  };
  auto with_flag = [&](CLI::App* s) { s->add_option("--flag", c.flag, "flag.json; sampled from the seed if absent"); };
  auto with_displacement = [&](CLI::App* s) {
    s->add_option("--displacement", displacement, "displacement vector such as \"5,1\"; sampled if absent");
  };

  auto* check = app.add_subcommand("check", "test the balancing condition");
  common(check);
  with_flag(check);
  check->add_option("--weight", c.weight, "weight.json")->required();

  auto* rr = app.add_subcommand("rr-matrix", "mu and nu for a flag");
  common(rr);
  with_flag(rr);

  auto* product = app.add_subcommand("product", "product of two weights");
  common(product);
  with_flag(product);
  with_displacement(product);
  product->add_option("--w1", c.w1, "weight.json")->required();
  product->add_option("--w2", c.w2, "weight.json")->required();

  auto* forgetful = app.add_subcommand("forgetful", "weight of a piecewise exponential function");
  common(forgetful);
  forgetful->add_option("--pexp", c.pexp, "pexp.json")->required();

  auto* euler = app.add_subcommand("euler", "Euler characteristic cocycle of a divisor");
  common(euler);
  euler->add_option("--divisor", c.divisor, "divisor.json")->required();

  auto* pair = app.add_subcommand("pair", "origin value of the product of two weights");
  common(pair);
  with_flag(pair);
  with_displacement(pair);
  pair->add_option("--wy", c.wy, "weight.json of the subvariety")->required();
  pair->add_option("--we", c.we, "weight.json of the class")->required();

  auto* oracle = app.add_subcommand("oracle", "compare balancing with the Ehrhart kernel oracle");
  common(oracle);
  with_flag(oracle);
  oracle->add_option("--weight", c.weight, "weight.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    torweight::Error err("UsageError", e.what());
    auto j = torweight::io::error_to_json(err);
    j["seed"] = c.seed;
    std::cout << torweight::io::dump(j);
    std::cerr << "torweight: " << e.what() << "\n";
    return 1;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (!displacement.empty()) c.displacement = displacement;
  if (!out.empty()) c.out = out;
  return torweight::cli::run(c, std::cout, std::cerr);
}
