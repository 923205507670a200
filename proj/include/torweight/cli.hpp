#pragma once

#include "torweight/io.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace torweight::cli {

constexpr std::uint64_t kDefaultSeed = 1;

struct RunConfig {
  std::string subcommand;
  std::string fan, weight, w1, w2, wy, we, flag, pexp, divisor;
  std::optional<std::string> displacement;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> out;
  int verbosity = 0;
};

// Result JSON of a subcommand, with "seed" recorded. Throws Error.
io::Json execute(const RunConfig& config, std::ostream& log);

// 1 for input errors, 2 for internal ones.
int exit_code(const Error& e);

// Writes the result (or a structured error) to config.out or `out`.
// Returns 0, 1 for invalid input, 2 for internal failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

}  // namespace torweight::cli
