#include <iostream>

#include "fracscatter/cli_io.hpp"

int main(int argc, char** argv) {
  const auto parsed = fracscatter::cli::parse_config(argc, argv);
  if (!parsed.config) return parsed.exit_code;
  return fracscatter::cli::run(*parsed.config, std::cout, std::cerr);
}
