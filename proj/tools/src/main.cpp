#include <iostream>
#include <string>
#include <vector>

#include "ragg/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const ragg::cli::CommandResult result = ragg::cli::run(args);
  std::cout << result.output;
  if (!result.error.empty()) std::cerr << result.error << '\n';
  return result.exit_code;
}
