#include <iostream>
#include <string>
#include <vector>

#include "chabauty/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = chabauty::cli::run(args);
  std::cout << r.text;
  std::cerr << r.error;
  return r.exit_code;
}
