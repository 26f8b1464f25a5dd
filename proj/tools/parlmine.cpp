#include <iostream>
#include <string>
#include <vector>

#include "parlmine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return parlmine::cli::run(args, std::cout, std::cerr);
}
