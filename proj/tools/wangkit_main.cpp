#include <iostream>
#include <string>
#include <vector>

#include "wangkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wangkit::dispatch(args, std::cout, std::cerr);
}
