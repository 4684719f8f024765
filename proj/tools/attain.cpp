#include <string>
#include <vector>

#include "attain/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return attain::cli::run(args);
}
