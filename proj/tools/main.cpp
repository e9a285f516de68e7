#include <string>
#include <vector>

#include "ballbasis/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ballbasis::run_cli(args);
}
