#include <string>
#include <vector>

#include "scto/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return scto::cli::run(args);
}
