#include "copeland/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return copeland::cli::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
