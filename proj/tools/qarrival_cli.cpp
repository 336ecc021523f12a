// Experiment driver; subcommands are wired up in scenario.hpp.
#include <cstdio>

int main() {
  std::puts("qarrival: CLI under construction");
  return 0;
}
