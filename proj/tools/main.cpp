#include <vector>
#include <string>

#include "diskmap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return diskmap::dispatch(args);
}
