#include <cstdio>

#include "roomkit/version.hpp"

int main() {
  std::printf("roomkit %s\n", roomkit::kVersion);
  return 0;
}
