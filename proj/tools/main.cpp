#include <cstdio>

int main() {
  std::puts("fbtopo: CLI under construction");
  return 0;
}
