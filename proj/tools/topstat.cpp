#include <cstdio>

int main() {
    std::puts("topstat: CLI under construction");
    return 0;
}
