#include <cstdio>

int main() {
    std::puts("hexllg CLI placeholder");
    return 0;
}
