#include <cstdio>
int main() { std::puts("minkval"); }
