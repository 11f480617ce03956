#include <groupeq/verify.hpp>

#include <cstdlib>
#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    unsigned seed = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoul(argv[i + 1], nullptr, 10);
    bool ok = groupeq::verify::print_and_check(std::cout, seed);
    return ok ? 0 : 1;
}
