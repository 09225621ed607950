#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
    uint64_t seed = hermlat::acceptance::kDefaultSeed;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    bool all = true;
    for (const auto& r : hermlat::acceptance::run_all(seed)) {
        std::cout << hermlat::acceptance::format_line(r) << std::endl;
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
