#include "dyadic/acceptance.hpp"

#include <iostream>

int main(int argc, char** argv) {
    dyadic::DimensionOptions opt;
    const std::string only = argc > 1 ? argv[1] : "";
    const int failures = dyadic::acceptance::run(opt, std::cout, only);
    if (failures < 0) {
        std::cerr << "no acceptance check named '" << only << "'\n";
        return 2;
    }
    std::cout << (failures == 0 ? "all acceptance checks passed" : std::to_string(failures) + " acceptance check(s) failed")
              << '\n';
    return failures == 0 ? 0 : 1;
}
