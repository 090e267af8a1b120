#include "polyseq/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    auto result = polyseq::run(std::vector<std::string>(argv, argv + argc));
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
