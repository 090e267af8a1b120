#include "generators.hpp"

#include <gtest/gtest.h>

#include <iostream>

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    auto seed = polyseq::testing::init_seed(argc, argv);
    std::cout << "seed " << seed << "\n";
    return RUN_ALL_TESTS();
}
