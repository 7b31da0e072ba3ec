#include <iostream>

#include "bgossip/cli.hpp"

int main(int argc, char** argv) {
    return bgossip::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
