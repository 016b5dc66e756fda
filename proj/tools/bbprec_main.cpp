#include "bbprec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return bbprec::cli::run(argc, argv, std::cout, std::cerr);
}
