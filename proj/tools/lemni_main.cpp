#include <iostream>

#include "lemni/cli_app.hpp"

int main(int argc, char **argv) {
    return lemni::cli::run(argc, argv, std::cout, std::cerr);
}
