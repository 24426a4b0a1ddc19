/**
 * @file dcmval.cpp
 * @brief dcmval command-line entry point
 */

#include "dcmval/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return dcmval::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
