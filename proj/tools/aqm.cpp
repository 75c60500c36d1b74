#include <iostream>

#include "aqm/cli/app.hpp"

int main(int argc, char** argv) { return aqm::cli::run(argc, argv, std::cout, std::cerr); }
