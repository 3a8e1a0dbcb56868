#include <iostream>

#include "gyrochap_cli/app.hpp"

int main(int argc, char** argv) { return gyrochap::cli::run(argc, argv, std::cout, std::cerr); }
