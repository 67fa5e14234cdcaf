#include <iostream>

#include "germflow/cli.hpp"

int main(int argc, char** argv) { return germflow::cli::run(argc, argv, std::cout, std::cerr); }
